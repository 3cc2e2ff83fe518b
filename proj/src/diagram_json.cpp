#include "decker/diagram.hpp"
#include "json.hpp"

namespace decker {

namespace {

using nlohmann::json;

json direction_json(const Direction& d) { return json::array({d.dx().str(), d.dy().str()}); }

Direction direction_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("direction must be [dx, dy]");
  return Direction(Algebraic::parse(j[0].get<std::string>()), Algebraic::parse(j[1].get<std::string>()));
}

json param_json(const KnotParam& s) { return json::array({s.edge, s.u.str()}); }

json end_json(const CurveEnd& e) {
  static const char* names[] = {"cusp", "boundary", "closed"};
  return json{{"kind", names[static_cast<int>(e.kind)]}, {"index", e.index}};
}

CurveEnd end_from(const json& j) {
  std::string k = j.at("kind").get<std::string>();
  CurveEnd e;
  if (k == "cusp")
    e.kind = EndKind::Cusp;
  else if (k == "boundary")
    e.kind = EndKind::Boundary;
  else if (k == "closed")
    e.kind = EndKind::Closed;
  else
    throw std::invalid_argument("unknown curve end kind " + k);
  e.index = j.at("index").get<int>();
  return e;
}

json marked(const EdgeComplex& k, const char* kind, const Piece& p, const Algebraic& c, bool cusp = false) {
  json m{{"kind", kind},
         {"height", c.str()},
         {"points", json::array({param_json(k.param_at(p.edges[0], c)), param_json(k.param_at(p.edges[1], c))})}};
  // the chord vanishes at a cusp
  if (!cusp) m["direction"] = direction_json(piece_direction(k, p, c));
  return m;
}

// Marked points along a curve: ends, vertex-height joins and triple passages.
json marked_points(const EdgeComplex& k, const DoubleCurve& c) {
  json out = json::array();
  auto end_kind = [](const CurveEnd& e) { return e.kind == EndKind::Cusp ? "cusp" : "boundary"; };
  size_t q = 0;
  for (size_t p = 0; p < c.pieces.size(); ++p) {
    const auto& pc = c.pieces[p];
    if (p == 0 && !c.closed()) {
      out.push_back(marked(k, end_kind(c.ends[0]), pc, Algebraic(pc.from), c.ends[0].kind == EndKind::Cusp));
    } else {
      out.push_back(marked(k, "vertex", pc, Algebraic(pc.from)));
    }
    for (; q < c.passages.size() && c.passages[q].piece == static_cast<int>(p); ++q)
      out.push_back(marked(k, "triple", pc, c.passages[q].height));
  }
  if (!c.closed() && !c.pieces.empty()) {
    const auto& pc = c.pieces.back();
    out.push_back(marked(k, end_kind(c.ends[1]), pc, Algebraic(pc.to), c.ends[1].kind == EndKind::Cusp));
  }
  return out;
}

}  // namespace

std::string to_json(const AbstractDiagram& d) {
  EdgeComplex k = d.complex();
  json j;
  j["format"] = "decker-diagram/1";
  j["knot"] = json::parse(std::visit([](const auto& x) { return to_json(x); }, d.source));
  j["knot_size"] = d.knot_size;

  json curves = json::array();
  for (const auto& c : d.curves) {
    json cj;
    cj["closed"] = c.closed();
    cj["ends"] = json::array({end_json(c.ends[0]), end_json(c.ends[1])});
    json pieces = json::array();
    for (const auto& p : c.pieces)
      pieces.push_back({{"edges", {p.edges[0], p.edges[1]}},
                        {"from", p.from.get_str()},
                        {"to", p.to.get_str()},
                        {"over", p.over}});
    cj["pieces"] = pieces;
    json passages = json::array();
    for (const auto& p : c.passages)
      passages.push_back({{"node", p.node},
                          {"levels", {p.levels[0], p.levels[1]}},
                          {"piece", p.piece},
                          {"height", p.height.str()}});
    cj["passages"] = passages;
    cj["marked"] = marked_points(k, c);
    curves.push_back(cj);
  }
  j["curves"] = curves;

  json cusps = json::array();
  for (const auto& c : d.cusps)
    cusps.push_back({{"vertex", c.vertex},
                     {"kind", c.kind == ExtremumKind::Max ? "max" : "min"},
                     {"direction", direction_json(c.direction)},
                     {"curve", c.curve},
                     {"end", c.end}});
  j["cusps"] = cusps;

  json triples = json::array();
  for (const auto& t : d.triples) {
    json pre = json::array();
    for (const auto& p : t.preimages) pre.push_back({{"edge", p.s.edge}, {"u", p.s.u.str()}, {"level", p.level}});
    json cr = json::array();
    for (const auto& c : t.crossings) cr.push_back({c[0], c[1]});
    triples.push_back({{"event", t.event},
                       {"height", t.height.str()},
                       {"direction", direction_json(t.direction)},
                       {"preimages", pre},
                       {"crossings", cr}});
  }
  j["triples"] = triples;

  json boundary = json::array();
  for (const auto& b : d.boundary)
    boundary.push_back({{"curve", b.curve},
                        {"end", b.end},
                        {"height", b.height.get_str()},
                        {"vertices", {b.vertices[0], b.vertices[1]}},
                        {"direction", direction_json(b.direction)},
                        {"plane", b.plane}});
  j["boundary"] = boundary;

  DiagramInvariants inv = diagram_invariants(d);
  j["invariants"] = {{"cusps", inv.cusp_count},
                     {"triples", inv.triple_count},
                     {"curves", inv.curve_count},
                     {"closed_curves", inv.closed_curve_count},
                     {"boundary_ends", inv.boundary_end_count},
                     {"crossing_lengths", inv.crossing_lengths}};
  j["canonical_code"] = canonical_code(d).hex();
  return j.dump(1) + "\n";
}

AbstractDiagram parse_diagram(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "decker-diagram/1") throw std::invalid_argument("not a decker-diagram/1 document");
    AbstractDiagram d;
    d.source = parse_knot_document(j.at("knot").dump());
    d.knot_size = j.at("knot_size").get<int>();
    for (const auto& cj : j.at("curves")) {
      DoubleCurve c;
      c.ends = {end_from(cj.at("ends").at(0)), end_from(cj.at("ends").at(1))};
      for (const auto& p : cj.at("pieces")) {
        Piece pc;
        pc.edges = {p.at("edges").at(0).get<int>(), p.at("edges").at(1).get<int>()};
        pc.from = parse_scalar(p.at("from").get<std::string>());
        pc.to = parse_scalar(p.at("to").get<std::string>());
        pc.over = p.at("over").get<int>();
        c.pieces.push_back(pc);
      }
      for (const auto& p : cj.at("passages")) {
        Passage ps;
        ps.node = p.at("node").get<int>();
        ps.levels = {p.at("levels").at(0).get<int>(), p.at("levels").at(1).get<int>()};
        ps.piece = p.at("piece").get<int>();
        ps.height = Algebraic::parse(p.at("height").get<std::string>());
        c.passages.push_back(ps);
      }
      d.curves.push_back(std::move(c));
    }
    for (const auto& cj : j.at("cusps")) {
      CuspPoint c;
      c.vertex = cj.at("vertex").get<int>();
      c.kind = cj.at("kind").get<std::string>() == "max" ? ExtremumKind::Max : ExtremumKind::Min;
      c.direction = direction_from(cj.at("direction"));
      c.curve = cj.at("curve").get<int>();
      c.end = cj.at("end").get<int>();
      d.cusps.push_back(c);
    }
    for (const auto& tj : j.at("triples")) {
      TriplePointNode t;
      t.event = tj.at("event").get<int>();
      t.height = Algebraic::parse(tj.at("height").get<std::string>());
      t.direction = direction_from(tj.at("direction"));
      for (const auto& p : tj.at("preimages"))
        t.preimages.push_back(
            {{p.at("edge").get<int>(), Algebraic::parse(p.at("u").get<std::string>())}, p.at("level").get<int>()});
      const auto& cr = tj.at("crossings");
      if (cr.size() != 3) throw std::invalid_argument("triple node needs three crossings");
      for (size_t r = 0; r < 3; ++r) t.crossings[r] = {cr[r].at(0).get<int>(), cr[r].at(1).get<int>()};
      d.triples.push_back(std::move(t));
    }
    for (const auto& bj : j.at("boundary")) {
      BoundaryTag b;
      b.curve = bj.at("curve").get<int>();
      b.end = bj.at("end").get<int>();
      b.height = parse_scalar(bj.at("height").get<std::string>());
      b.vertices = {bj.at("vertices").at(0).get<int>(), bj.at("vertices").at(1).get<int>()};
      b.direction = direction_from(bj.at("direction"));
      b.plane = bj.at("plane").get<int>();
      d.boundary.push_back(b);
    }
    return d;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad diagram document: ") + e.what());
  }
}

}  // namespace decker
