#include "decker/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace decker {

namespace {

// Bisecant segment s taken with strand 0 on edge i (flip == 0) or edge j.
struct Oriented {
  int seg = 0, flip = 0;
  friend bool operator==(const Oriented&, const Oriented&) = default;
};

int oid(const Oriented& o) { return 2 * o.seg + o.flip; }

struct EndKey {
  Scalar h;
  Point3 a, b;
  friend bool operator<(const EndKey& x, const EndKey& y) {
    if (x.h != y.h) return x.h < y.h;
    if (!(x.a == y.a)) return x.a < y.a;
    return x.b < y.b;
  }
};

const Point3& seg_point(const BisecantSegment& s, int end, int which) {
  if (end == 0) return which == 0 ? s.lo_i : s.lo_j;
  return which == 0 ? s.hi_i : s.hi_j;
}

const Scalar& seg_height(const BisecantSegment& s, int end) { return end == 0 ? s.lo : s.hi; }

EndKey key_of(const BisecantSegment& s, int end) {
  const Point3& p = seg_point(s, end, 0);
  const Point3& q = seg_point(s, end, 1);
  if (q < p) return {seg_height(s, end), q, p};
  return {seg_height(s, end), p, q};
}

int vertex_at(const EdgeComplex& k, int e, const Scalar& h) {
  const auto& ed = k.edge(e);
  if (k.vertices()[static_cast<size_t>(ed.tail)].z == h) return ed.tail;
  if (k.vertices()[static_cast<size_t>(ed.head)].z == h) return ed.head;
  return -1;
}

std::string edge_list(std::initializer_list<int> es) {
  std::string s;
  for (int e : es) s += (s.empty() ? "" : ", ") + std::to_string(e);
  return s;
}

void require_general_position(const KnotOrTangle& src, const SecantAnalysis& an) {
  GeometryReport g = std::visit([](const auto& x) { return validate_geometry(x); }, src);
  if (!g.ok()) throw GeneralPositionFailure(FailureKind::InvalidGeometry, g.violations.front().message);
  const auto& r = an.report;
  if (!r.identically_collinear.empty()) {
    const auto& t = r.identically_collinear.front();
    throw GeneralPositionFailure(FailureKind::IdenticallyCollinear,
                                 "edges " + edge_list({t[0], t[1], t[2]}) + " are identically collinear");
  }
  if (!r.quadrisecants.empty()) {
    const auto& q = r.quadrisecants.front();
    throw GeneralPositionFailure(FailureKind::Quadrisecant, "quadrisecant through edges " +
                                                                edge_list({q.edges[0], q.edges[1], q.edges[2], q.edges[3]}) +
                                                                " at height " + q.height.str());
  }
  if (!r.tangential.empty()) {
    const auto& t = r.tangential.front();
    throw GeneralPositionFailure(FailureKind::TangentialTrisecant,
                                 "tangential trisecant of edges " + edge_list({t.edges[0], t.edges[1], t.edges[2]}) +
                                     " at height " + t.height.str());
  }
  if (!r.through_vertex.empty()) {
    const auto& t = r.through_vertex.front();
    throw GeneralPositionFailure(FailureKind::TrisecantThroughVertex,
                                 "trisecant of edges " + edge_list({t.edges[0], t.edges[1], t.edges[2]}) +
                                     " through a vertex at height " + t.height.str());
  }
}

Direction chord(const EdgeComplex& k, int under, int over, const Algebraic& c) {
  return Direction(k.x_at(over, c) - k.x_at(under, c), k.y_at(over, c) - k.y_at(under, c));
}

// Direction of the chord under -> over as the height tends to the shared
// extremum vertex from inside the piece.
Direction cusp_limit(const EdgeComplex& k, int under, int over, bool from_below) {
  const auto& gu = k.geom(under);
  const auto& go = k.geom(over);
  Scalar dx = go.x1 - gu.x1, dy = go.y1 - gu.y1;
  if (from_below) {
    dx = -dx;
    dy = -dy;
  }
  return Direction(Algebraic(dx), Algebraic(dy));
}

}  // namespace

EdgeComplex AbstractDiagram::complex() const {
  return std::visit([](const auto& x) { return EdgeComplex(x); }, source);
}

Direction piece_direction(const EdgeComplex& k, const Piece& p, const Algebraic& c) {
  return chord(k, p.edges[static_cast<size_t>(1 - p.over)], p.edges[static_cast<size_t>(p.over)], c);
}

AbstractDiagram assemble_diagram(const PLKnot& k) { return assemble_diagram(KnotOrTangle(k)); }
AbstractDiagram assemble_diagram(const PLTangle& t) { return assemble_diagram(KnotOrTangle(t)); }

AbstractDiagram assemble_diagram(const KnotOrTangle& src) {
  GeometryReport g = std::visit([](const auto& x) { return validate_geometry(x); }, src);
  if (!g.ok()) throw GeneralPositionFailure(FailureKind::InvalidGeometry, g.violations.front().message);
  EdgeComplex k = std::visit([](const auto& x) { return EdgeComplex(x); }, src);
  return assemble_diagram(src, analyze_secants(k));
}

AbstractDiagram assemble_diagram(const KnotOrTangle& src, const SecantAnalysis& an) {
  require_general_position(src, an);
  EdgeComplex k = std::visit([](const auto& x) { return EdgeComplex(x); }, src);
  std::vector<BisecantSegment> segs = all_bisecants(k);
  const int nseg = static_cast<int>(segs.size());

  std::map<EndKey, std::vector<std::pair<int, int>>> groups;
  for (int s = 0; s < nseg; ++s)
    for (int e = 0; e < 2; ++e) groups[key_of(segs[static_cast<size_t>(s)], e)].push_back({s, e});
  for (const auto& [key, members] : groups)
    if (members.size() > 2)
      throw GeneralPositionFailure(FailureKind::AmbiguousGluing,
                                   std::to_string(members.size()) + " double segments meet at height " +
                                       to_string(key.h));

  auto point0 = [&](const Oriented& o, int end) -> const Point3& {
    return seg_point(segs[static_cast<size_t>(o.seg)], end, o.flip);
  };
  // Continuation through end `end` of o: the next oriented segment and the
  // end by which it is entered.
  auto link = [&](const Oriented& o, int end) -> std::optional<std::pair<Oriented, int>> {
    const auto& members = groups.at(key_of(segs[static_cast<size_t>(o.seg)], end));
    if (members.size() != 2) return std::nullopt;
    auto [s2, e2] = members[0].first == o.seg && members[0].second == end ? members[1] : members[0];
    const auto& t = segs[static_cast<size_t>(s2)];
    Oriented n{s2, seg_point(t, e2, 0) == point0(o, end) ? 0 : 1};
    if (!(seg_point(t, e2, n.flip) == point0(o, end)))
      throw AssemblyInconsistency("strand points disagree across a vertex height");
    return std::make_pair(n, e2);
  };

  AbstractDiagram d;
  d.source = src;
  d.knot_size = k.edge_count();

  std::vector<CuspPoint> cusps;
  std::vector<BoundaryTag> tags;
  std::vector<std::pair<int, int>> where(static_cast<size_t>(2 * nseg), {-1, -1});

  auto make_end = [&](const Oriented& o, int end, int curve, int which) -> CurveEnd {
    const auto& s = segs[static_cast<size_t>(o.seg)];
    int e0 = o.flip ? s.j : s.i, e1 = o.flip ? s.i : s.j;
    const Scalar& h = seg_height(s, end);
    if (seg_point(s, end, 0) == seg_point(s, end, 1)) {
      CuspPoint c;
      c.vertex = k.shared_vertex(e0, e1);
      if (c.vertex < 0) throw AssemblyInconsistency("chord vanishes away from a shared vertex");
      c.kind = end == 1 ? ExtremumKind::Max : ExtremumKind::Min;
      c.direction = cusp_limit(k, e0, e1, end == 1);
      c.curve = curve;
      c.end = which;
      cusps.push_back(c);
      return {EndKind::Cusp, static_cast<int>(cusps.size()) - 1};
    }
    int v0 = vertex_at(k, e0, h), v1 = vertex_at(k, e1, h);
    bool free0 = v0 >= 0 && k.is_endpoint(v0), free1 = v1 >= 0 && k.is_endpoint(v1);
    if (!free0 && !free1) throw AssemblyInconsistency("double segment ends without a partner at height " + to_string(h));
    BoundaryTag b;
    b.curve = curve;
    b.end = which;
    b.height = h;
    b.vertices = {v0, v1};
    b.direction = chord(k, e0, e1, Algebraic(h));
    if (k.is_tangle() && free0 && free1 && h == 0)
      b.plane = 0;
    else if (k.is_tangle() && free0 && free1 && h == k.tangle_height())
      b.plane = 1;
    else
      b.plane = 2;
    tags.push_back(b);
    return {EndKind::Boundary, static_cast<int>(tags.size()) - 1};
  };

  for (int s = 0; s < nseg; ++s) {
    for (int f = 0; f < 2; ++f) {
      Oriented start{s, f};
      if (where[static_cast<size_t>(oid(start))].first >= 0) continue;
      int curve = static_cast<int>(d.curves.size());
      // walk back to a terminal end, or around a closed loop
      int entry = 0;
      bool closed = false;
      {
        Oriented cur = start;
        int cur_entry = 0;
        for (int guard = 0;; ++guard) {
          if (guard > 2 * nseg) throw AssemblyInconsistency("double curve does not terminate");
          auto l = link(cur, cur_entry);
          if (!l) break;
          if (l->first == start) {
            closed = true;
            cur = start;
            cur_entry = 0;
            break;
          }
          cur = l->first;
          cur_entry = 1 - l->second;
        }
        start = cur;
        entry = cur_entry;
      }
      DoubleCurve c;
      Oriented cur = start;
      int cur_entry = entry;
      if (!closed) c.ends[0] = make_end(start, entry, curve, 0);
      for (int guard = 0;; ++guard) {
        if (guard > 2 * nseg) throw AssemblyInconsistency("double curve does not terminate");
        const auto& sg = segs[static_cast<size_t>(cur.seg)];
        auto& w = where[static_cast<size_t>(oid(cur))];
        if (w.first >= 0) throw AssemblyInconsistency("double segment used twice");
        w = {curve, static_cast<int>(c.pieces.size())};
        Piece p;
        p.edges = {cur.flip ? sg.j : sg.i, cur.flip ? sg.i : sg.j};
        p.from = seg_height(sg, cur_entry);
        p.to = seg_height(sg, 1 - cur_entry);
        p.over = 1;
        c.pieces.push_back(p);
        int exit = 1 - cur_entry;
        auto l = link(cur, exit);
        if (!l) {
          if (closed) throw AssemblyInconsistency("closed double curve is broken");
          c.ends[1] = make_end(cur, exit, curve, 1);
          break;
        }
        if (l->first == start) {
          if (!closed) throw AssemblyInconsistency("open double curve returns to its start");
          break;
        }
        cur = l->first;
        cur_entry = l->second;
      }
      d.curves.push_back(std::move(c));
    }
  }

  // cusps and boundary tags in a canonical order
  {
    std::vector<int> order(cusps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& x = cusps[static_cast<size_t>(a)];
      const auto& y = cusps[static_cast<size_t>(b)];
      if (x.vertex != y.vertex) return x.vertex < y.vertex;
      return x.direction < y.direction;
    });
    for (size_t n = 0; n < order.size(); ++n) {
      const auto& c = cusps[static_cast<size_t>(order[n])];
      d.curves[static_cast<size_t>(c.curve)].ends[static_cast<size_t>(c.end)].index = static_cast<int>(n);
      d.cusps.push_back(c);
    }
    d.boundary = tags;
  }
  {
    auto ex = z_extrema(k);
    if (d.cusps.size() != 2 * ex.size()) throw AssemblyInconsistency("cusp count does not match the extrema");
  }

  std::map<std::pair<int, int>, int> pair_seg;
  for (int s = 0; s < nseg; ++s) pair_seg[{segs[static_cast<size_t>(s)].i, segs[static_cast<size_t>(s)].j}] = s;

  static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (size_t ev = 0; ev < an.events.size(); ++ev) {
    const auto& e = an.events[ev];
    for (int side = 0; side < 2; ++side) {
      TriplePointNode node;
      node.event = static_cast<int>(ev);
      node.height = e.height;
      node.direction = side == 0 ? e.direction : e.direction.antipode();
      std::array<int, 3> by_level = e.order;
      if (side == 1) std::reverse(by_level.begin(), by_level.end());
      for (int lv = 0; lv < 3; ++lv)
        node.preimages.push_back({k.param_at(by_level[static_cast<size_t>(lv)], e.height), lv});
      int id = static_cast<int>(d.triples.size());
      for (const auto& pr : kPairs) {
        int a = by_level[static_cast<size_t>(pr[0])], b = by_level[static_cast<size_t>(pr[1])];
        auto it = pair_seg.find({std::min(a, b), std::max(a, b)});
        if (it == pair_seg.end()) throw AssemblyInconsistency("trisecant pair without a double segment");
        Oriented o{it->second, segs[static_cast<size_t>(it->second)].i == a ? 0 : 1};
        auto [curve, piece] = where[static_cast<size_t>(oid(o))];
        if (curve < 0) throw AssemblyInconsistency("double segment missing from every curve");
        d.curves[static_cast<size_t>(curve)].passages.push_back({id, {pr[0], pr[1]}, piece, e.height});
      }
      d.triples.push_back(std::move(node));
    }
  }

  for (size_t ci = 0; ci < d.curves.size(); ++ci) {
    auto& c = d.curves[ci];
    std::sort(c.passages.begin(), c.passages.end(), [&](const Passage& x, const Passage& y) {
      if (x.piece != y.piece) return x.piece < y.piece;
      bool up = c.pieces[static_cast<size_t>(x.piece)].up();
      return up ? x.height < y.height : y.height < x.height;
    });
    for (size_t pi = 0; pi < c.passages.size(); ++pi) {
      const auto& p = c.passages[pi];
      for (int r = 0; r < 3; ++r)
        if (p.levels[0] == kPairs[r][0] && p.levels[1] == kPairs[r][1])
          d.triples[static_cast<size_t>(p.node)].crossings[static_cast<size_t>(r)] = {static_cast<int>(ci),
                                                                                       static_cast<int>(pi)};
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// axioms

bool AxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no axiom check named " + name);
}

namespace {

int pair_index(int under_level, int over_level) {
  if (under_level == 0 && over_level == 1) return 0;
  if (under_level == 1 && over_level == 2) return 1;
  if (under_level == 0 && over_level == 2) return 2;
  return -1;
}

bool strictly_between(const Algebraic& c, const Scalar& a, const Scalar& b) {
  const Scalar& lo = a < b ? a : b;
  const Scalar& hi = a < b ? b : a;
  return Algebraic(lo) < c && c < Algebraic(hi);
}

struct Recorder {
  AxiomCheck& check;
  void fail(const std::string& why) {
    check.passed = false;
    if (check.failures.size() < 20) check.failures.push_back(why);
  }
};

std::string curve_name(size_t c) { return "curve " + std::to_string(c); }

using CurveKey = std::vector<std::tuple<int, int, Scalar, Scalar>>;

CurveKey curve_key(const DoubleCurve& c, bool swap) {
  CurveKey key;
  for (const auto& p : c.pieces) {
    int u = p.edges[static_cast<size_t>(1 - p.over)], o = p.edges[static_cast<size_t>(p.over)];
    if (swap) std::swap(u, o);
    const Scalar& lo = p.from < p.to ? p.from : p.to;
    const Scalar& hi = p.from < p.to ? p.to : p.from;
    key.emplace_back(u, o, lo, hi);
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

AxiomReport verify_decker_axioms(const AbstractDiagram& d) {
  AxiomReport rep;
  rep.checks = {{"class size", true, {}},         {"finiteness", true, {}},
                {"closure", true, {}},            {"order continuity", true, {}},
                {"double interval", true, {}},    {"antipodal involution", true, {}}};
  Recorder size{rep.checks[0]}, finite{rep.checks[1]}, closure{rep.checks[2]}, order{rep.checks[3]},
      interval{rep.checks[4]}, antipodal{rep.checks[5]};

  EdgeComplex k;
  try {
    k = d.complex();
  } catch (const std::exception& e) {
    for (auto& c : rep.checks) Recorder{c}.fail(std::string("source geometry unusable: ") + e.what());
    return rep;
  }
  const int ne = k.edge_count();
  auto valid_edge = [&](int e) { return e >= 0 && e < ne && !k.horizontal(e); };

  // class sizes
  for (size_t n = 0; n < d.triples.size(); ++n) {
    const auto& t = d.triples[n];
    if (t.preimages.size() != 3) {
      size.fail("triple node " + std::to_string(n) + " has a class of size " + std::to_string(t.preimages.size()));
      continue;
    }
    std::set<int> levels;
    std::set<KnotParam> pts;
    for (const auto& p : t.preimages) {
      levels.insert(p.level);
      pts.insert(p.s);
    }
    if (levels != std::set<int>{0, 1, 2} || pts.size() != 3)
      size.fail("triple node " + std::to_string(n) + " does not have three distinct ranked points");
  }
  for (size_t c = 0; c < d.curves.size(); ++c)
    for (const auto& p : d.curves[c].pieces)
      if (p.edges[0] == p.edges[1]) size.fail(curve_name(c) + " identifies an edge with itself");

  // finiteness
  for (size_t c = 0; c < d.curves.size(); ++c) {
    const auto& cv = d.curves[c];
    if (cv.pieces.empty()) finite.fail(curve_name(c) + " is empty");
    for (const auto& p : cv.pieces)
      if (p.from == p.to) finite.fail(curve_name(c) + " has a degenerate piece");
  }
  {
    std::set<std::pair<int, Direction>> seen;
    for (const auto& cp : d.cusps)
      if (!seen.insert({cp.vertex, cp.direction}).second)
        finite.fail("cusp at vertex " + std::to_string(cp.vertex) + " listed twice");
  }

  // closure: cusps and triple preimages lie on the double strands
  for (size_t n = 0; n < d.cusps.size(); ++n) {
    const auto& cp = d.cusps[n];
    std::string who = "cusp " + std::to_string(n);
    if (cp.curve < 0 || cp.curve >= static_cast<int>(d.curves.size()) || cp.end < 0 || cp.end > 1) {
      closure.fail(who + " is not attached to a curve");
      continue;
    }
    const auto& cv = d.curves[static_cast<size_t>(cp.curve)];
    const auto& end = cv.ends[static_cast<size_t>(cp.end)];
    if (end.kind != EndKind::Cusp || end.index != static_cast<int>(n) || cv.pieces.empty()) {
      closure.fail(who + " is not an end of its curve");
      continue;
    }
    const auto& p = cp.end == 0 ? cv.pieces.front() : cv.pieces.back();
    const Scalar& h = cp.end == 0 ? p.from : p.to;
    if (!valid_edge(p.edges[0]) || !valid_edge(p.edges[1]) || cp.vertex < 0 || cp.vertex >= k.vertex_count() ||
        k.shared_vertex(p.edges[0], p.edges[1]) != cp.vertex ||
        k.vertices()[static_cast<size_t>(cp.vertex)].z != h) {
      closure.fail(who + " does not sit at the shared vertex of its strands");
      continue;
    }
    bool from_below = (cp.end == 0) ? p.to < p.from : p.from < p.to;
    Direction lim = cusp_limit(k, p.edges[static_cast<size_t>(1 - p.over)], p.edges[static_cast<size_t>(p.over)],
                               from_below);
    if (!(lim == cp.direction)) closure.fail(who + " direction is not the limit chord direction");
  }
  for (size_t c = 0; c < d.curves.size(); ++c) {
    const auto& cv = d.curves[c];
    for (int w = 0; w < 2; ++w) {
      const auto& end = cv.ends[static_cast<size_t>(w)];
      if (end.kind == EndKind::Cusp &&
          (end.index < 0 || end.index >= static_cast<int>(d.cusps.size()) ||
           d.cusps[static_cast<size_t>(end.index)].curve != static_cast<int>(c)))
        closure.fail(curve_name(c) + " ends at a missing cusp");
      if (end.kind == EndKind::Boundary && (end.index < 0 || end.index >= static_cast<int>(d.boundary.size())))
        closure.fail(curve_name(c) + " ends at a missing boundary tag");
    }
    if (cv.ends[0].kind == EndKind::Closed) {
      if (cv.ends[1].kind != EndKind::Closed) closure.fail(curve_name(c) + " is half closed");
    } else if (cv.ends[1].kind == EndKind::Closed) {
      closure.fail(curve_name(c) + " is half closed");
    }
  }
  for (size_t n = 0; n < d.triples.size(); ++n) {
    const auto& t = d.triples[n];
    if (t.preimages.size() != 3) continue;
    std::array<int, 3> edge_of{-1, -1, -1};
    for (const auto& p : t.preimages)
      if (p.level >= 0 && p.level < 3) edge_of[static_cast<size_t>(p.level)] = p.s.edge;
    for (int r = 0; r < 3; ++r) {
      std::string who = "triple node " + std::to_string(n) + " pair " + std::to_string(r);
      auto [ci, pi] = t.crossings[static_cast<size_t>(r)];
      if (ci < 0 || ci >= static_cast<int>(d.curves.size())) {
        closure.fail(who + " references a missing curve");
        continue;
      }
      const auto& cv = d.curves[static_cast<size_t>(ci)];
      if (pi < 0 || pi >= static_cast<int>(cv.passages.size())) {
        closure.fail(who + " references a missing passage");
        continue;
      }
      const auto& ps = cv.passages[static_cast<size_t>(pi)];
      if (ps.node != static_cast<int>(n) || ps.piece < 0 || ps.piece >= static_cast<int>(cv.pieces.size())) {
        closure.fail(who + " passage points elsewhere");
        continue;
      }
      const auto& pc = cv.pieces[static_cast<size_t>(ps.piece)];
      int ul = ps.levels[static_cast<size_t>(1 - pc.over)], ol = ps.levels[static_cast<size_t>(pc.over)];
      if (pair_index(std::min(ul, ol), std::max(ul, ol)) != r) {
        closure.fail(who + " passage has the wrong levels");
        continue;
      }
      if (pc.edges[0] != edge_of[static_cast<size_t>(ps.levels[0])] ||
          pc.edges[1] != edge_of[static_cast<size_t>(ps.levels[1])] || !(ps.height == t.height) ||
          !strictly_between(t.height, pc.from, pc.to)) {
        closure.fail(who + " is not on its double strands");
        continue;
      }
      for (const auto& p : t.preimages)
        if (!valid_edge(p.s.edge) || !(k.param_at(p.s.edge, t.height) == p.s))
          closure.fail(who + " preimage is not a point of the knot at the triple height");
    }
  }

  // order continuity: constant over flag, and the over strand ranks higher at
  // every marked point
  for (size_t c = 0; c < d.curves.size(); ++c) {
    const auto& cv = d.curves[c];
    for (size_t p = 0; p + 1 < cv.pieces.size(); ++p)
      if (cv.pieces[p].over != cv.pieces[p + 1].over)
        order.fail(curve_name(c) + " changes its over strand between pieces " + std::to_string(p) + " and " +
                   std::to_string(p + 1));
    if (cv.closed() && cv.pieces.size() > 1 && cv.pieces.front().over != cv.pieces.back().over)
      order.fail(curve_name(c) + " changes its over strand across its closing point");
    for (const auto& ps : cv.passages) {
      if (ps.piece < 0 || ps.piece >= static_cast<int>(cv.pieces.size())) continue;
      const auto& pc = cv.pieces[static_cast<size_t>(ps.piece)];
      if (ps.levels[static_cast<size_t>(pc.over)] < ps.levels[static_cast<size_t>(1 - pc.over)])
        order.fail(curve_name(c) + " over strand is below at triple node " + std::to_string(ps.node));
      if (ps.node < 0 || ps.node >= static_cast<int>(d.triples.size())) continue;
      if (!valid_edge(pc.edges[0]) || !valid_edge(pc.edges[1])) continue;
      if (!(piece_direction(k, pc, ps.height) == d.triples[static_cast<size_t>(ps.node)].direction))
        order.fail(curve_name(c) + " points away from triple node " + std::to_string(ps.node));
    }
  }

  // local double-interval identification
  for (size_t c = 0; c < d.curves.size(); ++c) {
    const auto& cv = d.curves[c];
    for (size_t p = 0; p < cv.pieces.size(); ++p) {
      const auto& pc = cv.pieces[p];
      if (!valid_edge(pc.edges[0]) || !valid_edge(pc.edges[1])) {
        interval.fail(curve_name(c) + " uses an invalid edge");
        continue;
      }
      const auto& g0 = k.geom(pc.edges[0]);
      const auto& g1 = k.geom(pc.edges[1]);
      const Scalar& lo = pc.from < pc.to ? pc.from : pc.to;
      const Scalar& hi = pc.from < pc.to ? pc.to : pc.from;
      if (lo < g0.zlo || lo < g1.zlo || hi > g0.zhi || hi > g1.zhi) {
        interval.fail(curve_name(c) + " piece " + std::to_string(p) + " leaves its edges");
        continue;
      }
      Scalar mid = (lo + hi) / 2;
      if (k.point_at(pc.edges[0], mid) == k.point_at(pc.edges[1], mid))
        interval.fail(curve_name(c) + " piece " + std::to_string(p) + " has coinciding strands");
      bool last = p + 1 == cv.pieces.size();
      if (last && !cv.closed()) continue;
      const auto& nx = last ? cv.pieces.front() : cv.pieces[p + 1];
      if (nx.from != pc.to || !valid_edge(nx.edges[0]) || !valid_edge(nx.edges[1]) ||
          !(k.point_at(pc.edges[0], pc.to) == k.point_at(nx.edges[0], nx.from)) ||
          !(k.point_at(pc.edges[1], pc.to) == k.point_at(nx.edges[1], nx.from)))
        interval.fail(curve_name(c) + " strands do not continue after piece " + std::to_string(p));
    }
  }

  // antipodal involution
  {
    std::multiset<CurveKey> keys;
    for (const auto& cv : d.curves) keys.insert(curve_key(cv, false));
    for (size_t c = 0; c < d.curves.size(); ++c)
      if (!keys.count(curve_key(d.curves[c], true))) antipodal.fail(curve_name(c) + " has no antipodal partner");
    std::set<std::pair<int, Direction>> cusp_set;
    for (const auto& cp : d.cusps) cusp_set.insert({cp.vertex, cp.direction});
    for (const auto& cp : d.cusps)
      if (!cusp_set.count({cp.vertex, cp.direction.antipode()}))
        antipodal.fail("cusp at vertex " + std::to_string(cp.vertex) + " has no antipodal partner");
    using NodeKey = std::tuple<Algebraic, Direction, std::vector<std::pair<int, int>>>;
    auto node_key = [](const TriplePointNode& t, bool flip) {
      std::vector<std::pair<int, int>> lv;
      for (const auto& p : t.preimages) lv.push_back({p.s.edge, flip ? 2 - p.level : p.level});
      std::sort(lv.begin(), lv.end());
      return NodeKey{t.height, flip ? t.direction.antipode() : t.direction, lv};
    };
    std::set<NodeKey> nodes;
    for (const auto& t : d.triples) nodes.insert(node_key(t, false));
    for (size_t n = 0; n < d.triples.size(); ++n)
      if (!nodes.count(node_key(d.triples[n], true)))
        antipodal.fail("triple node " + std::to_string(n) + " has no antipodal partner");
    using TagKey = std::tuple<Scalar, int, int, Direction>;
    std::set<TagKey> tagset;
    for (const auto& b : d.boundary) tagset.insert({b.height, b.vertices[0], b.vertices[1], b.direction});
    for (size_t n = 0; n < d.boundary.size(); ++n) {
      const auto& b = d.boundary[n];
      if (!tagset.count({b.height, b.vertices[1], b.vertices[0], b.direction.antipode()}))
        antipodal.fail("boundary tag " + std::to_string(n) + " has no antipodal partner");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// invariants and code

DiagramInvariants diagram_invariants(const AbstractDiagram& d) {
  DiagramInvariants inv;
  inv.cusp_count = static_cast<int>(d.cusps.size());
  inv.triple_count = static_cast<int>(d.triples.size());
  inv.curve_count = static_cast<int>(d.curves.size());
  for (const auto& c : d.curves) {
    if (c.closed()) ++inv.closed_curve_count;
    for (const auto& e : c.ends)
      if (e.kind == EndKind::Boundary) ++inv.boundary_end_count;
    inv.crossing_lengths.push_back(static_cast<int>(c.passages.size()));
  }
  std::sort(inv.crossing_lengths.begin(), inv.crossing_lengths.end());
  return inv;
}

std::string to_string(const DiagramInvariants& inv) {
  std::ostringstream os;
  os << "{" << inv.cusp_count << ", " << inv.triple_count << ", " << inv.curve_count << ", "
     << inv.closed_curve_count << ", " << inv.boundary_end_count << ", [";
  for (size_t i = 0; i < inv.crossing_lengths.size(); ++i) os << (i ? "," : "") << inv.crossing_lengths[i];
  os << "]}";
  return os.str();
}

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * text.size());
  for (unsigned char ch : text) {
    out.push_back(digits[ch >> 4]);
    out.push_back(digits[ch & 15]);
  }
  return out;
}

namespace {

char end_char(const AbstractDiagram& d, const CurveEnd& e) {
  if (e.kind == EndKind::Cusp) return d.cusps[static_cast<size_t>(e.index)].kind == ExtremumKind::Max ? 'M' : 'm';
  if (e.kind == EndKind::Boundary) return "btf"[d.boundary[static_cast<size_t>(e.index)].plane];
  return 'O';
}

// Passage letter from the ranks of its under and over strands.
char role_char(const DoubleCurve& c, const Passage& p) {
  const auto& pc = c.pieces[static_cast<size_t>(p.piece)];
  int ul = p.levels[static_cast<size_t>(1 - pc.over)], ol = p.levels[static_cast<size_t>(pc.over)];
  int r = pair_index(ul, ol);
  return r < 0 ? 'x' : "abc"[r];
}

class Encoder {
 public:
  explicit Encoder(const AbstractDiagram& d) : d_(d) {}

  std::string from(int root_curve, int root_passage) {
    clabel_.assign(d_.curves.size(), -1);
    nlabel_.assign(d_.triples.size(), -1);
    int next_curve = 0, next_node = 0;
    std::deque<std::pair<int, int>> curves;
    std::deque<int> nodes;
    std::string out;
    clabel_[static_cast<size_t>(root_curve)] = next_curve++;
    curves.push_back({root_curve, root_passage});
    while (!curves.empty()) {
      auto [ci, entry] = curves.front();
      curves.pop_front();
      const auto& c = d_.curves[static_cast<size_t>(ci)];
      const auto& ep = c.passages[static_cast<size_t>(entry)];
      bool fwd = c.pieces[static_cast<size_t>(ep.piece)].up();
      int n = static_cast<int>(c.passages.size());
      out += c.closed() ? "(O" : "(I";
      if (!c.closed()) out += end_char(d_, c.ends[fwd ? 0 : 1]);
      for (int step = 0; step < n; ++step) {
        int q;
        if (c.closed())
          q = ((fwd ? entry + step : entry - step) % n + n) % n;
        else
          q = fwd ? step : n - 1 - step;
        const auto& p = c.passages[static_cast<size_t>(q)];
        bool up = c.pieces[static_cast<size_t>(p.piece)].up() == fwd;
        out += role_char(c, p);
        out += up ? '+' : '-';
        auto& lab = nlabel_[static_cast<size_t>(p.node)];
        if (lab < 0) {
          lab = next_node++;
          nodes.push_back(p.node);
        }
        out += std::to_string(lab);
        out += ',';
      }
      if (!c.closed()) out += end_char(d_, c.ends[fwd ? 1 : 0]);
      out += ')';
      while (!nodes.empty()) {
        const auto& t = d_.triples[static_cast<size_t>(nodes.front())];
        nodes.pop_front();
        out += 'N';
        for (const auto& [cc, pp] : t.crossings) {
          auto& lab = clabel_[static_cast<size_t>(cc)];
          if (lab < 0) {
            lab = next_curve++;
            curves.push_back({cc, pp});
          }
          out += std::to_string(lab);
          out += ',';
        }
      }
    }
    return out;
  }

 private:
  const AbstractDiagram& d_;
  std::vector<int> clabel_, nlabel_;
};

std::string curve_signature(const AbstractDiagram& d, const DoubleCurve& c) {
  std::string roles;
  for (const auto& p : c.passages) roles += role_char(c, p);
  std::sort(roles.begin(), roles.end());
  std::string ends;
  if (!c.closed()) {
    ends = {end_char(d, c.ends[0]), end_char(d, c.ends[1])};
    std::sort(ends.begin(), ends.end());
  }
  return std::string(c.closed() ? "O" : "I") + ends + std::to_string(c.passages.size()) + roles;
}

}  // namespace

CanonicalCode canonical_code(const AbstractDiagram& d) {
  const size_t nc = d.curves.size();
  std::vector<size_t> parent(nc);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : d.triples)
    for (const auto& cr : t.crossings) parent[find(static_cast<size_t>(cr[0]))] = find(static_cast<size_t>(t.crossings[0][0]));
  std::map<size_t, std::vector<size_t>> comps;
  for (size_t c = 0; c < nc; ++c) comps[find(c)].push_back(c);

  Encoder enc(d);
  std::vector<std::string> parts;
  for (const auto& [root, members] : comps) {
    if (members.size() == 1 && d.curves[members[0]].passages.empty()) {
      const auto& c = d.curves[members[0]];
      if (c.closed()) {
        parts.push_back("(O)");
      } else {
        std::string e{end_char(d, c.ends[0]), end_char(d, c.ends[1])};
        std::sort(e.begin(), e.end());
        parts.push_back("(I" + e + ")");
      }
      continue;
    }
    std::string best_sig;
    bool have = false;
    for (size_t c : members) {
      if (d.curves[c].passages.empty()) continue;
      std::string s = curve_signature(d, d.curves[c]);
      if (!have || s < best_sig) best_sig = s, have = true;
    }
    std::string best;
    bool found = false;
    for (size_t c : members) {
      const auto& cv = d.curves[c];
      if (cv.passages.empty() || curve_signature(d, cv) != best_sig) continue;
      for (size_t p = 0; p < cv.passages.size(); ++p) {
        std::string s = enc.from(static_cast<int>(c), static_cast<int>(p));
        if (!found || s < best) best = std::move(s), found = true;
      }
    }
    parts.push_back(best);
  }
  std::sort(parts.begin(), parts.end());
  CanonicalCode code;
  code.text = "K";
  for (const auto& p : parts) code.text += p;
  return code;
}

AbstractDiagram antipodal_image(const AbstractDiagram& d) {
  AbstractDiagram out = d;
  for (auto& c : out.curves)
    for (auto& p : c.pieces) p.over = 1 - p.over;
  for (auto& c : out.cusps) c.direction = c.direction.antipode();
  for (auto& t : out.triples) {
    t.direction = t.direction.antipode();
    for (auto& p : t.preimages) p.level = 2 - p.level;
    std::swap(t.crossings[0], t.crossings[1]);
  }
  for (auto& c : out.curves)
    for (auto& p : c.passages) p.levels = {2 - p.levels[0], 2 - p.levels[1]};
  for (auto& b : out.boundary) b.direction = b.direction.antipode();
  return out;
}

AbstractDiagram relabel_curves(const AbstractDiagram& d, const std::vector<int>& perm) {
  if (perm.size() != d.curves.size()) throw std::invalid_argument("permutation size does not match the curve count");
  std::vector<int> inv(perm.size(), -1);
  for (size_t i = 0; i < perm.size(); ++i) inv.at(static_cast<size_t>(perm[i])) = static_cast<int>(i);
  AbstractDiagram out = d;
  for (size_t i = 0; i < perm.size(); ++i) out.curves[i] = d.curves[static_cast<size_t>(perm[i])];
  for (auto& c : out.cusps) c.curve = inv[static_cast<size_t>(c.curve)];
  for (auto& b : out.boundary) b.curve = inv[static_cast<size_t>(b.curve)];
  for (auto& t : out.triples)
    for (auto& cr : t.crossings) cr[0] = inv[static_cast<size_t>(cr[0])];
  return out;
}

int strand_points_at(const AbstractDiagram& d, const Direction& phi) {
  EdgeComplex k = d.complex();
  const Algebraic& fx = phi.dx();
  const Algebraic& fy = phi.dy();
  // chord(c) = D0 + D1 c under -> over; count heights where it points along phi
  auto hits = [&](const Piece& p, const Scalar& at, bool endpoint_only) {
    int u = p.edges[static_cast<size_t>(1 - p.over)], o = p.edges[static_cast<size_t>(p.over)];
    const auto& gu = k.geom(u);
    const auto& go = k.geom(o);
    Algebraic d0x(go.x0 - gu.x0), d1x(go.x1 - gu.x1), d0y(go.y0 - gu.y0), d1y(go.y1 - gu.y1);
    auto along = [&](const Algebraic& c) {
      Algebraic vx = d0x + d1x * c, vy = d0y + d1y * c;
      return (vx * fy - vy * fx).sign() == 0 && (vx * fx + vy * fy).sign() > 0;
    };
    if (endpoint_only) return along(Algebraic(at)) ? 1 : 0;
    Algebraic alpha = d1x * fy - d1y * fx, beta = d0x * fy - d0y * fx;
    if (alpha.sign() == 0) {
      if (beta.sign() == 0) throw DegenerateDirection("a double strand is parallel to " + phi.str() + " throughout");
      return 0;
    }
    Algebraic c = -beta / alpha;
    return strictly_between(c, p.from, p.to) && along(c) ? 1 : 0;
  };
  int count = 0;
  for (const auto& c : d.curves) {
    for (size_t p = 0; p < c.pieces.size(); ++p) {
      count += hits(c.pieces[p], Scalar(0), false);
      bool last = p + 1 == c.pieces.size();
      if (!last || c.closed()) count += hits(c.pieces[p], c.pieces[p].to, true);
    }
  }
  return 2 * count;
}

}  // namespace decker
