#include "decker/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace decker {

KnotFamily::KnotFamily(PLKnot a, PLKnot b) : k0(std::move(a)), k1(std::move(b)) {
  if (k0.vertices.size() != k1.vertices.size())
    throw InvalidFamily("family ends need equal vertex counts");
  if (k0.closed != k1.closed) throw InvalidFamily("family ends must both be closed or both open");
}

PLKnot KnotFamily::at(const Scalar& t) const {
  PLKnot k;
  k.closed = k0.closed;
  Scalar s = 1 - t;
  for (size_t i = 0; i < k0.vertices.size(); ++i) {
    const auto& a = k0.vertices[i];
    const auto& b = k1.vertices[i];
    k.vertices.push_back({s * a.x + t * b.x, s * a.y + t * b.y, s * a.z + t * b.z});
  }
  return k;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::QuadrisecantCrossing: return "QuadrisecantCrossing";
    case EventKind::TrisecantTangency: return "TrisecantTangency";
    case EventKind::CuspBirthDeath: return "CuspBirthDeath";
    case EventKind::ExtremumHeightSwap: return "ExtremumHeightSwap";
    case EventKind::ChordTangency: return "ChordTangency";
    case EventKind::BranchPassage: return "BranchPassage";
    case EventKind::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::string to_string(Confidence c) {
  switch (c) {
    case Confidence::None: return "none";
    case Confidence::Heuristic: return "heuristic";
    case Confidence::PaperBacked: return "paper-backed";
  }
  return "none";
}

namespace {

struct Sample {
  bool valid = false;
  CanonicalCode code;
  DiagramInvariants inv;
};

bool extremum_height_tie(const PLKnot& k) {
  std::vector<Extremum> ex;
  try {
    ex = z_extrema(k);
  } catch (const GeometryError&) {
    return true;
  }
  std::set<int> is_ex;
  for (const auto& e : ex) is_ex.insert(e.vertex);
  std::map<Scalar, std::vector<int>> by_height;
  for (size_t v = 0; v < k.vertices.size(); ++v) by_height[k.vertices[v].z].push_back(static_cast<int>(v));
  for (const auto& [h, vs] : by_height)
    if (vs.size() > 1)
      for (int v : vs)
        if (is_ex.count(v)) return true;
  return false;
}

// Degenerate members of the family count as invalid samples, including
// extremum height ties that would still assemble.
Sample sample(const KnotFamily& f, const Scalar& t) {
  Sample s;
  PLKnot k = f.at(t);
  if (!validate_geometry(k).ok() || extremum_height_tie(k)) return s;
  try {
    AbstractDiagram d = assemble_diagram(k);
    s.code = canonical_code(d);
    s.inv = diagram_invariants(d);
    s.valid = true;
  } catch (const GeneralPositionFailure&) {
  }
  return s;
}

int sign_at(const Algebraic& v) { return v.sign(); }

Scalar crossing_time(const Scalar& a0, const Scalar& a1) {
  // zero of (1 - t) a0 + t a1
  return a0 / (a0 - a1);
}

struct TripleKey {
  std::array<int, 3> e;
  friend bool operator<(const TripleKey& a, const TripleKey& b) { return a.e < b.e; }
};

std::map<TripleKey, std::vector<const TrisecantEvent*>> by_triple(const SecantAnalysis& an) {
  std::map<TripleKey, std::vector<const TrisecantEvent*>> out;
  for (const auto& e : an.events) out[{e.edges}].push_back(&e);
  for (auto& [k, v] : out)
    std::sort(v.begin(), v.end(), [](const TrisecantEvent* a, const TrisecantEvent* b) { return a->height < b->height; });
  return out;
}

bool active(const EdgeComplex& k, int e, const Algebraic& c) {
  const auto& g = k.geom(e);
  return Algebraic(g.zlo) < c && c < Algebraic(g.zhi);
}

int side_of(const EdgeComplex& k, int i, int j, int m, const Algebraic& c) {
  Algebraic xi = k.x_at(i, c), yi = k.y_at(i, c);
  Algebraic vx = k.x_at(j, c) - xi, vy = k.y_at(j, c) - yi;
  Algebraic wx = k.x_at(m, c) - xi, wy = k.y_at(m, c) - yi;
  return sign_at(vx * wy - vy * wx);
}

// Height of the root of triple t nearest to `near`, if any.
std::optional<double> nearest_root(const std::map<TripleKey, std::vector<const TrisecantEvent*>>& roots,
                                   std::array<int, 3> t, double near) {
  std::sort(t.begin(), t.end());
  auto it = roots.find({t});
  if (it == roots.end()) return std::nullopt;
  std::optional<double> best;
  for (const auto* e : it->second) {
    double h = e->height.to_double();
    if (!best || std::abs(h - near) < std::abs(*best - near)) best = h;
  }
  return best;
}

std::vector<int> order_of(const std::vector<double>& h) {
  std::vector<int> idx(h.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return h[static_cast<size_t>(a)] < h[static_cast<size_t>(b)]; });
  return idx;
}

}  // namespace

std::vector<Witness> detect(const KnotFamily& f, const Scalar& lo, const Scalar& hi) {
  PLKnot klo = f.at(lo), khi = f.at(hi);
  EdgeComplex elo(klo), ehi(khi);
  std::vector<Witness> out;
  std::set<int> moved_vertices;
  const int nv = elo.vertex_count();

  // extremum creation / destruction: an edge turns horizontal
  for (int e = 0; e < elo.edge_count(); ++e) {
    const auto& ed = elo.edge(e);
    Scalar d0 = klo.vertices[static_cast<size_t>(ed.head)].z - klo.vertices[static_cast<size_t>(ed.tail)].z;
    Scalar d1 = khi.vertices[static_cast<size_t>(ed.head)].z - khi.vertices[static_cast<size_t>(ed.tail)].z;
    if (sign(d0) == sign(d1)) continue;
    Witness w;
    w.kind = EventKind::CuspBirthDeath;
    w.edges = {e};
    w.vertices = {ed.tail, ed.head};
    Scalar f0 = f.k0.vertices[static_cast<size_t>(ed.head)].z - f.k0.vertices[static_cast<size_t>(ed.tail)].z;
    Scalar f1 = f.k1.vertices[static_cast<size_t>(ed.head)].z - f.k1.vertices[static_cast<size_t>(ed.tail)].z;
    w.t_exact = crossing_time(f0, f1);
    w.height = Algebraic(f.at(*w.t_exact).vertices[static_cast<size_t>(ed.tail)].z);
    moved_vertices.insert(ed.tail);
    moved_vertices.insert(ed.head);
    out.push_back(w);
  }

  // height collisions between non-adjacent vertices, one of them extremal
  {
    std::set<int> ext;
    for (const auto& x : z_extrema(elo)) ext.insert(x.vertex);
    for (const auto& x : z_extrema(ehi)) ext.insert(x.vertex);
    for (int v = 0; v < nv; ++v) {
      for (int w = v + 1; w < nv; ++w) {
        bool adjacent = false;
        for (int e : elo.incident(v)) {
          const auto& ed = elo.edge(e);
          if (ed.head == w || ed.tail == w) adjacent = true;
        }
        if (adjacent) continue;
        int ev = static_cast<int>(ext.count(v)) + static_cast<int>(ext.count(w));
        if (ev == 0) continue;
        Scalar d0 = klo.vertices[static_cast<size_t>(v)].z - klo.vertices[static_cast<size_t>(w)].z;
        Scalar d1 = khi.vertices[static_cast<size_t>(v)].z - khi.vertices[static_cast<size_t>(w)].z;
        if (sign(d0) == sign(d1)) continue;
        Witness wt;
        wt.kind = ev == 2 ? EventKind::ExtremumHeightSwap : EventKind::ChordTangency;
        wt.vertices = {v, w};
        Scalar f0 = f.k0.vertices[static_cast<size_t>(v)].z - f.k0.vertices[static_cast<size_t>(w)].z;
        Scalar f1 = f.k1.vertices[static_cast<size_t>(v)].z - f.k1.vertices[static_cast<size_t>(w)].z;
        wt.t_exact = crossing_time(f0, f1);
        wt.height = Algebraic(f.at(*wt.t_exact).vertices[static_cast<size_t>(v)].z);
        moved_vertices.insert(v);
        moved_vertices.insert(w);
        out.push_back(wt);
      }
    }
  }

  SecantAnalysis alo = analyze_secants(elo), ahi = analyze_secants(ehi);
  auto rlo = by_triple(alo), rhi = by_triple(ahi);

  // quadrisecants: a fourth edge crosses the line of a persisting trisecant
  std::set<std::array<int, 4>> seen;
  for (const auto& [key, lows] : rlo) {
    auto it = rhi.find(key);
    if (it == rhi.end() || it->second.size() != lows.size()) continue;
    const auto& highs = it->second;
    auto [i, j, k] = key.e;
    for (size_t r = 0; r < lows.size(); ++r) {
      const Algebraic& clo = lows[r]->height;
      const Algebraic& chi = highs[r]->height;
      for (int m = 0; m < elo.edge_count(); ++m) {
        if (m == i || m == j || m == k) continue;
        if (!active(elo, m, clo) || !active(ehi, m, chi)) continue;
        int s0 = side_of(elo, i, j, m, clo), s1 = side_of(ehi, i, j, m, chi);
        if (s0 == 0 || s1 == 0 || s0 == s1) continue;
        std::array<int, 4> q{i, j, k, m};
        std::sort(q.begin(), q.end());
        if (!seen.insert(q).second) continue;
        Witness w;
        w.kind = EventKind::QuadrisecantCrossing;
        w.edges = {q.begin(), q.end()};
        w.height = clo;
        w.direction = lows[r]->direction;
        Scalar ts = simplest_between(lo, hi);
        for (const auto& v : quadrisecant_check(EdgeComplex(f.at(ts)))) {
          if (v.edges == q) {
            w.t_exact = ts;
            w.height = v.height;
            w.direction = v.direction;
          }
        }
        Witness anti = w;
        anti.direction = w.direction->antipode();
        out.push_back(w);
        out.push_back(anti);
      }
    }
  }

  // trisecant births: root counts change away from moving vertices
  std::set<TripleKey> keys;
  for (const auto& [k, v] : rlo) keys.insert(k);
  for (const auto& [k, v] : rhi) keys.insert(k);
  std::set<int> ext_lo;
  for (const auto& x : z_extrema(elo)) ext_lo.insert(x.vertex);
  for (const auto& key : keys) {
    bool touches = false;
    for (int e : key.e) {
      const auto& ed = elo.edge(e);
      if (moved_vertices.count(ed.tail) || moved_vertices.count(ed.head)) touches = true;
    }
    if (touches) continue;
    auto a = rlo.find(key);
    auto b = rhi.find(key);
    int n0 = a == rlo.end() ? 0 : static_cast<int>(a->second.size());
    int n1 = b == rhi.end() ? 0 : static_cast<int>(b->second.size());
    int delta = n1 - n0;
    if (delta == 0) continue;
    Witness w;
    w.edges = {key.e.begin(), key.e.end()};
    if (delta == 2 || delta == -2) {
      w.kind = EventKind::TrisecantTangency;
      out.push_back(w);
      continue;
    }
    // a trisecant ending at a cusp: two of its edges meet at an extremum
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        int v = elo.shared_vertex(key.e[static_cast<size_t>(p)], key.e[static_cast<size_t>(q)]);
        if (v >= 0 && ext_lo.count(v)) {
          w.kind = EventKind::BranchPassage;
          w.vertices = {v};
        }
      }
    if (w.kind == EventKind::BranchPassage) out.push_back(w);
  }

  return out;
}

namespace {

bool reversed_across(const KnotFamily& f, const Scalar& lo, const Scalar& hi, const Witness& w) {
  SecantAnalysis alo = analyze_secants(EdgeComplex(f.at(lo)));
  SecantAnalysis ahi = analyze_secants(EdgeComplex(f.at(hi)));
  auto rlo = by_triple(alo), rhi = by_triple(ahi);
  double c = w.height->to_double();
  std::vector<double> hl, hh;
  const auto& e = w.edges;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<int, 3> t{};
    int n = 0;
    for (int a = 0; a < 4; ++a)
      if (a != skip) t[static_cast<size_t>(n++)] = e[static_cast<size_t>(a)];
    auto a = nearest_root(rlo, t, c), b = nearest_root(rhi, t, c);
    if (!a || !b) return false;
    hl.push_back(*a);
    hh.push_back(*b);
  }
  auto ol = order_of(hl), oh = order_of(hh);
  std::reverse(oh.begin(), oh.end());
  return ol == oh;
}

}  // namespace

IsotopyEvent classify_event(const RawBracket& b) {
  IsotopyEvent ev;
  ev.t_lo = b.lo;
  ev.t_hi = b.hi;
  ev.witnesses = b.witnesses;
  ev.cusp_delta = b.inv_after.cusp_count - b.inv_before.cusp_count;
  std::set<EventKind> kinds;
  for (const auto& w : b.witnesses) kinds.insert(w.kind);
  if (kinds.size() > 1) {
    std::string names;
    for (auto k : kinds) names += (names.empty() ? "" : ", ") + to_string(k);
    throw AmbiguousBracket("detectors disagree in [" + to_string(b.lo) + ", " + to_string(b.hi) + "]: " + names);
  }
  ev.kind = kinds.empty() ? EventKind::Unclassified : *kinds.begin();
  std::optional<Scalar> t;
  bool exact = !b.witnesses.empty();
  for (const auto& w : b.witnesses) {
    if (!w.t_exact) {
      exact = false;
    } else if (!t) {
      t = w.t_exact;
    } else if (*t != *w.t_exact) {
      exact = false;
    }
  }
  if (exact) ev.t_exact = t;
  switch (ev.kind) {
    case EventKind::QuadrisecantCrossing:
      ev.roseman_tag = "R7";
      ev.confidence = Confidence::PaperBacked;
      break;
    case EventKind::CuspBirthDeath:
      ev.roseman_tag = "R3/R4";
      ev.confidence = Confidence::Heuristic;
      break;
    case EventKind::ChordTangency:
      ev.roseman_tag = "R1/R2";
      ev.confidence = Confidence::Heuristic;
      break;
    case EventKind::TrisecantTangency:
      ev.roseman_tag = "R5";
      ev.confidence = Confidence::Heuristic;
      break;
    case EventKind::BranchPassage:
      ev.roseman_tag = "R6";
      ev.confidence = Confidence::Heuristic;
      break;
    case EventKind::ExtremumHeightSwap:
    case EventKind::Unclassified:
      break;
  }
  return ev;
}

std::vector<IsotopyEvent> scan_events(const KnotFamily& f, const ScanOptions& opt) {
  if (opt.resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (opt.bracket_bits < 1) throw std::invalid_argument("bracket bound must be positive");
  Sample s0 = sample(f, 0), s1 = sample(f, 1);
  if (!s0.valid) throw InvalidFamily("K0 is not in general position");
  if (!s1.valid) throw InvalidFamily("K1 is not in general position");

  Scalar eps(Integer(1), Integer(1) << opt.bracket_bits);
  eps.canonicalize();
  std::vector<RawBracket> brackets;

  auto refine = [&](auto&& self, Scalar lo, Scalar hi, Sample slo, Sample shi) -> void {
    while (hi - lo >= eps) {
      Scalar w = hi - lo;
      const Scalar candidates[] = {
          simplest_between(lo + w * Scalar(3, 8), lo + w * Scalar(5, 8)),
          lo + w * Scalar(65, 128),
          lo + w * Scalar(63, 128),
          lo + w * Scalar(5, 8),
          lo + w * Scalar(3, 8),
      };
      std::optional<Scalar> m;
      Sample sm;
      for (const auto& c : candidates) {
        sm = sample(f, c);
        if (sm.valid) {
          m = c;
          break;
        }
      }
      if (!m) break;
      if (sm.code == slo.code) {
        lo = *m;
        slo = sm;
      } else if (sm.code == shi.code) {
        hi = *m;
        shi = sm;
      } else {
        self(self, lo, *m, slo, sm);
        self(self, *m, hi, sm, shi);
        return;
      }
    }
    RawBracket b;
    b.lo = lo;
    b.hi = hi;
    b.before = slo.code;
    b.after = shi.code;
    b.inv_before = slo.inv;
    b.inv_after = shi.inv;
    brackets.push_back(std::move(b));
  };

  Scalar prev_t = 0;
  Sample prev = s0;
  for (int i = 1; i <= opt.resolution; ++i) {
    Scalar t(i, opt.resolution);
    t.canonicalize();
    Sample s = i == opt.resolution ? s1 : sample(f, t);
    if (!s.valid) continue;
    if (!(s.code == prev.code)) refine(refine, prev_t, t, prev, s);
    prev_t = t;
    prev = s;
  }

  std::vector<IsotopyEvent> events;
  for (auto& b : brackets) {
    b.witnesses = detect(f, b.lo, b.hi);
    IsotopyEvent ev;
    try {
      ev = classify_event(b);
    } catch (const AmbiguousBracket& e) {
      throw ResolutionTooCoarse(e.what());
    }
    if (ev.kind == EventKind::QuadrisecantCrossing)
      ev.order_reversed = reversed_across(f, b.lo, b.hi, ev.witnesses.front());
    events.push_back(std::move(ev));
  }
  std::sort(events.begin(), events.end(), [](const IsotopyEvent& a, const IsotopyEvent& b) { return a.t_lo < b.t_lo; });
  return events;
}

StabilityReport perturb_stability(const PLKnot& k, std::optional<Scalar> magnitude, int trials, std::uint64_t seed) {
  StabilityReport rep;
  rep.trials = trials;
  CanonicalCode base = canonical_code(assemble_diagram(k));
  for (int i = 0; i < trials; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    PLKnot p = nudge(k, s, magnitude);
    bool same = false;
    try {
      same = canonical_code(assemble_diagram(p)) == base;
    } catch (const GeneralPositionFailure&) {
    }
    if (same)
      ++rep.unchanged;
    else
      rep.changed.push_back({i, s, std::move(p)});
  }
  return rep;
}

PairingReport antipodal_event_pairing(const std::vector<IsotopyEvent>& events) {
  PairingReport rep;
  for (size_t n = 0; n < events.size(); ++n) {
    const auto& ev = events[n];
    std::vector<bool> used(ev.witnesses.size(), false);
    for (size_t a = 0; a < ev.witnesses.size(); ++a) {
      const auto& wa = ev.witnesses[a];
      if (!wa.direction || used[a]) continue;
      bool found = false;
      for (size_t b = a + 1; b < ev.witnesses.size() && !found; ++b) {
        const auto& wb = ev.witnesses[b];
        if (used[b] || !wb.direction || wb.kind != wa.kind || wb.edges != wa.edges) continue;
        if (*wb.direction == wa.direction->antipode()) {
          used[a] = used[b] = true;
          found = true;
          ++rep.pairs;
        }
      }
      if (!found)
        rep.unpaired.push_back("event " + std::to_string(n) + " (" + to_string(ev.kind) + ") direction " +
                               wa.direction->str() + " has no antipodal witness");
    }
  }
  return rep;
}

std::string events_to_json(const std::vector<IsotopyEvent>& events) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& ev : events) {
    json e;
    if (ev.t_exact)
      e["t"] = ev.t_exact->get_str();
    else
      e["t"] = json::array({ev.t_lo.get_str(), ev.t_hi.get_str()});
    e["bracket"] = json::array({ev.t_lo.get_str(), ev.t_hi.get_str()});
    e["kind"] = to_string(ev.kind);
    if (ev.roseman_tag.empty())
      e["roseman_tag"] = nullptr;
    else
      e["roseman_tag"] = ev.roseman_tag;
    e["confidence"] = to_string(ev.confidence);
    e["cusp_delta"] = ev.cusp_delta;
    if (ev.kind == EventKind::QuadrisecantCrossing) e["order_reversed"] = ev.order_reversed;
    json ws = json::array();
    for (const auto& w : ev.witnesses) {
      json wj;
      wj["kind"] = to_string(w.kind);
      wj["edges"] = w.edges;
      wj["vertices"] = w.vertices;
      if (w.height) wj["height"] = w.height->str();
      if (w.direction) wj["direction"] = json::array({w.direction->dx().str(), w.direction->dy().str()});
      if (w.t_exact) wj["t"] = w.t_exact->get_str();
      ws.push_back(wj);
    }
    e["witnesses"] = ws;
    arr.push_back(e);
  }
  json doc;
  doc["format"] = "decker-events/1";
  doc["events"] = arr;
  return doc.dump(1) + "\n";
}

}  // namespace decker
