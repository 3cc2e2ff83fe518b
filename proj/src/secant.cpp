#include "decker/secant.hpp"

#include <algorithm>

namespace decker {

namespace {

Algebraic dot2(const Algebraic& ax, const Algebraic& ay, const Algebraic& bx, const Algebraic& by) {
  return ax * bx + ay * by;
}

Algebraic cross2(const Algebraic& ax, const Algebraic& ay, const Algebraic& bx, const Algebraic& by) {
  return ax * by - ay * bx;
}

struct Overlap {
  Scalar lo, hi;
  bool open() const { return lo < hi; }
};

Overlap overlap(const EdgeComplex& k, std::initializer_list<int> edges) {
  Overlap o;
  bool first = true;
  for (int e : edges) {
    const auto& g = k.geom(e);
    if (first) {
      o.lo = g.zlo;
      o.hi = g.zhi;
      first = false;
    } else {
      if (g.zlo > o.lo) o.lo = g.zlo;
      if (g.zhi < o.hi) o.hi = g.zhi;
    }
  }
  return o;
}

// The pair (a, b) among the triple shares an extremum vertex at height z.
bool cusp_explains(const EdgeComplex& k, const std::array<int, 3>& t, const Scalar& z) {
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      int v = k.shared_vertex(t[static_cast<size_t>(p)], t[static_cast<size_t>(q)]);
      if (v >= 0 && k.vertices()[static_cast<size_t>(v)].z == z) return true;
    }
  return false;
}

}  // namespace

IdenticallyCollinear::IdenticallyCollinear(std::array<int, 3> e)
    : std::runtime_error("edges " + std::to_string(e[0]) + ", " + std::to_string(e[1]) + ", " +
                         std::to_string(e[2]) + " are collinear at every common height"),
      edges(e) {}

std::vector<BisecantSegment> bisecant_family(const EdgeComplex& k, int i, int j) {
  if (i == j) throw std::invalid_argument("bisecant_family needs two distinct edges");
  if (i > j) std::swap(i, j);
  Overlap o = overlap(k, {i, j});
  if (!o.open()) return {};
  const auto& gi = k.geom(i);
  const auto& gj = k.geom(j);
  BisecantSegment s;
  s.i = i;
  s.j = j;
  s.lo = o.lo;
  s.hi = o.hi;
  s.dx0 = gj.x0 - gi.x0;
  s.dx1 = gj.x1 - gi.x1;
  s.dy0 = gj.y0 - gi.y0;
  s.dy1 = gj.y1 - gi.y1;
  auto zero_at = [&](const Scalar& c) { return s.dx0 + s.dx1 * c == 0 && s.dy0 + s.dy1 * c == 0; };
  int v = k.shared_vertex(i, j);
  if (v >= 0) {
    const Scalar& zv = k.vertices()[static_cast<size_t>(v)].z;
    if (s.dx1 == 0 && s.dy1 == 0)
      throw IntersectingEdges("edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    s.cusp_lo = (zv == s.lo);
    s.cusp_hi = (zv == s.hi);
  } else {
    bool meets = false;
    if (s.dx1 != 0) {
      Scalar c = -s.dx0 / s.dx1;
      meets = c >= s.lo && c <= s.hi && zero_at(c);
    } else if (s.dx0 == 0) {
      if (s.dy1 != 0) {
        Scalar c = -s.dy0 / s.dy1;
        meets = c >= s.lo && c <= s.hi;
      } else {
        meets = s.dy0 == 0;
      }
    }
    if (meets) throw IntersectingEdges("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
  }
  s.lo_i = k.point_at(i, s.lo);
  s.lo_j = k.point_at(j, s.lo);
  s.hi_i = k.point_at(i, s.hi);
  s.hi_j = k.point_at(j, s.hi);
  return {s};
}

std::vector<BisecantSegment> all_bisecants(const EdgeComplex& k) {
  std::vector<BisecantSegment> out;
  for (int i = 0; i < k.edge_count(); ++i)
    for (int j = i + 1; j < k.edge_count(); ++j)
      for (auto& s : bisecant_family(k, i, j)) out.push_back(std::move(s));
  return out;
}

CollinearityPoly collinearity_poly(const EdgeComplex& k, int i, int j, int l) {
  const auto& gi = k.geom(i);
  const auto& gj = k.geom(j);
  const auto& gl = k.geom(l);
  // P = p_j - p_i = (px0 + px1 c, py0 + py1 c), Q = p_l - p_i likewise
  Scalar px0 = gj.x0 - gi.x0, px1 = gj.x1 - gi.x1, py0 = gj.y0 - gi.y0, py1 = gj.y1 - gi.y1;
  Scalar qx0 = gl.x0 - gi.x0, qx1 = gl.x1 - gi.x1, qy0 = gl.y0 - gi.y0, qy1 = gl.y1 - gi.y1;
  CollinearityPoly p;
  p.a = px1 * qy1 - py1 * qx1;
  p.b = px0 * qy1 + px1 * qy0 - py0 * qx1 - py1 * qx0;
  p.c0 = px0 * qy0 - py0 * qx0;
  return p;
}

TripleRoots triple_roots(const EdgeComplex& k, int i, int j, int l) {
  TripleRoots r;
  Overlap o = overlap(k, {i, j, l});
  r.lo = o.lo;
  r.hi = o.hi;
  if (!o.open()) return r;
  r.overlap = true;
  r.poly = collinearity_poly(k, i, j, l);
  const auto& p = r.poly;
  if (p.zero()) {
    r.identically_zero = true;
    return r;
  }
  std::array<int, 3> t{i, j, l};
  auto place = [&](const Algebraic& root, bool doubled) {
    int clo = compare(root, Algebraic(o.lo)), chi = compare(root, Algebraic(o.hi));
    if (clo < 0 || chi > 0) return;
    if (clo == 0 || chi == 0) {
      if (!cusp_explains(k, t, clo == 0 ? o.lo : o.hi)) r.at_vertex.push_back(root);
      return;
    }
    (doubled ? r.tangential : r.simple).push_back(root);
  };
  if (p.a == 0) {
    if (p.b != 0) place(Algebraic(Scalar(-p.c0 / p.b)), false);
    return r;
  }
  Scalar disc = p.b * p.b - 4 * p.a * p.c0;
  if (disc < 0) return r;
  Scalar mid = -p.b / (2 * p.a);
  if (disc == 0) {
    place(Algebraic(mid), true);
    return r;
  }
  Algebraic half = Algebraic::sqrt_of(disc) * Algebraic(Scalar(1 / (2 * p.a)));
  Algebraic r1 = Algebraic(mid) - half, r2 = Algebraic(mid) + half;
  if (r2 < r1) std::swap(r1, r2);
  place(r1, false);
  place(r2, false);
  return r;
}

TrisecantEvent make_trisecant(const EdgeComplex& k, std::array<int, 3> edges, const Algebraic& c) {
  TrisecantEvent ev;
  ev.edges = edges;
  ev.height = c;
  std::array<Algebraic, 3> xs, ys;
  for (size_t a = 0; a < 3; ++a) {
    xs[a] = k.x_at(edges[a], c);
    ys[a] = k.y_at(edges[a], c);
    ev.points[a] = k.param_at(edges[a], c);
  }
  ev.direction = Direction(xs[1] - xs[0], ys[1] - ys[0]).upper();
  std::array<std::pair<Algebraic, int>, 3> along;
  for (size_t a = 0; a < 3; ++a) along[a] = {dot2(ev.direction.dx(), ev.direction.dy(), xs[a], ys[a]), edges[a]};
  std::sort(along.begin(), along.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (size_t a = 0; a < 3; ++a) ev.order[a] = along[a].second;
  return ev;
}

std::vector<TrisecantEvent> trisecant_roots(const EdgeComplex& k, int i, int j, int l) {
  std::array<int, 3> t{i, j, l};
  std::sort(t.begin(), t.end());
  TripleRoots r = triple_roots(k, t[0], t[1], t[2]);
  if (r.identically_zero) throw IdenticallyCollinear(t);
  std::vector<TrisecantEvent> out;
  for (const auto& c : r.simple) out.push_back(make_trisecant(k, t, c));
  return out;
}

SecantAnalysis analyze_secants(const EdgeComplex& k) {
  SecantAnalysis out;
  int n = k.edge_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!overlap(k, {i, j}).open()) continue;
      for (int l = j + 1; l < n; ++l) {
        TripleRoots r = triple_roots(k, i, j, l);
        if (!r.overlap) continue;
        std::array<int, 3> t{i, j, l};
        if (r.identically_zero) {
          out.report.identically_collinear.push_back(t);
          continue;
        }
        for (const auto& c : r.tangential) out.report.tangential.push_back({t, c});
        for (const auto& c : r.at_vertex) out.report.through_vertex.push_back({t, c});
        std::vector<Algebraic> candidates = r.simple;
        candidates.insert(candidates.end(), r.tangential.begin(), r.tangential.end());
        for (const auto& c : candidates) {
          // quadrisecants are found once, from their three lowest edges
          Algebraic xi = k.x_at(i, c), yi = k.y_at(i, c);
          Algebraic vx = k.x_at(j, c) - xi, vy = k.y_at(j, c) - yi;
          for (int m = l + 1; m < n; ++m) {
            const auto& g = k.geom(m);
            if (!(Algebraic(g.zlo) < c && c < Algebraic(g.zhi))) continue;
            Algebraic wx = k.x_at(m, c) - xi, wy = k.y_at(m, c) - yi;
            if (cross2(vx, vy, wx, wy).sign() != 0) continue;
            QuadrisecantViolation q;
            q.edges = {i, j, l, m};
            q.height = c;
            q.direction = Direction(vx, vy).upper();
            for (size_t a = 0; a < 4; ++a) q.points[a] = k.param_at(q.edges[a], c);
            out.report.quadrisecants.push_back(std::move(q));
          }
        }
        for (const auto& c : r.simple) out.events.push_back(make_trisecant(k, t, c));
      }
    }
  }
  std::sort(out.events.begin(), out.events.end(), [](const TrisecantEvent& a, const TrisecantEvent& b) {
    int c = compare(a.height, b.height);
    if (c != 0) return c < 0;
    return a.edges < b.edges;
  });
  return out;
}

std::vector<QuadrisecantViolation> quadrisecant_check(const EdgeComplex& k) {
  return analyze_secants(k).report.quadrisecants;
}

std::vector<Cusp> cusp_points(const EdgeComplex& k) {
  std::vector<Cusp> out;
  for (const auto& ex : z_extrema(k)) {
    Cusp c;
    c.vertex = ex.vertex;
    c.kind = ex.kind;
    for (int e : k.incident(ex.vertex)) {
      if (k.edge(e).head == ex.vertex) c.in_edge = e;
      if (k.edge(e).tail == ex.vertex) c.out_edge = e;
    }
    const auto& gi = k.geom(c.in_edge);
    const auto& go = k.geom(c.out_edge);
    // chord p_out - p_in = D1 (c - z_v); heights approach z_v from below at a max
    Scalar d1x = go.x1 - gi.x1, d1y = go.y1 - gi.y1;
    if (ex.kind == ExtremumKind::Max) {
      d1x = -d1x;
      d1y = -d1y;
    }
    c.theta = Direction(Algebraic(d1x), Algebraic(d1y));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EquivalenceClass> classes_at_direction(const EdgeComplex& k, const Direction& phi) {
  struct Chord {
    Algebraic height, offset;
    KnotParam under, over;
  };
  std::vector<Chord> chords;
  const Algebraic& fx = phi.dx();
  const Algebraic& fy = phi.dy();
  for (const auto& s : all_bisecants(k)) {
    Algebraic alpha = Algebraic(s.dx1) * fy - Algebraic(s.dy1) * fx;
    Algebraic beta = Algebraic(s.dx0) * fy - Algebraic(s.dy0) * fx;
    if (alpha.sign() == 0) {
      if (beta.sign() == 0)
        throw DegenerateDirection("chords of edges " + std::to_string(s.i) + ", " + std::to_string(s.j) +
                                  " are all parallel to " + phi.str());
      continue;
    }
    Algebraic c = -beta / alpha;
    int clo = compare(c, Algebraic(s.lo)), chi = compare(c, Algebraic(s.hi));
    if (clo < 0 || chi > 0) continue;
    if (clo == 0 || chi == 0) {
      if ((clo == 0 && s.cusp_lo) || (chi == 0 && s.cusp_hi)) continue;
      throw DegenerateDirection("direction " + phi.str() + " is a chord direction at a vertex height");
    }
    Algebraic xi = k.x_at(s.i, c), yi = k.y_at(s.i, c);
    Algebraic xj = k.x_at(s.j, c), yj = k.y_at(s.j, c);
    Chord ch;
    ch.height = c;
    ch.offset = cross2(fx, fy, xi, yi);
    bool j_over = dot2(fx, fy, xj, yj) > dot2(fx, fy, xi, yi);
    ch.under = k.param_at(j_over ? s.i : s.j, c);
    ch.over = k.param_at(j_over ? s.j : s.i, c);
    chords.push_back(std::move(ch));
  }
  std::sort(chords.begin(), chords.end(), [](const Chord& a, const Chord& b) {
    int c = compare(a.height, b.height);
    if (c != 0) return c < 0;
    return a.offset < b.offset;
  });
  std::vector<EquivalenceClass> out;
  for (size_t a = 0; a < chords.size(); ++a) {
    if (a + 1 < chords.size() && chords[a].height == chords[a + 1].height && chords[a].offset == chords[a + 1].offset)
      throw DegenerateDirection("direction " + phi.str() + " is a trisecant direction");
    out.push_back({chords[a].height, {chords[a].under, chords[a].over}});
  }
  return out;
}

}  // namespace decker
