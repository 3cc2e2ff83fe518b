#include "decker/knotgeom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace decker {

// ---------------------------------------------------------------- Direction

Direction::Direction(Algebraic dx, Algebraic dy) : dx_(std::move(dx)), dy_(std::move(dy)) {
  if (dx_.sign() == 0 && dy_.sign() == 0) throw std::invalid_argument("zero direction");
}

int Direction::half() const {
  int sy = dy_.sign();
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return dx_.sign() > 0 ? 0 : 1;
}

int angle_compare(const Direction& a, const Direction& b) {
  int ha = a.half(), hb = b.half();
  if (ha != hb) return ha < hb ? -1 : 1;
  bool flat_a = a.dy_.sign() == 0, flat_b = b.dy_.sign() == 0;
  if (flat_a || flat_b) {
    if (flat_a && flat_b) return 0;
    return flat_a ? -1 : 1;
  }
  // inside one half the angle grows as cot = dx/dy decreases
  Algebraic cot_a = a.dx_ / a.dy_;
  Algebraic cot_b = b.dx_ / b.dy_;
  return -compare(cot_a, cot_b);
}

double Direction::turns() const {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double t = std::atan2(dy_.to_double(), dx_.to_double()) / kTwoPi;
  if (t < 0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

std::string Direction::str() const { return "(" + dx_.str() + ", " + dy_.str() + ")"; }

bool ccw_between(const Direction& a, const Direction& b, const Direction& c) {
  int ab = angle_compare(a, b), bc = angle_compare(b, c), ac = angle_compare(a, c);
  if (ab == 0 || bc == 0) return false;
  if (ac < 0) return ab < 0 && bc < 0;
  // arc wraps through angle 0
  return ab < 0 || bc < 0;
}

// ---------------------------------------------------------------- EdgeComplex

EdgeComplex::EdgeComplex(const PLKnot& k) : vertices_(k.vertices) {
  int n = static_cast<int>(vertices_.size());
  int m = k.closed ? n : n - 1;
  for (int i = 0; i < m; ++i) edges_.push_back({i, (i + 1) % n, 0});
  build_geometry();
}

EdgeComplex::EdgeComplex(const PLTangle& t) : tangle_(true), height_(t.height) {
  strands_ = static_cast<int>(t.strands.size());
  int s = 0;
  for (const auto& strand : t.strands) {
    int base = static_cast<int>(vertices_.size());
    vertices_.insert(vertices_.end(), strand.begin(), strand.end());
    for (int i = 0; i + 1 < static_cast<int>(strand.size()); ++i) edges_.push_back({base + i, base + i + 1, s});
    ++s;
  }
  build_geometry();
}

void EdgeComplex::build_geometry() {
  incident_.assign(vertices_.size(), {});
  geom_.resize(edges_.size());
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    incident_[static_cast<size_t>(ed.tail)].push_back(e);
    if (ed.head != ed.tail) incident_[static_cast<size_t>(ed.head)].push_back(e);
    const Point3& a = vertices_[static_cast<size_t>(ed.tail)];
    const Point3& b = vertices_[static_cast<size_t>(ed.head)];
    EdgeGeom& g = geom_[static_cast<size_t>(e)];
    g.zlo = std::min(a.z, b.z);
    g.zhi = std::max(a.z, b.z);
    if (a.z == b.z) continue;
    Scalar dz = b.z - a.z;
    g.x1 = (b.x - a.x) / dz;
    g.x0 = a.x - g.x1 * a.z;
    g.y1 = (b.y - a.y) / dz;
    g.y0 = a.y - g.y1 * a.z;
    g.u1 = Scalar(1) / dz;
    g.u0 = -a.z / dz;
  }
}

bool EdgeComplex::adjacent(int e, int f) const { return shared_vertex(e, f) >= 0; }

int EdgeComplex::shared_vertex(int e, int f) const {
  if (e == f) return -1;
  const Edge& a = edge(e);
  const Edge& b = edge(f);
  if (a.tail == b.tail || a.tail == b.head) return a.tail;
  if (a.head == b.tail || a.head == b.head) return a.head;
  return -1;
}

bool EdgeComplex::horizontal(int e) const {
  return vertices_[static_cast<size_t>(edge(e).tail)].z == vertices_[static_cast<size_t>(edge(e).head)].z;
}

Point3 EdgeComplex::point_at(int e, const Scalar& c) const {
  const EdgeGeom& g = geom(e);
  return Point3{g.x0 + g.x1 * c, g.y0 + g.y1 * c, c};
}

Algebraic EdgeComplex::x_at(int e, const Algebraic& c) const {
  const EdgeGeom& g = geom(e);
  return Algebraic(g.x0) + Algebraic(g.x1) * c;
}

Algebraic EdgeComplex::y_at(int e, const Algebraic& c) const {
  const EdgeGeom& g = geom(e);
  return Algebraic(g.y0) + Algebraic(g.y1) * c;
}

KnotParam EdgeComplex::param_at(int e, const Algebraic& c) const {
  const EdgeGeom& g = geom(e);
  return KnotParam{e, Algebraic(g.u0) + Algebraic(g.u1) * c};
}

// ---------------------------------------------------------------- validation

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::TooFewVertices: return "too few vertices";
    case ViolationKind::RepeatedVertex: return "repeated consecutive vertex";
    case ViolationKind::HorizontalEdge: return "horizontal edge";
    case ViolationKind::EdgeIntersection: return "edge-edge intersection";
    case ViolationKind::ImproperEndpoint: return "improper endpoint/interior height";
  }
  return "?";
}

size_t GeometryReport::count(ViolationKind k) const {
  return static_cast<size_t>(
      std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
}

namespace {

void add(GeometryReport& r, ViolationKind k, std::vector<int> where, const std::string& detail) {
  r.violations.push_back({k, std::move(where), to_string(k) + ": " + detail});
}

// Edges i, j intersect iff p_j(c) - p_i(c) vanishes for some c in the common
// closed height range.
bool edges_meet(const EdgeComplex& ec, int i, int j) {
  const auto& gi = ec.geom(i);
  const auto& gj = ec.geom(j);
  Scalar lo = std::max(gi.zlo, gj.zlo), hi = std::min(gi.zhi, gj.zhi);
  if (lo > hi) return false;
  Scalar dx0 = gj.x0 - gi.x0, dx1 = gj.x1 - gi.x1;
  Scalar dy0 = gj.y0 - gi.y0, dy1 = gj.y1 - gi.y1;
  int shared = ec.shared_vertex(i, j);
  if (shared >= 0) {
    // The shared vertex is a zero by construction; any other zero means the
    // edges overlap along a segment.
    return lo < hi && dx1 == 0 && dy1 == 0 && dx0 == 0 && dy0 == 0;
  }
  auto inside = [&](const Scalar& c) { return c >= lo && c <= hi; };
  if (dx1 != 0) {
    Scalar c = -dx0 / dx1;
    return inside(c) && dy0 + dy1 * c == 0;
  }
  if (dx0 != 0) return false;
  if (dy1 != 0) return inside(Scalar(-dy0 / dy1));
  return dy0 == 0;
}

void check_complex(const EdgeComplex& ec, GeometryReport& r) {
  const auto& v = ec.vertices();
  std::vector<bool> usable(static_cast<size_t>(ec.edge_count()), true);
  for (int e = 0; e < ec.edge_count(); ++e) {
    const auto& ed = ec.edge(e);
    if (v[static_cast<size_t>(ed.tail)] == v[static_cast<size_t>(ed.head)]) {
      add(r, ViolationKind::RepeatedVertex, {ed.tail, ed.head},
          "vertices " + std::to_string(ed.tail) + " and " + std::to_string(ed.head));
      usable[static_cast<size_t>(e)] = false;
    } else if (ec.horizontal(e)) {
      add(r, ViolationKind::HorizontalEdge, {e}, "edge " + std::to_string(e));
      usable[static_cast<size_t>(e)] = false;
    }
  }
  for (int i = 0; i < ec.edge_count(); ++i) {
    if (!usable[static_cast<size_t>(i)]) continue;
    for (int j = i + 1; j < ec.edge_count(); ++j) {
      if (!usable[static_cast<size_t>(j)]) continue;
      if (edges_meet(ec, i, j))
        add(r, ViolationKind::EdgeIntersection, {i, j},
            "edges " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
}

}  // namespace

GeometryReport validate_geometry(const PLKnot& k) {
  GeometryReport r;
  size_t need = k.closed ? 3 : 2;
  if (k.vertices.size() < need) {
    add(r, ViolationKind::TooFewVertices, {}, std::to_string(k.vertices.size()) + " vertices");
    return r;
  }
  check_complex(EdgeComplex(k), r);
  return r;
}

GeometryReport validate_geometry(const PLTangle& t) {
  GeometryReport r;
  if (t.height <= 0) add(r, ViolationKind::ImproperEndpoint, {}, "tangle height must be positive");
  int base = 0;
  for (const auto& strand : t.strands) {
    if (strand.size() < 2) {
      add(r, ViolationKind::TooFewVertices, {base}, "strand with " + std::to_string(strand.size()) + " vertices");
      base += static_cast<int>(strand.size());
      continue;
    }
    for (size_t i = 0; i < strand.size(); ++i) {
      const Scalar& z = strand[i].z;
      bool end = (i == 0 || i + 1 == strand.size());
      bool ok = end ? (z == 0 || z == t.height) : (z > 0 && z < t.height);
      if (!ok)
        add(r, ViolationKind::ImproperEndpoint, {base + static_cast<int>(i)},
            "vertex " + std::to_string(base + static_cast<int>(i)) + " at z = " + z.get_str());
    }
    base += static_cast<int>(strand.size());
  }
  check_complex(EdgeComplex(t), r);
  return r;
}

// ---------------------------------------------------------------- extrema

std::vector<Extremum> z_extrema(const EdgeComplex& c) {
  std::vector<Extremum> out;
  for (int e = 0; e < c.edge_count(); ++e)
    if (c.horizontal(e)) throw GeometryError("horizontal edge " + std::to_string(e) + ": extremum undefined");
  const auto& v = c.vertices();
  for (int i = 0; i < c.vertex_count(); ++i) {
    const auto& inc = c.incident(i);
    if (inc.size() != 2) continue;
    auto other = [&](int e) {
      const auto& ed = c.edge(e);
      return ed.tail == i ? ed.head : ed.tail;
    };
    const Scalar& z = v[static_cast<size_t>(i)].z;
    int s0 = sgn(Scalar(v[static_cast<size_t>(other(inc[0]))].z - z));
    int s1 = sgn(Scalar(v[static_cast<size_t>(other(inc[1]))].z - z));
    if (s0 == s1) out.push_back({i, s0 < 0 ? ExtremumKind::Max : ExtremumKind::Min});
  }
  return out;
}

std::vector<Extremum> z_extrema(const PLKnot& k) { return z_extrema(EdgeComplex(k)); }

// ---------------------------------------------------------------- transforms

Transform Transform::rotation_z(const Scalar& c, const Scalar& s) {
  if (c * c + s * s != 1) throw std::invalid_argument("rotation parameters are not a rational point on the unit circle");
  Transform t;
  t.cos = c;
  t.sin = s;
  return t;
}

Transform Transform::translation(const Point3& d) {
  Transform t;
  t.shift = d;
  return t;
}

Transform Transform::scaling(const Scalar& k) {
  if (k <= 0) throw std::invalid_argument("scaling factor must be positive");
  Transform t;
  t.scale = k;
  return t;
}

Transform Transform::reflection_z() {
  Transform t;
  t.flip_z = true;
  return t;
}

Point3 Transform::apply(const Point3& p) const {
  Scalar x = cos * p.x - sin * p.y;
  Scalar y = sin * p.x + cos * p.y;
  Scalar z = flip_z ? Scalar(-p.z) : p.z;
  return Point3{scale * x + shift.x, scale * y + shift.y, scale * z + shift.z};
}

Direction Transform::apply(const Direction& d) const {
  return Direction(Algebraic(cos) * d.dx() - Algebraic(sin) * d.dy(), Algebraic(sin) * d.dx() + Algebraic(cos) * d.dy());
}

PLKnot transform(const PLKnot& k, const Transform& t) {
  PLKnot out = k;
  for (auto& p : out.vertices) p = t.apply(p);
  return out;
}

PLTangle transform(const PLTangle& t, const Transform& tr) {
  PLTangle out = t;
  for (auto& s : out.strands)
    for (auto& p : s) p = tr.apply(p);
  out.height = tr.scale * t.height;
  return out;
}

Scalar bbox_extent(const PLKnot& k) {
  if (k.vertices.empty()) return Scalar(0);
  Point3 lo = k.vertices.front(), hi = lo;
  for (const auto& p : k.vertices) {
    lo.x = std::min(lo.x, p.x), hi.x = std::max(hi.x, p.x);
    lo.y = std::min(lo.y, p.y), hi.y = std::max(hi.y, p.y);
    lo.z = std::min(lo.z, p.z), hi.z = std::max(hi.z, p.z);
  }
  return std::max({Scalar(hi.x - lo.x), Scalar(hi.y - lo.y), Scalar(hi.z - lo.z)});
}

PLKnot nudge(const PLKnot& k, std::uint64_t seed, std::optional<Scalar> magnitude) {
  Scalar mag = magnitude ? *magnitude : Scalar(bbox_extent(k) / 1000000);
  std::mt19937_64 rng(seed);
  // offsets are multiples of mag / 2^20 in [-mag, mag]
  constexpr std::uint64_t kSteps = 1u << 20;
  auto offset = [&]() {
    std::uint64_t r = rng() % (2 * kSteps + 1);
    Scalar f(Integer(static_cast<unsigned long>(r)) - Integer(static_cast<unsigned long>(kSteps)),
             Integer(static_cast<unsigned long>(kSteps)));
    f.canonicalize();
    return Scalar(mag * f);
  };
  PLKnot out = k;
  for (auto& p : out.vertices) {
    p.x += offset();
    p.y += offset();
    p.z += offset();
  }
  return out;
}

PLKnot rotate_start(const PLKnot& k, int shift) {
  PLKnot out = k;
  int n = static_cast<int>(k.vertices.size());
  if (n == 0) return out;
  for (int i = 0; i < n; ++i) out.vertices[static_cast<size_t>(i)] = k.vertices[static_cast<size_t>(((i + shift) % n + n) % n)];
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

Scalar coordinate(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Integer(std::to_string(j.get<long long>())));
  if (j.is_number_float()) {
    // shortest decimal that round-trips, then exact
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_scalar(os.str());
  }
  throw std::invalid_argument("coordinate must be a string or number");
}

std::vector<Point3> point_list(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vertex list must be an array");
  std::vector<Point3> pts;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 3) throw std::invalid_argument("vertex must be [x, y, z]");
    pts.push_back(Point3{coordinate(v[0]), coordinate(v[1]), coordinate(v[2])});
  }
  return pts;
}

json point_json(const Point3& p) { return json::array({p.x.get_str(), p.y.get_str(), p.z.get_str()}); }

}  // namespace

KnotOrTangle parse_knot_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("knot document must be an object");
  if (j.contains("strands")) {
    PLTangle t;
    if (!j.contains("height")) throw std::invalid_argument("tangle document needs \"height\"");
    t.height = coordinate(j["height"]);
    for (const auto& s : j["strands"]) t.strands.push_back(point_list(s));
    return t;
  }
  if (!j.contains("vertices")) throw std::invalid_argument("knot document needs \"vertices\"");
  PLKnot k;
  k.closed = j.value("closed", true);
  k.vertices = point_list(j["vertices"]);
  if (k.vertices.empty()) throw std::invalid_argument("vertex list is empty");
  return k;
}

PLKnot parse_knot(const std::string& text) {
  auto doc = parse_knot_document(text);
  if (auto* k = std::get_if<PLKnot>(&doc)) return *k;
  throw std::invalid_argument("expected a knot document, found a tangle");
}

std::string to_json(const PLKnot& k) {
  json j;
  j["closed"] = k.closed;
  j["vertices"] = json::array();
  for (const auto& p : k.vertices) j["vertices"].push_back(point_json(p));
  return j.dump(1) + "\n";
}

std::string to_json(const PLTangle& t) {
  json j;
  j["closed"] = false;
  j["height"] = t.height.get_str();
  j["strands"] = json::array();
  for (const auto& s : t.strands) {
    json arr = json::array();
    for (const auto& p : s) arr.push_back(point_json(p));
    j["strands"].push_back(arr);
  }
  return j.dump(1) + "\n";
}

}  // namespace decker
