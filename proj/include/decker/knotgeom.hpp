#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decker/number.hpp"

namespace decker {

struct Point3 {
  Scalar x{0}, y{0}, z{0};

  friend bool operator==(const Point3& a, const Point3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
  friend bool operator<(const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

/// Closed PL knot (or a single open arc when closed == false).
struct PLKnot {
  std::vector<Point3> vertices;
  bool closed = true;
};

/// Arcs properly embedded in R^2 x [0, height].
struct PLTangle {
  Scalar height{1};
  std::vector<std::vector<Point3>> strands;
};

/// Position on the knot: v_edge + u (v_{edge+1} - v_edge), 0 <= u < 1.
struct KnotParam {
  int edge = 0;
  Algebraic u;

  friend bool operator==(const KnotParam& a, const KnotParam& b) { return a.edge == b.edge && a.u == b.u; }
  friend bool operator<(const KnotParam& a, const KnotParam& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.u < b.u;
  }
};

/// Point of the angular circle, stored as a horizontal vector up to positive scaling.
class Direction {
 public:
  Direction() : dx_(1), dy_(0) {}
  Direction(Algebraic dx, Algebraic dy);

  const Algebraic& dx() const { return dx_; }
  const Algebraic& dy() const { return dy_; }

  Direction antipode() const { return Direction(-dx_, -dy_); }
  /// 0 for angles in [0, pi), 1 for [pi, 2 pi).
  int half() const;
  /// Representative of {D, -D} in the upper half (half() == 0).
  Direction upper() const { return half() == 0 ? *this : antipode(); }

  /// Total order by angle in [0, 2 pi) measured from (1, 0). Exact, works
  /// across quadratic fields.
  friend int angle_compare(const Direction& a, const Direction& b);
  friend bool operator==(const Direction& a, const Direction& b) { return angle_compare(a, b) == 0; }
  friend bool operator<(const Direction& a, const Direction& b) { return angle_compare(a, b) < 0; }

  /// Angle in [0, 1) turns, for display only.
  double turns() const;
  std::string str() const;

 private:
  Algebraic dx_, dy_;
};

/// True when b lies strictly inside the counterclockwise arc from a to c.
bool ccw_between(const Direction& a, const Direction& b, const Direction& c);

/// Edge complex shared by knots and tangles: all secant computations use it.
class EdgeComplex {
 public:
  struct Edge {
    int tail = 0, head = 0;
    int strand = 0;
  };
  // Horizontal position and knot parameter at height c are affine in c.
  struct EdgeGeom {
    Scalar zlo, zhi;
    Scalar x0, x1, y0, y1;  // x(c) = x0 + x1 c
    Scalar u0, u1;          // u(c) = u0 + u1 c
  };

  EdgeComplex() = default;
  explicit EdgeComplex(const PLKnot& k);
  explicit EdgeComplex(const PLTangle& t);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
  /// Requires a non-horizontal edge.
  const EdgeGeom& geom(int e) const { return geom_[static_cast<size_t>(e)]; }
  bool is_tangle() const { return tangle_; }
  const Scalar& tangle_height() const { return height_; }
  int strand_count() const { return strands_; }

  /// Edges incident to vertex v (one for arc endpoints, two otherwise).
  const std::vector<int>& incident(int v) const { return incident_[static_cast<size_t>(v)]; }
  bool is_endpoint(int v) const { return incident(v).size() == 1; }
  bool adjacent(int e, int f) const;
  /// Shared vertex of two adjacent edges, or -1.
  int shared_vertex(int e, int f) const;

  Point3 point_at(int e, const Scalar& c) const;
  Algebraic x_at(int e, const Algebraic& c) const;
  Algebraic y_at(int e, const Algebraic& c) const;
  KnotParam param_at(int e, const Algebraic& c) const;

  bool horizontal(int e) const;

 private:
  void build_geometry();

  std::vector<Point3> vertices_;
  std::vector<Edge> edges_;
  std::vector<EdgeGeom> geom_;
  std::vector<std::vector<int>> incident_;
  bool tangle_ = false;
  Scalar height_{0};
  int strands_ = 1;
};

enum class ViolationKind {
  TooFewVertices,
  RepeatedVertex,
  HorizontalEdge,
  EdgeIntersection,
  ImproperEndpoint,
};

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<int> where;  // vertex or edge indices, depending on kind
  std::string message;
};

struct GeometryReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  size_t count(ViolationKind k) const;
};

GeometryReport validate_geometry(const PLKnot& k);
GeometryReport validate_geometry(const PLTangle& t);

enum class ExtremumKind { Min, Max };

struct Extremum {
  int vertex;
  ExtremumKind kind;
  friend bool operator==(const Extremum&, const Extremum&) = default;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local extrema of the height function, by vertex index. Throws
/// GeometryError on a horizontal edge.
std::vector<Extremum> z_extrema(const PLKnot& k);
std::vector<Extremum> z_extrema(const EdgeComplex& c);

/// Composition x -> scale * R(x) + shift, where R rotates about the z axis
/// by a rational angle and optionally reflects z.
struct Transform {
  Scalar cos{1}, sin{0};
  Scalar scale{1};
  bool flip_z = false;
  Point3 shift;

  static Transform identity() { return {}; }
  /// Throws std::invalid_argument unless cos^2 + sin^2 == 1.
  static Transform rotation_z(const Scalar& c, const Scalar& s);
  static Transform translation(const Point3& d);
  /// Throws std::invalid_argument unless k > 0.
  static Transform scaling(const Scalar& k);
  static Transform reflection_z();

  Point3 apply(const Point3& p) const;
  /// Apply the linear part to a horizontal direction.
  Direction apply(const Direction& d) const;
};

PLKnot transform(const PLKnot& k, const Transform& t);
PLTangle transform(const PLTangle& t, const Transform& tr);

/// Largest coordinate extent of the bounding box.
Scalar bbox_extent(const PLKnot& k);

/// Deterministic random rational perturbation of every coordinate by at most
/// `magnitude` (default: 1e-6 of the bounding-box extent).
PLKnot nudge(const PLKnot& k, std::uint64_t seed, std::optional<Scalar> magnitude = std::nullopt);

/// Cyclic relabeling: vertex i of the result is vertex (i + shift) mod n.
PLKnot rotate_start(const PLKnot& k, int shift);

// Knot/tangle JSON documents.
using KnotOrTangle = std::variant<PLKnot, PLTangle>;
KnotOrTangle parse_knot_document(const std::string& text);
PLKnot parse_knot(const std::string& text);
std::string to_json(const PLKnot& k);
std::string to_json(const PLTangle& t);

}  // namespace decker
