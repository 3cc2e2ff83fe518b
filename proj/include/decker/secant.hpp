#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "decker/knotgeom.hpp"

namespace decker {

/// Horizontal chords between edges i < j over the open height interval
/// (lo, hi). The chord vector d(c) = p_j(c) - p_i(c) (horizontal part) is
/// affine in c and nonzero inside the interval.
struct BisecantSegment {
  int i = 0, j = 0;
  Scalar lo, hi;
  bool cusp_lo = false, cusp_hi = false;  // d vanishes at that end
  Scalar dx0, dx1, dy0, dy1;               // d(c) = (dx0 + dx1 c, dy0 + dy1 c)
  Point3 lo_i, lo_j, hi_i, hi_j;           // chord endpoints at lo and hi

  Algebraic dx(const Algebraic& c) const { return Algebraic(dx0) + Algebraic(dx1) * c; }
  Algebraic dy(const Algebraic& c) const { return Algebraic(dy0) + Algebraic(dy1) * c; }
};

class IntersectingEdges : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Empty when the z-ranges do not overlap in an open interval. Throws
/// IntersectingEdges for edges that meet away from a shared extremum vertex.
std::vector<BisecantSegment> bisecant_family(const EdgeComplex& k, int i, int j);
std::vector<BisecantSegment> all_bisecants(const EdgeComplex& k);

struct TrisecantEvent {
  std::array<int, 3> edges{};        // i < j < k
  Algebraic height;
  Direction direction;               // upper-half representative of the line
  std::array<KnotParam, 3> points;   // parallel to edges
  std::array<int, 3> order{};        // edge indices: under, middle, over along direction
};

class IdenticallyCollinear : public std::runtime_error {
 public:
  explicit IdenticallyCollinear(std::array<int, 3> e);
  std::array<int, 3> edges;
};

/// cross(p_j - p_i, p_k - p_i) = a c^2 + b c + c0
struct CollinearityPoly {
  Scalar a, b, c0;
  bool zero() const { return a == 0 && b == 0 && c0 == 0; }
  Algebraic eval(const Algebraic& c) const { return (Algebraic(a) * c + Algebraic(b)) * c + Algebraic(c0); }
};

CollinearityPoly collinearity_poly(const EdgeComplex& k, int i, int j, int l);

/// Raw root data for one edge triple on its common open height interval.
struct TripleRoots {
  bool overlap = false;
  bool identically_zero = false;
  Scalar lo, hi;
  CollinearityPoly poly;
  std::vector<Algebraic> simple;      // sorted, strictly inside (lo, hi)
  std::vector<Algebraic> tangential;  // double roots inside (lo, hi)
  std::vector<Algebraic> at_vertex;   // roots at lo/hi not explained by a cusp
};

TripleRoots triple_roots(const EdgeComplex& k, int i, int j, int l);

/// Events of one triple. Throws IdenticallyCollinear; tangential roots are
/// left to general_position().
std::vector<TrisecantEvent> trisecant_roots(const EdgeComplex& k, int i, int j, int l);

TrisecantEvent make_trisecant(const EdgeComplex& k, std::array<int, 3> edges, const Algebraic& c);

struct QuadrisecantViolation {
  std::array<int, 4> edges{};
  Algebraic height;
  Direction direction;
  std::array<KnotParam, 4> points;
};

struct Tangency {
  std::array<int, 3> edges{};
  Algebraic height;
};

struct GeneralPositionReport {
  std::vector<QuadrisecantViolation> quadrisecants;
  std::vector<Tangency> tangential;
  std::vector<Tangency> through_vertex;
  std::vector<std::array<int, 3>> identically_collinear;

  bool ok() const {
    return quadrisecants.empty() && tangential.empty() && through_vertex.empty() && identically_collinear.empty();
  }
};

struct SecantAnalysis {
  std::vector<TrisecantEvent> events;  // sorted by (height, edges)
  GeneralPositionReport report;
};

/// One pass over all edge triples: trisecant events plus every
/// general-position failure they reveal.
SecantAnalysis analyze_secants(const EdgeComplex& k);

std::vector<QuadrisecantViolation> quadrisecant_check(const EdgeComplex& k);

struct Cusp {
  int vertex = 0;
  ExtremumKind kind = ExtremumKind::Max;
  int in_edge = 0, out_edge = 0;  // edges entering / leaving the vertex
  Direction theta;                // limit of the chord from in_edge to out_edge
};

std::vector<Cusp> cusp_points(const EdgeComplex& k);

struct EquivalenceClass {
  Algebraic height;
  std::vector<KnotParam> points;  // under to over along the query direction
};

class DegenerateDirection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All horizontal chords parallel to +-phi grouped into classes.
std::vector<EquivalenceClass> classes_at_direction(const EdgeComplex& k, const Direction& phi);

}  // namespace decker
