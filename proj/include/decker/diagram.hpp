#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "decker/knotgeom.hpp"
#include "decker/secant.hpp"

namespace decker {

/// Point (s, phi) of the torus S(K) = K x S^1.
struct TorusPoint {
  KnotParam s;
  Direction phi;
};

/// One bisecant segment traversed inside a double curve. Strand t follows
/// edges[t]; heights run from `from` to `to`.
struct Piece {
  std::array<int, 2> edges{};
  Scalar from, to;
  int over = 1;  // index of the strand lying over

  bool up() const { return from < to; }
};

/// A triple point met by a double curve. levels[t] is the height rank
/// (0 under, 1 middle, 2 over) of strand t's point in the triple class.
struct Passage {
  int node = 0;
  std::array<int, 2> levels{};
  int piece = 0;
  Algebraic height;
};

enum class EndKind { Cusp, Boundary, Closed };

struct CurveEnd {
  EndKind kind = EndKind::Closed;
  int index = -1;  // into cusps or boundary
};

struct DoubleCurve {
  std::vector<Piece> pieces;
  std::array<CurveEnd, 2> ends;  // at the first and last piece
  std::vector<Passage> passages;  // in traversal order

  bool closed() const { return ends[0].kind == EndKind::Closed; }
};

struct CuspPoint {
  int vertex = 0;
  ExtremumKind kind = ExtremumKind::Max;
  Direction direction;
  int curve = -1, end = -1;
};

struct TriplePreimage {
  KnotParam s;
  int level = 0;
};

struct TriplePointNode {
  int event = 0;  // index into the trisecant event list
  Algebraic height;
  Direction direction;  // from the under point toward the over point
  std::vector<TriplePreimage> preimages;
  /// (curve, passage) per level pair (0,1), (1,2), (0,2).
  std::array<std::array<int, 2>, 3> crossings{};
};

struct BoundaryTag {
  int curve = -1, end = -1;
  Scalar height;
  std::array<int, 2> vertices{};  // strand endpoints of strand 0 and 1
  Direction direction;
  int plane = 0;  // 0 bottom, 1 top, 2 free end of an open arc
};

/// The abstract 2-surface diagram D(K): double curves on the torus with
/// over/under data, cusps and triple points.
struct AbstractDiagram {
  KnotOrTangle source;
  int knot_size = 0;
  std::vector<DoubleCurve> curves;
  std::vector<CuspPoint> cusps;
  std::vector<TriplePointNode> triples;
  std::vector<BoundaryTag> boundary;

  EdgeComplex complex() const;
};

enum class FailureKind {
  InvalidGeometry,
  Quadrisecant,
  TangentialTrisecant,
  TrisecantThroughVertex,
  IdenticallyCollinear,
  AmbiguousGluing,
};

class GeneralPositionFailure : public std::runtime_error {
 public:
  GeneralPositionFailure(FailureKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  FailureKind kind;
};

class AssemblyInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

AbstractDiagram assemble_diagram(const PLKnot& k);
AbstractDiagram assemble_diagram(const PLTangle& t);
AbstractDiagram assemble_diagram(const KnotOrTangle& src);
/// Reuses an existing secant analysis of the same input.
AbstractDiagram assemble_diagram(const KnotOrTangle& src, const SecantAnalysis& analysis);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  const AxiomCheck& check(const std::string& name) const;
};

AxiomReport verify_decker_axioms(const AbstractDiagram& d);

struct DiagramInvariants {
  int cusp_count = 0;
  int triple_count = 0;
  int curve_count = 0;
  int closed_curve_count = 0;
  int boundary_end_count = 0;
  std::vector<int> crossing_lengths;  // ascending

  friend bool operator==(const DiagramInvariants&, const DiagramInvariants&) = default;
};

DiagramInvariants diagram_invariants(const AbstractDiagram& d);
std::string to_string(const DiagramInvariants& inv);

struct CanonicalCode {
  std::string text;
  std::string hex() const;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const AbstractDiagram& d);

/// Image under (s, phi) -> (s, -phi) with every over/under flag reversed.
AbstractDiagram antipodal_image(const AbstractDiagram& d);

/// Curves permuted by `perm` (new index i holds old curve perm[i]).
AbstractDiagram relabel_curves(const AbstractDiagram& d, const std::vector<int>& perm);

/// Torus points where some double curve strand sits at direction phi.
int strand_points_at(const AbstractDiagram& d, const Direction& phi);

/// Chord direction (under toward over) of piece p at height c.
Direction piece_direction(const EdgeComplex& k, const Piece& p, const Algebraic& c);

// "decker-diagram/1" documents
std::string to_json(const AbstractDiagram& d);
AbstractDiagram parse_diagram(const std::string& text);

}  // namespace decker
