#include "decker/braids.hpp"
#include "decker/diagram.hpp"
#include "decker/samples.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <numeric>
#include <set>

using namespace decker;

namespace {

const AbstractDiagram& trefoil() {
  static const AbstractDiagram d = assemble_diagram(samples::trefoil60());
  return d;
}

Direction dir(long x, long y) { return Direction(Algebraic(x), Algebraic(y)); }

}  // namespace

TEST_CASE("12-gon diagram: two cusp-to-cusp curves, no triples") {
  AbstractDiagram d = assemble_diagram(samples::gon12());
  CHECK(d.curves.size() == 2);
  for (const auto& c : d.curves) {
    CHECK(c.ends[0].kind == EndKind::Cusp);
    CHECK(c.ends[1].kind == EndKind::Cusp);
  }
  CHECK(d.cusps.size() == 4);
  CHECK(d.triples.empty());
  CHECK(to_string(diagram_invariants(d)) == "{4, 0, 2, 0, 0, [0,0]}");
  CHECK(verify_decker_axioms(d).ok());
  CHECK(canonical_code(d).text == "K(IMm)(IMm)");
}

TEST_CASE("trefoil diagram: cusp and triple doubling, all axioms") {
  const AbstractDiagram& d = trefoil();
  auto an = analyze_secants(EdgeComplex(samples::trefoil60()));
  CHECK(d.cusps.size() == 12);
  CHECK(d.cusps.size() == 2 * z_extrema(samples::trefoil60()).size());
  CHECK(d.triples.size() == 2 * an.events.size());
  AxiomReport r = verify_decker_axioms(d);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
  CHECK(r.checks.size() == 6);
}

TEST_CASE("every triple node crosses the curves of its three edge pairs") {
  const AbstractDiagram& d = trefoil();
  for (const auto& t : d.triples) {
    REQUIRE(t.preimages.size() == 3);
    std::set<std::pair<int, int>> want;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        want.insert(std::minmax(t.preimages[a].s.edge, t.preimages[b].s.edge));
    std::set<std::pair<int, int>> got;
    for (const auto& [c, p] : t.crossings) {
      const auto& cv = d.curves[static_cast<size_t>(c)];
      const auto& pc = cv.pieces[static_cast<size_t>(cv.passages[static_cast<size_t>(p)].piece)];
      got.insert(std::minmax(pc.edges[0], pc.edges[1]));
    }
    CHECK(got == want);
  }
}

TEST_CASE("trivial 2-braid: two boundary-to-boundary curves") {
  AbstractDiagram d = assemble_diagram(braid_to_tangle(BraidWord::parse("", 2)));
  CHECK(d.curves.size() == 2);
  for (const auto& c : d.curves) {
    CHECK(c.ends[0].kind == EndKind::Boundary);
    CHECK(c.ends[1].kind == EndKind::Boundary);
  }
  CHECK(d.cusps.empty());
  CHECK(d.triples.empty());
  CHECK(to_string(diagram_invariants(d)) == "{0, 0, 2, 0, 4, [0,0]}");
  CHECK(d.boundary.size() == 4);
  CHECK(verify_decker_axioms(d).ok());
}

TEST_CASE("general position failures are reported with their kind") {
  try {
    assemble_diagram(samples::quadrisecant_knot(0));
    FAIL("expected a failure");
  } catch (const GeneralPositionFailure& e) {
    CHECK(e.kind == FailureKind::Quadrisecant);
  }
  PLKnot sq;
  sq.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  try {
    assemble_diagram(sq);
    FAIL("expected a failure");
  } catch (const GeneralPositionFailure& e) {
    CHECK(e.kind == FailureKind::InvalidGeometry);
  }
}

TEST_CASE("hand-built violations are caught") {
  SUBCASE("over flag flips inside a curve") {
    AbstractDiagram d = trefoil();
    auto it = std::find_if(d.curves.begin(), d.curves.end(), [](const DoubleCurve& c) { return c.pieces.size() > 1; });
    REQUIRE(it != d.curves.end());
    it->pieces[1].over = 1 - it->pieces[1].over;
    AxiomReport r = verify_decker_axioms(d);
    CHECK_FALSE(r.check("order continuity").passed);
  }
  SUBCASE("a class of four points") {
    AbstractDiagram d = trefoil();
    REQUIRE(!d.triples.empty());
    auto extra = d.triples[0].preimages[0];
    extra.level = 3;
    d.triples[0].preimages.push_back(extra);
    AxiomReport r = verify_decker_axioms(d);
    CHECK_FALSE(r.check("class size").passed);
  }
  SUBCASE("a cusp without its antipode") {
    AbstractDiagram d = assemble_diagram(samples::gon12());
    d.cusps[0].direction = dir(1, 1);
    CHECK_FALSE(verify_decker_axioms(d).ok());
  }
}

TEST_CASE("canonical code symmetries") {
  AbstractDiagram g = assemble_diagram(samples::gon12());
  CanonicalCode cg = canonical_code(g);
  CHECK(canonical_code(antipodal_image(g)) == cg);
  CHECK(canonical_code(relabel_curves(g, {1, 0})) == cg);
  PLKnot rot = transform(samples::gon12(), Transform::rotation_z(Scalar(3, 5), Scalar(4, 5)));
  CHECK(canonical_code(assemble_diagram(rot)) == cg);
  CHECK_FALSE(canonical_code(trefoil()) == cg);

  CanonicalCode ct = canonical_code(trefoil());
  CHECK(canonical_code(antipodal_image(trefoil())) == ct);
  std::vector<int> perm(trefoil().curves.size());
  std::iota(perm.rbegin(), perm.rend(), 0);
  CHECK(canonical_code(relabel_curves(trefoil(), perm)) == ct);
  CHECK(canonical_code(assemble_diagram(rotate_start(samples::trefoil60(), 17))) == ct);
}

TEST_CASE("diagram documents round-trip byte for byte") {
  std::string text = to_json(trefoil());
  AbstractDiagram back = parse_diagram(text);
  CHECK(to_json(back) == text);
  CHECK(canonical_code(back) == canonical_code(trefoil()));
  CHECK(verify_decker_axioms(back).ok());
  AbstractDiagram b = alpha_tangle(braid_to_tangle(BraidWord::parse("s1 s2^-1", 3)));
  CHECK(to_json(parse_diagram(to_json(b))) == to_json(b));
  CHECK_THROWS_AS(parse_diagram("{}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_diagram("[1,"), std::invalid_argument);
}

TEST_CASE("strand points at a direction match projection crossings") {
  PLKnot k = samples::random_generic_knot(5);
  AbstractDiagram d = assemble_diagram(k);
  for (auto [a, b] : {std::pair{1000, 7}, {-13, 997}, {351, -602}, {-870, -1}}) {
    CHECK(strand_points_at(d, dir(a, b)) == 2 * oracle::projection_crossings(k, a, b));
  }
}
