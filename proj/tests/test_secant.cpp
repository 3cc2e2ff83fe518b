#include "decker/braids.hpp"
#include "decker/samples.hpp"
#include "decker/secant.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace decker;

namespace {

Direction dir(long x, long y) { return Direction(Algebraic(x), Algebraic(y)); }

}  // namespace

TEST_CASE("bisecant family of opposite 12-gon sides spans the common heights") {
  EdgeComplex k(samples::gon12());
  auto f = bisecant_family(k, 1, 10);
  REQUIRE(f.size() == 1);
  CHECK(f[0].lo == Scalar(33, 65));
  CHECK(f[0].hi == Scalar(56, 65));
  CHECK_FALSE(f[0].cusp_lo);
  CHECK_FALSE(f[0].cusp_hi);
  for (const Scalar& c : {Scalar(34, 65), Scalar(1, 2), Scalar(55, 65)}) {
    CHECK(k.point_at(1, c).z == c);
    CHECK(k.point_at(10, c).z == c);
    CHECK((f[0].dx(c).sign() != 0 || f[0].dy(c).sign() != 0));
  }
}

TEST_CASE("edges with disjoint height ranges have no bisecants") {
  PLKnot k;
  k.vertices = {{0, 0, 0}, {1, 0, 1}, {1, 1, 2}, {0, 1, 3}};
  CHECK(bisecant_family(EdgeComplex(k), 0, 2).empty());
}

TEST_CASE("adjacent edges at the maximum give a cusp-attached family") {
  EdgeComplex k(samples::gon12());
  auto f = bisecant_family(k, 0, 11);
  REQUIRE(f.size() == 1);
  CHECK(f[0].hi == 1);
  CHECK(f[0].cusp_hi);
  CHECK(f[0].dx(Algebraic(1)).sign() == 0);
  CHECK(f[0].dy(Algebraic(1)).sign() == 0);
}

TEST_CASE("a convex planar polygon has no trisecants") {
  EdgeComplex k(samples::gon12());
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int l = j + 1; l < 12; ++l) CHECK(trisecant_roots(k, i, j, l).empty());
  auto sweep = oracle::sweep_trisecants(samples::gon12(), 2000);
  CHECK(sweep.empty());
}

TEST_CASE("three lines through the x axis are collinear at height 0") {
  EdgeComplex k(samples::quadrisecant_knot(Scalar(1, 10)));
  auto ev = trisecant_roots(k, 0, 3, 6);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].height == Algebraic(0));
  CHECK(ev[0].direction == dir(1, 0));
  CHECK(ev[0].order == std::array<int, 3>{0, 3, 6});
  for (int r = 0; r < 3; ++r) {
    Algebraic y = k.y_at(ev[0].edges[r], ev[0].height);
    CHECK(y == Algebraic(0));
  }
}

TEST_CASE("coplanar vertical edges are identically collinear") {
  PLKnot k;
  k.vertices = {{0, 0, 0}, {1, 0, 1}, {2, 0, 0}, {3, 0, 1}, {3, 5, 3}, {0, 5, -2}};
  REQUIRE(validate_geometry(k).ok());
  EdgeComplex c(k);
  CHECK_THROWS_AS(trisecant_roots(c, 0, 1, 2), IdenticallyCollinear);
  auto an = analyze_secants(c);
  CHECK_FALSE(an.report.ok());
  CHECK_FALSE(an.report.identically_collinear.empty());
}

TEST_CASE("quadrisecant check") {
  CHECK(quadrisecant_check(EdgeComplex(samples::gon12())).empty());
  auto q = quadrisecant_check(EdgeComplex(samples::quadrisecant_knot(0)));
  REQUIRE(q.size() == 1);
  CHECK(q[0].edges == std::array<int, 4>{0, 3, 6, 9});
  CHECK(q[0].height == Algebraic(0));
  CHECK(q[0].direction == dir(1, 0));
  CHECK(quadrisecant_check(EdgeComplex(samples::quadrisecant_knot(Scalar(1, 10)))).empty());
  CHECK(quadrisecant_check(EdgeComplex(samples::trefoil60())).empty());
}

TEST_CASE("cusp points sit at the extrema") {
  auto g = cusp_points(EdgeComplex(samples::gon12()));
  REQUIRE(g.size() == 2);
  CHECK(g[0].vertex == 0);
  CHECK(g[1].vertex == 6);
  CHECK(cusp_points(EdgeComplex(samples::trefoil60())).size() == 6);
  CHECK(cusp_points(EdgeComplex(braid_to_tangle(BraidWord::parse("s1 s2", 3)))).empty());
}

TEST_CASE("cusp direction is the limit of the shrinking chord") {
  EdgeComplex k(samples::gon12());
  auto cusps = cusp_points(k);
  for (const auto& c : cusps) {
    auto f = bisecant_family(k, std::min(c.in_edge, c.out_edge), std::max(c.in_edge, c.out_edge));
    REQUIRE(f.size() == 1);
    Scalar near = c.kind == ExtremumKind::Max ? Scalar(f[0].hi - Scalar(1, 1000000)) : Scalar(f[0].lo + Scalar(1, 1000000));
    Direction chord(k.x_at(c.out_edge, near) - k.x_at(c.in_edge, near), k.y_at(c.out_edge, near) - k.y_at(c.in_edge, near));
    CHECK(chord == c.theta);
  }
}

TEST_CASE("classes at a direction") {
  // the rational 12-gon is planar: every chord is parallel to its plane's
  // horizontal line, so (0, 1) is the direction of all of them
  CHECK_THROWS_AS(classes_at_direction(EdgeComplex(samples::gon12()), dir(0, 1)), DegenerateDirection);
  CHECK(classes_at_direction(EdgeComplex(samples::gon12()), dir(1, 0)).empty());

  // (1, 0) is the direction of a chord through a vertex of the sampled
  // trefoil; a nearby direction is generic
  PLKnot t = samples::trefoil60();
  EdgeComplex k(t);
  CHECK_THROWS_AS(classes_at_direction(k, dir(1, 0)), DegenerateDirection);
  auto cls = classes_at_direction(k, dir(1000, 1));
  CHECK(static_cast<int>(cls.size()) == oracle::projection_crossings(t, 1000, 1));
  CHECK(cls.size() > 0);
  for (const auto& c : cls) CHECK(c.points.size() == 2);

  auto back = classes_at_direction(k, dir(-1000, -1));
  REQUIRE(back.size() == cls.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    CHECK(back[i].height == cls[i].height);
    std::vector<KnotParam> rev(cls[i].points.rbegin(), cls[i].points.rend());
    CHECK(back[i].points == rev);
  }
}

TEST_CASE("trisecant events of a random knot match the height sweep") {
  PLKnot k = samples::random_generic_knot(11);
  auto an = analyze_secants(EdgeComplex(k));
  std::vector<oracle::ExactRoot> roots;
  for (const auto& e : an.events) roots.push_back({e.edges, e.height.to_double()});
  auto m = oracle::match_roots(roots, oracle::sweep_trisecants(k));
  CHECK(m.missed == 0);
  CHECK(m.spurious == 0);
}
