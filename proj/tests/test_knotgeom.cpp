#include "decker/braids.hpp"
#include "decker/knotgeom.hpp"
#include "decker/samples.hpp"
#include "doctest.h"

using namespace decker;

namespace {

PLKnot unit_square() {
  PLKnot k;
  k.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  return k;
}

Direction dir(long x, long y) { return Direction(Algebraic(x), Algebraic(y)); }

}  // namespace

TEST_CASE("unit square in a horizontal plane has four horizontal edges") {
  GeometryReport r = validate_geometry(unit_square());
  CHECK(r.violations.size() == 4);
  CHECK(r.count(ViolationKind::HorizontalEdge) == 4);
  CHECK(to_string(ViolationKind::HorizontalEdge) == "horizontal edge");
}

TEST_CASE("tilted 12-gon is valid") { CHECK(validate_geometry(samples::gon12()).ok()); }

TEST_CASE("interior tangle vertex on the top plane is improper") {
  PLTangle t;
  t.height = 2;
  t.strands = {{{0, 0, 0}, {0, 1, 2}, {1, 1, 2}}, {{5, 0, 0}, {5, 0, 2}}};
  GeometryReport r = validate_geometry(t);
  CHECK(r.count(ViolationKind::ImproperEndpoint) == 1);
}

TEST_CASE("repeated vertices and crossing edges are reported") {
  PLKnot k;
  k.vertices = {{0, 0, 0}, {0, 0, 0}, {1, 0, 1}, {0, 1, 2}};
  CHECK(validate_geometry(k).count(ViolationKind::RepeatedVertex) == 1);
  PLKnot bow;  // two edges meet at (1, 1, 1)
  bow.vertices = {{0, 0, 0}, {2, 2, 2}, {2, 0, 3}, {0, 2, -1}};
  CHECK(validate_geometry(bow).count(ViolationKind::EdgeIntersection) >= 1);
}

TEST_CASE("z_extrema of the samples") {
  auto e = z_extrema(samples::gon12());
  REQUIRE(e.size() == 2);
  CHECK(e[0] == Extremum{0, ExtremumKind::Max});
  CHECK(e[1] == Extremum{6, ExtremumKind::Min});

  auto t = z_extrema(samples::trefoil60());
  CHECK(t.size() == 6);
  CHECK(std::count_if(t.begin(), t.end(), [](const Extremum& x) { return x.kind == ExtremumKind::Max; }) == 3);

  PLTangle braid = braid_to_tangle(BraidWord::parse("s1 s1^-1 s1", 2));
  CHECK(z_extrema(EdgeComplex(braid)).empty());
  CHECK_THROWS_AS(z_extrema(unit_square()), GeometryError);
}

TEST_CASE("rigid transforms") {
  PLKnot g = samples::gon12();
  PLKnot same = transform(g, Transform::identity());
  CHECK(same.vertices == g.vertices);

  PLKnot r = transform(g, Transform::rotation_z(Scalar(3, 5), Scalar(4, 5)));
  for (size_t i = 0; i < g.vertices.size(); ++i) CHECK(r.vertices[i].z == g.vertices[i].z);
  CHECK(z_extrema(r) == z_extrema(g));

  CHECK(z_extrema(transform(g, Transform::scaling(2))) == z_extrema(g));
  CHECK(z_extrema(transform(g, Transform::translation({1, 2, 3}))) == z_extrema(g));
  CHECK_THROWS_AS(Transform::rotation_z(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Transform::scaling(0), std::invalid_argument);

  auto f = z_extrema(transform(g, Transform::reflection_z()));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == Extremum{0, ExtremumKind::Min});
}

TEST_CASE("minima and maxima balance on random closed knots") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    PLKnot k = samples::random_polygon(s);
    if (!validate_geometry(k).ok()) continue;
    auto e = z_extrema(k);
    long maxima = std::count_if(e.begin(), e.end(), [](const Extremum& x) { return x.kind == ExtremumKind::Max; });
    CHECK(maxima >= 1);
    CHECK(2 * maxima == static_cast<long>(e.size()));
  }
}

TEST_CASE("Direction is a point of the circle") {
  CHECK(dir(2, 4) == dir(1, 2));
  CHECK_FALSE(dir(1, 2) == dir(-1, -2));
  CHECK(dir(3, -1).antipode().antipode() == dir(3, -1));
  CHECK(dir(0, -1).upper() == dir(0, 1));
  CHECK(dir(-1, 0).half() == 1);
  CHECK(dir(1, 0) < dir(1, 1));
  CHECK(dir(-1, 1) < dir(-1, -1));
  CHECK_THROWS_AS(dir(0, 0), std::invalid_argument);
  Direction irr(Algebraic::sqrt_of(3), Algebraic(1));  // 30 degrees
  CHECK(dir(1, 0) < irr);
  CHECK(irr < dir(1, 1));
  CHECK(irr.turns() == doctest::Approx(1.0 / 12));
}

TEST_CASE("circular order is cyclic, antisymmetric and reversed by the antipode") {
  const Direction d[] = {dir(1, 0), dir(1, 3), dir(-2, 1), dir(-1, -1), dir(2, -5)};
  for (const auto& a : d)
    for (const auto& b : d)
      for (const auto& c : d) {
        if (a == b || b == c || a == c) continue;
        CHECK(ccw_between(a, b, c) == ccw_between(b, c, a));
        CHECK(ccw_between(a, b, c) != ccw_between(c, b, a));
        CHECK(ccw_between(a.antipode(), b.antipode(), c.antipode()) == ccw_between(a, b, c));
      }
}

TEST_CASE("knot and tangle documents round-trip exactly") {
  for (const auto& name : samples::names()) {
    std::string text = to_json(samples::by_name(name));
    CHECK(to_json(parse_knot(text)) == text);
  }
  PLTangle t = braid_to_tangle(BraidWord::parse("s1 s2^-1", 3));
  std::string tt = to_json(t);
  auto back = parse_knot_document(tt);
  REQUIRE(std::holds_alternative<PLTangle>(back));
  CHECK(to_json(std::get<PLTangle>(back)) == tt);

  PLKnot k = parse_knot(R"({"closed": true, "vertices": [["0.5", "1/3", 0], [1, "2", "-7/2"], ["1e-1", 0, "3"]]})");
  CHECK(k.vertices[0].x == Scalar(1, 2));
  CHECK(k.vertices[0].y == Scalar(1, 3));
  CHECK(k.vertices[2].x == Scalar(1, 10));
  CHECK_THROWS_AS(parse_knot("{\"vertices\": [[1, 2]]}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_knot("not json"), std::invalid_argument);
}

TEST_CASE("nudge is deterministic and bounded") {
  PLKnot g = samples::gon12();
  CHECK(to_json(nudge(g, 7)) == to_json(nudge(g, 7)));
  CHECK(to_json(nudge(g, 7)) != to_json(nudge(g, 8)));
  CHECK(to_json(nudge(g, 7, Scalar(0))) == to_json(g));
  Scalar m(1, 1000);
  PLKnot p = nudge(g, 3, m);
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    CHECK(abs(p.vertices[i].x - g.vertices[i].x) <= m);
    CHECK(abs(p.vertices[i].z - g.vertices[i].z) <= m);
  }
  CHECK(bbox_extent(g) == 2);
}

TEST_CASE("rotate_start relabels cyclically") {
  PLKnot g = samples::gon12();
  PLKnot r = rotate_start(g, 5);
  CHECK(r.vertices[0] == g.vertices[5]);
  CHECK(r.vertices[11] == g.vertices[4]);
  auto e = z_extrema(r);
  CHECK(e.size() == 2);
}

TEST_CASE("reports do not depend on the common denominator") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    PLKnot k = samples::random_polygon(s);
    PLKnot scaled = transform(k, Transform::scaling(Scalar(1, 7919)));
    GeometryReport a = validate_geometry(k), b = validate_geometry(scaled);
    REQUIRE(a.violations.size() == b.violations.size());
    for (size_t i = 0; i < a.violations.size(); ++i) CHECK(a.violations[i].where == b.violations[i].where);
  }
}
