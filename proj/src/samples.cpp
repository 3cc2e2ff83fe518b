#include "decker/samples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "decker/diagram.hpp"

namespace decker::samples {

namespace {

Scalar six_places(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return parse_scalar(buf);
}

// Rotation about the x axis by the angle with cos 399/401, sin 40/401. It
// separates the equal vertex heights of the symmetric parametrizations.
Point3 tilt(const Point3& p) {
  static const Scalar c(399, 401), s(40, 401);
  return {p.x, p.y * c - p.z * s, p.y * s + p.z * c};
}

template <class F>
PLKnot sampled(int n, F f) {
  PLKnot k;
  for (int i = 0; i < n; ++i) {
    double t = 2 * std::numbers::pi * i / n;
    auto [x, y, z] = f(t);
    k.vertices.push_back(tilt({six_places(x), six_places(y), six_places(z)}));
  }
  return k;
}

}  // namespace

PLKnot gon12() {
  // (cos, sin) at multiples of 30 degrees; 56/65, 33/65 stand in for
  // cos 30, sin 30
  const Scalar a(56, 65), b(33, 65);
  const std::vector<std::pair<Scalar, Scalar>> unit = {
      {1, 0},   {a, b},   {b, a},   {0, 1},   {-b, a},  {-a, b},
      {-1, 0},  {-a, -b}, {-b, -a}, {0, -1},  {b, -a},  {a, -b},
  };
  PLKnot k;
  for (const auto& [c, s] : unit) k.vertices.push_back({c, s, c});
  return k;
}

PLKnot trefoil60() {
  return sampled(60, [](double t) {
    double r = 2 + std::cos(3 * t);
    return std::array<double, 3>{r * std::cos(2 * t), r * std::sin(2 * t), std::sin(3 * t)};
  });
}

PLKnot figure8_64() {
  return sampled(64, [](double t) {
    double r = 2 + std::cos(2 * t);
    return std::array<double, 3>{r * std::cos(3 * t), r * std::sin(3 * t), std::sin(4 * t)};
  });
}

PLKnot quadrisecant_knot(const Scalar& shift) {
  const Scalar slope[4] = {1, -1, 2, Scalar(1, 2)};
  const Scalar top[4] = {1, Scalar(11, 10), Scalar(6, 5), Scalar(13, 10)};
  const Scalar bottom[4] = {-1, Scalar(-11, 10), Scalar(-6, 5), Scalar(-13, 10)};
  auto on_line = [&](int m, const Scalar& z) {
    Scalar y = slope[m] * z + (m == 3 ? shift : Scalar(0));
    return Point3{Scalar(m + 1), y, z};
  };
  PLKnot k;
  k.vertices = {
      on_line(0, bottom[0]), on_line(0, top[0]), {Scalar(3, 2), 5, 2},
      on_line(1, top[1]),    on_line(1, bottom[1]), {Scalar(5, 2), -5, -2},
      on_line(2, bottom[2]), on_line(2, top[2]), {Scalar(7, 2), 5, Scalar(21, 10)},
      on_line(3, top[3]),    on_line(3, bottom[3]), {Scalar(5, 2), 9, -3},
  };
  return k;
}

PLKnot cusp_birth_knot(const Scalar& lift) {
  // convex plan view, so no trisecants; vertex 2 rises past vertex 1 at lift 1/2
  const int xy[8][2] = {{10, 0}, {8, 6}, {0, 10}, {-8, 6}, {-10, 0}, {-6, -8}, {0, -10}, {6, -8}};
  const Scalar z[8] = {10, 8, Scalar(13, 2) + 3 * lift, 5, 0, 1, 2, 3};
  PLKnot k;
  for (int i = 0; i < 8; ++i) k.vertices.push_back({xy[i][0], xy[i][1], z[i]});
  return k;
}

PLKnot random_polygon(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(8, 32), coord(-100, 100);
  int n = count(rng);
  std::vector<int> heights(201);
  for (int i = 0; i < 201; ++i) heights[static_cast<size_t>(i)] = i - 100;
  std::shuffle(heights.begin(), heights.end(), rng);
  PLKnot k;
  for (int i = 0; i < n; ++i) {
    int x = coord(rng), y = coord(rng);
    k.vertices.push_back({x, y, heights[static_cast<size_t>(i)]});
  }
  return k;
}

PLKnot random_generic_knot(std::uint64_t seed, std::uint64_t* used_seed) {
  for (std::uint64_t s = seed;; ++s) {
    PLKnot k = random_polygon(s);
    if (!validate_geometry(k).ok()) continue;
    if (!analyze_secants(EdgeComplex(k)).report.ok()) continue;
    if (used_seed) *used_seed = s;
    return k;
  }
}

std::vector<std::string> names() { return {"gon12", "trefoil60", "figure8-64", "quadrisecant", "cusp-birth"}; }

PLKnot by_name(const std::string& name) {
  if (name == "gon12") return gon12();
  if (name == "trefoil60") return trefoil60();
  if (name == "figure8-64") return figure8_64();
  if (name == "quadrisecant") return quadrisecant_knot(0);
  if (name == "cusp-birth") return cusp_birth_knot(0);
  throw std::invalid_argument("unknown sample " + name);
}

}  // namespace decker::samples
