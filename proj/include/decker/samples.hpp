#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decker/knotgeom.hpp"

namespace decker::samples {

/// 12-gon on the tilted ellipse (cos t, sin t, cos t), with the irrational
/// vertices replaced by nearby rational points of the unit circle.
PLKnot gon12();

/// Trefoil ((2 + cos 3t) cos 2t, (2 + cos 3t) sin 2t, sin 3t) at 60 samples.
PLKnot trefoil60();

/// Figure-eight ((2 + cos 2t) cos 3t, (2 + cos 2t) sin 3t, sin 4t) at 64 samples.
PLKnot figure8_64();

/// Four edges on the lines x = m, y = a_m z (a = 1, -1, 2, 1/2) plus
/// connectors. The fourth line is shifted by `shift` in y; at shift 0 all four
/// meet the x axis at height 0.
PLKnot quadrisecant_knot(const Scalar& shift);

/// Knot with a vertex lifted by `lift`: for lift > 1/2 the vertex becomes a
/// local maximum and its successor a local minimum.
PLKnot cusp_birth_knot(const Scalar& lift);

/// Random closed polygon with 8..32 edges, integer x, y in [-100, 100] and
/// pairwise distinct integer heights. Not validated.
PLKnot random_polygon(std::uint64_t seed);

/// First random polygon from `seed` onward that is valid and in general
/// position; `used_seed` receives the accepted seed.
PLKnot random_generic_knot(std::uint64_t seed, std::uint64_t* used_seed = nullptr);

std::vector<std::string> names();
/// Throws std::invalid_argument for an unknown name.
PLKnot by_name(const std::string& name);

}  // namespace decker::samples
