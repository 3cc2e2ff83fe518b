#pragma once

#include <string>

#include "decker/diagram.hpp"

namespace decker {

struct RenderOptions {
  int size = 600;  // chart side in pixels
  std::string over_color = "#1f4e9c";
  std::string under_color = "#c0392b";
  std::string cusp_color = "#000000";
  std::string triple_color = "#2e7d32";
  int samples_per_piece = 16;
};

/// SVG 1.1 chart of the torus: knot parameter s across, chord direction phi
/// (in turns from (1, 0)) up. One path per strand of each double curve, over
/// solid and under dashed; cusps as dots; triple preimages as triangles.
std::string render_svg(const AbstractDiagram& d, const RenderOptions& opt = {});

}  // namespace decker
