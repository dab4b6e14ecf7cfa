#pragma once

#include <string>

#include "stab/geometry.hpp"

namespace stab {

// SVG scene: rect outlines, bold solution segments, a small legend. The
// y-axis is flipped so larger y renders upward.
std::string render_svg(const Instance& inst, const Solution* sol);

}  // namespace stab
