#pragma once

#include "symrigid/gain_graph.hpp"

#include <string>

namespace symrigid {

enum class RenderMode { orbit, cover };

RenderMode render_mode_from_string(const std::string& s);

// Orbit mode draws one representative per vertex orbit, with each edge running to the
// image of its head under the gain. Cover mode draws the whole finite cover, one colour per fiber.
// Dimension 3 is projected orthographically onto the first two axes after a fixed tilt.
std::string render_svg(const GainGraph& gg, const Placement& placement, RenderMode mode = RenderMode::orbit);

}  // namespace symrigid
