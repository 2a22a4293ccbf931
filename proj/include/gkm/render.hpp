#pragma once

#include <string>

#include "gkm/io.hpp"

namespace gkm {

/// Draws the linear realization of a document whose vertices all carry
/// lattice positions: a dotted unit grid, straight edge segments, vertex
/// dots, and the weight of each edge pair at its midpoint. Throws
/// PreconditionUnmetError when positions are missing.
std::string render_svg(const GraphDocument& doc);

}  // namespace gkm
