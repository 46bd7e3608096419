#pragma once

#include <map>
#include <span>
#include <vector>

#include "reebskel/fragments.hpp"

namespace reebskel {

/// Number of connected same-tuple fragment groups per tuple.
using PixelComponentCount = std::map<std::vector<int>, int>;

/// Breadth-first flood fill over same-tuple adjacency. Kept separate from the
/// union-find collapse in build_jcn so the two can check each other.
PixelComponentCount count_fiber_components(const FragmentSet& fragments,
                                           std::span<const FragmentAdjacency> adjacency);

/// Same flood fill, grouping fragments by the value of one field only:
/// connected components of each quantized level set.
std::map<int, int> count_level_components(const FragmentSet& fragments,
                                          std::span<const FragmentAdjacency> adjacency, int field);

}  // namespace reebskel
