#pragma once

#include <cstdint>

#include "misform/grid.hpp"

namespace misform {

enum class CornerAnchor { NE, SE, SW, NW };

// ceil(mn/2) green robots on distinct uniformly drawn cells, ids 1..k.
Configuration random_placement(GridDims dims, std::uint64_t seed);

// Greens packed row by row starting from the given corner.
Configuration packed_corner(GridDims dims, CornerAnchor corner);

// Greens already sitting on the even-parity target cells.
Configuration target_preset(GridDims dims);

}  // namespace misform
