#include "misform/placements.hpp"

#include <algorithm>
#include <vector>

#include "misform/rng.hpp"

namespace misform {

Configuration random_placement(GridDims dims, std::uint64_t seed) {
  require_valid(dims);
  std::vector<Coord> cells;
  cells.reserve(dims.node_count());
  for (int i = 1; i <= dims.rows; ++i)
    for (int j = 1; j <= dims.cols; ++j) cells.push_back({i, j});

  SplitMix64 g(seed);
  const int k = dims.target_size();
  for (int i = 0; i < k; ++i) {
    std::uint64_t j = i + g.below(cells.size() - i);
    std::swap(cells[i], cells[j]);
  }
  cells.resize(k);
  std::sort(cells.begin(), cells.end());

  Configuration c;
  c.dims = dims;
  for (int i = 0; i < k; ++i) c.robots[i + 1] = {cells[i], Color::Green};
  return c;
}

Configuration packed_corner(GridDims dims, CornerAnchor corner) {
  require_valid(dims);
  const bool from_bottom = corner == CornerAnchor::SE || corner == CornerAnchor::SW;
  const bool from_right = corner == CornerAnchor::SE || corner == CornerAnchor::NE;

  Configuration c;
  c.dims = dims;
  RobotId id = 1;
  const int k = dims.target_size();
  for (int r = 0; r < dims.rows && id <= k; ++r) {
    int i = from_bottom ? dims.rows - r : 1 + r;
    for (int q = 0; q < dims.cols && id <= k; ++q) {
      int j = from_right ? dims.cols - q : 1 + q;
      c.robots[id++] = {{i, j}, Color::Green};
    }
  }
  return c;
}

Configuration target_preset(GridDims dims) {
  require_valid(dims);
  Configuration c;
  c.dims = dims;
  RobotId id = 1;
  for (Coord pos : reference_mis(dims)) c.robots[id++] = {pos, Color::Green};
  return c;
}

}  // namespace misform
