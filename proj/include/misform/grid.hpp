#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace misform {

struct Coord {
  int i = 0;  // row, 1-based, row 1 is the top row
  int j = 0;  // column, 1-based, column 1 is the leftmost
  friend auto operator<=>(const Coord&, const Coord&) = default;  // row-major
};

int manhattan(Coord a, Coord b);

// Finite oriented rectangular grid. Both sides must be at least 2.
struct GridDims {
  int rows = 0;
  int cols = 0;

  bool valid() const { return rows >= 2 && cols >= 2; }
  int node_count() const { return rows * cols; }
  int edge_count() const { return (rows - 1) * cols + rows * (cols - 1); }
  int target_size() const { return (rows * cols + 1) / 2; }  // ceil(rows*cols/2)
  bool contains(Coord c) const {
    return c.i >= 1 && c.i <= rows && c.j >= 1 && c.j <= cols;
  }
  int index(Coord c) const { return (c.i - 1) * cols + (c.j - 1); }  // row-major
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

void require_valid(GridDims d);  // throws std::invalid_argument

enum class Color : std::uint8_t { Green, Blue, Red };

char color_char(Color c);
std::optional<Color> color_from_char(char c);

// One cell as seen by a robot's camera: beyond the grid edge, empty, or
// holding a robot whose light shows `color`.
struct CellView {
  enum class Kind : std::uint8_t { Nonexistent, Vacant, Occupied };
  Kind kind = Kind::Nonexistent;
  Color color = Color::Green;  // meaningful only when Occupied

  bool exists() const { return kind != Kind::Nonexistent; }
  bool is_vacant() const { return kind == Kind::Vacant; }
  bool is_occupied() const { return kind == Kind::Occupied; }
  bool is(Color c) const { return is_occupied() && color == c; }
  bool open() const { return !exists() || is_vacant(); }  // off-grid or empty
  bool settled() const { return !exists() || is(Color::Red); }

  static CellView offgrid() { return {}; }
  static CellView vacant() { return {Kind::Vacant, Color::Green}; }
  static CellView occupied(Color c) { return {Kind::Occupied, c}; }
  friend bool operator==(const CellView&, const CellView&) = default;
};

// The full camera window: the robot's own cell plus the 12 cells within two
// hops. l/r/u/d are left/right/up/down at distance 1 and 2; nw/ne/sw/se are
// the four diagonal neighbours.
struct View {
  CellView self;
  CellView l1, l2, r1, r2, u1, u2, d1, d2;
  CellView nw, ne, sw, se;

  // Checks that the nonexistence pattern is geometrically possible on some
  // grid with both sides >= 2 and that self holds a robot.
  bool well_formed() const;
  friend bool operator==(const View&, const View&) = default;
};

using RobotId = int;

struct RobotState {
  Coord pos;
  Color color = Color::Green;
  friend bool operator==(const RobotState&, const RobotState&) = default;
};

// Global snapshot: the grid plus every robot's position and light.
struct Configuration {
  GridDims dims;
  std::map<RobotId, RobotState> robots;

  bool distinct_positions() const;
  bool standard_count() const { return (int)robots.size() == dims.target_size(); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

std::optional<Color> occupant(const Configuration& c, Coord at);

// The parity class {(i,j) : i = j (mod 2)}, sorted row-major. This is the
// one maximum independent set the robots are driven onto.
std::vector<Coord> reference_mis(GridDims d);

// Number of reference nodes in row i (1-based). Throws std::out_of_range.
int row_quota(GridDims d, int i);

// True iff `nodes` (taken as a set) is pairwise non-adjacent and has the
// maximum possible size ceil(rows*cols/2). Throws on out-of-range nodes.
bool is_maximum_independent(GridDims d, const std::vector<Coord>& nodes);

// Exhaustive search over all subsets. Refuses grids larger than 20 cells.
int brute_force_max_independent_size(GridDims d);

// The 13-cell window around the robot standing at `at`. Throws
// std::invalid_argument when no robot is there.
View extract_view(const Configuration& c, Coord at);

}  // namespace misform
