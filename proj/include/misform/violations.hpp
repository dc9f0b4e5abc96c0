#pragma once

#include <string>
#include <vector>

#include "misform/grid.hpp"

namespace misform {

enum class ViolationKind : std::uint8_t {
  CollisionType1,      // move onto a cell that held a robot at round start
  CollisionType2,      // two robots moved onto the same cell
  RedMoved,
  RedRecolored,
  IllegalTransition,   // a color change outside green->blue/red, blue->green
  IllegalMove,         // more than one hop, diagonal, off grid, or unactivated
  DistinctnessBroken,  // two robots share a cell
  RedOffTarget,        // red on a cell with odd coordinate sum
  RedAdjacent,
  RowOrder,            // within a row: reds, then blues, then greens
  FinalNotMis,
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::IllegalMove;
  int round = 0;
  std::vector<RobotId> ids;
  std::vector<Coord> coords;
  std::string detail;
};

std::string describe(const Violation& v);

}  // namespace misform
