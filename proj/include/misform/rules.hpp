#pragma once

#include "misform/grid.hpp"

namespace misform {

enum class Direction : std::uint8_t { Left, Right, Up, Down };

Coord step_to(Coord from, Direction d);
const char* direction_name(Direction d);

// What a robot does at the end of a look-compute-move cycle. Color changes
// and moves bundled in one action land atomically.
struct Action {
  enum class Kind : std::uint8_t { Noop, Move, SetColor, SetColorAndMove };
  Kind kind = Kind::Noop;
  Direction dir = Direction::Left;  // Move, SetColorAndMove
  Color color = Color::Green;       // SetColor, SetColorAndMove

  static Action noop() { return {}; }
  static Action move(Direction d) { return {Kind::Move, d, Color::Green}; }
  static Action set_color(Color c) { return {Kind::SetColor, Direction::Left, c}; }
  static Action set_color_and_move(Color c, Direction d) {
    return {Kind::SetColorAndMove, d, c};
  }
  bool moves() const { return kind == Kind::Move || kind == Kind::SetColorAndMove; }
  friend bool operator==(const Action&, const Action&) = default;
};

enum class GuardId : std::uint8_t {
  GRed,
  GLeft,
  GUp,
  GRightA,
  GDownA,
  GBlueA,
  GRightB,
  GDownB,
  GUpB,
  GBlueB,
  GDownU,
  GBlueU,
  GWait,
  BRight,
  BLeft,
  BDown,
  BRevert,
  BWait,
  RFixed,
};

const char* guard_name(GuardId g);    // "G-RED", "B-LEFT", ...
const char* guard_family(GuardId g);  // "G1".."G6", "B1".."B4", "none"

struct Decision {
  GuardId guard = GuardId::GWait;
  Action action;
  friend bool operator==(const Decision&, const Decision&) = default;
};

// The complete per-robot rule. Deterministic first-match over a fixed
// priority order; a pure function of the view alone. Throws
// std::invalid_argument on a geometrically impossible view.
Decision decide(const View& v);

}  // namespace misform
