#include "misform/rules.hpp"

#include <stdexcept>

namespace misform {

Coord step_to(Coord from, Direction d) {
  switch (d) {
    case Direction::Left: return {from.i, from.j - 1};
    case Direction::Right: return {from.i, from.j + 1};
    case Direction::Up: return {from.i - 1, from.j};
    case Direction::Down: return {from.i + 1, from.j};
  }
  return from;
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

const char* guard_name(GuardId g) {
  switch (g) {
    case GuardId::GRed: return "G-RED";
    case GuardId::GLeft: return "G-LEFT";
    case GuardId::GUp: return "G-UP";
    case GuardId::GRightA: return "G-RIGHT-A";
    case GuardId::GDownA: return "G-DOWN-A";
    case GuardId::GBlueA: return "G-BLUE-A";
    case GuardId::GRightB: return "G-RIGHT-B";
    case GuardId::GDownB: return "G-DOWN-B";
    case GuardId::GUpB: return "G-UP-B";
    case GuardId::GBlueB: return "G-BLUE-B";
    case GuardId::GDownU: return "G-DOWN-U";
    case GuardId::GBlueU: return "G-BLUE-U";
    case GuardId::GWait: return "G-WAIT";
    case GuardId::BRight: return "B-RIGHT";
    case GuardId::BLeft: return "B-LEFT";
    case GuardId::BDown: return "B-DOWN";
    case GuardId::BRevert: return "B-REVERT";
    case GuardId::BWait: return "B-WAIT";
    case GuardId::RFixed: return "R-FIXED";
  }
  return "?";
}

const char* guard_family(GuardId g) {
  switch (g) {
    case GuardId::GLeft: return "G1";
    case GuardId::GDownA:
    case GuardId::GDownB:
    case GuardId::GDownU: return "G2";
    case GuardId::GRightA:
    case GuardId::GRightB: return "G3";
    case GuardId::GUp:
    case GuardId::GUpB: return "G4";
    case GuardId::GBlueA:
    case GuardId::GBlueB:
    case GuardId::GBlueU: return "G5";
    case GuardId::GRed: return "G6";
    case GuardId::BRight: return "B1";
    case GuardId::BLeft: return "B2";
    case GuardId::BDown: return "B3";
    case GuardId::BRevert: return "B4";
    case GuardId::GWait:
    case GuardId::BWait:
    case GuardId::RFixed: return "none";
  }
  return "none";
}

namespace {

// Greens drain west and north onto the parity cells; a green pinned against
// settled reds ("anchored") spills east and, on the east boundary, south.
// Pinned robots that cannot spill turn blue; blue marks a robot queueing in
// a packed run. Blues release front-to-back, turning green again as the cell
// ahead frees up. Red is terminal.

Decision green(const View& v) {
  const CellView &l1 = v.l1, &l2 = v.l2, &r1 = v.r1, &r2 = v.r2;
  const CellView &u1 = v.u1, &u2 = v.u2, &d1 = v.d1;
  const CellView &nw = v.nw, &ne = v.ne;

  const bool anchored = (!u1.exists() && l1.is(Color::Red)) ||
                        (!l1.exists() && u1.is(Color::Red)) ||
                        (l1.is(Color::Red) && u1.is(Color::Red));
  // Forward = right, or down once on the east boundary.
  const bool blocked_fwd =
      (r1.exists() && r1.is_occupied()) ||
      (!r1.exists() && (!d1.exists() || d1.is_occupied()));
  // Moving right with r1 on the east boundary needs a clear or settled ne.
  const bool right_ok = r2.exists() || ne.open() || ne.is(Color::Red);
  const bool left_open = l1.is_vacant() && l2.open();
  // West is done: either blocked outright or a dead-end beside a red
  // sitting diagonally past the wall.
  const bool can_left = left_open && !(!l2.exists() && nw.is(Color::Red));
  // A blue overhead is mid-run and will move on, so it does not hold up a
  // settle off the east boundary.
  const bool over_clear = u1.open() || (u1.is(Color::Blue) && r1.exists());
  // A green at ne pinned by the same red that pins us cannot move west
  // into the cell above; climbing past it is safe below the top row.
  const bool ne_clear =
      ne.open() || (ne.is(Color::Green) && nw.is(Color::Red) && u2.exists());

  // Settle: nothing next to the left or above, everything two hops back
  // already settled. The two negated clauses keep the cells one hop out from
  // the top-left corner from settling off the parity class.
  if (l1.open() && over_clear && l2.settled() && u2.settled() && nw.settled() &&
      !(l1.exists() && !l2.exists() && !nw.exists()) &&
      !(u1.exists() && !u2.exists() && !nw.exists()))
    return {GuardId::GRed, Action::set_color(Color::Red)};

  // Drain west; never close onto a red two cells away.
  if (can_left)
    return {GuardId::GLeft, Action::move(Direction::Left)};

  // Climb north once the west side is settled shut or two hops from the wall.
  if (u1.is_vacant() && u2.open() && ne_clear &&
      (nw.open() || nw.is(Color::Red)) &&
      !(!u2.exists() && nw.is(Color::Red)) &&
      (!l1.exists() || l1.is(Color::Red) ||
       (l1.is_vacant() && (l2.is(Color::Red) || !l2.exists()))))
    return {GuardId::GUp, Action::move(Direction::Up)};

  if (anchored && r1.is_vacant() && right_ok)
    return {GuardId::GRightA, Action::move(Direction::Right)};

  if (anchored && !r1.exists() && d1.is_vacant())
    return {GuardId::GDownA, Action::move(Direction::Down)};

  if (anchored && ((r1.exists() && r1.is_occupied()) ||
                   (!r1.exists() && d1.exists() && d1.is_occupied())))
    return {GuardId::GBlueA, Action::set_color(Color::Blue)};

  // Behind a blue run: follow it east, or escape upward, or join it.
  if (l1.is(Color::Blue) && r1.is_vacant() && right_ok)
    return {GuardId::GRightB, Action::move(Direction::Right)};

  if (l1.is(Color::Blue) && !r1.exists() && d1.is_vacant())
    return {GuardId::GDownB, Action::move(Direction::Down)};

  // The step ahead may be open yet unusable when ne is in flight.
  const bool fwd_unavailable = blocked_fwd || (r1.exists() && !right_ok);
  // The dead cell beside a red under the top wall only traps a climber on
  // the east boundary; mid-row it still has the exit right.
  if (l1.is(Color::Blue) && fwd_unavailable && u1.is_vacant() && u2.open() &&
      ne_clear && (nw.open() || nw.is(Color::Red)) &&
      !(!u2.exists() && nw.is(Color::Red) && !r1.exists()))
    return {GuardId::GUpB, Action::move(Direction::Up)};

  if (l1.is(Color::Blue) && blocked_fwd &&
      (!u1.exists() || u1.is(Color::Red) ||
       (u1.is_vacant() && u2.is(Color::Red)) ||
       (u1.is_vacant() && !u2.exists() &&
        (ne.is(Color::Red) || (nw.is(Color::Red) && !r1.exists())))) &&
      !(!r1.exists() && !d1.exists()))
    return {GuardId::GBlueB, Action::set_color(Color::Blue)};

  // East boundary under a run bending down the column: step out of the way,
  // or join the run, but never blue ahead of a green still working west.
  if (!r1.exists() && (!u1.exists() || u1.is_occupied()) && !can_left &&
      d1.is_vacant())
    return {GuardId::GDownU, Action::move(Direction::Down)};

  const bool west_green =
      l1.is(Color::Green) || (l1.is_vacant() && l2.is(Color::Green));
  if (!r1.exists() && u1.is(Color::Blue) && !can_left && !west_green &&
      d1.is(Color::Green))
    return {GuardId::GBlueU, Action::set_color(Color::Blue)};

  return {GuardId::GWait, Action::noop()};
}

Decision blue(const View& v) {
  const CellView &l1 = v.l1, &l2 = v.l2, &r1 = v.r1, &r2 = v.r2;
  const CellView &u1 = v.u1, &d1 = v.d1, &ne = v.ne;

  const bool right_ok = r2.exists() || ne.open() || ne.is(Color::Red);

  if (r1.is_vacant() && right_ok)
    return {GuardId::BRight, Action::set_color_and_move(Color::Green, Direction::Right)};

  if (!r1.exists() && l1.is_vacant() && l2.open())
    return {GuardId::BLeft, Action::set_color_and_move(Color::Green, Direction::Left)};

  if (!r1.exists() && (l1.is_occupied() || l2.is_occupied()) && d1.is_vacant())
    return {GuardId::BDown, Action::set_color_and_move(Color::Green, Direction::Down)};

  if (!r1.exists() && ((u1.is_vacant() && !l1.is(Color::Blue)) ||
                       (u1.is(Color::Red) && l1.is_vacant()) ||
                       u1.is(Color::Green)))
    return {GuardId::BRevert, Action::set_color(Color::Green)};

  return {GuardId::BWait, Action::noop()};
}

}  // namespace

Decision decide(const View& v) {
  if (!v.well_formed())
    throw std::invalid_argument("malformed view");
  switch (v.self.color) {
    case Color::Green: return green(v);
    case Color::Blue: return blue(v);
    case Color::Red: return {GuardId::RFixed, Action::noop()};
  }
  throw std::invalid_argument("malformed view");
}

}  // namespace misform
