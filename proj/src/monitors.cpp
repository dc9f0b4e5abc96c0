#include "misform/monitors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace misform {

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::CollisionType1: return "collision-type-1";
    case ViolationKind::CollisionType2: return "collision-type-2";
    case ViolationKind::RedMoved: return "red-moved";
    case ViolationKind::RedRecolored: return "red-recolored";
    case ViolationKind::IllegalTransition: return "illegal-transition";
    case ViolationKind::IllegalMove: return "illegal-move";
    case ViolationKind::DistinctnessBroken: return "distinctness-broken";
    case ViolationKind::RedOffTarget: return "red-off-target";
    case ViolationKind::RedAdjacent: return "red-adjacent";
    case ViolationKind::RowOrder: return "row-order";
    case ViolationKind::FinalNotMis: return "final-not-mis";
  }
  return "?";
}

std::string describe(const Violation& v) {
  std::string s = violation_kind_name(v.kind);
  if (v.round > 0) s += " at round " + std::to_string(v.round);
  for (Coord c : v.coords)
    s += " (" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
  if (!v.ids.empty()) {
    s += " robots";
    for (RobotId id : v.ids) s += " " + std::to_string(id);
  }
  if (!v.detail.empty()) s += ": " + v.detail;
  return s;
}

namespace {

Violation make(ViolationKind k, std::vector<RobotId> ids, std::vector<Coord> coords,
               std::string detail = "") {
  Violation v;
  v.kind = k;
  v.ids = std::move(ids);
  v.coords = std::move(coords);
  v.detail = std::move(detail);
  return v;
}

bool legal_transition(Color before, Color after) {
  if (before == after) return true;
  if (before == Color::Green) return true;  // green may turn blue or red
  if (before == Color::Blue) return after == Color::Green;
  return false;  // red changes nothing
}

}  // namespace

std::vector<Violation> check_step(const Configuration& pre,
                                  const TraceEvent& event,
                                  const Configuration& post) {
  std::vector<Violation> out;
  std::set<RobotId> activated(event.activated.begin(), event.activated.end());

  // Movement targets, reconstructed from pre/post rather than the records.
  std::map<Coord, std::vector<RobotId>> landed;
  for (const auto& [id, before] : pre.robots) {
    auto it = post.robots.find(id);
    if (it == post.robots.end()) {
      out.push_back(make(ViolationKind::IllegalMove, {id}, {before.pos},
                         "robot vanished"));
      continue;
    }
    const RobotState& after = it->second;
    bool moved = !(after.pos == before.pos);
    if (moved) landed[after.pos].push_back(id);

    if (before.color == Color::Red && moved)
      out.push_back(make(ViolationKind::RedMoved, {id}, {before.pos, after.pos}));
    if (before.color == Color::Red && after.color != Color::Red)
      out.push_back(make(ViolationKind::RedRecolored, {id}, {before.pos}));
    else if (!legal_transition(before.color, after.color))
      out.push_back(make(ViolationKind::IllegalTransition, {id}, {after.pos},
                         std::string(1, color_char(before.color)) + "->" +
                             color_char(after.color)));
    if (moved && manhattan(before.pos, after.pos) != 1)
      out.push_back(make(ViolationKind::IllegalMove, {id},
                         {before.pos, after.pos}, "not a single hop"));
    if (!post.dims.contains(after.pos))
      out.push_back(make(ViolationKind::IllegalMove, {id}, {after.pos},
                         "left the grid"));
    if (!activated.count(id) && !(before == after))
      out.push_back(make(ViolationKind::IllegalMove, {id}, {before.pos},
                         "changed without being activated"));
  }
  for (const auto& [id, after] : post.robots)
    if (!pre.robots.count(id))
      out.push_back(make(ViolationKind::IllegalMove, {id}, {after.pos},
                         "robot appeared"));

  for (const auto& [cell, ids] : landed) {
    if (ids.size() > 1)
      out.push_back(make(ViolationKind::CollisionType2, ids, {cell}));
    // A robot that vacated the cell this round makes the entry a legal
    // follow; only an occupant that stayed put turns it into a collision.
    for (const auto& [oid, ost] : pre.robots) {
      if (!(ost.pos == cell)) continue;
      auto pit = post.robots.find(oid);
      if (pit != post.robots.end() && pit->second.pos == ost.pos) {
        auto with = ids;
        with.push_back(oid);
        out.push_back(make(ViolationKind::CollisionType1, with, {cell},
                           "cell was occupied throughout the round"));
      }
      break;
    }
  }
  return out;
}

std::vector<Violation> check_state(const Configuration& c) {
  std::vector<Violation> out;
  std::map<Coord, std::vector<RobotId>> at;
  for (const auto& [id, st] : c.robots) {
    at[st.pos].push_back(id);
    if (!c.dims.contains(st.pos))
      out.push_back(make(ViolationKind::IllegalMove, {id}, {st.pos},
                         "off the grid"));
  }
  for (const auto& [cell, ids] : at)
    if (ids.size() > 1)
      out.push_back(make(ViolationKind::DistinctnessBroken, ids, {cell}));

  std::vector<Coord> reds;
  for (const auto& [id, st] : c.robots) {
    if (st.color != Color::Red) continue;
    reds.push_back(st.pos);
    if ((st.pos.i + st.pos.j) % 2 != 0)
      out.push_back(make(ViolationKind::RedOffTarget, {id}, {st.pos}));
  }
  std::sort(reds.begin(), reds.end());
  for (size_t a = 0; a < reds.size(); ++a)
    for (size_t b = a + 1; b < reds.size(); ++b)
      if (manhattan(reds[a], reds[b]) == 1)
        out.push_back(make(ViolationKind::RedAdjacent, {}, {reds[a], reds[b]}));

  // Within each row, reds sit left of blues, blues left of greens.
  for (int i = 1; i <= c.dims.rows; ++i) {
    int max_red = 0, max_blue = 0;
    int min_blue = c.dims.cols + 1, min_green = c.dims.cols + 1;
    for (const auto& [id, st] : c.robots) {
      if (st.pos.i != i) continue;
      switch (st.color) {
        case Color::Red: max_red = std::max(max_red, st.pos.j); break;
        case Color::Blue:
          max_blue = std::max(max_blue, st.pos.j);
          min_blue = std::min(min_blue, st.pos.j);
          break;
        case Color::Green: min_green = std::min(min_green, st.pos.j); break;
      }
    }
    bool bad = (max_red > 0 && max_red > min_blue) ||
               (max_red > 0 && max_red > min_green) ||
               (max_blue > 0 && max_blue > min_green);
    if (bad)
      out.push_back(make(ViolationKind::RowOrder, {}, {{i, 0}},
                         "row " + std::to_string(i)));
  }
  return out;
}

std::vector<Violation> check_final(const Configuration& c) {
  if (!is_final(c))
    throw std::invalid_argument("configuration is not final");
  std::vector<Violation> out;
  std::vector<Coord> reds;
  for (const auto& [id, st] : c.robots) reds.push_back(st.pos);
  std::sort(reds.begin(), reds.end());
  if (!is_maximum_independent(c.dims, reds)) {
    out.push_back(make(ViolationKind::FinalNotMis, {}, {},
                       "occupied set is not a maximum independent set"));
    return out;
  }
  if (reds != reference_mis(c.dims))
    out.push_back(make(ViolationKind::FinalNotMis, {}, {},
                       "maximum independent set differs from the target"));
  return out;
}

}  // namespace misform
