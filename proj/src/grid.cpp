#include "misform/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

namespace misform {

int manhattan(Coord a, Coord b) {
  return std::abs(a.i - b.i) + std::abs(a.j - b.j);
}

void require_valid(GridDims d) {
  if (!d.valid())
    throw std::invalid_argument("grid must be at least 2x2, got " +
                                std::to_string(d.rows) + "x" +
                                std::to_string(d.cols));
}

char color_char(Color c) {
  switch (c) {
    case Color::Green: return 'G';
    case Color::Blue: return 'B';
    case Color::Red: return 'R';
  }
  return '?';
}

std::optional<Color> color_from_char(char c) {
  switch (c) {
    case 'G': return Color::Green;
    case 'B': return Color::Blue;
    case 'R': return Color::Red;
    default: return std::nullopt;
  }
}

bool View::well_formed() const {
  if (!self.is_occupied()) return false;
  // Missing cells extend outward: if the 1-hop cell is off-grid, so is the
  // 2-hop cell behind it.
  if (!l1.exists() && l2.exists()) return false;
  if (!r1.exists() && r2.exists()) return false;
  if (!u1.exists() && u2.exists()) return false;
  if (!d1.exists() && d2.exists()) return false;
  // A diagonal exists exactly when both of its sides do.
  if (nw.exists() != (l1.exists() && u1.exists())) return false;
  if (ne.exists() != (r1.exists() && u1.exists())) return false;
  if (sw.exists() != (l1.exists() && d1.exists())) return false;
  if (se.exists() != (r1.exists() && d1.exists())) return false;
  // Both sides are >= 2, so a cell cannot be on two opposite boundaries.
  if (!l1.exists() && !r1.exists()) return false;
  if (!u1.exists() && !d1.exists()) return false;
  return true;
}

bool Configuration::distinct_positions() const {
  std::set<Coord> seen;
  for (const auto& [id, st] : robots)
    if (!seen.insert(st.pos).second) return false;
  return true;
}

std::optional<Color> occupant(const Configuration& c, Coord at) {
  for (const auto& [id, st] : c.robots)
    if (st.pos == at) return st.color;
  return std::nullopt;
}

std::vector<Coord> reference_mis(GridDims d) {
  require_valid(d);
  std::vector<Coord> out;
  out.reserve(d.target_size());
  for (int i = 1; i <= d.rows; ++i)
    for (int j = 1; j <= d.cols; ++j)
      if ((i + j) % 2 == 0) out.push_back({i, j});
  return out;
}

int row_quota(GridDims d, int i) {
  require_valid(d);
  if (i < 1 || i > d.rows)
    throw std::out_of_range("row " + std::to_string(i) + " outside 1.." +
                            std::to_string(d.rows));
  if (d.cols % 2 == 0) return d.cols / 2;
  return (i % 2 == 1) ? (d.cols + 1) / 2 : (d.cols - 1) / 2;
}

bool is_maximum_independent(GridDims d, const std::vector<Coord>& nodes) {
  require_valid(d);
  std::set<Coord> set;
  for (Coord c : nodes) {
    if (!d.contains(c))
      throw std::out_of_range("node (" + std::to_string(c.i) + "," +
                              std::to_string(c.j) + ") outside grid");
    set.insert(c);
  }
  if ((int)set.size() != d.target_size()) return false;
  for (auto a = set.begin(); a != set.end(); ++a) {
    // Row-major order: only the right and down neighbours can follow.
    Coord right{a->i, a->j + 1}, down{a->i + 1, a->j};
    if (set.count(right) || set.count(down)) return false;
  }
  return true;
}

int brute_force_max_independent_size(GridDims d) {
  require_valid(d);
  const int p = d.node_count();
  if (p > 20)
    throw std::length_error("exhaustive search capped at 20 cells, got " +
                            std::to_string(p));
  std::vector<std::uint32_t> nbr(p, 0);
  for (int i = 1; i <= d.rows; ++i)
    for (int j = 1; j <= d.cols; ++j) {
      int a = d.index({i, j});
      if (j < d.cols) nbr[a] |= 1u << d.index({i, j + 1});
      if (i < d.rows) nbr[a] |= 1u << d.index({i + 1, j});
    }
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    bool ok = true;
    for (std::uint32_t m = mask; m; m &= m - 1) {
      int b = __builtin_ctz(m);
      if (mask & nbr[b]) { ok = false; break; }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

View extract_view(const Configuration& c, Coord at) {
  require_valid(c.dims);
  auto self_color = occupant(c, at);
  if (!c.dims.contains(at) || !self_color)
    throw std::invalid_argument("no robot at (" + std::to_string(at.i) + "," +
                                std::to_string(at.j) + ")");
  auto cell = [&](int di, int dj) {
    Coord p{at.i + di, at.j + dj};
    if (!c.dims.contains(p)) return CellView::offgrid();
    if (auto col = occupant(c, p)) return CellView::occupied(*col);
    return CellView::vacant();
  };
  View v;
  v.self = CellView::occupied(*self_color);
  v.l1 = cell(0, -1);
  v.l2 = cell(0, -2);
  v.r1 = cell(0, 1);
  v.r2 = cell(0, 2);
  v.u1 = cell(-1, 0);
  v.u2 = cell(-2, 0);
  v.d1 = cell(1, 0);
  v.d2 = cell(2, 0);
  v.nw = cell(-1, -1);
  v.ne = cell(-1, 1);
  v.sw = cell(1, -1);
  v.se = cell(1, 1);
  return v;
}

}  // namespace misform
