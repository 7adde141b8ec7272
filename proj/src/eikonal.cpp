#include "sweep/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace sweep {

namespace {

enum class State : std::uint8_t { Far, Narrow, Accepted };

double update_value(const GridField& f, const std::vector<State>& state, int i, int j) {
  const MaskGrid& g = f.grid;
  double a = kInf, b = kInf;
  if (g.inside(i - 1, j) && state[g.index(i - 1, j)] == State::Accepted)
    a = f.value[g.index(i - 1, j)];
  if (g.inside(i + 1, j) && state[g.index(i + 1, j)] == State::Accepted)
    a = std::min(a, f.value[g.index(i + 1, j)]);
  if (g.inside(i, j - 1) && state[g.index(i, j - 1)] == State::Accepted)
    b = f.value[g.index(i, j - 1)];
  if (g.inside(i, j + 1) && state[g.index(i, j + 1)] == State::Accepted)
    b = std::min(b, f.value[g.index(i, j + 1)]);
  if (a == kInf && b == kInf) return kInf;
  if (a > b) std::swap(a, b);
  if (b - a >= g.dx) return a + g.dx;
  double s = 2.0 * g.dx * g.dx - (a - b) * (a - b);
  return 0.5 * (a + b + std::sqrt(s));
}

}  // namespace

GridField solve_eikonal(const MaskGrid& grid, std::vector<double>* accept_trace) {
  if (grid.nx <= 0 || grid.ny <= 0 ||
      grid.cells.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
    throw input_error("solve_eikonal: malformed grid");
  if (!(grid.dx > 0.0)) throw input_error("solve_eikonal: dx must be positive");

  GridField f;
  f.grid = grid;
  f.value.assign(grid.cells.size(), kInf);
  std::vector<State> state(grid.cells.size(), State::Far);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      int idx = grid.index(i, j);
      if (grid.cells[idx] == Cell::Exit) {
        f.value[idx] = 0.0;
        heap.emplace(0.0, idx);
      }
    }
  if (heap.empty()) throw input_error("solve_eikonal: no exit cells");

  const int di[4] = {-1, 1, 0, 0};
  const int dj[4] = {0, 0, -1, 1};
  while (!heap.empty()) {
    auto [val, idx] = heap.top();
    heap.pop();
    if (state[idx] == State::Accepted || val > f.value[idx]) continue;
    state[idx] = State::Accepted;
    if (accept_trace) accept_trace->push_back(val);
    int ci = idx % grid.nx, cj = idx / grid.nx;
    for (int k = 0; k < 4; ++k) {
      int ni = ci + di[k], nj = cj + dj[k];
      if (!grid.inside(ni, nj)) continue;
      int nidx = grid.index(ni, nj);
      if (grid.cells[nidx] == Cell::Obstacle || state[nidx] == State::Accepted)
        continue;
      double cand = update_value(f, state, ni, nj);
      if (cand < f.value[nidx]) {
        f.value[nidx] = cand;
        state[nidx] = State::Narrow;
        heap.emplace(cand, nidx);
      }
    }
  }
  return f;
}

namespace {

// One-sided upwind gradient at a cell: each axis differences toward the
// neighbor with the smaller arrival time.
Eigen::Vector2d cell_gradient(const GridField& f, int i, int j) {
  const MaskGrid& g = f.grid;
  auto val = [&](int a, int b) -> double {
    if (!g.inside(a, b) || g.at(a, b) == Cell::Obstacle) return kInf;
    return f.value[g.index(a, b)];
  };
  double here = val(i, j);
  Eigen::Vector2d grad(0.0, 0.0);
  double left = val(i - 1, j), right = val(i + 1, j);
  if (left <= right && left < kInf)
    grad[0] = (here - left) / g.dx;
  else if (right < kInf)
    grad[0] = (right - here) / g.dx;
  double down = val(i, j - 1), up = val(i, j + 1);
  if (down <= up && down < kInf)
    grad[1] = (here - down) / g.dx;
  else if (up < kInf)
    grad[1] = (up - here) / g.dx;
  return grad;
}

}  // namespace

Eigen::Vector2d spontaneous_velocity(const GridField& field, const Eigen::Vector2d& pos) {
  const MaskGrid& g = field.grid;
  if (!pos.allFinite()) throw input_error("spontaneous_velocity: non-finite position");
  Eigen::Vector2d rel = (pos - g.origin) / g.dx;
  int ci = static_cast<int>(std::floor(rel[0]));
  int cj = static_cast<int>(std::floor(rel[1]));
  if (!g.inside(ci, cj))
    throw input_error("spontaneous_velocity: position outside the grid");
  if (g.at(ci, cj) == Cell::Obstacle)
    throw input_error("spontaneous_velocity: position inside an obstacle");
  if (field.value[g.index(ci, cj)] == kInf)
    throw input_error("spontaneous_velocity: position in an unreached region");
  if (g.at(ci, cj) == Cell::Exit) return Eigen::Vector2d::Zero();

  // Bilinear blend of per-cell gradients over the four surrounding centers.
  double fx = rel[0] - 0.5, fy = rel[1] - 0.5;
  int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
  int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
  double tx = std::clamp(fx - i0, 0.0, 1.0);
  double ty = std::clamp(fy - j0, 0.0, 1.0);
  Eigen::Vector2d blended(0.0, 0.0);
  double wsum = 0.0;
  for (int dj = 0; dj < 2; ++dj)
    for (int di = 0; di < 2; ++di) {
      int i = i0 + di, j = j0 + dj;
      double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty);
      if (w == 0.0 || g.at(i, j) == Cell::Obstacle ||
          field.value[g.index(i, j)] == kInf)
        continue;
      blended += w * cell_gradient(field, i, j);
      wsum += w;
    }
  if (wsum > 0.0) blended /= wsum;

  double norm = blended.norm();
  if (norm < 1e-14) {
    // Degenerate blend: descend toward the smallest-valued axis neighbor.
    double best = field.value[g.index(ci, cj)];
    Eigen::Vector2d dir(0.0, 0.0);
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      int ni = ci + di[k], nj = cj + dj[k];
      if (!g.inside(ni, nj) || g.at(ni, nj) == Cell::Obstacle) continue;
      double v = field.value[g.index(ni, nj)];
      if (v < best) {
        best = v;
        dir = Eigen::Vector2d(di[k], dj[k]);
      }
    }
    if (dir.norm() == 0.0)
      throw solver_error("spontaneous_velocity: degenerate gradient");
    return dir;
  }
  return -blended / norm;
}

MaskGrid rasterize(const RoomSpec& room) {
  if (room.nx <= 0 || room.ny <= 0)
    throw input_error("rasterize: grid dimensions must be positive");
  if (!(room.width > 0.0) || !(room.height > 0.0))
    throw input_error("rasterize: room dimensions must be positive");
  double dx = room.width / room.nx;
  double dy = room.height / room.ny;
  if (std::abs(dx - dy) > 1e-12 * std::max(dx, dy))
    throw input_error("rasterize: cells must be square (width/nx == height/ny)");
  if (room.exits.empty()) throw input_error("rasterize: room needs an exit");

  MaskGrid g;
  g.nx = room.nx;
  g.ny = room.ny;
  g.dx = dx;
  g.origin = room.origin;
  g.cells.assign(static_cast<std::size_t>(room.nx) * room.ny, Cell::Free);

  auto segment_dist = [](const SegmentShape& s, const Eigen::Vector2d& p) {
    Eigen::Vector2d d = s.b - s.a;
    double len2 = d.squaredNorm();
    double t = len2 > 0.0 ? std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (p - (s.a + t * d)).norm();
  };

  for (int j = 0; j < room.ny; ++j)
    for (int i = 0; i < room.nx; ++i) {
      Eigen::Vector2d c = g.center(i, j);
      bool obstacle = false;
      for (const RectShape& r : room.obstacles)
        if (c[0] >= r.x0 && c[0] <= r.x1 && c[1] >= r.y0 && c[1] <= r.y1) {
          obstacle = true;
          break;
        }
      if (obstacle) {
        g.cells[g.index(i, j)] = Cell::Obstacle;
        continue;
      }
      for (const SegmentShape& s : room.exits)
        if (segment_dist(s, c) <= 0.5 * dx) {
          g.cells[g.index(i, j)] = Cell::Exit;
          break;
        }
    }
  return g;
}

}  // namespace sweep
