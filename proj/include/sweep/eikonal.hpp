#ifndef SWEEP_EIKONAL_HPP
#define SWEEP_EIKONAL_HPP

#include "sweep/types.hpp"

#include <cstdint>
#include <vector>

namespace sweep {

enum class Cell : std::uint8_t { Free = 0, Obstacle = 1, Exit = 2 };

/// Uniform square grid of cells; index (i, j) has center
/// origin + ((i + 1/2) dx, (j + 1/2) dx), stored row-major (j major).
struct MaskGrid {
  int nx = 0, ny = 0;
  double dx = 1.0;
  Eigen::Vector2d origin{0.0, 0.0};
  std::vector<Cell> cells;

  bool inside(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
  int index(int i, int j) const { return j * nx + i; }
  Cell at(int i, int j) const { return cells[index(i, j)]; }
  Eigen::Vector2d center(int i, int j) const {
    return origin + Eigen::Vector2d((i + 0.5) * dx, (j + 0.5) * dx);
  }
};

struct GridField {
  MaskGrid grid;
  std::vector<double> value;  ///< arrival time; +inf on obstacles and unreached cells
};

/// First-order fast marching from the exit cells.  Updates use accepted
/// neighbors only; ties in the heap break on cell index, so the acceptance
/// order is deterministic.  When accept_trace is given it receives the
/// accepted values in order (a monotonicity witness).
GridField solve_eikonal(const MaskGrid& grid, std::vector<double>* accept_trace = nullptr);

/// Unit descent direction -grad T / |grad T| at an arbitrary position:
/// one-sided upwind differences per cell, blended bilinearly between the
/// four surrounding cell centers.  Zero on exit cells; obstacle, outside or
/// unreached positions are rejected.
Eigen::Vector2d spontaneous_velocity(const GridField& field, const Eigen::Vector2d& pos);

struct RectShape {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct SegmentShape {
  Eigen::Vector2d a{0, 0}, b{0, 0};
};

/// Axis-aligned room: obstacles are rectangles (a cell is an obstacle iff
/// its center lies inside one); exits are segments claiming every free cell
/// whose center lies within dx/2.
struct RoomSpec {
  double width = 1.0, height = 1.0;
  int nx = 0, ny = 0;
  Eigen::Vector2d origin{0.0, 0.0};
  std::vector<RectShape> obstacles;
  std::vector<SegmentShape> exits;
};

MaskGrid rasterize(const RoomSpec& room);

}  // namespace sweep

#endif
