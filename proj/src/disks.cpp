#include "sweep/disks.hpp"

#include <cmath>
#include <string>

namespace sweep {

void validate(const DiskSystem& sys) {
  if (sys.count < 1) throw input_error("disk system: count must be >= 1");
  if (!(sys.radius > 0.0) || !std::isfinite(sys.radius))
    throw input_error("disk system: radius must be positive and finite");
  double lo[2] = {-kInf, -kInf}, hi[2] = {kInf, kInf};
  for (const Wall& w : sys.walls) {
    if (w.axis != 0 && w.axis != 1)
      throw input_error("disk system: wall axis must be 0 or 1");
    if (!std::isfinite(w.value))
      throw input_error("disk system: wall value must be finite");
    if (w.lower)
      lo[w.axis] = std::max(lo[w.axis], w.value);
    else
      hi[w.axis] = std::min(hi[w.axis], w.value);
  }
  for (int a = 0; a < 2; ++a)
    if (lo[a] > hi[a])
      throw input_error("disk system: wall bounds leave no room on axis " +
                        std::to_string(a));
}

double signed_distance(const DiskSystem& sys, const Vector& q, int i, int j) {
  require_dim(q, config_dim(sys), "signed_distance");
  if (i == j || i < 0 || j < 0 || i >= sys.count || j >= sys.count)
    throw input_error("signed_distance: bad disk pair");
  return (disk_center(q, i) - disk_center(q, j)).norm() - 2.0 * sys.radius;
}

double wall_gap(const DiskSystem&, const Vector& q, const Wall& w, int i) {
  double c = q[2 * i + w.axis];
  return w.lower ? c - w.value : w.value - c;
}

int constraint_count(const DiskSystem& sys) {
  return sys.count * (sys.count - 1) / 2 +
         static_cast<int>(sys.walls.size()) * sys.count;
}

namespace {

// Decodes constraint index k into either a pair (i, j) or a (wall, disk).
struct ConstraintRef {
  bool is_pair;
  int i, j;    // pair
  int w, d;    // wall index, disk
};

ConstraintRef decode(const DiskSystem& sys, int k) {
  const int pairs = sys.count * (sys.count - 1) / 2;
  if (k < 0 || k >= constraint_count(sys))
    throw input_error("disk constraint index out of range");
  if (k < pairs) {
    int i = 0, rem = k;
    int row = sys.count - 1;
    while (rem >= row) {
      rem -= row;
      --row;
      ++i;
    }
    return {true, i, i + 1 + rem, -1, -1};
  }
  int t = k - pairs;
  return {false, -1, -1, t / sys.count, t % sys.count};
}

}  // namespace

Vector constraint_values(const DiskSystem& sys, const Vector& q) {
  require_dim(q, config_dim(sys), "constraint_values");
  Vector g(constraint_count(sys));
  int k = 0;
  for (int i = 0; i < sys.count; ++i)
    for (int j = i + 1; j < sys.count; ++j)
      g[k++] = (disk_center(q, i) - disk_center(q, j)).norm() - 2.0 * sys.radius;
  for (const Wall& w : sys.walls)
    for (int i = 0; i < sys.count; ++i) g[k++] = wall_gap(sys, q, w, i);
  return g;
}

Vector constraint_gradient(const DiskSystem& sys, const Vector& q, int k) {
  require_dim(q, config_dim(sys), "constraint_gradient");
  ConstraintRef ref = decode(sys, k);
  Vector grad = Vector::Zero(config_dim(sys));
  if (ref.is_pair) {
    Eigen::Vector2d diff = disk_center(q, ref.j) - disk_center(q, ref.i);
    double dist = diff.norm();
    if (dist <= 0.0)
      throw input_error("constraint_gradient: coincident disk centers " +
                        std::to_string(ref.i) + "," + std::to_string(ref.j));
    Eigen::Vector2d e = diff / dist;
    grad.segment<2>(2 * ref.i) = -e;
    grad.segment<2>(2 * ref.j) = e;
  } else {
    const Wall& w = sys.walls[ref.w];
    grad[2 * ref.d + w.axis] = w.lower ? 1.0 : -1.0;
  }
  return grad;
}

bool feasible(const DiskSystem& sys, const Vector& q, double tol) {
  return min_gap(sys, q) >= -tol;
}

double min_gap(const DiskSystem& sys, const Vector& q) {
  Vector g = constraint_values(sys, q);
  return g.size() ? g.minCoeff() : kInf;
}

ContactBasis contact_basis(const DiskSystem& sys, const Vector& q, double tol_active) {
  ContactBasis basis;
  Vector g = constraint_values(sys, q);
  for (int k = 0; k < g.size(); ++k) {
    if (g[k] <= tol_active) {
      basis.active.push_back(k);
      basis.gradients.push_back(constraint_gradient(sys, q, k));
    }
  }
  return basis;
}

}  // namespace sweep
