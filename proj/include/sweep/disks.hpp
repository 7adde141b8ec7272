#ifndef SWEEP_DISKS_HPP
#define SWEEP_DISKS_HPP

#include "sweep/types.hpp"

namespace sweep {

/// One axis-aligned wall bound on disk centers: lower walls demand
/// q[axis] >= value, upper walls demand q[axis] <= value.
struct Wall {
  int axis = 0;  ///< 0 = x, 1 = y
  bool lower = true;
  double value = 0.0;
};

/// N rigid disks of common radius in the plane, optionally boxed by walls.
/// A configuration is the stacked center vector q in R^{2N}.
struct DiskSystem {
  int count = 0;
  double radius = 1.0;
  std::vector<Wall> walls;
};

void validate(const DiskSystem& sys);
inline Eigen::Index config_dim(const DiskSystem& sys) { return 2 * sys.count; }

inline Eigen::Vector2d disk_center(const Vector& q, int i) {
  return q.segment<2>(2 * i);
}

/// Signed gap between disks i and j: |q_i - q_j| - 2 radius.
double signed_distance(const DiskSystem& sys, const Vector& q, int i, int j);

/// Signed slack of one wall for one disk (>= 0 when satisfied).
double wall_gap(const DiskSystem& sys, const Vector& q, const Wall& w, int i);

/// Number of inequality constraints: all ordered pairs, then walls x disks.
int constraint_count(const DiskSystem& sys);

/// All constraint values in the canonical order: pair (i,j) with i < j
/// lexicographically, then wall w applied to disk i (w-major).
Vector constraint_values(const DiskSystem& sys, const Vector& q);

/// Gradient of constraint k at q.  Pair gradients are
/// (0,..,-e_ij,..,e_ij,..,0) with e_ij the unit center line, norm sqrt(2);
/// they are undefined for coincident centers, which is reported as an error.
Vector constraint_gradient(const DiskSystem& sys, const Vector& q, int k);

/// True iff every pair gap and wall slack is >= -tol.
bool feasible(const DiskSystem& sys, const Vector& q, double tol);

/// Smallest constraint value (most violated when negative).
double min_gap(const DiskSystem& sys, const Vector& q);

/// Indices and gradients of the constraints active at q (value <= tol_active).
struct ContactBasis {
  std::vector<int> active;         ///< constraint indices, canonical order
  std::vector<Vector> gradients;   ///< aligned with `active`
};

ContactBasis contact_basis(const DiskSystem& sys, const Vector& q,
                           double tol_active = default_tolerances().active);

}  // namespace sweep

#endif
