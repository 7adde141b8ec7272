#ifndef SWEEP_PROJECTION_HPP
#define SWEEP_PROJECTION_HPP

#include "sweep/geometry.hpp"
#include "sweep/types.hpp"

#include <functional>
#include <optional>

namespace sweep {

struct ProjectOptions {
  std::uint64_t seed = 20260814ULL;  ///< drives the multistart jitter
  Tolerances tol = default_tolerances();
  int max_outer = 400;  ///< iteration cap per local solve
};

/// Nearest points of the set.  Closed formulas for the analytic kinds
/// (including the two-point ties of the cross set and the ball center);
/// multistart projected descent for disk systems.
ProjectionResult project(const ConstraintSet& set, const Vector& x,
                         const ProjectOptions& opts = {});

/// Multistart solve of min |q - x| over feasible disk configurations.
/// All local minima within relative cost 1e-6 of the best survive dedupe
/// and are reported, lexicographically sorted.
ProjectionResult project_disk_config(const DiskSystem& sys, const Vector& x,
                                     const ProjectOptions& opts = {});

/// Membership of v in Gamma^r(C, x) = {v : x in P_C(x + r v)}.  v = 0 is
/// always a member.  nullopt flags an inconclusive iterative projection.
std::optional<bool> in_gamma_r(const ConstraintSet& set, const Vector& x,
                               const Vector& v, double r,
                               const ProjectOptions& opts = {});

struct DirectionalProxViolation {
  Vector x;
  double s = 0.0;
  char stage = 'a';  ///< 'a' non-unique projection, 'b' direction outside Gamma^r
};

struct DirectionalProxReport {
  double r = 0.0;
  int checked = 0;
  int indeterminate = 0;
  std::vector<DirectionalProxViolation> violations;
  bool certified() const { return violations.empty() && indeterminate == 0; }
};

/// Sampled certificate of directional prox-regularity: for every sample x
/// and every s in s_grid (subset of (0, r)), the point x + s f(x)/|f(x)|
/// must project uniquely, with the normalized residual direction lying in
/// Gamma^r at the projection.  Samples with f(x) = 0 satisfy both stages.
DirectionalProxReport certify_directional_prox(
    const ConstraintSet& set, const std::function<Vector(const Vector&)>& direction,
    double r, const std::vector<Vector>& samples, const std::vector<double>& s_grid,
    const ProjectOptions& opts = {});

}  // namespace sweep

#endif
