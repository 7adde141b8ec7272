#ifndef SWEEP_ANALYSIS_HPP
#define SWEEP_ANALYSIS_HPP

#include "sweep/catchup.hpp"
#include "sweep/geometry.hpp"
#include "sweep/projection.hpp"
#include "sweep/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sweep {

struct Violation {
  std::string detail;
  double margin = 0.0;  ///< how far below the bound the sample fell (negative)
};

/// Outcome of one verification check.  `surrogate` names the discrete
/// stand-in used for the continuous statement being tested.
struct CheckReport {
  std::string name;
  std::string surrogate;
  int samples = 0;
  std::vector<Violation> violations;
  double worst_margin = kInf;  ///< smallest margin seen across all samples
  bool pass = true;            ///< == violations.empty()
};

/// <z1 - z2, n1 - n2> >= -(|n1| + |n2|) / eta * |z1 - z2|^2 over random
/// boundary pairs with analytically sampled proximal normals.  eta defaults
/// to the set's prox constant; pass an override to claim a weaker defect
/// deliberately (negative control).
CheckReport check_hypomonotonicity(const ConstraintSet& set, int pairs,
                                   std::uint64_t seed, double eta_override = 0.0);

/// Max over interior grid times of
///   |(u^{i+1} - u^{i-1}) / (2h) - (f(u^i) - P_{N(C, u^i)} f(u^i))|,
/// the central-difference surrogate of du/dt + P_N(f) = f.
double equivalence_residual(const Trajectory& traj, const ConstraintSet& set,
                            const std::function<Vector(const Vector&)>& f);

/// The surrogate residual above stays below c_eq * h.
CheckReport check_equation_equivalence(const Trajectory& traj, const ConstraintSet& set,
                                       const std::function<Vector(const Vector&)>& f,
                                       double c_eq);

/// sup_t |u(t) - v(t)| <= a |u0 - v0| over two runs of the same problem from
/// initial data u0 and v0.  Coincident data demand zero divergence instead of
/// a 0/0 ratio.
CheckReport check_stability(const Problem& p, const Vector& u0, const Vector& v0,
                            int n, double a_bound, const ProjectOptions& opts = {});

/// Independent re-audit of a computed trajectory: delta consistency against
/// the states, per-step delta and speed bounds, multiplier signs, grid and
/// midpoint feasibility gaps, and the realized prox-normal direction of every
/// step (in Gamma at the realized scale h |delta|).
CheckReport audit_trajectory(const Trajectory& traj, const Problem& p,
                             const ProjectOptions& opts = {});

}  // namespace sweep

#endif
