#ifndef SWEEP_CATCHUP_HPP
#define SWEEP_CATCHUP_HPP

#include "sweep/geometry.hpp"
#include "sweep/projection.hpp"
#include "sweep/types.hpp"

#include <functional>
#include <string>

namespace sweep {

/// Perturbation rule with its declared size: a sup-norm bound, or a linear
/// growth constant L with |f(x)| <= L (1 + |x|).
struct Perturbation {
  std::function<Vector(const Vector&)> rule;
  double bound = 0.0;
  bool linear_growth = false;
};

struct Problem {
  MovingSet set;
  Perturbation f;
  Vector u0;
  double horizon = 1.0;
  double r = kInf;  ///< directional prox-regularity budget for the step rule
};

struct StepResult {
  Vector next;
  Vector delta;  ///< (next - u - h fval) / h
  std::vector<double> multipliers;
  bool tie = false;  ///< the projection had several minimizers
  bool ok = true;
};

/// One catching-up step: project u + h fval onto the (already advanced) set.
/// Ties pick the lexicographically smallest minimizer and are flagged.
StepResult step(const ConstraintSet& set, const Vector& u, double h,
                const Vector& fval, double r = kInf,
                const ProjectOptions& opts = {});

struct Trajectory {
  double h = 0.0;
  std::vector<Vector> states;  ///< n + 1 grid values
  std::vector<Vector> deltas;  ///< n per-step deviations
  std::vector<Vector> fvals;   ///< n perturbation values
  std::vector<std::vector<double>> multipliers;
  bool ok = true;
  int failed_step = -1;
  std::string diagnostic;
  bool tie_break = false;

  // Constants the audits compare against; they absorb the motion rate.
  double f_sup = 0.0;       ///< effective sup-norm of f along the scheme
  double delta_bound = 0.0; ///< per-step bound on |delta|
  double speed_bound = 0.0; ///< bound on |u^{i+1} - u^i| / h
  double gap_rate = 0.0;    ///< d(interpolant, C(t)) <= gap_rate * h

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double time(int i) const { return h * i; }
  /// Piecewise-linear interpolant (t clamped to the grid span).
  Vector at_time(double t) const;
};

/// Effective sup-norm of the perturbation along the scheme: the declared
/// bound, or L e^{2LT} (1 + |u0|) for linear growth (discrete Gronwall).
double effective_sup(const Problem& p);

/// Smallest n with h (f_sup + motion rate) <= r/2, and 4 L h <= 1 for
/// linear-growth rules.
int min_admissible_steps(const Problem& p);

/// Catching-up discretization with n uniform steps.  Throws input_error for
/// infeasible u0 or an inadmissible n (the message names the minimal
/// admissible value); solver failures return a partial trajectory.
Trajectory integrate(const Problem& p, int n, const ProjectOptions& opts = {});

struct ConvergenceRow {
  int n = 0;
  double gap = 0.0;
  double local_order = 0.0;  ///< NaN on the first row
  double kappa = 0.0;        ///< n * gap
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;  ///< +inf when exact
  bool exact = false;
};

/// Runs the scheme for each n and measures the sup gap on the coarse grid
/// against `reference` (closed form), or against a 4x-finer run when no
/// reference is supplied.  Requires at least three strictly increasing n.
ConvergenceStudy convergence_study(const Problem& p, const std::vector<int>& n_list,
                                   const ProjectOptions& opts = {},
                                   const std::function<Vector(double)>& reference = nullptr);

}  // namespace sweep

#endif
