#include "sweep/catchup.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

Vector Trajectory::at_time(double t) const {
  const int n = steps();
  double s = std::clamp(t / h, 0.0, static_cast<double>(n));
  int i = std::min(static_cast<int>(s), n - 1);
  double theta = s - i;
  return (1.0 - theta) * states[i] + theta * states[i + 1];
}

StepResult step(const ConstraintSet& set, const Vector& u, double h,
                const Vector& fval, double r, const ProjectOptions& opts) {
  require_dim(u, set.dim(), "step state");
  require_dim(fval, set.dim(), "step perturbation");
  require_finite(u, "step state");
  require_finite(fval, "step perturbation");
  if (!(h > 0.0)) throw input_error("step: h must be positive");
  if (h * fval.norm() > 0.5 * r * (1.0 + 1e-12))
    throw input_error("step: h |f| exceeds r/2");

  StepResult out;
  ProjectionResult pr = project(set, u + h * fval, opts);
  if (!pr.converged || pr.nearest.empty()) {
    out.ok = false;
    out.next = u;
    out.delta = Vector::Zero(u.size());
    return out;
  }
  out.next = pr.nearest.front();
  out.tie = pr.nearest.size() > 1;
  out.delta = (out.next - u - h * fval) / h;
  out.multipliers = pr.multipliers;
  return out;
}

double effective_sup(const Problem& p) {
  if (!(p.f.bound >= 0.0) || !std::isfinite(p.f.bound))
    throw input_error("perturbation bound must be finite and >= 0");
  if (!p.f.linear_growth) return p.f.bound;
  double L = p.f.bound;
  return L * std::exp(2.0 * L * p.horizon) * (1.0 + p.u0.norm());
}

int min_admissible_steps(const Problem& p) {
  if (!(p.horizon > 0.0)) throw input_error("horizon must be positive");
  if (!(p.r > 0.0)) throw input_error("prox budget r must be positive");
  double budget = effective_sup(p) + motion_rate(p.set);
  double need = 1.0;
  if (std::isfinite(p.r) && budget > 0.0)
    need = std::max(need, 2.0 * p.horizon * budget / p.r);
  if (p.f.linear_growth)
    need = std::max(need, 4.0 * p.f.bound * p.horizon);
  return static_cast<int>(std::ceil(need - 1e-12));
}

namespace {

void fill_bounds(const Problem& p, Trajectory& traj) {
  double fs = effective_sup(p);
  double rate = motion_rate(p.set);
  traj.f_sup = fs;
  traj.delta_bound = fs + rate;
  traj.speed_bound = 2.0 * fs + rate;
  traj.gap_rate = rate == 0.0 ? fs : 2.0 * fs + rate;
}

}  // namespace

Trajectory integrate(const Problem& p, int n, const ProjectOptions& opts) {
  require_finite(p.u0, "initial state");
  require_dim(p.u0, p.set.base.dim(), "initial state");
  const int n_min = min_admissible_steps(p);
  if (n < n_min)
    throw input_error("integrate: n = " + std::to_string(n) +
                      " violates the step rule; minimal admissible n is " +
                      std::to_string(n_min));
  ConstraintSet c0 = set_at(p.set, 0.0);
  if (!member(c0, p.u0, opts.tol.feas))
    throw input_error("integrate: u0 is not in C(0)");

  Trajectory traj;
  traj.h = p.horizon / n;
  fill_bounds(p, traj);
  traj.states.reserve(n + 1);
  traj.states.push_back(p.u0);

  for (int i = 0; i < n; ++i) {
    const Vector& u = traj.states.back();
    Vector fval = p.f.rule ? p.f.rule(u) : Vector::Zero(u.size());
    require_dim(fval, u.size(), "perturbation value");
    require_finite(fval, "perturbation value");
    double cap = p.f.linear_growth ? p.f.bound * (1.0 + u.norm()) : p.f.bound;
    if (fval.norm() > cap * (1.0 + 1e-9) + 1e-12)
      throw input_error("integrate: perturbation exceeds its declared bound at step " +
                        std::to_string(i));

    ConstraintSet target = set_at(p.set, traj.h * (i + 1));
    ProjectOptions step_opts = opts;
    step_opts.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(i));
    StepResult s = step(target, u, traj.h, fval, kInf, step_opts);
    if (!s.ok) {
      traj.ok = false;
      traj.failed_step = i;
      traj.diagnostic = "projection failed at step " + std::to_string(i) +
                        "; partial trajectory returned";
      return traj;
    }
    traj.tie_break = traj.tie_break || s.tie;
    traj.states.push_back(s.next);
    traj.deltas.push_back(s.delta);
    traj.fvals.push_back(fval);
    traj.multipliers.push_back(s.multipliers);
  }
  return traj;
}

ConvergenceStudy convergence_study(const Problem& p, const std::vector<int>& n_list,
                                   const ProjectOptions& opts,
                                   const std::function<Vector(double)>& reference) {
  if (n_list.size() < 3)
    throw input_error("convergence study needs at least three grid sizes");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw input_error("convergence study: n_list must be strictly increasing");

  std::function<Vector(double)> ref = reference;
  Trajectory fine;
  if (!ref) {
    fine = integrate(p, 4 * n_list.back(), opts);
    if (!fine.ok) throw solver_error("convergence study: reference run failed");
    ref = [&fine](double t) { return fine.at_time(t); };
  }

  ConvergenceStudy study;
  double scale = 1.0 + p.u0.norm();
  for (int n : n_list) {
    Trajectory traj = integrate(p, n, opts);
    if (!traj.ok) throw solver_error("convergence study: run failed at n = " +
                                     std::to_string(n));
    double gap = 0.0;
    for (int i = 0; i <= n; ++i) {
      Vector r = ref(traj.time(i));
      gap = std::max(gap, (traj.states[i] - r).norm());
      scale = std::max(scale, 1.0 + r.norm());
    }
    ConvergenceRow row;
    row.n = n;
    row.gap = gap;
    row.kappa = n * gap;
    row.local_order = std::numeric_limits<double>::quiet_NaN();
    study.rows.push_back(row);
  }
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    const auto& a = study.rows[i - 1];
    auto& b = study.rows[i];
    if (a.gap > 0.0 && b.gap > 0.0)
      b.local_order = std::log(a.gap / b.gap) / std::log(double(b.n) / a.n);
  }

  study.exact = true;
  for (const auto& row : study.rows)
    if (row.gap > 1e-13 * scale) study.exact = false;
  if (study.exact) {
    study.fitted_order = kInf;
    return study;
  }

  // Least-squares slope of log(gap) against log(1/n).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& row : study.rows) {
    double gap = std::max(row.gap, 1e-300);
    double lx = std::log(1.0 / row.n), ly = std::log(gap);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++m;
  }
  study.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return study;
}

}  // namespace sweep
