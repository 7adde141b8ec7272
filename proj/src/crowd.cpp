#include "sweep/crowd.hpp"

#include "sweep/nnls.hpp"

#include <cmath>
#include <string>

namespace sweep {

VelocityDecomposition actual_velocity(const DiskSystem& sys, const Vector& q,
                                      const Vector& desired, const Tolerances& tol) {
  require_dim(q, config_dim(sys), "actual_velocity configuration");
  require_dim(desired, config_dim(sys), "actual_velocity desired field");
  if (!feasible(sys, q, tol.feas))
    throw input_error("actual_velocity: infeasible configuration");
  VelocityDecomposition out;
  out.basis = contact_basis(sys, q, tol.active);
  ConeProjection cp = project_cone(out.basis.gradients, desired);
  out.velocity = cp.v;
  out.converged = cp.converged;
  out.lambda.assign(constraint_count(sys), 0.0);
  for (std::size_t k = 0; k < out.basis.active.size(); ++k)
    out.lambda[out.basis.active[k]] = cp.lambda[k];
  return out;
}

CrowdRun simulate_crowd(const DiskSystem& sys, const Vector& q0,
                        const std::function<Vector(const Vector&)>& desired,
                        double f_sup, double r, double T, int n,
                        const ProjectOptions& opts) {
  Problem p;
  p.set = MovingSet{ConstraintSet(sys), FixedMotion{}};
  p.f = Perturbation{desired, f_sup, false};
  p.u0 = q0;
  p.horizon = T;
  p.r = r;

  CrowdRun run;
  run.sweep = integrate(p, n, opts);

  run.velocity_states.push_back(q0);
  const double h = T / n;
  const int taken = run.sweep.steps();
  for (int i = 0; i < taken; ++i) {
    const Vector& q = run.velocity_states.back();
    // The explicit scheme drifts O(h^2) into contact, so the cone is built
    // directly instead of going through the strict feasibility guard.
    ContactBasis basis = contact_basis(sys, q, opts.tol.active);
    ConeProjection cp = project_cone(basis.gradients, desired(q));
    if (!cp.converged)
      throw solver_error("simulate_crowd: velocity projection failed at step " +
                         std::to_string(i));
    std::vector<double> lambda(constraint_count(sys), 0.0);
    for (std::size_t k = 0; k < basis.active.size(); ++k)
      lambda[basis.active[k]] = cp.lambda[k];
    run.velocity_states.push_back(q + h * cp.v);
    run.velocity_lambda.push_back(std::move(lambda));
  }
  for (std::size_t i = 0; i < run.velocity_states.size(); ++i)
    run.scheme_gap = std::max(
        run.scheme_gap, (run.velocity_states[i] - run.sweep.states[i]).norm());
  return run;
}

CorridorWitness corridor_witness(double radius, double eps,
                                 const ProjectOptions& opts) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw input_error("corridor_witness: radius must be positive");
  if (!(eps > 0.0) || !(eps <= 0.5 * radius))
    throw input_error("corridor_witness: eps must lie in (0, radius/2]");

  CorridorWitness out;
  out.sys.count = 2;
  out.sys.radius = radius;
  // Center bounds of a corridor whose width undercuts the touching width 4r
  // by 2 eps: q_1x >= r against the left wall, q_2x <= 3r - 2 eps.
  out.sys.walls = {Wall{0, true, radius}, Wall{0, false, 3.0 * radius - 2.0 * eps}};
  validate(out.sys);

  out.q0 = Vector(4);
  out.q0 << radius - eps, 0.0, 3.0 * radius - eps, 0.0;
  out.expected_dist = 2.0 * std::sqrt(radius * eps);
  out.proj = project_disk_config(out.sys, out.q0, opts);
  return out;
}

}  // namespace sweep
