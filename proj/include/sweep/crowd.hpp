#ifndef SWEEP_CROWD_HPP
#define SWEEP_CROWD_HPP

#include "sweep/catchup.hpp"
#include "sweep/disks.hpp"
#include "sweep/projection.hpp"

#include <functional>

namespace sweep {

/// Actual velocity of the contact model: the desired field projected onto
/// the cone of admissible velocities {v : <G_k, v> >= 0 for active k}.
struct VelocityDecomposition {
  Vector velocity;
  std::vector<double> lambda;  ///< full-length multipliers, canonical order
  ContactBasis basis;
  bool converged = true;
};

VelocityDecomposition actual_velocity(const DiskSystem& sys, const Vector& q,
                                      const Vector& desired,
                                      const Tolerances& tol = default_tolerances());

/// Catching-up run of the crowd model plus the explicit velocity-projection
/// scheme on the same grid, for comparison.
struct CrowdRun {
  Trajectory sweep;
  std::vector<Vector> velocity_states;
  std::vector<std::vector<double>> velocity_lambda;
  double scheme_gap = 0.0;  ///< sup over the grid of |sweep - velocity states|
};

CrowdRun simulate_crowd(const DiskSystem& sys, const Vector& q0,
                        const std::function<Vector(const Vector&)>& desired,
                        double f_sup, double r, double T, int n,
                        const ProjectOptions& opts = {});

/// The two-disk corridor witness: walls squeezing the admissible band by
/// 2 eps below the touching width, seeded from the symmetric infeasible
/// configuration.  The projection splits into a minimizer pair at distance
/// 2 sqrt(radius eps).
struct CorridorWitness {
  DiskSystem sys;
  Vector q0;
  ProjectionResult proj;
  double expected_dist = 0.0;
};

CorridorWitness corridor_witness(double radius, double eps,
                                 const ProjectOptions& opts = {});

}  // namespace sweep

#endif
