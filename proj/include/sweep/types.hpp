#ifndef SWEEP_TYPES_HPP
#define SWEEP_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Rejected input: bad dimensions, malformed scenarios, inadmissible step counts.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver failed to reach its tolerance.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric knobs shared across the solvers.  The defaults may be overridden
/// through environment variables: SWEEP_TOL_FEAS, SWEEP_TOL_PROJ,
/// SWEEP_TOL_ACTIVE, SWEEP_DEDUPE and SWEEP_MULTISTART.
struct Tolerances {
  double feas = 1e-9;    ///< membership band on constraint residuals
  double proj = 1e-8;    ///< absolute coordinate tolerance on projections
  double active = 1e-8;  ///< activation band for contact detection
  double dedupe = 1e-6;  ///< minimizers closer than this are merged
  int multistart = 16;   ///< restarts for nonconvex projections
};

/// Process-wide defaults, read once (including environment overrides).
const Tolerances& default_tolerances();

bool all_finite(const Vector& x);
void require_dim(const Vector& x, Eigen::Index d, const char* what);
void require_finite(const Vector& x, const char* what);

/// Strict lexicographic order on coordinate vectors; used to make every
/// reported list of minimizers deterministic.
bool lex_less(const Vector& a, const Vector& b);

/// Result of projecting a point onto a constraint set.  `nearest` holds every
/// minimizer found, lexicographically sorted; more than one entry means the
/// projection is genuinely non-unique at the dedupe radius.
struct ProjectionResult {
  std::vector<Vector> nearest;
  double dist = 0.0;
  bool converged = true;
  int iterations = 0;
  /// KKT multipliers at nearest[0], aligned with the set's constraint
  /// ordering, for the kinds that provide them (cones, polyhedra, disks).
  std::vector<double> multipliers;
};

/// splitmix64 step; used to derive independent per-start and per-step seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sweep

#endif
