#ifndef SWEEP_DUALITY_HPP
#define SWEEP_DUALITY_HPP

#include "sweep/types.hpp"

#include <cmath>

namespace sweep {

/// Finite-dimensional l^p space, p in [2, inf).
struct PNormSpace {
  Eigen::Index dim = 0;
  double p = 2.0;
};

inline void validate(const PNormSpace& space) {
  if (space.dim < 1) throw input_error("p-norm space: dimension must be >= 1");
  if (!(space.p >= 2.0) || !std::isfinite(space.p))
    throw input_error("p-norm space: p must lie in [2, inf)");
}

inline double lp_norm(const PNormSpace& space, const Vector& x) {
  validate(space);
  require_dim(x, space.dim, "lp_norm");
  if (space.p == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    s += std::pow(std::abs(x[i]), space.p);
  return std::pow(s, 1.0 / space.p);
}

inline double dual_exponent(double p) { return p / (p - 1.0); }

/// Duality map J_p(x)_k = sign(x_k) |x_k|^{p-1}; gradient of |x|_p^p / p.
/// J_2 is the identity, exactly.
inline Vector jp(const PNormSpace& space, const Vector& x) {
  validate(space);
  require_dim(x, space.dim, "jp");
  require_finite(x, "jp");
  if (space.p == 2.0) return x;
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double a = std::abs(x[i]);
    y[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, space.p - 1.0), x[i]);
  }
  return y;
}

/// Gradient of the norm itself: J_p(x) / |x|_p^{p-1}; unit dual norm, and
/// <norm_gradient(x), x> = |x|_p.  Undefined at the origin.
inline Vector norm_gradient(const PNormSpace& space, const Vector& x) {
  double n = lp_norm(space, x);
  if (n == 0.0) throw input_error("norm_gradient: undefined at the origin");
  if (space.p == 2.0) return x / n;
  return jp(space, x) / std::pow(n, space.p - 1.0);
}

}  // namespace sweep

#endif
