#ifndef SWEEP_NNLS_HPP
#define SWEEP_NNLS_HPP

#include "sweep/types.hpp"

namespace sweep {

struct NnlsResult {
  Vector lambda;
  int iterations = 0;
  bool converged = true;
};

/// Lawson--Hanson active-set solve of  min_{lambda >= 0} |A lambda - b|_2.
/// Ties in the entering test are broken by lowest column index and the
/// passive-set least-squares uses a rank-revealing factorization, so the
/// iteration path is deterministic even with duplicate columns.
NnlsResult nnls(const Matrix& A, const Vector& b, int max_iter = 0);

struct ConeProjection {
  Vector v;                    ///< nearest point of {w : <g_k, w> >= 0 for all k}
  std::vector<double> lambda;  ///< v = u + sum_k lambda_k g_k, lambda >= 0
  int iterations = 0;
  bool converged = true;
};

/// Moreau decomposition of u against the cone generated by the outward
/// gradients: returns v with v = u + sum lambda_k g_k, <g_k, v> >= 0,
/// lambda_k >= 0 and lambda_k <g_k, v> = 0.  u - v is the projection of u
/// onto the polar cone {-sum lambda_k g_k : lambda >= 0}.
ConeProjection project_cone(const std::vector<Vector>& gradients, const Vector& u);

/// Projection onto the polyhedron {y : <n_i, y> <= c_i} (rows of `normals`),
/// solved as a least-distance problem through a single NNLS.  An empty
/// polyhedron is reported with converged = false and dist = +inf.
ProjectionResult project_polyhedron(const Matrix& normals, const Vector& offsets,
                                    const Vector& x);

}  // namespace sweep

#endif
