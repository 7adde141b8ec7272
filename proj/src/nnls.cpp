#include "sweep/nnls.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

NnlsResult nnls(const Matrix& A, const Vector& b, int max_iter) {
  const int m = static_cast<int>(A.cols());
  NnlsResult out;
  out.lambda = Vector::Zero(m);
  if (m == 0 || A.rows() == 0) return out;
  if (max_iter <= 0) max_iter = 12 * m + 60;

  const double wtol =
      1e-12 * std::max(1.0, (A.transpose() * b).cwiseAbs().maxCoeff());
  std::vector<char> passive(m, 0);
  int npass = 0;
  Vector resid = b;

  std::vector<int> idx;
  for (int iter = 0; iter < max_iter; ++iter) {
    out.iterations = iter + 1;
    Vector w = A.transpose() * resid;
    int enter = -1;
    double best = wtol;
    for (int j = 0; j < m; ++j) {
      if (!passive[j] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) return out;  // KKT satisfied
    passive[enter] = 1;
    ++npass;

    for (int inner = 0; inner <= m; ++inner) {
      idx.clear();
      for (int j = 0; j < m; ++j)
        if (passive[j]) idx.push_back(j);
      Matrix Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
      Vector z = Ap.completeOrthogonalDecomposition().solve(b);

      double alpha = 1.0;
      bool clipped = false;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (z[k] <= 0.0) {
          clipped = true;
          double lam = out.lambda[idx[k]];
          double denom = lam - z[k];
          double a = denom > 0.0 ? lam / denom : 0.0;
          alpha = std::min(alpha, a);
        }
      }
      if (!clipped) {
        for (std::size_t k = 0; k < idx.size(); ++k) out.lambda[idx[k]] = z[k];
        break;
      }
      for (std::size_t k = 0; k < idx.size(); ++k) {
        double lam = out.lambda[idx[k]];
        out.lambda[idx[k]] = lam + alpha * (z[k] - lam);
      }
      const double drop = 1e-13 * std::max(1.0, out.lambda.maxCoeff());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (out.lambda[idx[k]] <= drop) {
          out.lambda[idx[k]] = 0.0;
          if (passive[idx[k]]) {
            passive[idx[k]] = 0;
            --npass;
          }
        }
      }
      if (npass == 0) break;
    }
    resid = b - A * out.lambda;
  }
  out.converged = false;
  return out;
}

ConeProjection project_cone(const std::vector<Vector>& gradients, const Vector& u) {
  ConeProjection out;
  require_finite(u, "project_cone");
  if (gradients.empty()) {
    out.v = u;
    return out;
  }
  const Eigen::Index d = u.size();
  Matrix A(d, static_cast<Eigen::Index>(gradients.size()));
  for (std::size_t k = 0; k < gradients.size(); ++k) {
    require_dim(gradients[k], d, "project_cone gradient");
    if (gradients[k].norm() == 0.0)
      throw input_error("project_cone: zero gradient");
    A.col(k) = -gradients[k];
  }
  NnlsResult sol = nnls(A, u);
  out.v = u - A * sol.lambda;
  out.lambda.assign(sol.lambda.data(), sol.lambda.data() + sol.lambda.size());
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  return out;
}

ProjectionResult project_polyhedron(const Matrix& normals, const Vector& offsets,
                                    const Vector& x) {
  const int m = static_cast<int>(normals.rows());
  const Eigen::Index d = normals.cols();
  require_dim(x, d, "project_polyhedron");
  ProjectionResult out;
  out.multipliers.assign(m, 0.0);

  Vector slack = offsets - normals * x;  // >= 0 where satisfied
  if ((slack.array() >= 0.0).all()) {
    out.nearest = {x};
    return out;
  }

  // Least-distance form: minimize |z| subject to G z >= h with G = -normals,
  // h_i = <n_i, x> - c_i; solved through one NNLS on the augmented matrix.
  Matrix E(d + 1, m);
  E.topRows(d) = -normals.transpose();
  E.row(d) = -slack.transpose();
  Vector f = Vector::Zero(d + 1);
  f[d] = 1.0;
  NnlsResult sol = nnls(E, f);
  out.iterations = sol.iterations;
  Vector r = E * sol.lambda - f;
  const double rnorm = r.norm();
  if (!sol.converged || rnorm <= 1e-10) {
    out.converged = false;
    out.dist = kInf;
    return out;
  }
  Vector z = -r.head(d) / r[d];
  Vector y = x + z;
  out.dist = z.norm();
  out.nearest = {y};

  // Recover multipliers from the active face normals: x - y = sum mu_i n_i.
  std::vector<int> active;
  for (int i = 0; i < m; ++i) {
    if (std::abs(normals.row(i).dot(y) - offsets[i]) <= 1e-8 * (1.0 + out.dist))
      active.push_back(i);
  }
  if (!active.empty()) {
    Matrix An(d, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k)
      An.col(k) = normals.row(active[k]).transpose();
    NnlsResult fit = nnls(An, x - y);
    for (std::size_t k = 0; k < active.size(); ++k)
      out.multipliers[active[k]] = fit.lambda[k];
  }
  return out;
}

}  // namespace sweep
