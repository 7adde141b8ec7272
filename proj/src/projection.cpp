#include "sweep/projection.hpp"

#include "sweep/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sweep {

namespace {

void sort_and_dedupe(std::vector<Vector>& points, double radius) {
  std::sort(points.begin(), points.end(), lex_less);
  std::vector<Vector> kept;
  for (const Vector& p : points) {
    bool dup = false;
    for (const Vector& q : kept)
      if ((p - q).lpNorm<Eigen::Infinity>() <= radius) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(p);
  }
  points.swap(kept);
}

ProjectionResult exact_result(std::vector<Vector> nearest, double dist) {
  ProjectionResult out;
  std::sort(nearest.begin(), nearest.end(), lex_less);
  out.nearest = std::move(nearest);
  out.dist = dist;
  return out;
}

// ---------------------------------------------------------------------------
// Disk-configuration projection: multistart projected descent.  Each start is
// restored to feasibility with Gauss-Newton on the violated constraints, then
// driven by the steepest descent direction projected onto the linearized
// feasible cone; a Newton polish on the final active set sharpens the KKT
// point to near machine precision.

struct LocalMin {
  Vector q;
  double cost = kInf;
  std::vector<double> lambda;
  bool ok = false;
  int iterations = 0;
};

void split_coincident(const DiskSystem& sys, Vector& q) {
  for (int i = 0; i < sys.count; ++i)
    for (int j = i + 1; j < sys.count; ++j) {
      Eigen::Vector2d diff = disk_center(q, j) - disk_center(q, i);
      if (diff.norm() < 1e-12 * std::max(1.0, sys.radius)) {
        q[2 * j] += 1e-6 * sys.radius * (1 + i);
        q[2 * j + 1] += 5e-7 * sys.radius * (1 + j);
      }
    }
}

bool restore(const DiskSystem& sys, Vector& q, double tol_feas, int max_it,
             int* used) {
  for (int it = 0; it < max_it; ++it) {
    if (used) ++*used;
    split_coincident(sys, q);
    Vector g = constraint_values(sys, q);
    std::vector<int> viol;
    for (int k = 0; k < g.size(); ++k)
      if (g[k] < -1e-13) viol.push_back(k);
    if (viol.empty()) return true;

    Matrix J(static_cast<Eigen::Index>(viol.size()), q.size());
    Vector rhs(static_cast<Eigen::Index>(viol.size()));
    for (std::size_t r = 0; r < viol.size(); ++r) {
      J.row(r) = constraint_gradient(sys, q, viol[r]).transpose();
      rhs[r] = -g[viol[r]];
    }
    Vector delta = J.completeOrthogonalDecomposition().solve(rhs);
    double before = -g.minCoeff();
    double alpha = 1.0;
    for (int cut = 0; cut < 8; ++cut) {
      Vector trial = q + alpha * delta;
      if (-constraint_values(sys, trial).minCoeff() <= std::max(before * 0.9, tol_feas * 0.01)) {
        q = trial;
        break;
      }
      alpha *= 0.5;
      if (cut == 7) q += alpha * delta;
    }
    if (min_gap(sys, q) >= -tol_feas) return true;
  }
  return min_gap(sys, q) >= -tol_feas;
}

// Newton refinement of the KKT system on a fixed active set.
bool polish_kkt(const DiskSystem& sys, const Vector& x, Vector& q,
                const std::vector<int>& active, std::vector<double>& lambda_out) {
  const Eigen::Index d = q.size();
  const Eigen::Index a = static_cast<Eigen::Index>(active.size());
  Vector lam = Vector::Zero(a);
  for (int pass = 0; pass < 8; ++pass) {
    Matrix J(a, d);
    Vector g(a);
    Vector all = constraint_values(sys, q);
    for (Eigen::Index r = 0; r < a; ++r) {
      J.row(r) = constraint_gradient(sys, q, active[r]).transpose();
      g[r] = all[active[r]];
    }
    Vector grad_l = q - x - J.transpose() * lam;
    double res = std::max(grad_l.lpNorm<Eigen::Infinity>(),
                          a ? g.lpNorm<Eigen::Infinity>() : 0.0);
    if (res <= 1e-13 * (1.0 + (x - q).norm())) break;

    // Hessian of the Lagrangian: identity minus lambda-weighted pair terms.
    Matrix H = Matrix::Identity(d, d);
    int k = 0;
    for (int i = 0; i < sys.count; ++i)
      for (int j = i + 1; j < sys.count; ++j, ++k) {
        auto it = std::find(active.begin(), active.end(), k);
        if (it == active.end()) continue;
        double lk = lam[it - active.begin()];
        Eigen::Vector2d diff = disk_center(q, j) - disk_center(q, i);
        double dist = diff.norm();
        if (dist <= 0.0) return false;
        Eigen::Matrix2d P =
            (Eigen::Matrix2d::Identity() - (diff / dist) * (diff / dist).transpose()) / dist;
        H.block<2, 2>(2 * i, 2 * i) -= lk * P;
        H.block<2, 2>(2 * j, 2 * j) -= lk * P;
        H.block<2, 2>(2 * i, 2 * j) += lk * P;
        H.block<2, 2>(2 * j, 2 * i) += lk * P;
      }
    Matrix K = Matrix::Zero(d + a, d + a);
    K.topLeftCorner(d, d) = H;
    if (a) {
      K.topRightCorner(d, a) = -J.transpose();
      K.bottomLeftCorner(a, d) = J;
    }
    Vector rhs(d + a);
    rhs.head(d) = -grad_l;
    if (a) rhs.tail(a) = -g;
    Vector step = K.fullPivLu().solve(rhs);
    if (!step.allFinite()) return false;
    q += step.head(d);
    for (Eigen::Index r = 0; r < a; ++r) lam[r] += step[d + r];
  }
  // Reject if the polished point violates KKT sign or feasibility conditions.
  if (min_gap(sys, q) < -1e-8) return false;
  for (Eigen::Index r = 0; r < a; ++r)
    if (lam[r] < -1e-9) return false;
  lambda_out.assign(constraint_count(sys), 0.0);
  for (Eigen::Index r = 0; r < a; ++r)
    lambda_out[active[r]] = std::max(0.0, lam[r]);
  return true;
}

LocalMin solve_local(const DiskSystem& sys, const Vector& x, Vector q,
                     const ProjectOptions& opts) {
  LocalMin out;
  int used = 0;
  if (!restore(sys, q, opts.tol.feas, 80, &used)) {
    out.iterations = used;
    return out;
  }
  const double scale = 1.0 + (x - q).norm();
  double kkt = kInf;
  std::vector<int> active;
  for (int it = 0; it < opts.max_outer; ++it) {
    ++used;
    ContactBasis basis = contact_basis(sys, q, opts.tol.active);
    Vector d = x - q;
    ConeProjection cp = project_cone(basis.gradients, d);
    if (!cp.converged) {
      out.iterations = used;
      return out;
    }
    kkt = cp.v.norm();
    active = basis.active;
    if (kkt <= 1e-10 * scale) break;

    double cost = d.squaredNorm();
    double alpha = 1.0;
    bool moved = false;
    for (int cut = 0; cut < 14; ++cut) {
      Vector trial = q + alpha * cp.v;
      if (restore(sys, trial, opts.tol.feas, 40, &used) &&
          (x - trial).squaredNorm() <= cost - 1e-4 * alpha * kkt * kkt) {
        q = trial;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;  // stalled: hand over to the Newton polish
  }

  // Keep only the strongly active constraints for the polish.
  std::vector<int> strong;
  {
    ContactBasis basis = contact_basis(sys, q, opts.tol.active);
    Vector d = x - q;
    ConeProjection cp = project_cone(basis.gradients, d);
    for (std::size_t k = 0; k < basis.active.size(); ++k)
      if (cp.lambda[k] > 1e-12 * scale) strong.push_back(basis.active[k]);
  }
  Vector polished = q;
  std::vector<double> lambda;
  if (polish_kkt(sys, x, polished, strong, lambda) &&
      (polished - q).norm() <= 1e-2 * scale) {
    // Accept the polish only if the projected-gradient certificate holds there.
    ContactBasis basis = contact_basis(sys, polished, opts.tol.active);
    ConeProjection cp = project_cone(basis.gradients, x - polished);
    if (cp.converged && cp.v.norm() <= 1e-9 * scale) {
      out.q = polished;
      out.cost = (x - polished).norm();
      out.lambda = lambda;
      out.ok = true;
      out.iterations = used;
      return out;
    }
  }
  if (kkt <= 1e-8 * scale && min_gap(sys, q) >= -opts.tol.feas) {
    ContactBasis basis = contact_basis(sys, q, opts.tol.active);
    ConeProjection cp = project_cone(basis.gradients, x - q);
    out.q = q;
    out.cost = (x - q).norm();
    out.lambda.assign(constraint_count(sys), 0.0);
    for (std::size_t k = 0; k < basis.active.size(); ++k)
      out.lambda[basis.active[k]] = cp.lambda[k];
    out.ok = true;
  }
  out.iterations = used;
  return out;
}

// Penalty-descent fallback for starts whose active-set loop failed.
Vector penalty_start(const DiskSystem& sys, const Vector& x, Vector q) {
  for (double mu : {1e2, 1e4, 1e6}) {
    for (int it = 0; it < 200; ++it) {
      Vector g = constraint_values(sys, q);
      Vector grad = q - x;
      for (int k = 0; k < g.size(); ++k)
        if (g[k] < 0.0)
          grad += 2.0 * mu * g[k] * constraint_gradient(sys, q, k);
      double gn = grad.norm();
      if (gn <= 1e-10 * (1.0 + (x - q).norm())) break;
      double f0 = 0.5 * (q - x).squaredNorm();
      for (int k = 0; k < g.size(); ++k)
        if (g[k] < 0.0) f0 += mu * g[k] * g[k];
      double alpha = 1.0 / (1.0 + mu);
      for (int cut = 0; cut < 20; ++cut) {
        Vector trial = q - alpha * grad;
        Vector gt = constraint_values(sys, trial);
        double ft = 0.5 * (trial - x).squaredNorm();
        for (int k = 0; k < gt.size(); ++k)
          if (gt[k] < 0.0) ft += mu * gt[k] * gt[k];
        if (ft < f0 - 1e-4 * alpha * gn * gn) {
          q = trial;
          break;
        }
        alpha *= 0.5;
      }
    }
  }
  return q;
}

}  // namespace

ProjectionResult project_disk_config(const DiskSystem& sys, const Vector& x,
                                     const ProjectOptions& opts) {
  require_dim(x, config_dim(sys), "project_disk_config");
  require_finite(x, "project_disk_config");

  if (feasible(sys, x, 0.0)) {
    ProjectionResult out;
    out.nearest = {x};
    out.multipliers.assign(constraint_count(sys), 0.0);
    return out;
  }

  const int starts = std::max(1, opts.tol.multistart);
  std::vector<LocalMin> minima;
  int iterations = 0;

  Vector jitter = Vector::Zero(x.size());
  for (int m = 0; m < starts; ++m) {
    Vector q0 = x;
    if (m > 0) {
      if (m % 2 == 1) {
        // Fresh gaussian jitter; the even successor reuses it negated, so the
        // starts cover symmetric basins in pairs.
        std::mt19937_64 rng(mix_seed(opts.seed, static_cast<std::uint64_t>(m)));
        std::normal_distribution<double> gauss(0.0, 0.35 * sys.radius);
        for (Eigen::Index i = 0; i < jitter.size(); ++i) jitter[i] = gauss(rng);
        q0 += jitter;
      } else {
        q0 -= jitter;
      }
    }
    LocalMin lm = solve_local(sys, x, q0, opts);
    if (!lm.ok) {
      Vector fallback = penalty_start(sys, x, q0);
      LocalMin retry = solve_local(sys, x, fallback, opts);
      retry.iterations += lm.iterations;
      lm = retry;
    }
    iterations += lm.iterations;
    if (lm.ok) minima.push_back(std::move(lm));
  }

  ProjectionResult out;
  out.iterations = iterations;
  if (minima.empty()) {
    out.converged = false;
    out.dist = kInf;
    return out;
  }
  double best = kInf;
  for (const LocalMin& lm : minima) best = std::min(best, lm.cost);
  std::vector<Vector> points;
  for (const LocalMin& lm : minima)
    if (lm.cost <= best * (1.0 + 1e-6) + 1e-12) points.push_back(lm.q);
  sort_and_dedupe(points, opts.tol.dedupe);
  out.nearest = points;
  out.dist = best;
  for (const LocalMin& lm : minima)
    if ((lm.q - out.nearest.front()).lpNorm<Eigen::Infinity>() <= opts.tol.dedupe) {
      out.multipliers = lm.lambda;
      break;
    }
  return out;
}

ProjectionResult project(const ConstraintSet& set, const Vector& x,
                         const ProjectOptions& opts) {
  require_dim(x, set.dim(), "project");
  require_finite(x, "project");
  return std::visit(
      [&](const auto& k) -> ProjectionResult {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          double excess = std::max(0.0, k.normal.dot(x) - k.offset);
          ProjectionResult out = exact_result({x - excess * k.normal}, excess);
          out.multipliers = {excess};
          return out;
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          Vector p = x.cwiseMax(k.lo).cwiseMin(k.hi);
          return exact_result({p}, (x - p).norm());
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          Vector rad = x - k.center;
          double n = rad.norm();
          if (n >= k.radius) return exact_result({x}, 0.0);
          if (n == 0.0) {
            // Center: the whole sphere minimizes; report an antipodal pair.
            Vector e = Vector::Zero(x.size());
            e[0] = k.radius;
            return exact_result({k.center - e, k.center + e}, k.radius);
          }
          return exact_result({k.center + (k.radius / n) * rad}, k.radius - n);
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          double dx = x[0] - k.cx, dy = x[1] - k.cy;
          if (dx <= 0.0 || dy <= 0.0) return exact_result({x}, 0.0);
          Vector onto_vert(2), onto_horiz(2);
          onto_vert << k.cx, x[1];
          onto_horiz << x[0], k.cy;
          if (dx < dy) return exact_result({onto_vert}, dx);
          if (dy < dx) return exact_result({onto_horiz}, dy);
          return exact_result({onto_vert, onto_horiz}, dx);
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          Matrix N(static_cast<Eigen::Index>(k.faces.size()), set.dim());
          Vector c(static_cast<Eigen::Index>(k.faces.size()));
          for (std::size_t i = 0; i < k.faces.size(); ++i) {
            N.row(i) = k.faces[i].normal.transpose();
            c[i] = k.faces[i].offset;
          }
          ProjectionResult pr = project_polyhedron(N, c, x);
          if (!pr.converged)
            throw solver_error("project: polyhedron solve failed");
          return pr;
        } else {
          return project_disk_config(k, x, opts);
        }
      },
      set.kind());
}

std::optional<bool> in_gamma_r(const ConstraintSet& set, const Vector& x,
                               const Vector& v, double r,
                               const ProjectOptions& opts) {
  require_dim(v, set.dim(), "in_gamma_r direction");
  if (!(r > 0.0)) throw input_error("in_gamma_r: r must be positive");
  if (!member(set, x, opts.tol.feas))
    throw input_error("in_gamma_r: base point not in the set");
  double vnorm = v.norm();
  if (vnorm == 0.0) return true;
  ProjectionResult pr = project(set, x + r * v, opts);
  if (!pr.converged) return std::nullopt;
  // x belongs to P_C(x + r v) iff its distance r|v| matches the minimum.
  return r * vnorm <= pr.dist + opts.tol.proj;
}

DirectionalProxReport certify_directional_prox(
    const ConstraintSet& set, const std::function<Vector(const Vector&)>& direction,
    double r, const std::vector<Vector>& samples, const std::vector<double>& s_grid,
    const ProjectOptions& opts) {
  if (!(r > 0.0)) throw input_error("certify_directional_prox: r must be positive");
  for (double s : s_grid)
    if (!(s > 0.0) || !(s < r))
      throw input_error("certify_directional_prox: s_grid must lie in (0, r)");
  DirectionalProxReport report;
  report.r = r;
  for (const Vector& x : samples) {
    if (!member(set, x, opts.tol.feas))
      throw input_error("certify_directional_prox: sample not in the set");
    Vector f = direction(x);
    require_dim(f, set.dim(), "certify_directional_prox direction");
    double fn = f.norm();
    for (double s : s_grid) {
      ++report.checked;
      if (fn == 0.0) continue;
      Vector y = x + (s / fn) * f;
      ProjectionResult pr = project(set, y, opts);
      if (!pr.converged) {
        ++report.indeterminate;
        continue;
      }
      if (pr.nearest.size() != 1) {
        report.violations.push_back({x, s, 'a'});
        continue;
      }
      const Vector& z = pr.nearest.front();
      Vector w = y - z;
      double wn = w.norm();
      if (wn <= opts.tol.proj) continue;  // y itself in the set
      std::optional<bool> g = in_gamma_r(set, z, w / wn, r, opts);
      if (!g.has_value())
        ++report.indeterminate;
      else if (!*g)
        report.violations.push_back({x, s, 'b'});
    }
  }
  return report;
}

}  // namespace sweep
