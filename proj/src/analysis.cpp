#include "sweep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace sweep {

namespace {

Vector random_unit(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(d);
  double n = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = gauss(rng);
    n = v.norm();
  } while (n < 1e-12);
  return v / n;
}

struct BoundarySample {
  Vector z;     // boundary point
  Vector zeta;  // proximal normal realized there
};

/// Draws a boundary point together with an analytic proximal normal of
/// magnitude up to 2.  Only the kinds with closed-form normal cones are
/// supported.
BoundarySample sample_normal_pair(const ConstraintSet& set, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.0, 2.0);
  if (const auto* hs = std::get_if<HalfSpace>(&set.kind())) {
    Vector g = random_unit(rng, set.dim());
    Vector z = hs->offset * hs->normal + (g - g.dot(hs->normal) * hs->normal);
    return {z, mag(rng) * hs->normal};
  }
  if (const auto* box = std::get_if<AxisBox>(&set.kind())) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector z(set.dim());
    for (Eigen::Index i = 0; i < set.dim(); ++i)
      z[i] = box->lo[i] + unit(rng) * (box->hi[i] - box->lo[i]);
    auto k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(set.dim()));
    bool upper = (rng() & 1u) != 0;
    z[k] = upper ? box->hi[k] : box->lo[k];
    Vector zeta = Vector::Zero(set.dim());
    zeta[k] = upper ? mag(rng) : -mag(rng);
    return {z, zeta};
  }
  if (const auto* be = std::get_if<BallExterior>(&set.kind())) {
    Vector dir = random_unit(rng, set.dim());
    return {be->center + be->radius * dir, -mag(rng) * dir};
  }
  throw input_error("check_hypomonotonicity: no analytic normal sampler for this set kind");
}

}  // namespace

CheckReport check_hypomonotonicity(const ConstraintSet& set, int pairs,
                                   std::uint64_t seed, double eta_override) {
  if (pairs < 1) throw input_error("check_hypomonotonicity: need at least one pair");
  double eta = eta_override > 0.0 ? eta_override : set.prox_constant();
  CheckReport rep;
  rep.name = "hypomonotonicity";
  rep.surrogate = "random boundary pairs with analytic proximal normals";
  rep.samples = pairs;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pairs; ++k) {
    BoundarySample a = sample_normal_pair(set, rng);
    BoundarySample b = sample_normal_pair(set, rng);
    double lhs = (a.zeta - b.zeta).dot(a.z - b.z);
    double rhs = std::isfinite(eta)
                     ? -(a.zeta.norm() + b.zeta.norm()) / eta * (a.z - b.z).squaredNorm()
                     : 0.0;
    double margin = lhs - rhs;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-9) {
      std::ostringstream os;
      os << "pair " << k << ": lhs " << lhs << " < rhs " << rhs << " (eta " << eta << ")";
      rep.violations.push_back({os.str(), margin});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

namespace {

std::vector<double> interior_residuals(const Trajectory& traj, const ConstraintSet& set,
                                       const std::function<Vector(const Vector&)>& f) {
  int n = traj.steps();
  if (n < 2) throw input_error("equivalence check: need at least two steps");
  std::vector<double> res;
  res.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    const Vector& u = traj.states[static_cast<std::size_t>(i)];
    Vector fv = f(u);
    Vector pn = normal_cone_project(set, u, fv);
    Vector cd = (traj.states[static_cast<std::size_t>(i + 1)] -
                 traj.states[static_cast<std::size_t>(i - 1)]) /
                (2.0 * traj.h);
    res.push_back((cd - (fv - pn)).norm());
  }
  return res;
}

}  // namespace

double equivalence_residual(const Trajectory& traj, const ConstraintSet& set,
                            const std::function<Vector(const Vector&)>& f) {
  std::vector<double> res = interior_residuals(traj, set, f);
  return *std::max_element(res.begin(), res.end());
}

CheckReport check_equation_equivalence(const Trajectory& traj, const ConstraintSet& set,
                                       const std::function<Vector(const Vector&)>& f,
                                       double c_eq) {
  if (!(c_eq >= 0.0)) throw input_error("check_equation_equivalence: c_eq must be >= 0");
  std::vector<double> res = interior_residuals(traj, set, f);
  CheckReport rep;
  rep.name = "equation equivalence";
  rep.surrogate = "central differences at interior grid times";
  rep.samples = static_cast<int>(res.size());
  double allowed = c_eq * traj.h + 1e-9;
  for (std::size_t i = 0; i < res.size(); ++i) {
    double margin = allowed - res[i];
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < 0.0) {
      std::ostringstream os;
      os << "t = " << traj.time(static_cast<int>(i) + 1) << ": residual " << res[i]
         << " exceeds c_eq h = " << allowed;
      rep.violations.push_back({os.str(), margin});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

CheckReport check_stability(const Problem& p, const Vector& u0, const Vector& v0,
                            int n, double a_bound, const ProjectOptions& opts) {
  if (!(a_bound > 0.0)) throw input_error("check_stability: declared constant must be positive");
  Problem pu = p;
  pu.u0 = u0;
  Problem pv = p;
  pv.u0 = v0;
  Trajectory tu = integrate(pu, n, opts);
  Trajectory tv = integrate(pv, n, opts);
  CheckReport rep;
  rep.name = "stability";
  rep.surrogate = "paired discrete runs compared on the shared grid";
  rep.samples = n + 1;
  if (!tu.ok || !tv.ok) {
    rep.violations.push_back({"integration failed: " + (tu.ok ? tv.diagnostic : tu.diagnostic), -kInf});
    rep.worst_margin = -kInf;
    rep.pass = false;
    return rep;
  }
  double denom = (u0 - v0).norm();
  double sup = 0.0;
  int arg = 0;
  for (int i = 0; i <= n; ++i) {
    double d = (tu.states[static_cast<std::size_t>(i)] - tv.states[static_cast<std::size_t>(i)]).norm();
    if (d > sup) {
      sup = d;
      arg = i;
    }
  }
  if (denom == 0.0) {
    double allowed = 1e-9 * (1.0 + u0.norm());
    rep.worst_margin = allowed - sup;
    if (sup > allowed) {
      std::ostringstream os;
      os << "coincident data diverged: sup |u - v| = " << sup << " at t = " << tu.time(arg);
      rep.violations.push_back({os.str(), rep.worst_margin});
    }
  } else {
    double ratio = sup / denom;
    rep.worst_margin = a_bound + 1e-9 - ratio;
    if (ratio > a_bound + 1e-9) {
      std::ostringstream os;
      os << "sup ratio " << ratio << " at t = " << tu.time(arg) << " exceeds declared a = "
         << a_bound;
      rep.violations.push_back({os.str(), rep.worst_margin});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

CheckReport audit_trajectory(const Trajectory& traj, const Problem& p,
                             const ProjectOptions& opts) {
  if (traj.states.empty()) throw input_error("audit_trajectory: empty trajectory");
  int n = traj.steps();
  if (static_cast<int>(traj.deltas.size()) != n || static_cast<int>(traj.fvals.size()) != n ||
      static_cast<int>(traj.multipliers.size()) != n)
    throw input_error("audit_trajectory: step arrays do not match the state count");
  CheckReport rep;
  rep.name = "trajectory audit";
  rep.surrogate = "per-step bounds plus midpoint gaps of the affine interpolant";
  rep.samples = n;
  auto flag = [&rep](double margin, auto&& detail) {
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < 0.0) rep.violations.push_back({detail(), margin});
  };
  if (!traj.ok)
    flag(-kInf, [&traj] { return "incomplete integration: " + traj.diagnostic; });

  double h = traj.h;
  for (int i = 0; i < n; ++i) {
    auto si = static_cast<std::size_t>(i);
    const Vector& u = traj.states[si];
    const Vector& w = traj.states[si + 1];
    double scale = 1.0 + w.norm();

    double cerr = ((w - u) / h - traj.fvals[si] - traj.deltas[si]).norm();
    flag(1e-9 * scale - cerr, [&] {
      std::ostringstream os;
      os << "step " << i << ": stored delta off the state recurrence by " << cerr;
      return os.str();
    });

    double dn = traj.deltas[si].norm();
    flag(traj.delta_bound + 1e-9 - dn, [&] {
      std::ostringstream os;
      os << "step " << i << ": |delta| = " << dn << " exceeds the delta bound "
         << traj.delta_bound;
      return os.str();
    });

    double sp = (w - u).norm() / h;
    flag(traj.speed_bound + 1e-9 - sp, [&] {
      std::ostringstream os;
      os << "step " << i << ": discrete speed " << sp << " exceeds the speed bound "
         << traj.speed_bound;
      return os.str();
    });

    for (double lam : traj.multipliers[si])
      flag(lam + 1e-9, [&] {
        std::ostringstream os;
        os << "step " << i << ": negative multiplier " << lam;
        return os.str();
      });

    double tm = traj.time(i) + 0.5 * h;
    double gap = distance(set_at(p.set, tm), 0.5 * (u + w));
    flag(traj.gap_rate * h + 1e-9 - gap, [&] {
      std::ostringstream os;
      os << "step " << i << ": midpoint gap " << gap << " exceeds gap_rate h = "
         << traj.gap_rate * h;
      return os.str();
    });

    // The step realizes -delta as a prox-normal direction at scale h |delta|;
    // re-derive that from scratch.  Skip marginally infeasible end points (the
    // grid feasibility check below reports those).
    if (dn > 0.0) {
      ConstraintSet c1 = set_at(p.set, traj.time(i + 1));
      if (member(c1, w, opts.tol.feas)) {
        std::optional<bool> g = in_gamma_r(c1, w, -traj.deltas[si] / dn, h * dn, opts);
        if (!g.has_value())
          flag(-1.0, [&] {
            std::ostringstream os;
            os << "step " << i << ": realized normal direction indeterminate";
            return os.str();
          });
        else if (!*g)
          flag(-1.0, [&] {
            std::ostringstream os;
            os << "step " << i << ": deviation direction is not a prox-normal at scale h |delta|";
            return os.str();
          });
      }
    }
  }

  for (int i = 0; i <= n; ++i) {
    auto si = static_cast<std::size_t>(i);
    double d = distance(set_at(p.set, traj.time(i)), traj.states[si]);
    flag(opts.tol.proj * (1.0 + traj.states[si].norm()) - d, [&] {
      std::ostringstream os;
      os << "state " << i << ": distance to the set " << d;
      return os.str();
    });
  }

  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace sweep
