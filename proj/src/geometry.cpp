#include "sweep/geometry.hpp"

#include "sweep/nnls.hpp"
#include "sweep/projection.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

namespace {

HalfSpace normalized(HalfSpace h) {
  require_finite(h.normal, "half-space normal");
  if (!std::isfinite(h.offset)) throw input_error("half-space offset not finite");
  double n = h.normal.norm();
  if (n == 0.0) throw input_error("half-space: zero normal");
  h.normal /= n;
  h.offset /= n;
  return h;
}

Matrix face_matrix(const Polyhedron& p) {
  Matrix N(static_cast<Eigen::Index>(p.faces.size()), p.faces[0].normal.size());
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    N.row(i) = p.faces[i].normal.transpose();
  return N;
}

Vector face_offsets(const Polyhedron& p) {
  Vector c(static_cast<Eigen::Index>(p.faces.size()));
  for (std::size_t i = 0; i < p.faces.size(); ++i) c[i] = p.faces[i].offset;
  return c;
}

}  // namespace

ConstraintSet::ConstraintSet()
    : ConstraintSet(HalfSpace{Vector::Ones(1), 0.0}) {}

ConstraintSet::ConstraintSet(Kind kind, double prox_constant)
    : kind_(std::move(kind)), prox_(prox_constant) {
  if (!(prox_ > 0.0)) throw input_error("prox constant must be positive");
  std::visit(
      [this](auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          k = normalized(k);
          dim_ = k.normal.size();
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          require_finite(k.lo, "box lower corner");
          require_finite(k.hi, "box upper corner");
          if (k.lo.size() != k.hi.size() || k.lo.size() == 0)
            throw input_error("box: corner dimensions disagree");
          if ((k.lo.array() > k.hi.array()).any())
            throw input_error("box: lower corner exceeds upper corner");
          dim_ = k.lo.size();
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          require_finite(k.center, "ball center");
          if (!(k.radius > 0.0) || !std::isfinite(k.radius))
            throw input_error("ball-exterior: radius must be positive");
          if (std::isinf(prox_)) prox_ = k.radius;
          if (prox_ > k.radius)
            throw input_error("ball-exterior: prox constant exceeds radius");
          dim_ = k.center.size();
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          if (!std::isfinite(k.cx) || !std::isfinite(k.cy))
            throw input_error("cross set: corner not finite");
          dim_ = 2;
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          if (k.faces.empty()) throw input_error("polyhedron: no faces");
          for (auto& f : k.faces) f = normalized(f);
          dim_ = k.faces[0].normal.size();
          for (const auto& f : k.faces)
            if (f.normal.size() != dim_)
              throw input_error("polyhedron: face dimensions disagree");
          ProjectionResult feas = project_polyhedron(
              face_matrix(k), face_offsets(k), Vector::Zero(dim_));
          if (!feas.converged) throw input_error("polyhedron: empty set");
        } else if constexpr (std::is_same_v<T, DiskSystem>) {
          validate(k);
          dim_ = config_dim(k);
        }
      },
      kind_);
}

bool member(const ConstraintSet& set, const Vector& x, double tol) {
  require_dim(x, set.dim(), "member");
  require_finite(x, "member");
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return k.normal.dot(x) <= k.offset + tol;
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          return (x.array() >= k.lo.array() - tol).all() &&
                 (x.array() <= k.hi.array() + tol).all();
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          return (x - k.center).norm() >= k.radius - tol;
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          return x[0] <= k.cx + tol || x[1] <= k.cy + tol;
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          for (const auto& f : k.faces)
            if (f.normal.dot(x) > f.offset + tol) return false;
          return true;
        } else {
          return feasible(k, x, tol);
        }
      },
      set.kind());
}

double distance(const ConstraintSet& set, const Vector& x) {
  require_dim(x, set.dim(), "distance");
  require_finite(x, "distance");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return std::max(0.0, k.normal.dot(x) - k.offset);
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          Vector clamped = x.cwiseMax(k.lo).cwiseMin(k.hi);
          return (x - clamped).norm();
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          return std::max(0.0, k.radius - (x - k.center).norm());
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          double dx = x[0] - k.cx, dy = x[1] - k.cy;
          return (dx > 0.0 && dy > 0.0) ? std::min(dx, dy) : 0.0;
        } else {
          ProjectionResult pr = project(set, x);
          if (!pr.converged)
            throw solver_error("distance: projection did not converge");
          return pr.dist;
        }
      },
      set.kind());
}

ConstraintSet translate(const ConstraintSet& set, const Vector& shift) {
  require_dim(shift, set.dim(), "translate");
  require_finite(shift, "translate");
  ConstraintSet::Kind kind = std::visit(
      [&](const auto& k) -> ConstraintSet::Kind {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return HalfSpace{k.normal, k.offset + k.normal.dot(shift)};
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          return AxisBox{k.lo + shift, k.hi + shift};
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          return BallExterior{k.center + shift, k.radius};
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          return CrossSet{k.cx + shift[0], k.cy + shift[1]};
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          Polyhedron out = k;
          for (auto& f : out.faces) f.offset += f.normal.dot(shift);
          return out;
        } else {
          Eigen::Vector2d s = shift.segment<2>(0);
          for (int i = 1; i < k.count; ++i)
            if ((shift.segment<2>(2 * i) - s).norm() > 0.0)
              throw input_error(
                  "translate: disk systems support uniform shifts only");
          DiskSystem out = k;
          for (Wall& w : out.walls) w.value += s[w.axis];
          return out;
        }
      },
      set.kind());
  return ConstraintSet(std::move(kind), set.prox_constant());
}

std::optional<double> hausdorff_translate(const ConstraintSet& set, const Vector& shift) {
  require_dim(shift, set.dim(), "hausdorff_translate");
  return std::visit(
      [&](const auto& k) -> std::optional<double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return std::abs(k.normal.dot(shift));
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          return shift.norm();
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          return std::min(shift.norm(), k.radius);
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          return shift.lpNorm<Eigen::Infinity>();
        } else {
          return std::nullopt;
        }
      },
      set.kind());
}

Vector normal_cone_project(const ConstraintSet& set, const Vector& x, const Vector& w,
                           double tol_active) {
  require_dim(x, set.dim(), "normal_cone_project");
  require_dim(w, set.dim(), "normal_cone_project direction");
  if (!member(set, x, tol_active))
    throw input_error("normal_cone_project: point not in the set");
  return std::visit(
      [&](const auto& k) -> Vector {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          if (k.offset - k.normal.dot(x) > tol_active)
            return Vector::Zero(x.size());
          return std::max(0.0, k.normal.dot(w)) * k.normal;
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          Vector p = Vector::Zero(x.size());
          for (Eigen::Index i = 0; i < x.size(); ++i) {
            bool at_hi = k.hi[i] - x[i] <= tol_active;
            bool at_lo = x[i] - k.lo[i] <= tol_active;
            if (at_hi && w[i] > 0.0) p[i] = w[i];
            if (at_lo && w[i] < 0.0) p[i] = w[i];
          }
          return p;
        } else if constexpr (std::is_same_v<T, BallExterior>) {
          Vector rad = x - k.center;
          double n = rad.norm();
          if (n - k.radius > tol_active || n == 0.0)
            return Vector::Zero(x.size());
          Vector inward = -rad / n;
          return std::max(0.0, w.dot(inward)) * inward;
        } else if constexpr (std::is_same_v<T, CrossSet>) {
          double dx = x[0] - k.cx, dy = x[1] - k.cy;
          Vector p = Vector::Zero(2);
          bool on_vert = std::abs(dx) <= tol_active;   // {x = cx, y > cy}
          bool on_horiz = std::abs(dy) <= tol_active;  // {y = cy, x > cx}
          if (on_vert && on_horiz) return p;  // corner: no nonzero proximal normals
          if (on_horiz && dx > 0.0) p[1] = std::max(0.0, w[1]);
          if (on_vert && dy > 0.0) p[0] = std::max(0.0, w[0]);
          return p;
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          std::vector<Vector> outward;
          for (const auto& f : k.faces)
            if (f.offset - f.normal.dot(x) <= tol_active)
              outward.push_back(-f.normal);
          ConeProjection cp = project_cone(outward, w);
          if (!cp.converged)
            throw solver_error("normal_cone_project: cone solve failed");
          return w - cp.v;
        } else {
          ContactBasis basis = contact_basis(k, x, tol_active);
          ConeProjection cp = project_cone(basis.gradients, w);
          if (!cp.converged)
            throw solver_error("normal_cone_project: cone solve failed");
          return w - cp.v;
        }
      },
      set.kind());
}

ConstraintSet set_at(const MovingSet& m, double t) {
  return std::visit(
      [&](const auto& motion) -> ConstraintSet {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FixedMotion>) {
          return m.base;
        } else if constexpr (std::is_same_v<T, TranslationMotion>) {
          return translate(m.base, t * motion.velocity);
        } else {
          if (!motion.at) throw input_error("moving set: missing motion rule");
          ConstraintSet c = motion.at(t);
          if (c.dim() != m.base.dim())
            throw input_error("moving set: rule changed dimension");
          return c;
        }
      },
      m.motion);
}

double motion_rate(const MovingSet& m) {
  return std::visit(
      [](const auto& motion) -> double {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FixedMotion>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, TranslationMotion>) {
          return motion.velocity.norm();
        } else {
          return motion.k;
        }
      },
      m.motion);
}

}  // namespace sweep
