#ifndef SWEEP_GEOMETRY_HPP
#define SWEEP_GEOMETRY_HPP

#include "sweep/disks.hpp"
#include "sweep/types.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace sweep {

/// {x : <n, x> <= c}; the normal is stored unit length (offset rescaled).
struct HalfSpace {
  Vector normal;
  double offset = 0.0;
};

/// {x : lo <= x <= hi} componentwise.
struct AxisBox {
  Vector lo, hi;
};

/// Complement of the open ball B(center, radius).  Prox-regular with
/// constant equal to the radius.
struct BallExterior {
  Vector center;
  double radius = 1.0;
};

/// Planar union {x <= cx} u {y <= cy}.  Nonconvex; the corner carries no
/// nonzero proximal normal, and the set admits arbitrarily large directional
/// prox-regularity budgets along (-1,-1).
struct CrossSet {
  double cx = 0.0;
  double cy = 0.0;
};

/// Finite intersection of half-spaces; validated nonempty at construction.
struct Polyhedron {
  std::vector<HalfSpace> faces;
};

/// A closed constraint set of one of the supported kinds, together with a
/// prox-regularity constant (kInf for the convex kinds).
class ConstraintSet {
 public:
  using Kind = std::variant<HalfSpace, AxisBox, BallExterior, CrossSet,
                            Polyhedron, DiskSystem>;

  /// Placeholder value (the half-line x <= 0 in R^1) so containing structs
  /// stay default-constructible; any dimension mismatch throws on use.
  ConstraintSet();
  explicit ConstraintSet(Kind kind, double prox_constant = kInf);

  const Kind& kind() const { return kind_; }
  double prox_constant() const { return prox_; }
  Eigen::Index dim() const { return dim_; }

 private:
  Kind kind_;
  double prox_ = kInf;
  Eigen::Index dim_ = 0;
};

/// Membership test; exact for the analytic kinds when tol = 0.
bool member(const ConstraintSet& set, const Vector& x, double tol = 0.0);

/// Distance to the set; closed formulas for the analytic kinds, the
/// iterative projection for disk systems (solver failures propagate).
double distance(const ConstraintSet& set, const Vector& x);

/// The translated set C + shift.  Disk systems accept only shifts that move
/// every disk by the same planar vector.
ConstraintSet translate(const ConstraintSet& set, const Vector& shift);

/// Exact Hausdorff distance H(C, C + shift) where a closed formula exists.
std::optional<double> hausdorff_translate(const ConstraintSet& set, const Vector& shift);

/// Projection of w onto the proximal normal cone N(C, x); x must lie in the
/// set (within tol_active).  Zero whenever x is interior.
Vector normal_cone_project(const ConstraintSet& set, const Vector& x, const Vector& w,
                           double tol_active = default_tolerances().active);

struct FixedMotion {};

struct TranslationMotion {
  Vector velocity;
};

/// Arbitrary user-supplied motion, Lipschitz in Hausdorff distance with rate k.
struct GeneralMotion {
  double k = 0.0;
  std::function<ConstraintSet(double)> at;
};

using Motion = std::variant<FixedMotion, TranslationMotion, GeneralMotion>;

struct MovingSet {
  ConstraintSet base;
  Motion motion = FixedMotion{};
};

ConstraintSet set_at(const MovingSet& m, double t);

/// Supremum speed of the moving boundary: 0, |velocity| or k.
double motion_rate(const MovingSet& m);

}  // namespace sweep

#endif
