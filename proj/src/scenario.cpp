#include "sweep/scenario.hpp"

#include "sweep/analysis.hpp"
#include "sweep/crowd.hpp"
#include "sweep/csv.hpp"
#include "sweep/projection.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

namespace sweep {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw input_error("scenario: " + msg); }

const json& need(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "' in " + ctx);
  return *it;
}

double num(const json& j, const char* ctx) {
  if (!j.is_number()) fail(std::string("field '") + ctx + "' must be a number");
  return j.get<double>();
}

double pos(const json& j, const char* ctx) {
  double v = num(j, ctx);
  if (!(v > 0.0)) fail(std::string("field '") + ctx + "' must be positive");
  return v;
}

int integer(const json& j, const char* ctx) {
  if (!j.is_number_integer()) fail(std::string("field '") + ctx + "' must be an integer");
  return j.get<int>();
}

std::string str(const json& j, const char* ctx) {
  if (!j.is_string()) fail(std::string("field '") + ctx + "' must be a string");
  return j.get<std::string>();
}

Vector vec(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) fail(std::string("field '") + ctx + "' must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index k = 0;
  for (const json& e : j) {
    if (!e.is_number()) fail(std::string("field '") + ctx + "' must hold numbers");
    v[k++] = e.get<double>();
  }
  return v;
}

Eigen::Vector2d vec2(const json& j, const char* ctx) {
  Vector v = vec(j, ctx);
  if (v.size() != 2) fail(std::string("field '") + ctx + "' must have length 2");
  return v;
}

ConstraintSet parse_set(const json& j) {
  if (!j.is_object()) fail("'set' must be an object");
  std::string kind = str(need(j, "kind", "set"), "set.kind");
  double prox = j.contains("prox") ? pos(j["prox"], "set.prox") : kInf;
  if (kind == "half-space")
    return ConstraintSet(HalfSpace{vec(need(j, "normal", "set"), "set.normal"),
                                   num(need(j, "offset", "set"), "set.offset")},
                         prox);
  if (kind == "box")
    return ConstraintSet(AxisBox{vec(need(j, "lo", "set"), "set.lo"),
                                 vec(need(j, "hi", "set"), "set.hi")},
                         prox);
  if (kind == "ball-exterior")
    return ConstraintSet(BallExterior{vec(need(j, "center", "set"), "set.center"),
                                      pos(need(j, "radius", "set"), "set.radius")},
                         prox);
  if (kind == "cross")
    return ConstraintSet(CrossSet{num(need(j, "cx", "set"), "set.cx"),
                                  num(need(j, "cy", "set"), "set.cy")},
                         prox);
  if (kind == "polyhedron") {
    const json& faces = need(j, "faces", "set");
    if (!faces.is_array() || faces.empty()) fail("'set.faces' must be a nonempty array");
    Polyhedron poly;
    for (const json& f : faces)
      poly.faces.push_back(HalfSpace{vec(need(f, "normal", "set.faces"), "set.faces.normal"),
                                     num(need(f, "offset", "set.faces"), "set.faces.offset")});
    return ConstraintSet(std::move(poly), prox);
  }
  if (kind == "disks") {
    DiskSystem sys;
    sys.count = integer(need(j, "count", "set"), "set.count");
    sys.radius = pos(need(j, "radius", "set"), "set.radius");
    if (j.contains("walls")) {
      const json& walls = j["walls"];
      if (!walls.is_array()) fail("'set.walls' must be an array");
      for (const json& w : walls) {
        Wall wall;
        wall.axis = integer(need(w, "axis", "set.walls"), "set.walls.axis");
        const json& lower = need(w, "lower", "set.walls");
        if (!lower.is_boolean()) fail("field 'set.walls.lower' must be a boolean");
        wall.lower = lower.get<bool>();
        wall.value = num(need(w, "value", "set.walls"), "set.walls.value");
        sys.walls.push_back(wall);
      }
    }
    return ConstraintSet(sys, prox);
  }
  fail("unknown set kind '" + kind + "'");
}

Motion parse_motion(const json& set_block, Eigen::Index dim) {
  if (!set_block.contains("motion")) return FixedMotion{};
  const json& j = set_block["motion"];
  std::string kind = str(need(j, "kind", "set.motion"), "set.motion.kind");
  if (kind == "fixed") return FixedMotion{};
  if (kind == "translation") {
    Vector v = vec(need(j, "velocity", "set.motion"), "set.motion.velocity");
    if (v.size() != dim) fail("'set.motion.velocity' does not match the set dimension");
    return TranslationMotion{v};
  }
  fail("unknown motion kind '" + kind + "'");
}

RoomSpec parse_room(const json& j) {
  if (!j.is_object()) fail("'room' must be an object");
  RoomSpec room;
  room.width = pos(need(j, "width", "room"), "room.width");
  room.height = pos(need(j, "height", "room"), "room.height");
  room.nx = integer(need(j, "nx", "room"), "room.nx");
  room.ny = integer(need(j, "ny", "room"), "room.ny");
  if (j.contains("origin")) room.origin = vec2(j["origin"], "room.origin");
  if (j.contains("obstacles")) {
    const json& obs = j["obstacles"];
    if (!obs.is_array()) fail("'room.obstacles' must be an array");
    for (const json& o : obs)
      room.obstacles.push_back(RectShape{num(need(o, "x0", "room.obstacles"), "x0"),
                                         num(need(o, "y0", "room.obstacles"), "y0"),
                                         num(need(o, "x1", "room.obstacles"), "x1"),
                                         num(need(o, "y1", "room.obstacles"), "y1")});
  }
  const json& exits = need(j, "exits", "room");
  if (!exits.is_array() || exits.empty()) fail("'room.exits' must be a nonempty array");
  for (const json& e : exits)
    room.exits.push_back(SegmentShape{vec2(need(e, "a", "room.exits"), "room.exits.a"),
                                      vec2(need(e, "b", "room.exits"), "room.exits.b")});
  return room;
}

Perturbation parse_perturbation(const json& j, Scenario& sc) {
  if (!j.is_object()) fail("'perturbation' must be an object");
  std::string kind = str(need(j, "kind", "perturbation"), "perturbation.kind");
  sc.perturbation_kind = kind;
  Perturbation f;
  if (kind == "zero") {
    f.rule = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
    f.bound = 0.0;
    if (j.contains("f_inf")) f.bound = pos(j["f_inf"], "perturbation.f_inf");
    return f;
  }
  if (kind == "constant") {
    Vector value = vec(need(j, "value", "perturbation"), "perturbation.value");
    f.rule = [value](const Vector&) { return value; };
    f.bound = value.norm();
    if (j.contains("f_inf")) {
      double b = pos(j["f_inf"], "perturbation.f_inf");
      if (b < f.bound) fail("'perturbation.f_inf' is below |value|");
      f.bound = b;
    }
    return f;
  }
  if (kind == "decay") {
    double L = pos(need(j, "L", "perturbation"), "perturbation.L");
    f.rule = [L](const Vector& x) { return Vector(-L * x); };
    f.bound = L;
    f.linear_growth = true;
    return f;
  }
  if (kind == "exit-field") {
    if (!sc.room) fail("perturbation 'exit-field' needs a top-level 'room' block");
    if (!sc.set || !std::holds_alternative<DiskSystem>(sc.set->base.kind()))
      fail("perturbation 'exit-field' needs a disk set");
    int count = std::get<DiskSystem>(sc.set->base.kind()).count;
    double speed = j.contains("speed") ? pos(j["speed"], "perturbation.speed") : 1.0;
    sc.exit_speed = speed;
    auto field = std::make_shared<GridField>(solve_eikonal(rasterize(*sc.room)));
    f.rule = [field, count, speed](const Vector& q) {
      require_dim(q, 2 * count, "exit-field input");
      Vector v(q.size());
      for (int i = 0; i < count; ++i) {
        Eigen::Vector2d w;
        try {
          w = spontaneous_velocity(*field, disk_center(q, i));
        } catch (const input_error& e) {
          // Mid-run domain exits are a solver-side breakdown, not bad input.
          throw solver_error(std::string("exit field: ") + e.what());
        }
        v.segment<2>(2 * i) = speed * w;
      }
      return v;
    };
    f.bound = speed * std::sqrt(static_cast<double>(count));
    return f;
  }
  fail("unknown perturbation kind '" + kind + "'");
}

Scenario parse_impl(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  std::string schema = str(need(j, "schema", "scenario"), "schema");
  if (schema != "sweep-scenario/1") fail("unsupported schema '" + schema + "'");

  Scenario sc;
  sc.name = str(need(j, "name", "scenario"), "name");
  if (sc.name.empty()) fail("'name' must be nonempty");
  for (char c : sc.name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      fail("'name' may only use letters, digits, '-' and '_'");

  if (j.contains("seed")) {
    const json& s = j["seed"];
    bool ok = s.is_number_unsigned() ||
              (s.is_number_integer() && s.get<std::int64_t>() >= 0);
    if (!ok) fail("'seed' must be a nonnegative integer");
    sc.seed = s.get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("'tolerances' must be an object");
    if (t.contains("feas")) sc.tol.feas = pos(t["feas"], "tolerances.feas");
    if (t.contains("proj")) sc.tol.proj = pos(t["proj"], "tolerances.proj");
    if (t.contains("active")) sc.tol.active = pos(t["active"], "tolerances.active");
    if (t.contains("dedupe")) sc.tol.dedupe = pos(t["dedupe"], "tolerances.dedupe");
    if (t.contains("multistart")) {
      int m = integer(t["multistart"], "tolerances.multistart");
      if (m < 1) fail("'tolerances.multistart' must be >= 1");
      sc.tol.multistart = m;
    }
  }
  if (j.contains("room")) sc.room = parse_room(j["room"]);

  if (j.contains("set")) {
    ConstraintSet base = parse_set(j["set"]);
    Motion motion = parse_motion(j["set"], base.dim());
    sc.set = MovingSet{std::move(base), std::move(motion)};

    sc.u0 = vec(need(j, "u0", "scenario"), "u0");
    if (sc.u0.size() != sc.set->base.dim()) fail("'u0' does not match the set dimension");
    require_finite(sc.u0, "u0");
    sc.horizon = pos(need(j, "T", "scenario"), "T");
    if (j.contains("r")) sc.r = pos(j["r"], "r");
    if (j.contains("n")) {
      sc.n = integer(j["n"], "n");
      if (sc.n < 1) fail("'n' must be >= 1");
    }
    if (j.contains("n_list")) {
      const json& lst = j["n_list"];
      if (!lst.is_array()) fail("'n_list' must be an array");
      for (const json& e : lst) {
        int v = integer(e, "n_list");
        if (v < 1) fail("'n_list' entries must be >= 1");
        sc.n_list.push_back(v);
      }
    }
    if (sc.n == 0 && sc.n_list.empty()) fail("need 'n' or 'n_list'");
    sc.f = parse_perturbation(need(j, "perturbation", "scenario"), sc);
    if (j.contains("reference")) sc.reference = str(j["reference"], "reference");
    if (j.contains("declared")) {
      const json& d = j["declared"];
      if (!d.is_object()) fail("'declared' must be an object");
      if (d.contains("eta")) sc.declared.eta = pos(d["eta"], "declared.eta");
      if (d.contains("stability_a"))
        sc.declared.stability_a = pos(d["stability_a"], "declared.stability_a");
      if (d.contains("c_eq")) sc.declared.c_eq = pos(d["c_eq"], "declared.c_eq");
      if (d.contains("min_order"))
        sc.declared.min_order = pos(d["min_order"], "declared.min_order");
    }
  } else if (!sc.room) {
    fail("need a 'set' block or a 'room' block");
  }
  return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  try {
    return parse_impl(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw input_error("cannot open scenario file: " + file.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

Problem Scenario::problem() const {
  if (!set) throw input_error("scenario '" + name + "' has no constraint set");
  Problem p;
  p.set = *set;
  p.f = f;
  p.u0 = u0;
  p.horizon = horizon;
  p.r = r;
  return p;
}

std::function<Vector(double)> make_reference(const Scenario& sc) {
  if (sc.reference.empty()) return {};
  if (!sc.set) throw input_error("reference '" + sc.reference + "' needs a constraint set");

  if (sc.reference == "ballext-slide") {
    const auto* ball = std::get_if<BallExterior>(&sc.set->base.kind());
    if (!ball || !std::holds_alternative<FixedMotion>(sc.set->motion) ||
        sc.perturbation_kind != "constant")
      throw input_error("reference 'ballext-slide' needs a fixed ball-exterior set and a constant perturbation");
    Vector f0 = sc.f.rule(sc.u0);
    double F = f0.norm();
    Vector rel = sc.u0 - ball->center;
    double R = ball->radius;
    if (F == 0.0 || std::abs(rel.norm() - R) > 1e-9 * R)
      throw input_error("reference 'ballext-slide' needs u0 on the boundary and a nonzero drive");
    Vector e1 = f0 / F;
    Vector comp = rel - rel.dot(e1) * e1;
    if (comp.norm() < 1e-12)
      throw input_error("reference 'ballext-slide' is degenerate when u0 is aligned with the drive");
    Vector e2 = comp / comp.norm();
    double th0 = std::atan2(rel.dot(e2), rel.dot(e1));
    Vector c = ball->center;
    return [c, R, F, e1, e2, th0](double t) {
      double th = 2.0 * std::atan(std::tan(0.5 * th0) * std::exp(-F * t / R));
      return Vector(c + R * (std::cos(th) * e1 + std::sin(th) * e2));
    };
  }

  if (sc.reference == "swept-halfplane") {
    const auto* hs = std::get_if<HalfSpace>(&sc.set->base.kind());
    const auto* tr = std::get_if<TranslationMotion>(&sc.set->motion);
    if (!hs || !tr || sc.f.bound != 0.0)
      throw input_error("reference 'swept-halfplane' needs a translating half-space and a zero perturbation");
    Vector n = hs->normal;
    double s = n.dot(tr->velocity);  // offset growth rate
    double gap = hs->offset - n.dot(sc.u0);
    Vector u0 = sc.u0;
    return [u0, n, s, gap](double t) {
      double excess = -gap - s * t;  // <n, u0> minus the moved offset
      return excess > 0.0 ? Vector(u0 - excess * n) : u0;
    };
  }

  throw input_error("unknown reference '" + sc.reference + "'");
}

namespace {

ordered_json check_json(const CheckReport& rep) {
  ordered_json violations = ordered_json::array();
  std::size_t listed = std::min<std::size_t>(rep.violations.size(), 20);
  for (std::size_t i = 0; i < listed; ++i)
    violations.push_back({{"detail", rep.violations[i].detail},
                          {"margin", format_double(rep.violations[i].margin)}});
  return ordered_json{{"name", rep.name},
                      {"surrogate", rep.surrogate},
                      {"samples", rep.samples},
                      {"pass", rep.pass},
                      {"worst_margin", format_double(rep.worst_margin)},
                      {"violation_count", rep.violations.size()},
                      {"violations", violations}};
}

void log_report(std::ostream& log, const CheckReport& rep) {
  log << "check " << rep.name << " [" << rep.samples << " samples]: "
      << (rep.pass ? "pass" : "FAIL") << " (worst margin "
      << format_double(rep.worst_margin) << ")\n";
  std::size_t listed = std::min<std::size_t>(rep.violations.size(), 3);
  for (std::size_t i = 0; i < listed; ++i)
    log << "  violation: " << rep.violations[i].detail << '\n';
  if (rep.violations.size() > listed)
    log << "  (" << rep.violations.size() - listed << " more)\n";
}

template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const input_error& e) {
    log << "error (input): " << e.what() << '\n';
    return 1;
  } catch (const solver_error& e) {
    log << "error (solver): " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error (io): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }
}

ordered_json report_shell(const Scenario& sc, const char* command, int n) {
  return ordered_json{{"schema", "sweep-report/1"},
                      {"scenario", sc.name},
                      {"command", command},
                      {"seed", sc.seed},
                      {"n", n}};
}

}  // namespace

int cmd_run(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed, std::optional<int> n, std::ostream& log) {
  return guarded(log, [&]() -> int {
    Scenario sc = load_scenario(scenario_file);
    if (seed) sc.seed = *seed;
    if (n) sc.n = *n;
    if (sc.n < 1)
      throw input_error("scenario '" + sc.name + "': run needs 'n' (or --n)");
    Problem p = sc.problem();
    ProjectOptions opts;
    opts.seed = sc.seed;
    opts.tol = sc.tol;
    Trajectory traj = integrate(p, sc.n, opts);
    if (!traj.ok) {
      log << "solver failure at step " << traj.failed_step << ": " << traj.diagnostic << '\n';
      return 2;
    }
    CheckReport audit = audit_trajectory(traj, p, opts);
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / (sc.name + "_trajectory.csv"), trajectory_csv(traj));
    ordered_json rep = report_shell(sc, "run", sc.n);
    rep["checks"] = ordered_json::array({check_json(audit)});
    rep["pass"] = audit.pass;
    write_text_file(out_dir / (sc.name + "_audit.json"), rep.dump(2) + "\n");
    log << "run " << sc.name << ": n = " << sc.n << ", " << traj.steps() << " steps\n";
    log_report(log, audit);
    return audit.pass ? 0 : 3;
  });
}

int cmd_converge(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& log) {
  return guarded(log, [&]() -> int {
    Scenario sc = load_scenario(scenario_file);
    if (seed) sc.seed = *seed;
    Problem p = sc.problem();
    ProjectOptions opts;
    opts.seed = sc.seed;
    opts.tol = sc.tol;
    ConvergenceStudy study = convergence_study(p, sc.n_list, opts, make_reference(sc));
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / (sc.name + "_converge.csv"), convergence_csv(study));
    log << "converge " << sc.name << ":\n";
    for (const ConvergenceRow& row : study.rows)
      log << "  n " << row.n << "  gap " << format_double(row.gap) << "  order "
          << format_double(row.local_order) << "  kappa " << format_double(row.kappa) << '\n';
    if (study.exact)
      log << "fitted order: exact (gaps at rounding level)\n";
    else
      log << "fitted order: " << format_double(study.fitted_order) << '\n';
    if (sc.declared.min_order > 0.0 && !study.exact &&
        study.fitted_order < sc.declared.min_order) {
      log << "order below the declared minimum " << format_double(sc.declared.min_order) << '\n';
      return 3;
    }
    return 0;
  });
}

int cmd_crowd(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed, std::optional<int> n, std::ostream& log) {
  return guarded(log, [&]() -> int {
    Scenario sc = load_scenario(scenario_file);
    if (seed) sc.seed = *seed;
    if (n) sc.n = *n;
    if (sc.n < 1)
      throw input_error("scenario '" + sc.name + "': crowd needs 'n' (or --n)");
    if (!sc.set || !std::holds_alternative<DiskSystem>(sc.set->base.kind()))
      throw input_error("scenario '" + sc.name + "': crowd needs a disk set");
    if (!std::holds_alternative<FixedMotion>(sc.set->motion))
      throw input_error("scenario '" + sc.name + "': crowd needs a fixed set");
    if (sc.f.linear_growth)
      throw input_error("scenario '" + sc.name + "': crowd needs a bounded desired field");
    const DiskSystem& sys = std::get<DiskSystem>(sc.set->base.kind());
    ProjectOptions opts;
    opts.seed = sc.seed;
    opts.tol = sc.tol;
    CrowdRun run = simulate_crowd(sys, sc.u0, sc.f.rule, sc.f.bound, sc.r, sc.horizon,
                                  sc.n, opts);
    if (!run.sweep.ok) {
      log << "solver failure at step " << run.sweep.failed_step << ": "
          << run.sweep.diagnostic << '\n';
      return 2;
    }
    Problem p = sc.problem();
    CheckReport audit = audit_trajectory(run.sweep, p, opts);
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / (sc.name + "_crowd.csv"), crowd_csv(run));
    ordered_json rep = report_shell(sc, "crowd", sc.n);
    rep["scheme_gap"] = format_double(run.scheme_gap);
    rep["checks"] = ordered_json::array({check_json(audit)});
    rep["pass"] = audit.pass;
    write_text_file(out_dir / (sc.name + "_audit.json"), rep.dump(2) + "\n");
    log << "crowd " << sc.name << ": n = " << sc.n << ", scheme gap "
        << format_double(run.scheme_gap) << '\n';
    log_report(log, audit);
    return audit.pass ? 0 : 3;
  });
}

int cmd_field(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
              std::ostream& log) {
  return guarded(log, [&]() -> int {
    Scenario sc = load_scenario(scenario_file);
    if (!sc.room)
      throw input_error("scenario '" + sc.name + "': field needs a 'room' block");
    GridField field = solve_eikonal(rasterize(*sc.room));
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / (sc.name + "_field.csv"), field_csv(field));
    int reached = 0, free_cells = 0;
    double tmax = 0.0;
    for (std::size_t k = 0; k < field.value.size(); ++k) {
      if (field.grid.cells[k] == Cell::Obstacle) continue;
      ++free_cells;
      if (std::isfinite(field.value[k])) {
        ++reached;
        tmax = std::max(tmax, field.value[k]);
      }
    }
    log << "field " << sc.name << ": " << field.grid.nx << "x" << field.grid.ny
        << " grid, " << reached << "/" << free_cells << " free cells reached, max time "
        << format_double(tmax) << '\n';
    return 0;
  });
}

namespace {

Vector make_vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Problem halfplane_slide_problem() {
  Problem p;
  p.set = MovingSet{ConstraintSet(HalfSpace{make_vec2(0.0, 1.0), 0.0})};
  Vector drive = make_vec2(1.0, 1.0);
  p.f = Perturbation{[drive](const Vector&) { return drive; }, drive.norm(), false};
  p.u0 = Vector::Zero(2);
  p.horizon = 1.0;
  return p;
}

Problem ballext_slide_problem() {
  Problem p;
  p.set = MovingSet{ConstraintSet(BallExterior{Vector::Zero(2), 1.0})};
  Vector drive = make_vec2(1.0, 0.0);
  p.f = Perturbation{[drive](const Vector&) { return drive; }, 1.0, false};
  double th0 = 0.75 * std::numbers::pi;
  p.u0 = make_vec2(std::cos(th0), std::sin(th0));
  p.horizon = 0.5;
  p.r = 1.0;
  return p;
}

std::vector<CheckReport> suite_hypomonotonicity(bool corrupt) {
  ConstraintSet ball(BallExterior{Vector::Zero(2), 1.0});
  if (corrupt) {
    // Claim a defect ten times weaker than the geometry supports.
    CheckReport rep = check_hypomonotonicity(ball, 10000, 91, 10.0);
    rep.name += " (ball-exterior, eta x10)";
    return {rep};
  }
  CheckReport a = check_hypomonotonicity(ball, 10000, 91);
  a.name += " (ball-exterior)";
  ConstraintSet half(HalfSpace{make_vec2(0.0, 1.0), 0.0});
  CheckReport b = check_hypomonotonicity(half, 2000, 92);
  b.name += " (half-space)";
  ConstraintSet box(AxisBox{make_vec2(-1.0, -2.0), make_vec2(1.0, 0.5)});
  CheckReport c = check_hypomonotonicity(box, 2000, 93);
  c.name += " (box)";
  return {a, b, c};
}

std::vector<CheckReport> suite_equivalence() {
  ProjectOptions opts;
  Problem hp = halfplane_slide_problem();
  Trajectory th = integrate(hp, 128, opts);
  CheckReport a = check_equation_equivalence(th, hp.set.base, hp.f.rule, 0.01);
  a.name += " (half-plane slide)";
  Problem bp = ballext_slide_problem();
  Trajectory tb = integrate(bp, 160, opts);
  CheckReport b = check_equation_equivalence(tb, bp.set.base, bp.f.rule, 3.0);
  b.name += " (ball-exterior slide)";
  return {a, b};
}

std::vector<CheckReport> suite_stability() {
  ProjectOptions opts;
  Problem hp = halfplane_slide_problem();
  CheckReport a = check_stability(hp, Vector::Zero(2), make_vec2(0.1, 0.0), 128, 1.0, opts);
  a.name += " (half-plane, parallel slides)";
  CheckReport b = check_stability(hp, make_vec2(0.2, 0.0), make_vec2(0.2, 0.0), 64, 1.0, opts);
  b.name += " (coincident data)";
  Problem bp = ballext_slide_problem();
  double th0 = 0.75 * std::numbers::pi;
  double th1 = th0 + 0.01;
  CheckReport c = check_stability(bp, make_vec2(std::cos(th0), std::sin(th0)),
                                  make_vec2(std::cos(th1), std::sin(th1)), 200,
                                  std::exp(bp.horizon) * 1.01, opts);
  c.name += " (ball-exterior, nearby angles)";
  return {a, b, c};
}

std::vector<CheckReport> suite_audit(bool corrupt) {
  ProjectOptions opts;
  Problem hp = halfplane_slide_problem();
  Trajectory th = integrate(hp, corrupt ? 32 : 64, opts);
  if (corrupt) {
    for (Vector& d : th.deltas) d *= 3.0;
    CheckReport rep = audit_trajectory(th, hp, opts);
    rep.name += " (half-plane, deltas scaled x3)";
    return {rep};
  }
  CheckReport a = audit_trajectory(th, hp, opts);
  a.name += " (half-plane slide)";
  Problem bp = ballext_slide_problem();
  Trajectory tb = integrate(bp, 80, opts);
  CheckReport b = audit_trajectory(tb, bp, opts);
  b.name += " (ball-exterior slide)";

  DiskSystem sys{2, 0.25, {}};
  Vector q0(4);
  q0 << -0.3, 0.0, 0.3, 0.0;
  Vector drive(4);
  drive << 1.0, 0.0, -1.0, 0.0;
  auto desired = [drive](const Vector&) { return drive; };
  CrowdRun run = simulate_crowd(sys, q0, desired, drive.norm(), 0.5, 0.5, 8, opts);
  Problem cp;
  cp.set = MovingSet{ConstraintSet(sys)};
  cp.f = Perturbation{desired, drive.norm(), false};
  cp.u0 = q0;
  cp.horizon = 0.5;
  cp.r = 0.5;
  CheckReport c = audit_trajectory(run.sweep, cp, opts);
  c.name += " (two pressing disks)";
  return {a, b, c};
}

std::vector<CheckReport> suite_gamma() {
  ProjectOptions opts;
  ConstraintSet ball(BallExterior{Vector::Zero(2), 1.0});
  std::vector<Vector> samples;
  for (int k = 0; k < 20; ++k) {
    double th = 2.0 * std::numbers::pi * k / 20.0;
    samples.push_back(make_vec2(std::cos(th), std::sin(th)));
  }
  Vector drive = make_vec2(1.0, 0.0);
  DirectionalProxReport dp = certify_directional_prox(
      ball, [drive](const Vector&) { return drive; }, 1.0, samples, {0.25, 0.5, 0.75}, opts);
  CheckReport a;
  a.name = "gamma certificate (ball-exterior)";
  a.surrogate = "sampled projections along the drive direction";
  a.samples = dp.checked;
  for (const DirectionalProxViolation& v : dp.violations) {
    std::ostringstream os;
    os << "sample (" << v.x.transpose() << ") s = " << v.s << " stage " << v.stage;
    a.violations.push_back({os.str(), -1.0});
  }
  if (dp.indeterminate > 0)
    a.violations.push_back({"indeterminate projections", -1.0});
  a.pass = a.violations.empty();
  if (!a.pass) a.worst_margin = -1.0;

  CheckReport b;
  b.name = "gamma scaling (ball-exterior)";
  b.surrogate = "inward normals rescaled through (0, 1)";
  int tested = 0;
  for (const Vector& z : samples) {
    Vector v = -z / z.norm();
    for (int m = 1; m <= 9; ++m) {
      ++tested;
      std::optional<bool> g = in_gamma_r(ball, z, v, 0.1 * m, opts);
      if (!g.has_value() || !*g) {
        std::ostringstream os;
        os << "z = (" << z.transpose() << ") lambda = " << 0.1 * m;
        b.violations.push_back({os.str(), -1.0});
      }
    }
  }
  b.samples = tested;
  b.pass = b.violations.empty();
  if (!b.pass) b.worst_margin = -1.0;
  return {a, b};
}

std::vector<CheckReport> run_suite(const std::string& suite) {
  if (suite == "hypomonotonicity") return suite_hypomonotonicity(false);
  if (suite == "hypomonotonicity-negative") return suite_hypomonotonicity(true);
  if (suite == "equivalence") return suite_equivalence();
  if (suite == "stability") return suite_stability();
  if (suite == "audit") return suite_audit(false);
  if (suite == "audit-negative") return suite_audit(true);
  if (suite == "gamma") return suite_gamma();
  if (suite == "all") {
    std::vector<CheckReport> all;
    for (const char* part : {"hypomonotonicity", "equivalence", "stability", "audit", "gamma"}) {
      std::vector<CheckReport> reps = run_suite(part);
      all.insert(all.end(), reps.begin(), reps.end());
    }
    return all;
  }
  std::string known;
  for (const std::string& s : verify_suites()) known += " " + s;
  throw input_error("unknown verify suite '" + suite + "' (known:" + known + ")");
}

}  // namespace

std::vector<std::string> verify_suites() {
  return {"hypomonotonicity", "hypomonotonicity-negative", "equivalence",
          "stability",        "audit",                     "audit-negative",
          "gamma",            "all"};
}

int cmd_verify(const std::string& suite, std::ostream& log) {
  return guarded(log, [&]() -> int {
    std::vector<CheckReport> reports = run_suite(suite);
    bool all = true;
    for (const CheckReport& rep : reports) {
      log_report(log, rep);
      all = all && rep.pass;
    }
    log << (all ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return all ? 0 : 3;
  });
}

}  // namespace sweep
