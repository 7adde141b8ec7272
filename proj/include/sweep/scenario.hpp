#ifndef SWEEP_SCENARIO_HPP
#define SWEEP_SCENARIO_HPP

#include "sweep/catchup.hpp"
#include "sweep/eikonal.hpp"
#include "sweep/types.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sweep {

/// Per-scenario claims the drivers gate on (0 = not declared).
struct DeclaredBounds {
  double eta = 0.0;          ///< hypomonotonicity constant
  double stability_a = 0.0;  ///< data-to-solution Lipschitz constant
  double c_eq = 0.0;         ///< equivalence residual slope
  double min_order = 0.0;    ///< convergence order gate
};

/// A parsed sweep-scenario/1 file.  Field-only scenarios carry just a room;
/// everything else needs a constraint set.
struct Scenario {
  std::string name;
  std::optional<MovingSet> set;
  Perturbation f;
  std::string perturbation_kind = "zero";
  Vector u0;
  double horizon = 1.0;
  double r = kInf;
  int n = 0;  ///< 0 when the file only lists n_list
  std::vector<int> n_list;
  std::uint64_t seed = 20260814ULL;
  Tolerances tol = default_tolerances();
  DeclaredBounds declared;
  std::string reference;  ///< named closed form for convergence studies
  std::optional<RoomSpec> room;
  double exit_speed = 1.0;

  Problem problem() const;  ///< throws input_error for field-only scenarios
};

/// Parses scenario JSON; throws input_error with a field (or line) diagnostic.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

/// Closed-form solution named by scenario.reference, bound to its data;
/// empty function when the scenario names none.
std::function<Vector(double)> make_reference(const Scenario& sc);

// Drivers behind the command-line front end.  Exit codes: 0 success,
// 1 input or parse failure, 2 solver failure, 3 audit failure.
int cmd_run(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed, std::optional<int> n, std::ostream& log);
int cmd_converge(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& log);
int cmd_crowd(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed, std::optional<int> n, std::ostream& log);
int cmd_field(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir,
              std::ostream& log);
int cmd_verify(const std::string& suite, std::ostream& log);

/// Suite names cmd_verify accepts.
std::vector<std::string> verify_suites();

}  // namespace sweep

#endif
