// Command-line driver: subcommand wiring, exit codes, log text, and output
// files, exercised through real subprocesses.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = SWEEP_SCENARIO_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("sweep_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// Runs the driver through the shell, captures stdout+stderr, returns the exit
// code.  `prefix` lets a test set environment variables for the child.
int run_cli(const std::string& args, const fs::path& log_file, const std::string& prefix = "") {
  std::string cmd =
      prefix + SWEEP_CLI_PATH " " + args + " > " + log_file.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  return line;
}

bool mentions(const fs::path& log, const std::string& needle) {
  return slurp(log).find(needle) != std::string::npos;
}

std::string scen(const char* stem) {
  return (kScenarios / (std::string(stem) + ".json")).string();
}

}  // namespace

TEST_CASE("run integrates a scenario and writes its artifacts") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  fs::path out = td.path / "out";
  int rc = run_cli("run --scenario " + scen("halfplane_slide") + " --out " + out.string(), log);
  CHECK(rc == 0);
  CHECK(fs::exists(out / "halfplane_slide_trajectory.csv"));
  CHECK(fs::exists(out / "halfplane_slide_audit.json"));
  CHECK(first_line(out / "halfplane_slide_trajectory.csv") == "t,u_1,u_2,delta_1,delta_2");
  CHECK(mentions(log, "run halfplane_slide: n = 64"));
  CHECK(mentions(log, "pass"));
}

TEST_CASE("run rejects an inadmissible step override") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  int rc = run_cli("run --scenario " + scen("two_disks_headon") + " --n 2 --out " +
                       (td.path / "out").string(),
                   log);
  CHECK(rc == 1);
  CHECK(mentions(log, "error (input)"));
  CHECK(mentions(log, "minimal admissible n is 3"));
}

TEST_CASE("unreadable and malformed scenarios are input errors") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  int rc = run_cli("run --scenario " + (td.path / "missing.json").string() + " --out " +
                       (td.path / "out").string(),
                   log);
  CHECK(rc == 1);
  CHECK(mentions(log, "cannot open scenario file"));

  fs::path broken = td.path / "broken.json";
  std::ofstream(broken) << "{{{";
  rc = run_cli("run --scenario " + broken.string() + " --out " + (td.path / "out").string(), log);
  CHECK(rc == 1);
  CHECK(mentions(log, "error (input)"));
}

TEST_CASE("converge writes the study table") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  fs::path out = td.path / "out";
  int rc = run_cli("converge --scenario " + scen("ballext_slide") + " --out " + out.string(), log);
  CHECK(rc == 0);
  CHECK(fs::exists(out / "ballext_slide_converge.csv"));
  CHECK(first_line(out / "ballext_slide_converge.csv") == "n,gap,local_order,kappa");
  CHECK(mentions(log, "fitted order"));
}

TEST_CASE("converge gates on the declared order") {
  TempDir td;
  fs::path gated = td.path / "gate_probe.json";
  std::ofstream(gated) << R"({
  "schema": "sweep-scenario/1",
  "name": "gate_probe",
  "set": {"kind": "ball-exterior", "center": [0.0, 0.0], "radius": 1.0},
  "perturbation": {"kind": "constant", "value": [1.0, 0.0]},
  "u0": [-0.7071067811865476, 0.7071067811865476],
  "T": 0.5,
  "r": 1.0,
  "n_list": [20, 40, 80],
  "reference": "ballext-slide",
  "declared": {"min_order": 10.0}
})";
  fs::path log = td.path / "log.txt";
  int rc = run_cli("converge --scenario " + gated.string() + " --out " +
                       (td.path / "out").string(),
                   log);
  CHECK(rc == 3);
  CHECK(mentions(log, "order below the declared minimum"));
}

TEST_CASE("converge needs at least three grid sizes") {
  TempDir td;
  fs::path stub = td.path / "short_list.json";
  std::ofstream(stub) << R"({
  "schema": "sweep-scenario/1",
  "name": "short_list",
  "set": {"kind": "half-space", "normal": [0.0, 1.0], "offset": 0.0},
  "perturbation": {"kind": "constant", "value": [1.0, 1.0]},
  "u0": [0.0, 0.0],
  "T": 1.0,
  "n_list": [8, 16]
})";
  fs::path log = td.path / "log.txt";
  int rc = run_cli("converge --scenario " + stub.string() + " --out " +
                       (td.path / "out").string(),
                   log);
  CHECK(rc == 1);
  CHECK(mentions(log, "needs at least three grid sizes"));
}

TEST_CASE("crowd runs disk scenarios and writes both schemes") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  fs::path out = td.path / "out";
  int rc = run_cli("crowd --scenario " + scen("two_disks_headon") + " --out " + out.string(), log);
  CHECK(rc == 0);
  CHECK(fs::exists(out / "two_disks_headon_crowd.csv"));
  CHECK(fs::exists(out / "two_disks_headon_audit.json"));
  CHECK(first_line(out / "two_disks_headon_crowd.csv") ==
        "t,q_1,q_2,q_3,q_4,qv_1,qv_2,qv_3,qv_4");
  CHECK(mentions(log, "scheme gap"));
}

TEST_CASE("crowd rejects non-disk scenarios and a zeroed step count") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  int rc = run_cli("crowd --scenario " + scen("halfplane_slide") + " --out " +
                       (td.path / "out").string(),
                   log);
  CHECK(rc == 1);
  CHECK(mentions(log, "crowd needs a disk set"));

  rc = run_cli("crowd --scenario " + scen("two_disks_headon") + " --n 0 --out " +
                   (td.path / "out").string(),
               log);
  CHECK(rc == 1);
  CHECK(mentions(log, "crowd needs 'n'"));
}

TEST_CASE("field solves a room scenario and rejects set-only files") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  fs::path out = td.path / "out";
  int rc = run_cli("field --scenario " + scen("room_ushape") + " --out " + out.string(), log);
  CHECK(rc == 0);
  CHECK(fs::exists(out / "room_ushape_field.csv"));
  CHECK(first_line(out / "room_ushape_field.csv") == "i,j,x,y,kind,value");
  CHECK(mentions(log, "free cells reached"));

  rc = run_cli("field --scenario " + scen("halfplane_slide") + " --out " + out.string(), log);
  CHECK(rc == 1);
  CHECK(mentions(log, "field needs a 'room' block"));
}

TEST_CASE("verify maps suite results to exit codes") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  CHECK(run_cli("verify hypomonotonicity", log) == 0);
  CHECK(mentions(log, "verify: all checks passed"));

  CHECK(run_cli("verify hypomonotonicity-negative", log) == 3);
  CHECK(mentions(log, "verify: FAILURES"));

  CHECK(run_cli("verify audit-negative", log) == 3);

  CHECK(run_cli("verify nope", log) == 1);
  CHECK(mentions(log, "unknown verify suite 'nope'"));
  CHECK(mentions(log, "gamma"));
}

TEST_CASE("argument errors exit 1; help exits 0") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  CHECK(run_cli("", log) == 1);
  CHECK(run_cli("frobnicate", log) == 1);
  CHECK(run_cli("run", log) == 1);  // --scenario is required
  CHECK(run_cli("--help", log) == 0);
}

TEST_CASE("tolerance environment overrides reach the solver") {
  TempDir td;
  fs::path log = td.path / "log.txt";
  int rc = run_cli("run --scenario " + scen("halfplane_slide") + " --out " +
                       (td.path / "out").string(),
                   log, "SWEEP_MULTISTART=4 ");
  CHECK(rc == 0);
  CHECK(mentions(log, "pass"));
}
