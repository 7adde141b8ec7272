#include "sweep/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace sweep {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

void append_vector(std::string& out, const Vector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out += ',';
    out += format_double(v[k]);
  }
}

void append_header(std::string& out, const std::string& stem, Eigen::Index d) {
  for (Eigen::Index k = 1; k <= d; ++k) {
    out += ',';
    out += stem;
    out += '_';
    out += std::to_string(k);
  }
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  if (traj.states.empty()) throw input_error("trajectory_csv: empty trajectory");
  Eigen::Index d = traj.states.front().size();
  std::string out = "t";
  append_header(out, "u", d);
  append_header(out, "delta", d);
  out += '\n';
  Vector zero = Vector::Zero(d);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    out += format_double(traj.time(static_cast<int>(i)));
    append_vector(out, traj.states[i]);
    append_vector(out, i == 0 ? zero : traj.deltas[i - 1]);
    out += '\n';
  }
  return out;
}

std::string crowd_csv(const CrowdRun& run) {
  if (run.sweep.states.empty()) throw input_error("crowd_csv: empty run");
  Eigen::Index d = run.sweep.states.front().size();
  std::string out = "t";
  append_header(out, "q", d);
  append_header(out, "qv", d);
  out += '\n';
  std::size_t rows = std::min(run.sweep.states.size(), run.velocity_states.size());
  for (std::size_t i = 0; i < rows; ++i) {
    out += format_double(run.sweep.time(static_cast<int>(i)));
    append_vector(out, run.sweep.states[i]);
    append_vector(out, run.velocity_states[i]);
    out += '\n';
  }
  return out;
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::string out = "n,gap,local_order,kappa\n";
  for (const ConvergenceRow& row : study.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.gap);
    out += ',';
    out += format_double(row.local_order);
    out += ',';
    out += format_double(row.kappa);
    out += '\n';
  }
  return out;
}

std::string field_csv(const GridField& field) {
  const MaskGrid& g = field.grid;
  std::string out = "i,j,x,y,kind,value\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vector c = g.center(i, j);
      Cell cell = g.cells[static_cast<std::size_t>(g.index(i, j))];
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += format_double(c[0]);
      out += ',';
      out += format_double(c[1]);
      out += ',';
      out += cell == Cell::Obstacle ? "obstacle" : (cell == Cell::Exit ? "exit" : "free");
      out += ',';
      out += format_double(field.value[static_cast<std::size_t>(g.index(i, j))]);
      out += '\n';
    }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open for writing: " + path.string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw input_error("short write: " + path.string());
}

}  // namespace sweep
