#ifndef SWEEP_CSV_HPP
#define SWEEP_CSV_HPP

#include "sweep/catchup.hpp"
#include "sweep/crowd.hpp"
#include "sweep/eikonal.hpp"
#include "sweep/types.hpp"

#include <filesystem>
#include <string>

namespace sweep {

/// Shortest decimal string that round-trips to the same double (to_chars);
/// infinities print as inf / -inf, every NaN as nan.
std::string format_double(double x);

/// Columns t, u_1..u_d, delta_1..delta_d.  Deltas are listed on arrival: row
/// i carries the deviation of the step that produced state i, so row 0 is
/// all zeros.
std::string trajectory_csv(const Trajectory& traj);

/// Columns t, q_* (sweeping scheme), qv_* (velocity scheme), one row per
/// grid time both schemes reached.
std::string crowd_csv(const CrowdRun& run);

/// Columns n, gap, local_order, kappa; the first local order is nan.
std::string convergence_csv(const ConvergenceStudy& study);

/// Columns i, j, x, y, kind, value with kind in {free, obstacle, exit} and
/// value the arrival time (inf when unreached).
std::string field_csv(const GridField& field);

/// Byte-exact write (binary mode); throws input_error when the file cannot
/// be opened.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sweep

#endif
