#pragma once

#include <filesystem>
#include <string>

#include "tubal/altmin.hpp"
#include "tubal/metrics.hpp"
#include "tubal/sampling.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

/// T3B1 volume file: magic "T3B1", then m, n, k as u32 LE, dt as f64 LE
/// (0 when not applicable), then m*n*k f64 LE samples ordered i fastest,
/// then j, frontal slice last. File size is 24 + 8*m*n*k bytes and the
/// write -> read roundtrip is bit exact.
void write_t3b(const std::filesystem::path& path, const Tensor3& t);
Tensor3 read_t3b(const std::filesystem::path& path);

/// MSK1 mask file: magic "MSK1", kind byte (0 trace, 1 element), m, n, k as
/// u32 LE, then the 0/1 payload (m*n bytes for trace, m*n*k for element).
void write_msk(const std::filesystem::path& path, const ObservationMask& mask);
ObservationMask read_msk(const std::filesystem::path& path);

/// Shortest round-trippable decimal form; keeps CSV output byte-stable
/// across reruns.
std::string format_double(double v);

/// Columns: iter, objective_rse, truth_rse (when recorded), elapsed_s.
void write_report_csv(const std::filesystem::path& path, const SolveReport& report);

/// Columns: rate, trial, algo, rse_final, iters, wall_time_s. Aggregate mean
/// rows (trial column "mean") are appended when with_aggregates is set.
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                     bool with_aggregates);

/// Columns: tube_index, norm, cum_fraction.
void write_cdf_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& cdf);

}  // namespace tubal
