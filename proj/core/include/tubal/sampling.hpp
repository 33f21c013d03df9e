#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "tubal/tensor3.hpp"

namespace tubal {

enum class MaskKind : std::uint8_t { trace = 0, element = 1 };

/// Observation set Omega. A trace mask marks whole tubes (i, j, :); an
/// element mask marks single entries (i, j, t). Both are generated without
/// replacement from a seeded deterministic shuffle, so the observed count is
/// exactly round(rate * total).
class ObservationMask {
 public:
  ObservationMask() = default;

  static ObservationMask random_trace(std::size_t m, std::size_t n,
                                      std::size_t k, double rate,
                                      std::uint64_t seed);
  static ObservationMask random_element(std::size_t m, std::size_t n,
                                        std::size_t k, double rate,
                                        std::uint64_t seed);
  static ObservationMask full(std::size_t m, std::size_t n, std::size_t k,
                              MaskKind kind = MaskKind::trace);
  /// Wraps an existing 0/1 payload (trace: m*n bytes, element: m*n*k bytes).
  static ObservationMask from_bytes(MaskKind kind, std::size_t m, std::size_t n,
                                    std::size_t k, std::vector<std::uint8_t> bytes);

  MaskKind kind() const { return kind_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }

  bool observes(std::size_t i, std::size_t j, std::size_t t) const {
    return kind_ == MaskKind::trace ? bytes_[i + j * m_] != 0
                                    : bytes_[i + j * m_ + t * m_ * n_] != 0;
  }
  bool observes_trace(std::size_t i, std::size_t j) const {
    return kind_ == MaskKind::trace && bytes_[i + j * m_] != 0;
  }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  /// Marked positions: traces for a trace mask, elements for an element mask.
  std::size_t observed_count() const;
  /// Observed tensor elements (trace count * k for a trace mask).
  std::size_t observed_elements() const;
  double rate_actual() const;

  std::uint64_t seed() const { return seed_; }
  double requested_rate() const { return requested_rate_; }

  bool dims_match(const Tensor3& t) const {
    return m_ == t.m() && n_ == t.n() && k_ == t.k();
  }

  /// Mask of the t-transposed problem: m/n swapped; an element mask is also
  /// reversed in slice order, matching how t_transpose moves entries.
  ObservationMask transposed() const;

 private:
  MaskKind kind_ = MaskKind::trace;
  std::size_t m_ = 0, n_ = 0, k_ = 0;
  std::uint64_t seed_ = 0;
  double requested_rate_ = 1.0;
  std::vector<std::uint8_t> bytes_;
};

/// P_Omega: observed entries copied, the rest zero.
Tensor3 project(const Tensor3& t, const ObservationMask& mask);

struct CoverageReport {
  std::vector<std::size_t> empty_rows;  // inline rows with no observation
  std::vector<std::size_t> empty_cols;  // xline columns with no observation
  double rate_actual = 0.0;
};

/// Recoverability diagnostics: fibers with zero observed entries reconstruct
/// to zero under factorization, so callers may want to warn on them.
CoverageReport coverage_report(const ObservationMask& mask);

}  // namespace tubal
