#include "tubal/sampling.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace tubal {

namespace {

// Unbiased bounded draw; std::uniform_int_distribution is not portable
// across standard libraries, and masks must reproduce bit-exactly from a seed.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Marks exactly `count` of `total` positions, chosen uniformly without
// replacement via a partial Fisher-Yates shuffle.
std::vector<std::uint8_t> sample_without_replacement(std::size_t total,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  std::vector<std::uint32_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0u);
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> marks(total, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + bounded(rng, total - i);
    std::swap(idx[i], idx[j]);
    marks[idx[i]] = 1;
  }
  return marks;
}

std::size_t rounded_count(double rate, std::size_t total) {
  if (!(rate > 0.0) || rate > 1.0) {
    throw RateOutOfRange("sampling rate must lie in (0, 1]");
  }
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(total)));
}

}  // namespace

ObservationMask ObservationMask::random_trace(std::size_t m, std::size_t n,
                                              std::size_t k, double rate,
                                              std::uint64_t seed) {
  const std::size_t total = m * n;
  const std::size_t count = rounded_count(rate, total);
  ObservationMask mask;
  mask.kind_ = MaskKind::trace;
  mask.m_ = m;
  mask.n_ = n;
  mask.k_ = k;
  mask.seed_ = seed;
  mask.requested_rate_ = rate;
  mask.bytes_ = sample_without_replacement(total, count, seed);
  return mask;
}

ObservationMask ObservationMask::random_element(std::size_t m, std::size_t n,
                                                std::size_t k, double rate,
                                                std::uint64_t seed) {
  const std::size_t total = m * n * k;
  const std::size_t count = rounded_count(rate, total);
  ObservationMask mask;
  mask.kind_ = MaskKind::element;
  mask.m_ = m;
  mask.n_ = n;
  mask.k_ = k;
  mask.seed_ = seed;
  mask.requested_rate_ = rate;
  mask.bytes_ = sample_without_replacement(total, count, seed);
  return mask;
}

ObservationMask ObservationMask::full(std::size_t m, std::size_t n,
                                      std::size_t k, MaskKind kind) {
  ObservationMask mask;
  mask.kind_ = kind;
  mask.m_ = m;
  mask.n_ = n;
  mask.k_ = k;
  mask.bytes_.assign(kind == MaskKind::trace ? m * n : m * n * k, 1);
  return mask;
}

ObservationMask ObservationMask::from_bytes(MaskKind kind, std::size_t m,
                                            std::size_t n, std::size_t k,
                                            std::vector<std::uint8_t> bytes) {
  const std::size_t expected = kind == MaskKind::trace ? m * n : m * n * k;
  if (bytes.size() != expected) {
    throw DimMismatch("ObservationMask::from_bytes: payload size mismatch");
  }
  ObservationMask mask;
  mask.kind_ = kind;
  mask.m_ = m;
  mask.n_ = n;
  mask.k_ = k;
  mask.bytes_ = std::move(bytes);
  std::size_t count = 0;
  for (std::uint8_t b : mask.bytes_) count += b != 0;
  mask.requested_rate_ =
      expected == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(expected);
  return mask;
}

std::size_t ObservationMask::observed_count() const {
  std::size_t count = 0;
  for (std::uint8_t b : bytes_) count += b != 0;
  return count;
}

std::size_t ObservationMask::observed_elements() const {
  return kind_ == MaskKind::trace ? observed_count() * k_ : observed_count();
}

double ObservationMask::rate_actual() const {
  const std::size_t total = kind_ == MaskKind::trace ? m_ * n_ : m_ * n_ * k_;
  return total == 0 ? 0.0
                    : static_cast<double>(observed_count()) /
                          static_cast<double>(total);
}

ObservationMask ObservationMask::transposed() const {
  ObservationMask out;
  out.kind_ = kind_;
  out.m_ = n_;
  out.n_ = m_;
  out.k_ = k_;
  out.seed_ = seed_;
  out.requested_rate_ = requested_rate_;
  if (kind_ == MaskKind::trace) {
    out.bytes_.resize(m_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) {
        out.bytes_[j + i * n_] = bytes_[i + j * m_];
      }
    }
  } else {
    out.bytes_.resize(m_ * n_ * k_);
    for (std::size_t t = 0; t < k_; ++t) {
      const std::size_t src = (t == 0) ? 0 : k_ - t;
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) {
          out.bytes_[j + i * n_ + t * m_ * n_] = bytes_[i + j * m_ + src * m_ * n_];
        }
      }
    }
  }
  return out;
}

Tensor3 project(const Tensor3& t, const ObservationMask& mask) {
  if (!mask.dims_match(t)) {
    throw DimMismatch("project: mask and tensor dims differ");
  }
  Tensor3 out(t.m(), t.n(), t.k(), t.dt());
  if (mask.kind() == MaskKind::trace) {
    for (std::size_t tt = 0; tt < t.k(); ++tt) {
      for (std::size_t j = 0; j < t.n(); ++j) {
        for (std::size_t i = 0; i < t.m(); ++i) {
          if (mask.observes_trace(i, j)) out(i, j, tt) = t(i, j, tt);
        }
      }
    }
  } else {
    const auto& bytes = mask.bytes();
    const double* src = t.data();
    double* dst = out.data();
    for (std::size_t p = 0; p < t.size(); ++p) {
      if (bytes[p]) dst[p] = src[p];
    }
  }
  return out;
}

CoverageReport coverage_report(const ObservationMask& mask) {
  CoverageReport report;
  report.rate_actual = mask.rate_actual();
  const std::size_t m = mask.m(), n = mask.n(), k = mask.k();
  const std::size_t depth = mask.kind() == MaskKind::trace ? 1 : k;
  std::vector<std::size_t> row_hits(m, 0), col_hits(n, 0);
  for (std::size_t t = 0; t < depth; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (mask.observes(i, j, t)) {
          ++row_hits[i];
          ++col_hits[j];
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (row_hits[i] == 0) report.empty_rows.push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (col_hits[j] == 0) report.empty_cols.push_back(j);
  }
  return report;
}

}  // namespace tubal
