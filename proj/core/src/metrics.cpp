#include "tubal/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tubal/parallel.hpp"
#include "tubal/t_algebra.hpp"

namespace tubal {

namespace {

// splitmix64; decorrelates per-cell mask seeds from the base seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

double rse(const Tensor3& estimate, const Tensor3& truth) {
  if (!estimate.same_dims(truth)) throw DimMismatch("rse: dims differ");
  const double ref = truth.frobenius_norm();
  if (ref == 0.0) throw ZeroReference("rse: reference tensor is zero");
  return (estimate - truth).frobenius_norm() / ref;
}

ConvergenceFit convergence_rate(const std::vector<double>& rse_history) {
  std::size_t finite = 0;
  for (double v : rse_history) finite += std::isfinite(v) ? 1 : 0;
  if (finite < 3) {
    throw TooFewPoints("convergence_rate: need at least 3 finite entries");
  }

  ConvergenceFit fit;
  std::vector<double> xs, ys;
  xs.reserve(rse_history.size());
  ys.reserve(rse_history.size());
  for (std::size_t i = 0; i < rse_history.size(); ++i) {
    double v = rse_history[i];
    if (!std::isfinite(v)) continue;
    if (v < 1e-16) {
      v = 1e-16;
      fit.clamped = true;
    }
    xs.push_back(static_cast<double>(i));
    ys.push_back(std::log10(v));
  }

  const double nn = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= nn;
  my /= nn;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // constant history is fit exactly
  } else {
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

const char* algo_name(Algo a) { return a == Algo::altmin ? "altmin" : "tnn"; }

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t rate_index,
                        int trial) {
  std::uint64_t h = mix(base_seed);
  h = mix(h ^ (static_cast<std::uint64_t>(rate_index) + 1));
  h = mix(h ^ (static_cast<std::uint64_t>(trial) + 0x100));
  return h;
}

SweepResult sweep(const Tensor3& volume, const SweepOptions& opts) {
  for (double rate : opts.rates) {
    if (!(rate > 0.0) || rate > 1.0) {
      throw RateOutOfRange("sweep: rates must lie in (0, 1]");
    }
  }
  if (opts.trials < 1) throw Error("sweep: trials must be >= 1");

  struct Cell {
    std::size_t rate_index;
    int trial;
    Algo algo;
  };
  std::vector<Cell> cells;
  for (std::size_t ri = 0; ri < opts.rates.size(); ++ri) {
    for (int trial = 0; trial < opts.trials; ++trial) {
      for (Algo algo : opts.algos) cells.push_back({ri, trial, algo});
    }
  }

  SweepResult result;
  result.rows.resize(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    const Cell& cell = cells[c];
    SweepRow row;
    row.rate = opts.rates[cell.rate_index];
    row.trial = cell.trial;
    row.algo = cell.algo;
    row.mask_seed = cell_seed(opts.base_seed, cell.rate_index, cell.trial);
    try {
      const ObservationMask mask =
          opts.mask_kind == MaskKind::trace
              ? ObservationMask::random_trace(volume.m(), volume.n(), volume.k(),
                                              row.rate, row.mask_seed)
              : ObservationMask::random_element(volume.m(), volume.n(),
                                                volume.k(), row.rate,
                                                row.mask_seed);
      const Tensor3 observed = project(volume, mask);
      if (cell.algo == Algo::altmin) {
        SolverConfig cfg = opts.altmin_cfg;
        cfg.rank = opts.rank;
        const CompletionResult r = complete(observed, mask, cfg, &volume);
        row.rse_final = rse(r.estimate, volume);
        row.iters = r.report.iters_run;
        row.wall_time_s = r.report.wall_time_s;
      } else {
        const TnnResult r = complete_tnn(observed, mask, opts.tnn_cfg, &volume);
        row.rse_final = rse(r.estimate, volume);
        row.iters = r.report.iters_run;
        row.wall_time_s = r.report.wall_time_s;
      }
    } catch (const std::exception&) {
      row.failed = true;
    }
    result.rows[c] = row;
  });

  for (std::size_t ri = 0; ri < opts.rates.size(); ++ri) {
    for (Algo algo : opts.algos) {
      SweepAggregate agg;
      agg.rate = opts.rates[ri];
      agg.algo = algo;
      for (const SweepRow& row : result.rows) {
        if (row.rate == agg.rate && row.algo == algo && !row.failed) {
          agg.mean_rse += row.rse_final;
          agg.mean_iters += row.iters;
          agg.mean_wall_time_s += row.wall_time_s;
          ++agg.trials_ok;
        }
      }
      if (agg.trials_ok > 0) {
        agg.mean_rse /= agg.trials_ok;
        agg.mean_iters /= agg.trials_ok;
        agg.mean_wall_time_s /= agg.trials_ok;
      }
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

std::vector<RateCdfRow> rank_vs_rate_cdf(const Tensor3& volume,
                                         const std::vector<double>& rates,
                                         std::uint64_t seed) {
  std::vector<RateCdfRow> table;
  for (std::size_t ri = 0; ri < rates.size(); ++ri) {
    if (!(rates[ri] > 0.0) || rates[ri] > 1.0) {
      throw RateOutOfRange("rank_vs_rate_cdf: rates must lie in (0, 1]");
    }
    const ObservationMask mask = ObservationMask::random_trace(
        volume.m(), volume.n(), volume.k(), rates[ri], cell_seed(seed, ri, 0));
    const auto cdf = singular_tube_cdf(project(volume, mask));
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      table.push_back({rates[ri], i, cdf[i].first, cdf[i].second});
    }
  }
  return table;
}

}  // namespace tubal
