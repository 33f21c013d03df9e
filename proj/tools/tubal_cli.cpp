// tubal: low-tubal-rank completion toolkit for 3D seismic volumes.
//
// Subcommands: synth, sample, complete, tsvd, bench, rse.
// Exit codes: 0 success, 2 usage/invalid argument, 3 I/O failure,
// 4 solver stopped at the iteration cap without reaching tolerance.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tubal/altmin.hpp"
#include "tubal/io.hpp"
#include "tubal/metrics.hpp"
#include "tubal/sampling.hpp"
#include "tubal/synth.hpp"
#include "tubal/t_algebra.hpp"
#include "tubal/tnn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConvergence = 4;

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  if (text.find(':') != std::string::npos) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        step <= 0.0) {
      throw tubal::Error("bad --rates grid, expected lo:hi:step");
    }
    for (double r = lo; r <= hi + 1e-9; r += step) rates.push_back(r);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      rates.push_back(std::stod(text.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  if (rates.empty()) throw tubal::Error("empty --rates grid");
  return rates;
}

void require_distinct(const std::string& in, const std::string& out) {
  if (!out.empty() && in == out) {
    throw tubal::Error("output path must differ from input path: " + in);
  }
}

void warn_coverage(const tubal::ObservationMask& mask) {
  const tubal::CoverageReport rep = tubal::coverage_report(mask);
  for (std::size_t i : rep.empty_rows) {
    std::cerr << "warning: inline row " << i
              << " has no observed traces; it will reconstruct to zero\n";
  }
  for (std::size_t j : rep.empty_cols) {
    std::cerr << "warning: xline column " << j
              << " has no observed traces; it will reconstruct to zero\n";
  }
}

int run_synth(const std::vector<unsigned>& dims, double freq, double dt,
              std::optional<unsigned> rank, std::uint64_t seed,
              const std::string& out) {
  tubal::SynthConfig cfg;
  cfg.m = dims[0];
  cfg.n = dims[1];
  cfg.k = dims[2];
  cfg.dt = dt;
  cfg.wavelet_freq = freq;
  cfg.seed = seed;
  cfg.truncate_rank =
      rank.has_value() ? std::optional<std::size_t>(*rank) : std::nullopt;

  const tubal::Tensor3 vol = tubal::generate(cfg);
  tubal::write_t3b(out, vol);
  std::cout << "wrote " << out << " (" << cfg.m << "x" << cfg.n << "x" << cfg.k
            << ", dt=" << dt << " s, seed=" << seed << ")\n";
  const auto tr = tubal::tubal_rank(vol, 1e-6);
  std::cout << "tubal rank (rel_tol 1e-6): " << tr.rank << "\n";
  return kExitOk;
}

int run_sample(const std::string& in, double rate, const std::string& mode,
               std::uint64_t seed, const std::string& out_mask,
               const std::string& out) {
  require_distinct(in, out);
  const tubal::Tensor3 vol = tubal::read_t3b(in);
  const tubal::ObservationMask mask =
      mode == "trace"
          ? tubal::ObservationMask::random_trace(vol.m(), vol.n(), vol.k(), rate,
                                                 seed)
          : tubal::ObservationMask::random_element(vol.m(), vol.n(), vol.k(),
                                                   rate, seed);
  warn_coverage(mask);
  if (!out_mask.empty()) tubal::write_msk(out_mask, mask);
  if (!out.empty()) tubal::write_t3b(out, tubal::project(vol, mask));
  std::cout << "sampled " << mode << " mask: rate=" << rate
            << " actual=" << mask.rate_actual() << " seed=" << seed << "\n";
  return kExitOk;
}

int run_complete(const std::string& algo, const std::string& in,
                 const std::string& mask_path, unsigned rank, int max_iters,
                 double tol, const std::string& truth_path,
                 const std::string& out, const std::string& report_path) {
  require_distinct(in, out);
  const tubal::Tensor3 obs = tubal::read_t3b(in);
  const tubal::ObservationMask mask = tubal::read_msk(mask_path);
  std::optional<tubal::Tensor3> truth;
  if (!truth_path.empty()) truth = tubal::read_t3b(truth_path);

  tubal::SolveReport report;
  tubal::Tensor3 estimate;
  if (algo == "altmin") {
    tubal::SolverConfig cfg;
    cfg.rank = rank;
    cfg.max_iters = max_iters;
    cfg.tol_rse = tol;
    auto res = tubal::complete(obs, mask, cfg, truth ? &*truth : nullptr);
    estimate = std::move(res.estimate);
    report = std::move(res.report);
  } else {
    tubal::TnnConfig cfg;
    cfg.max_iters = max_iters;
    cfg.tol_rse = tol;
    auto res = tubal::complete_tnn(obs, mask, cfg, truth ? &*truth : nullptr);
    estimate = std::move(res.estimate);
    report = std::move(res.report);
  }

  if (!out.empty()) tubal::write_t3b(out, estimate);
  if (!report_path.empty()) tubal::write_report_csv(report_path, report);

  const double final_obj = report.objective_history.empty()
                               ? 0.0
                               : report.objective_history.back();
  std::cout << algo << ": " << report.iters_run << " iterations, "
            << "objective_rse=" << tubal::format_double(final_obj)
            << ", terminated_by=" << tubal::termination_name(report.terminated_by);
  if (!report.rse_history.empty()) {
    std::cout << ", truth_rse=" << tubal::format_double(report.rse_history.back());
  }
  std::cout << ", wall_time_s=" << report.wall_time_s << "\n";

  return report.terminated_by == tubal::Termination::max_iters
             ? kExitNoConvergence
             : kExitOk;
}

int run_tsvd(const std::string& in, double tol, const std::string& cdf_path) {
  const tubal::Tensor3 vol = tubal::read_t3b(in);
  const auto tr = tubal::tubal_rank(vol, tol);
  std::cout << "tubal rank (rel_tol " << tol << "): " << tr.rank << "\n";
  std::cout << "singular tube norms (descending):\n";
  for (std::size_t i = 0; i < tr.tube_norms.size(); ++i) {
    std::cout << "  " << i << ": " << tubal::format_double(tr.tube_norms[i])
              << "\n";
  }
  if (!cdf_path.empty()) {
    tubal::write_cdf_csv(cdf_path, tubal::singular_tube_cdf(vol));
    std::cout << "wrote " << cdf_path << "\n";
  }
  return kExitOk;
}

int run_bench(const std::string& in, const std::string& rates_text, int trials,
              const std::string& algos_text, std::uint64_t seed,
              const std::string& mode, unsigned rank, const std::string& out,
              bool aggregate) {
  const tubal::Tensor3 vol = tubal::read_t3b(in);

  tubal::SweepOptions opts;
  opts.rates = parse_rates(rates_text);
  opts.trials = trials;
  opts.base_seed = seed;
  opts.rank = rank;
  opts.mask_kind =
      mode == "trace" ? tubal::MaskKind::trace : tubal::MaskKind::element;
  opts.algos.clear();
  if (algos_text.find("altmin") != std::string::npos) {
    opts.algos.push_back(tubal::Algo::altmin);
  }
  if (algos_text.find("tnn") != std::string::npos) {
    opts.algos.push_back(tubal::Algo::tnn);
  }
  if (opts.algos.empty()) throw tubal::Error("--algos must name altmin and/or tnn");

  std::cout << "bench: base seed " << seed << ", " << opts.rates.size()
            << " rates x " << trials << " trials, mode=" << mode << "\n";
  for (std::size_t ri = 0; ri < opts.rates.size(); ++ri) {
    for (int trial = 0; trial < trials; ++trial) {
      std::cout << "  cell rate=" << opts.rates[ri] << " trial=" << trial
                << " mask_seed=" << tubal::cell_seed(seed, ri, trial) << "\n";
    }
  }

  const tubal::SweepResult result = tubal::sweep(vol, opts);
  tubal::write_sweep_csv(out, result, aggregate);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_rse(const std::string& a, const std::string& b) {
  const tubal::Tensor3 ta = tubal::read_t3b(a);
  const tubal::Tensor3 tb = tubal::read_t3b(b);
  std::cout << tubal::format_double(tubal::rse(ta, tb)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-tubal-rank tensor completion for 3D seismic volumes"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic volume");
  std::vector<unsigned> dims{64, 64, 256};
  double freq = 40.0, dt = 0.001;
  std::optional<unsigned> synth_rank;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--dims", dims, "m,n,k")->delimiter(',')->expected(1, 3);
  synth->add_option("--freq", freq, "Ricker central frequency, Hz");
  synth->add_option("--dt", dt, "time sampling interval, s");
  synth->add_option("--rank", synth_rank, "tubal-rank truncation (omit: none)");
  synth->add_option("--seed", synth_seed, "generator seed (echoed)");
  synth->add_option("--out", synth_out, "output .t3b path")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "sample traces or elements");
  std::string sample_in, sample_mode = "trace", sample_out_mask, sample_out;
  double sample_rate = 0.5;
  std::uint64_t sample_seed = 0;
  sample->add_option("--in", sample_in, "input .t3b")->required();
  sample->add_option("--rate", sample_rate, "fraction kept, in (0,1]")->required();
  sample->add_option("--mode", sample_mode, "trace|element")
      ->check(CLI::IsMember({"trace", "element"}));
  sample->add_option("--seed", sample_seed, "mask seed")->required();
  sample->add_option("--out-mask", sample_out_mask, "output .msk path");
  sample->add_option("--out", sample_out, "output observed .t3b path");

  // complete
  auto* complete = app.add_subcommand("complete", "reconstruct a volume");
  std::string c_algo = "altmin", c_in, c_mask, c_truth, c_out, c_report;
  unsigned c_rank = 2;
  int c_iters = 50;
  double c_tol = 1e-4;
  complete->add_option("--algo", c_algo, "altmin|tnn")
      ->check(CLI::IsMember({"altmin", "tnn"}));
  complete->add_option("--in", c_in, "observed .t3b")->required();
  complete->add_option("--mask", c_mask, "observation .msk")->required();
  complete->add_option("--rank", c_rank, "target tubal rank (altmin)");
  complete->add_option("--max-iters", c_iters, "iteration cap");
  complete->add_option("--tol", c_tol, "observed-entry RSE tolerance");
  complete->add_option("--truth", c_truth, "ground-truth .t3b for reporting");
  complete->add_option("--out", c_out, "reconstructed .t3b path");
  complete->add_option("--report", c_report, "per-iteration CSV path");

  // tsvd
  auto* tsvd = app.add_subcommand("tsvd", "tubal rank and singular tubes");
  std::string t_in, t_cdf;
  double t_tol = 1e-6;
  tsvd->add_option("--in", t_in, "input .t3b")->required();
  tsvd->add_option("--tol", t_tol, "relative tube-norm threshold");
  tsvd->add_option("--cdf", t_cdf, "write singular-tube CDF CSV here");

  // bench
  auto* bench = app.add_subcommand("bench", "error-vs-rate sweep");
  std::string b_in, b_rates = "0.1:0.9:0.1", b_algos = "altmin,tnn",
              b_mode = "trace", b_out;
  int b_trials = 5;
  unsigned b_rank = 2;
  std::uint64_t b_seed = 0;
  bool b_aggregate = false;
  bench->add_option("--in", b_in, "input .t3b (ground truth)")->required();
  bench->add_option("--rates", b_rates, "lo:hi:step or comma list");
  bench->add_option("--trials", b_trials, "trials per rate");
  bench->add_option("--algos", b_algos, "comma list of altmin,tnn");
  bench->add_option("--seed", b_seed, "base seed")->required();
  bench->add_option("--mode", b_mode, "trace|element")
      ->check(CLI::IsMember({"trace", "element"}));
  bench->add_option("--rank", b_rank, "target tubal rank");
  bench->add_option("--out", b_out, "output CSV path")->required();
  bench->add_flag("--aggregate", b_aggregate, "append per-rate mean rows");

  // rse
  auto* rse_cmd = app.add_subcommand("rse", "relative square error of two volumes");
  std::string r_a, r_b;
  rse_cmd->add_option("--a", r_a, "estimate .t3b")->required();
  rse_cmd->add_option("--b", r_b, "reference .t3b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      if (dims.size() != 3) throw tubal::Error("--dims needs m,n,k");
      return run_synth(dims, freq, dt, synth_rank, synth_seed, synth_out);
    }
    if (sample->parsed()) {
      return run_sample(sample_in, sample_rate, sample_mode, sample_seed,
                        sample_out_mask, sample_out);
    }
    if (complete->parsed()) {
      return run_complete(c_algo, c_in, c_mask, c_rank, c_iters, c_tol, c_truth,
                          c_out, c_report);
    }
    if (tsvd->parsed()) return run_tsvd(t_in, t_tol, t_cdf);
    if (bench->parsed()) {
      return run_bench(b_in, b_rates, b_trials, b_algos, b_seed, b_mode, b_rank,
                       b_out, b_aggregate);
    }
    if (rse_cmd->parsed()) return run_rse(r_a, r_b);
  } catch (const tubal::ReadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tubal::WriteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tubal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
