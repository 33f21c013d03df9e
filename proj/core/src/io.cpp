#include "tubal/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; add byte swapping for this host");

namespace tubal {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void write_t3b(const std::filesystem::path& path, const Tensor3& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw WriteError("cannot open for writing: " + path.string());
  os.write("T3B1", 4);
  put_u32(os, static_cast<std::uint32_t>(t.m()));
  put_u32(os, static_cast<std::uint32_t>(t.n()));
  put_u32(os, static_cast<std::uint32_t>(t.k()));
  put_f64(os, t.dt());
  os.write(reinterpret_cast<const char*>(t.data()),
           static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!os) throw WriteError("write failed: " + path.string());
}

Tensor3 read_t3b(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ReadError("cannot open: " + path.string());
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "T3B1", 4) != 0) {
    throw ReadError("not a T3B1 file: " + path.string());
  }
  const std::uint32_t m = get_u32(is), n = get_u32(is), k = get_u32(is);
  const double dt = get_f64(is);
  if (!is) throw ReadError("truncated T3B1 header: " + path.string());
  Tensor3 t(m, n, k, dt);
  is.read(reinterpret_cast<char*>(t.data()),
          static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!is || is.gcount() != static_cast<std::streamsize>(t.size() * sizeof(double))) {
    throw ReadError("truncated T3B1 payload: " + path.string());
  }
  is.peek();
  if (!is.eof()) throw ReadError("trailing bytes in T3B1 file: " + path.string());
  return t;
}

void write_msk(const std::filesystem::path& path, const ObservationMask& mask) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw WriteError("cannot open for writing: " + path.string());
  os.write("MSK1", 4);
  const char kind = mask.kind() == MaskKind::trace ? 0 : 1;
  os.write(&kind, 1);
  put_u32(os, static_cast<std::uint32_t>(mask.m()));
  put_u32(os, static_cast<std::uint32_t>(mask.n()));
  put_u32(os, static_cast<std::uint32_t>(mask.k()));
  os.write(reinterpret_cast<const char*>(mask.bytes().data()),
           static_cast<std::streamsize>(mask.bytes().size()));
  if (!os) throw WriteError("write failed: " + path.string());
}

ObservationMask read_msk(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ReadError("cannot open: " + path.string());
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "MSK1", 4) != 0) {
    throw ReadError("not a MSK1 file: " + path.string());
  }
  char kind_byte = 0;
  is.read(&kind_byte, 1);
  if (kind_byte != 0 && kind_byte != 1) {
    throw ReadError("bad mask kind byte: " + path.string());
  }
  const MaskKind kind = kind_byte == 0 ? MaskKind::trace : MaskKind::element;
  const std::uint32_t m = get_u32(is), n = get_u32(is), k = get_u32(is);
  if (!is) throw ReadError("truncated MSK1 header: " + path.string());
  const std::size_t payload =
      kind == MaskKind::trace ? static_cast<std::size_t>(m) * n
                              : static_cast<std::size_t>(m) * n * k;
  std::vector<std::uint8_t> bytes(payload);
  is.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(payload));
  if (!is || is.gcount() != static_cast<std::streamsize>(payload)) {
    throw ReadError("truncated MSK1 payload: " + path.string());
  }
  for (std::uint8_t b : bytes) {
    if (b > 1) throw ReadError("mask payload byte not 0/1: " + path.string());
  }
  is.peek();
  if (!is.eof()) throw ReadError("trailing bytes in MSK1 file: " + path.string());
  return ObservationMask::from_bytes(kind, m, n, k, std::move(bytes));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_report_csv(const std::filesystem::path& path,
                      const SolveReport& report) {
  std::ofstream os(path);
  if (!os) throw WriteError("cannot open for writing: " + path.string());
  const bool with_truth = !report.rse_history.empty();
  os << "iter,objective_rse" << (with_truth ? ",truth_rse" : "") << ",elapsed_s\n";
  for (std::size_t i = 0; i < report.objective_history.size(); ++i) {
    os << (i + 1) << ',' << format_double(report.objective_history[i]);
    if (with_truth) os << ',' << format_double(report.rse_history[i]);
    const double elapsed =
        i < report.elapsed_history.size() ? report.elapsed_history[i] : 0.0;
    os << ',' << format_double(elapsed) << '\n';
  }
  if (!os) throw WriteError("write failed: " + path.string());
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                     bool with_aggregates) {
  std::ofstream os(path);
  if (!os) throw WriteError("cannot open for writing: " + path.string());
  os << "rate,trial,algo,rse_final,iters,wall_time_s\n";
  for (const SweepRow& row : result.rows) {
    os << format_double(row.rate) << ',' << row.trial << ',' << algo_name(row.algo)
       << ',' << (row.failed ? "failed" : format_double(row.rse_final)) << ','
       << row.iters << ',' << format_double(row.wall_time_s) << '\n';
  }
  if (with_aggregates) {
    for (const SweepAggregate& agg : result.aggregates) {
      os << format_double(agg.rate) << ",mean," << algo_name(agg.algo) << ','
         << format_double(agg.mean_rse) << ',' << format_double(agg.mean_iters)
         << ',' << format_double(agg.mean_wall_time_s) << '\n';
    }
  }
  if (!os) throw WriteError("write failed: " + path.string());
}

void write_cdf_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& cdf) {
  std::ofstream os(path);
  if (!os) throw WriteError("cannot open for writing: " + path.string());
  os << "tube_index,norm,cum_fraction\n";
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    os << i << ',' << format_double(cdf[i].first) << ','
       << format_double(cdf[i].second) << '\n';
  }
  if (!os) throw WriteError("write failed: " + path.string());
}

}  // namespace tubal
