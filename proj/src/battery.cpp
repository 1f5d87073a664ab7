#include "mmohocc/battery.hpp"

#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mmohocc/specfun.hpp"

namespace mmohocc {

namespace {

constexpr double kUniformityThreshold = 1e-4;

struct RowSpec {
  int tsn;
  const char* name;
  TestId id;
  bool reverse;  // cumulative sums direction
};

// Row layout mirrors the classical 16-test report: one row per test, with
// Cumulative Sums split into forward/reverse and serial number 6
// (Lempel-Ziv compression) unassigned.
constexpr RowSpec kRowSpecs[] = {
    {1, "Approximate Entropy", TestId::ApproximateEntropy, false},
    {2, "Block Frequency", TestId::BlockFrequency, false},
    {3, "Cumulative Sums (Forward)", TestId::CumulativeSums, false},
    {3, "Cumulative Sums (Reverse)", TestId::CumulativeSums, true},
    {4, "Fast Fourier Transform (Spectral)", TestId::Dft, false},
    {5, "Frequency (Mono-bit)", TestId::Frequency, false},
    {7, "Linear Complexity", TestId::LinearComplexity, false},
    {8, "Longest Runs of Ones", TestId::LongestRun, false},
    {9, "Maurer's Universal Statistical", TestId::Universal, false},
    {10, "Non-Overlapping Template Matching", TestId::NonOverlappingTemplate, false},
    {11, "Overlapping Template Matching", TestId::OverlappingTemplate, false},
    {12, "Random Excursions", TestId::RandomExcursions, false},
    {13, "Random Excursions Variant", TestId::RandomExcursionsVariant, false},
    {14, "Rank", TestId::Rank, false},
    {15, "Runs", TestId::Runs, false},
    {16, "Serial", TestId::Serial, false},
};

TestResult run_row(const RowSpec& row, const BitSequence& s, const SpectralDft* plan) {
  switch (row.id) {
    case TestId::ApproximateEntropy: return approximate_entropy(s);
    case TestId::BlockFrequency: return block_frequency(s);
    case TestId::CumulativeSums:
      return row.reverse ? cumulative_sums_reverse(s) : cumulative_sums_forward(s);
    case TestId::Dft: return dft_spectral(s, plan);
    case TestId::Frequency: return frequency_monobit(s);
    case TestId::LinearComplexity: return linear_complexity(s);
    case TestId::LongestRun: return longest_run_of_ones(s);
    case TestId::Universal: return maurer_universal(s);
    case TestId::NonOverlappingTemplate: return nonoverlapping_template_battery(s);
    case TestId::OverlappingTemplate: return overlapping_template(s);
    case TestId::RandomExcursions: return random_excursions(s);
    case TestId::RandomExcursionsVariant: return random_excursions_variant(s);
    case TestId::Rank: return binary_matrix_rank(s);
    case TestId::Runs: return runs_test(s);
    case TestId::Serial: return serial(s);
  }
  throw std::logic_error("unknown test id");
}

}  // namespace

std::pair<double, double> proportion_range(double alpha, std::uint64_t sample_size) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1)");
  }
  if (sample_size < 1) throw std::invalid_argument("sample size must be >= 1");
  const double p_hat = 1.0 - alpha;
  const double half =
      3.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(sample_size));
  return {p_hat - half, std::min(p_hat + half, 1.0)};
}

std::pair<double, double> summarize(std::span<const double> p_values) {
  if (p_values.empty()) throw std::invalid_argument("summarize needs p-values");
  double sum = 0.0;
  for (const double p : p_values) sum += p;
  const double mean = sum / static_cast<double>(p_values.size());
  double var = 0.0;
  for (const double p : p_values) var += (p - mean) * (p - mean);
  var /= static_cast<double>(p_values.size());
  return {mean, var};
}

UniformityResult uniformity(std::span<const double> p_values) {
  UniformityResult r;
  for (const double p : p_values) {
    const int bin = std::min(static_cast<int>(p * 10.0), 9);
    r.bins[static_cast<std::size_t>(bin)]++;
  }
  r.low_count = p_values.size() < 10;
  if (p_values.empty()) return r;
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  double chi2 = 0.0;
  for (const std::uint64_t f : r.bins) {
    const double diff = static_cast<double>(f) - expected;
    chi2 += diff * diff / expected;
  }
  r.p_value = igamc(4.5, chi2 / 2.0);  // 9 degrees of freedom
  return r;
}

bool BatteryReport::all_proportions_in_range() const {
  for (const ReportRow& row : rows) {
    if (!row.judged) continue;
    if (row.proportion < range_lo || row.proportion > range_hi) return false;
  }
  return true;
}

bool BatteryReport::all_success() const {
  for (const ReportRow& row : rows) {
    if (row.judged && !row.success) return false;
  }
  return true;
}

KeystreamSequenceSource::KeystreamSequenceSource(KeystreamGenerator generator,
                                                 std::uint64_t bits_per_sequence)
    : generator_(std::move(generator)),
      bytes_per_sequence_((bits_per_sequence + 7) / 8) {}

bool KeystreamSequenceSource::next(std::vector<std::uint8_t>& bytes) {
  bytes.resize(bytes_per_sequence_);
  generator_.generate(bytes);
  return true;
}

struct FileSequenceSource::Impl {
  std::ifstream stream;
  std::size_t bytes_per_sequence = 0;
  std::string path;
};

FileSequenceSource::FileSequenceSource(const std::string& path,
                                       std::uint64_t bits_per_sequence)
    : impl_(new Impl) {
  impl_->stream.open(path, std::ios::binary);
  impl_->bytes_per_sequence = (bits_per_sequence + 7) / 8;
  impl_->path = path;
  if (!impl_->stream) {
    const std::string msg = "cannot open input file: " + path;
    delete impl_;
    impl_ = nullptr;
    throw std::runtime_error(msg);
  }
}

FileSequenceSource::~FileSequenceSource() { delete impl_; }

bool FileSequenceSource::next(std::vector<std::uint8_t>& bytes) {
  bytes.resize(impl_->bytes_per_sequence);
  impl_->stream.read(reinterpret_cast<char*>(bytes.data()),
                     static_cast<std::streamsize>(bytes.size()));
  const std::size_t got = static_cast<std::size_t>(impl_->stream.gcount());
  if (got == 0) return false;
  if (got < bytes.size()) {
    throw std::runtime_error("input file ends mid-sequence: " + impl_->path);
  }
  return true;
}

BatteryReport run_battery(SequenceSource& source, const BatteryConfig& config,
                          RunManifest manifest) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1)");
  }
  if (config.sequence_count < 1) {
    throw std::invalid_argument("sequence_count must be >= 1");
  }
  if (config.bits_per_sequence < 1) {
    throw std::invalid_argument("bits_per_sequence must be >= 1");
  }

  const auto selected = [&config](TestId id) {
    if (config.selection.empty()) return true;
    for (const TestId t : config.selection) {
      if (t == id) return true;
    }
    return false;
  };
  std::vector<RowSpec> rows;
  for (const RowSpec& spec : kRowSpecs) {
    if (selected(spec.id)) rows.push_back(spec);
  }
  if (rows.empty()) throw std::invalid_argument("no tests selected");

  std::unique_ptr<SpectralDft> plan;
  if (selected(TestId::Dft) && config.bits_per_sequence >= 16 &&
      config.bits_per_sequence % 2 == 0) {
    plan = std::make_unique<SpectralDft>(config.bits_per_sequence);
  }

  const std::uint64_t m = config.sequence_count;
  std::vector<std::vector<TestResult>> results(m);
  const auto evaluate = [&rows, &plan](const BitSequence& s) {
    std::vector<TestResult> out;
    out.reserve(rows.size());
    for (const RowSpec& spec : rows) out.push_back(run_row(spec, s, plan.get()));
    return out;
  };

  unsigned workers = config.threads != 0 ? config.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
  if (workers > m) workers = static_cast<unsigned>(m);

  if (workers <= 1) {
    std::vector<std::uint8_t> bytes;
    for (std::uint64_t i = 0; i < m; ++i) {
      if (!source.next(bytes)) throw std::runtime_error("sequence source exhausted");
      results[i] = evaluate(BitSequence(bytes, config.bits_per_sequence));
    }
  } else {
    struct Task {
      std::uint64_t index;
      std::vector<std::uint8_t> bytes;
    };
    std::deque<Task> queue;
    std::mutex mtx;
    std::condition_variable cv_put, cv_get;
    bool done = false;
    std::exception_ptr worker_error;
    const std::size_t capacity = 2 * workers;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          Task task;
          {
            std::unique_lock lock(mtx);
            cv_get.wait(lock, [&] { return done || !queue.empty(); });
            if (queue.empty()) return;
            task = std::move(queue.front());
            queue.pop_front();
            cv_put.notify_one();
          }
          try {
            results[task.index] =
                evaluate(BitSequence(std::move(task.bytes), config.bits_per_sequence));
          } catch (...) {
            std::lock_guard lock(mtx);
            if (!worker_error) worker_error = std::current_exception();
            done = true;
            cv_get.notify_all();
            return;
          }
        }
      });
    }

    try {
      std::vector<std::uint8_t> bytes;
      for (std::uint64_t i = 0; i < m; ++i) {
        if (!source.next(bytes)) throw std::runtime_error("sequence source exhausted");
        std::unique_lock lock(mtx);
        cv_put.wait(lock, [&] { return done || queue.size() < capacity; });
        if (done) break;
        queue.push_back(Task{i, bytes});
        cv_get.notify_one();
      }
    } catch (...) {
      {
        std::lock_guard lock(mtx);
        done = true;
      }
      cv_get.notify_all();
      for (std::thread& t : pool) t.join();
      throw;
    }
    {
      std::lock_guard lock(mtx);
      done = true;
    }
    cv_get.notify_all();
    for (std::thread& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
  }

  BatteryReport report;
  report.manifest = std::move(manifest);
  report.sequence_count = m;
  report.bits_per_sequence = config.bits_per_sequence;
  report.alpha = config.alpha;
  const auto range = proportion_range(config.alpha, m);
  report.range_lo = range.first;
  report.range_hi = range.second;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    ReportRow out;
    out.tsn = rows[r].tsn;
    out.name = rows[r].name;
    out.id = rows[r].id;
    std::vector<double> pool;
    for (std::uint64_t i = 0; i < m; ++i) {
      const TestResult& res = results[i][r];
      if (!res.applicable) continue;
      out.applicable_sequences++;
      pool.insert(pool.end(), res.p_values.begin(), res.p_values.end());
    }
    out.pvalue_count = pool.size();
    out.judged = !pool.empty();
    if (out.judged) {
      const auto moments = summarize(pool);
      out.mean = moments.first;
      out.variance = moments.second;
      std::uint64_t passing = 0;
      for (const double p : pool) passing += p >= config.alpha;
      out.proportion = static_cast<double>(passing) / static_cast<double>(pool.size());
      const UniformityResult u = uniformity(pool);
      out.uniformity_p = u.p_value;
      out.histogram = u.bins;
      out.success = out.proportion >= report.range_lo &&
                    out.proportion <= report.range_hi &&
                    out.uniformity_p >= kUniformityThreshold;
    }
    report.rows.push_back(std::move(out));
  }
  return report;
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

void write_text_report(const BatteryReport& report, std::ostream& os) {
  os << "mmohocc randomness test report\n";
  if (!report.manifest.version.empty()) {
    os << "tool version : " << report.manifest.version << "\n";
  }
  if (!report.manifest.command.empty()) {
    os << "command      : " << report.manifest.command << "\n";
  }
  if (!report.manifest.key_hex.empty()) {
    os << "key          : " << report.manifest.key_hex << "\n";
    os << "maps         : " << report.manifest.map_count
       << "  orbits: " << report.manifest.orbit_count << "\n";
  }
  if (!report.manifest.input_path.empty()) {
    os << "input        : " << report.manifest.input_path << "\n";
  }
  os << "sequences    : " << report.sequence_count << "\n";
  os << "bits/sequence: " << report.bits_per_sequence << "\n";
  os << "alpha        : " << fmt("%.4f", report.alpha) << "\n";
  os << "acceptable proportion range: [" << fmt("%.6f", report.range_lo) << ", "
     << fmt("%.6f", report.range_hi) << "]\n\n";

  char line[160];
  os << " TSN  Test Name                           Mean of p-value  Variance  Conclusion\n";
  for (const ReportRow& row : report.rows) {
    if (row.judged) {
      std::snprintf(line, sizeof line, "%4d  %-36s %15.4f  %8.4f  %s\n", row.tsn,
                    row.name.c_str(), row.mean, row.variance,
                    row.success ? "Success" : "Failure");
    } else {
      std::snprintf(line, sizeof line, "%4d  %-36s %15s  %8s  %s\n", row.tsn,
                    row.name.c_str(), "n/a", "n/a", "n/a");
    }
    os << line;
  }

  os << "\nProportion of passing p-values (alpha = " << fmt("%.4f", report.alpha)
     << ")\n";
  os << " TSN  Test Name                           Proportion  p-values  In range\n";
  for (const ReportRow& row : report.rows) {
    if (row.judged) {
      const bool in_range =
          row.proportion >= report.range_lo && row.proportion <= report.range_hi;
      std::snprintf(line, sizeof line, "%4d  %-36s %10.6f  %8llu  %s\n", row.tsn,
                    row.name.c_str(), row.proportion,
                    static_cast<unsigned long long>(row.pvalue_count),
                    in_range ? "yes" : "NO");
    } else {
      std::snprintf(line, sizeof line, "%4d  %-36s %10s  %8llu  %s\n", row.tsn,
                    row.name.c_str(), "n/a",
                    static_cast<unsigned long long>(row.pvalue_count), "n/a");
    }
    os << line;
  }

  os << "\nUniformity of p-values (10 bins over [0,1])\n";
  os << " TSN  Test Name                                 p_T  Bin counts\n";
  for (const ReportRow& row : report.rows) {
    if (row.judged) {
      std::snprintf(line, sizeof line, "%4d  %-36s %9.6f ", row.tsn,
                    row.name.c_str(), row.uniformity_p);
    } else {
      std::snprintf(line, sizeof line, "%4d  %-36s %9s ", row.tsn,
                    row.name.c_str(), "n/a");
    }
    os << line;
    for (const std::uint64_t b : row.histogram) os << ' ' << b;
    os << "\n";
  }
}

void write_json_report(const BatteryReport& report, std::ostream& os) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json manifest;
  manifest["command"] = report.manifest.command;
  manifest["key"] = report.manifest.key_hex;
  manifest["map_count"] = report.manifest.map_count;
  manifest["orbit_count"] = report.manifest.orbit_count;
  manifest["input"] = report.manifest.input_path;
  manifest["outputs"] = report.manifest.output_paths;
  manifest["version"] = report.manifest.version;
  j["manifest"] = std::move(manifest);
  j["sequences"] = report.sequence_count;
  j["bits_per_sequence"] = report.bits_per_sequence;
  j["alpha"] = report.alpha;
  j["proportion_range"] = {report.range_lo, report.range_hi};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["tsn"] = row.tsn;
    r["name"] = row.name;
    r["applicable_sequences"] = row.applicable_sequences;
    r["p_values"] = row.pvalue_count;
    r["judged"] = row.judged;
    if (row.judged) {
      r["mean"] = row.mean;
      r["variance"] = row.variance;
      r["proportion"] = row.proportion;
      r["uniformity_p"] = row.uniformity_p;
      r["success"] = row.success;
    }
    r["histogram"] = row.histogram;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << "\n";
}

void write_csv_histograms(const BatteryReport& report, std::ostream& os) {
  os << "bin_start,bin_end";
  for (const ReportRow& row : report.rows) {
    os << ",\"" << row.name << "\"";
  }
  os << "\n";
  for (int bin = 0; bin < 10; ++bin) {
    os << fmt("%.1f", bin / 10.0) << ',' << fmt("%.1f", (bin + 1) / 10.0);
    for (const ReportRow& row : report.rows) {
      os << ',' << row.histogram[static_cast<std::size_t>(bin)];
    }
    os << "\n";
  }
}

}  // namespace mmohocc
