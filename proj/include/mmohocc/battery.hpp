// Battery runner: applies the selected tests to many sequences and produces
// the three summary analyses (per-test p-value moments, pass proportions
// against the acceptable range, and p-value uniformity), in text, JSON and
// CSV form.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mmohocc/generator.hpp"
#include "mmohocc/statstests.hpp"

namespace mmohocc {

struct BatteryConfig {
  std::uint64_t sequence_count = 100;
  std::uint64_t bits_per_sequence = 1'000'000;
  double alpha = 0.01;
  std::vector<TestId> selection;  // empty = all fifteen tests
  unsigned threads = 0;           // 0 = one per hardware thread
};

/// Acceptable proportion interval (lo, hi): p_hat +- 3 sqrt(p_hat(1-p_hat)/m)
/// with p_hat = 1 - alpha, upper bound clamped to 1.
std::pair<double, double> proportion_range(double alpha, std::uint64_t sample_size);

/// Sample mean and population variance (divide by count).
std::pair<double, double> summarize(std::span<const double> p_values);

struct UniformityResult {
  double p_value = 1.0;
  std::array<std::uint64_t, 10> bins{};
  bool low_count = false;  // fewer than 10 p-values: chi-square is shaky
};

/// Chi-square uniformity over ten equal bins, 9 degrees of freedom.
UniformityResult uniformity(std::span<const double> p_values);

/// One aggregated report row. Cumulative Sums contributes two rows (forward
/// and reverse); every other test contributes one row pooling all of its
/// p-values (templates, states, serial deltas).
struct ReportRow {
  int tsn = 0;  // serial number; 6 is unassigned (Lempel-Ziv is not run)
  std::string name;
  TestId id = TestId::Frequency;
  std::uint64_t applicable_sequences = 0;
  std::uint64_t pvalue_count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double proportion = 0.0;
  double uniformity_p = 1.0;
  std::array<std::uint64_t, 10> histogram{};
  bool judged = false;   // false when no sequence was applicable
  bool success = false;  // proportion in range and uniformity_p >= 1e-4
};

struct RunManifest {
  std::string command;
  std::string key_hex;  // empty for file input
  std::uint32_t map_count = kDefaultMapCount;
  std::uint32_t orbit_count = kDefaultOrbitCount;
  std::string input_path;  // empty for generated input
  std::vector<std::string> output_paths;
  std::string version;
};

struct BatteryReport {
  RunManifest manifest;
  std::uint64_t sequence_count = 0;
  std::uint64_t bits_per_sequence = 0;
  double alpha = 0.01;
  double range_lo = 0.0;
  double range_hi = 1.0;
  std::vector<ReportRow> rows;

  /// True when every judged row's proportion lies in [range_lo, range_hi].
  bool all_proportions_in_range() const;
  /// True when every judged row is a Success (proportion and uniformity).
  bool all_success() const;
};

/// Yields sequences for the battery; each call fills `bytes` with
/// ceil(bits/8) bytes (bits MSB-first). Returns false when exhausted.
class SequenceSource {
 public:
  virtual ~SequenceSource() = default;
  virtual bool next(std::vector<std::uint8_t>& bytes) = 0;
};

/// Consecutive keystream chunks from one generator.
class KeystreamSequenceSource final : public SequenceSource {
 public:
  KeystreamSequenceSource(KeystreamGenerator generator, std::uint64_t bits_per_sequence);
  bool next(std::vector<std::uint8_t>& bytes) override;

 private:
  KeystreamGenerator generator_;
  std::size_t bytes_per_sequence_;
};

/// Consecutive chunks of a raw binary file; throws std::runtime_error when
/// the file ends before the configured number of sequences.
class FileSequenceSource final : public SequenceSource {
 public:
  FileSequenceSource(const std::string& path, std::uint64_t bits_per_sequence);
  ~FileSequenceSource() override;
  bool next(std::vector<std::uint8_t>& bytes) override;

 private:
  struct Impl;
  Impl* impl_;
};

/// Runs the configured battery. Deterministic for a deterministic source,
/// independent of the worker count.
BatteryReport run_battery(SequenceSource& source, const BatteryConfig& config,
                          RunManifest manifest = {});

void write_text_report(const BatteryReport& report, std::ostream& os);
void write_json_report(const BatteryReport& report, std::ostream& os);
void write_csv_histograms(const BatteryReport& report, std::ostream& os);

}  // namespace mmohocc
