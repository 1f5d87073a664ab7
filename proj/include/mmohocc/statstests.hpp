// The statistical test battery: fifteen NIST SP800-22 style tests, each a
// pure function from a bit sequence to one or more p-values, plus the
// algorithmic kernels (GF(2) rank, Berlekamp-Massey, template generation)
// exposed for oracle testing.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmohocc/bitseq.hpp"
#include "mmohocc/fft.hpp"

namespace mmohocc {

enum class TestId : std::uint8_t {
  ApproximateEntropy,
  BlockFrequency,
  CumulativeSums,
  Dft,
  Frequency,
  LinearComplexity,
  LongestRun,
  Universal,
  NonOverlappingTemplate,
  OverlappingTemplate,
  RandomExcursions,
  RandomExcursionsVariant,
  Rank,
  Runs,
  Serial,
};

inline constexpr std::size_t kTestCount = 15;

std::string_view test_name(TestId id) noexcept;

/// Result of one test on one sequence. Tests whose preconditions fail
/// report applicable == false (with `note` explaining why); such results are
/// excluded from battery aggregation rather than counted as failures.
struct TestResult {
  TestId id = TestId::Frequency;
  bool applicable = true;
  std::string note;
  std::vector<double> p_values;
  std::vector<std::string> labels;  // per-p-value labels for multi-value tests

  bool pass(std::size_t i, double alpha) const {
    return applicable && p_values[i] >= alpha;
  }
};

// ---- Tests (SP800-22 numbering in parentheses) ----

TestResult frequency_monobit(const BitSequence& s);                      // 2.1
TestResult block_frequency(const BitSequence& s, std::uint32_t block_length = 128);  // 2.2
TestResult cumulative_sums_forward(const BitSequence& s);                // 2.13
TestResult cumulative_sums_reverse(const BitSequence& s);                // 2.13
TestResult runs_test(const BitSequence& s);                              // 2.3
TestResult longest_run_of_ones(const BitSequence& s);                    // 2.4
TestResult binary_matrix_rank(const BitSequence& s);                     // 2.5
/// Spectral test. Pass a prebuilt plan of matching length to amortize table
/// setup across sequences; with plan == nullptr one is built per call.
TestResult dft_spectral(const BitSequence& s, const SpectralDft* plan = nullptr);  // 2.6
/// Single-template variant; `tmpl` holds the m template bits, MSB = first.
TestResult nonoverlapping_template(const BitSequence& s, std::uint32_t tmpl,
                                   std::uint32_t template_length);       // 2.7
/// Battery variant: one p-value per aperiodic template of the given length.
TestResult nonoverlapping_template_battery(const BitSequence& s,
                                           std::uint32_t template_length = 9);
TestResult overlapping_template(const BitSequence& s,
                                std::uint32_t template_length = 9);      // 2.8
TestResult maurer_universal(const BitSequence& s);                       // 2.9
TestResult linear_complexity(const BitSequence& s, std::uint32_t block_length = 500);  // 2.10
TestResult serial(const BitSequence& s, std::uint32_t pattern_length = 16);  // 2.11
TestResult approximate_entropy(const BitSequence& s, std::uint32_t pattern_length = 10);  // 2.12
TestResult random_excursions(const BitSequence& s);                      // 2.14
TestResult random_excursions_variant(const BitSequence& s);              // 2.15

// ---- Kernels ----

/// Rank of an nrows x ncols matrix over GF(2); row i is the low `ncols` bits
/// of rows[i] with bit (ncols-1) as the leftmost column. Consumes its copy.
int gf2_rank(std::vector<std::uint64_t> rows, std::uint32_t ncols);

/// Length of the shortest LFSR generating `bits` (one byte per bit).
std::size_t berlekamp_massey(std::span<const std::uint8_t> bits);

/// All aperiodic (unbordered) templates of the given length in increasing
/// numeric order; for length 9 this is the 148-template SP800-22 list.
std::vector<std::uint32_t> aperiodic_templates(std::uint32_t length);

/// Wraparound m-bit pattern statistic psi2_m of the serial test; exposed for
/// fixture checks.
double psi_squared(const BitSequence& s, std::uint32_t m);

/// Number of zero-to-zero cycles J of the +-1 random walk (the excursion
/// tests' applicability statistic).
std::uint64_t excursion_cycles(const BitSequence& s);

}  // namespace mmohocc
