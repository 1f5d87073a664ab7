#include <cmath>
#include <doctest.h>
#include <numbers>
#include <set>

#include "mmohocc/bitseq.hpp"
#include "mmohocc/sp80022_tables.hpp"
#include "mmohocc/specfun.hpp"
#include "mmohocc/statstests.hpp"
#include "oracles.hpp"

using namespace mmohocc;
using doctest::Approx;

namespace {

BitSequence random_sequence(std::size_t bits, std::uint64_t seed) {
  oracles::TestRng rng(seed);
  return BitSequence(rng.bytes((bits + 7) / 8), bits);
}

BitSequence repeat_pattern(std::string_view pattern, std::size_t copies) {
  std::string s;
  s.reserve(pattern.size() * copies);
  for (std::size_t i = 0; i < copies; ++i) s += pattern;
  return BitSequence::from_ascii(s);
}

}  // namespace

// ---------------- frequency ----------------

TEST_CASE("monobit: worked example, balance, and degenerate inputs") {
  const TestResult ex = frequency_monobit(BitSequence::from_ascii("1011010101"));
  REQUIRE(ex.applicable);
  CHECK(ex.p_values[0] == Approx(0.527089).epsilon(1e-6));

  const TestResult balanced = frequency_monobit(repeat_pattern("10", 500));
  CHECK(balanced.p_values[0] == 1.0);

  const TestResult zeros = frequency_monobit(repeat_pattern("0", 100));
  REQUIRE(zeros.applicable);
  CHECK(zeros.p_values[0] < 1e-20);

  CHECK_FALSE(frequency_monobit(BitSequence::from_ascii("10110")).applicable);
}

// ---------------- block frequency ----------------

TEST_CASE("block frequency: worked example and extremes") {
  const TestResult ex = block_frequency(BitSequence::from_ascii("0110011010"), 3);
  REQUIRE(ex.applicable);
  CHECK(ex.p_values[0] == Approx(0.801252).epsilon(1e-6));

  const TestResult perfect = block_frequency(repeat_pattern("0110", 64), 4);
  CHECK(perfect.p_values[0] == 1.0);

  const TestResult ones = block_frequency(repeat_pattern("1", 1280), 128);
  CHECK(ones.p_values[0] < 1e-20);

  CHECK_FALSE(block_frequency(BitSequence::from_ascii("101"), 128).applicable);
  CHECK_THROWS_AS(block_frequency(BitSequence::from_ascii("101"), 0),
                  std::invalid_argument);
}

// ---------------- runs ----------------

TEST_CASE("runs: worked example, exact-mean case, and prerequisite gate") {
  const TestResult ex = runs_test(BitSequence::from_ascii("1001101011"));
  REQUIRE(ex.applicable);
  CHECK(ex.p_values[0] == Approx(0.147232).epsilon(1e-6));

  // pi = 1/2 and V = 2 n pi (1-pi) = 8 exactly.
  const TestResult exact = runs_test(BitSequence::from_ascii("1100110011001100"));
  REQUIRE(exact.applicable);
  CHECK(exact.p_values[0] == 1.0);

  const TestResult zeros = runs_test(repeat_pattern("0", 100));
  CHECK_FALSE(zeros.applicable);
  REQUIRE(zeros.p_values.size() == 1);
  CHECK(zeros.p_values[0] == 0.0);
}

// ---------------- longest run ----------------

TEST_CASE("longest run: all-ones fails, fixture matches a direct recount") {
  CHECK_FALSE(longest_run_of_ones(BitSequence::from_ascii("1010")).applicable);

  const TestResult ones = longest_run_of_ones(repeat_pattern("1", 128));
  REQUIRE(ones.applicable);
  CHECK(ones.p_values[0] < 1e-10);

  // Direct-count oracle on a fixed 128-bit fixture (M=8 regime).
  const BitSequence fixture = random_sequence(128, 314159);
  std::array<std::uint64_t, 4> classes{};
  for (int b = 0; b < 16; ++b) {
    int longest = 0, run = 0;
    for (int i = 0; i < 8; ++i) {
      run = fixture.bit(static_cast<std::size_t>(8 * b + i)) ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    classes[static_cast<std::size_t>(std::clamp(longest, 1, 4) - 1)]++;
  }
  double chi2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double expected = 16.0 * sp80022::kLongestRunPiM8[k];
    chi2 += std::pow(classes[static_cast<std::size_t>(k)] - expected, 2) / expected;
  }
  const double expected_p = igamc(1.5, chi2 / 2.0);
  const TestResult got = longest_run_of_ones(fixture);
  REQUIRE(got.applicable);
  CHECK(got.p_values[0] == Approx(expected_p).epsilon(1e-10));
}

// ---------------- rank ----------------

TEST_CASE("gf2_rank kernel basics and sampled distribution") {
  std::vector<std::uint64_t> identity(32);
  for (int i = 0; i < 32; ++i) identity[static_cast<std::size_t>(i)] = 1ull << i;
  CHECK(gf2_rank(identity, 32) == 32);
  CHECK(gf2_rank(std::vector<std::uint64_t>(32, 0), 32) == 0);
  CHECK(gf2_rank({0b101, 0b011, 0b110}, 3) == 2);  // row3 = row1 ^ row2

  oracles::TestRng rng(2718);
  int full_rank = 0;
  const int samples = 100000;
  for (int t = 0; t < samples; ++t) {
    std::vector<std::uint64_t> rows(32);
    for (auto& r : rows) r = rng.next() & 0xFFFFFFFFULL;
    full_rank += gf2_rank(std::move(rows), 32) == 32;
  }
  const double observed = static_cast<double>(full_rank) / samples;
  CHECK(observed == Approx(0.2888).epsilon(0.035));  // +-0.01 absolute
}

TEST_CASE("gf2_rank equals row-space enumeration on small random matrices") {
  oracles::TestRng rng(555);
  for (int t = 0; t < 2000; ++t) {
    const int ncols = 1 + static_cast<int>(rng.below(6));
    const int nrows = 1 + static_cast<int>(rng.below(6));
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(nrows));
    for (auto& r : rows) r = rng.next() & ((1ull << ncols) - 1);
    REQUIRE(gf2_rank(rows, static_cast<std::uint32_t>(ncols)) ==
            oracles::rank_by_row_space(rows, ncols));
  }
}

TEST_CASE("binary matrix rank test: gates and oracle fixture") {
  CHECK_FALSE(binary_matrix_rank(random_sequence(1024 * 37, 1)).applicable);

  const TestResult zeros =
      binary_matrix_rank(BitSequence(std::vector<std::uint8_t>(128 * 38, 0), 1024 * 38));
  REQUIRE(zeros.applicable);
  CHECK(zeros.p_values[0] < 1e-10);

  const BitSequence fixture = random_sequence(100000, 8086);
  const TestResult got = binary_matrix_rank(fixture);
  REQUIRE(got.applicable);
  // Recount with an independently coded classifier.
  const std::size_t matrices = 100000 / 1024;
  std::uint64_t f32 = 0, f31 = 0;
  for (std::size_t k = 0; k < matrices; ++k) {
    std::vector<std::uint64_t> rows(32, 0);
    for (int r = 0; r < 32; ++r) {
      for (int c = 0; c < 32; ++c) {
        const std::size_t bit_index = 1024 * k + 32 * static_cast<std::size_t>(r) +
                                      static_cast<std::size_t>(c);
        if (fixture.bit(bit_index)) rows[static_cast<std::size_t>(r)] |= 1ull << (31 - c);
      }
    }
    const int rank = gf2_rank(std::move(rows), 32);
    f32 += rank == 32;
    f31 += rank == 31;
  }
  const double n = static_cast<double>(matrices);
  double p32 = 1.0, p31 = 1.0;
  for (int i = 0; i < 32; ++i) p32 *= 1.0 - std::ldexp(1.0, i - 32);
  for (int i = 0; i < 31; ++i) {
    p31 *= (1.0 - std::ldexp(1.0, i - 32)) * (1.0 - std::ldexp(1.0, i - 32)) /
           (1.0 - std::ldexp(1.0, i - 31));
  }
  p31 /= 2.0;
  const double p30 = 1.0 - p32 - p31;
  const double f30 = n - static_cast<double>(f32) - static_cast<double>(f31);
  const double chi2 = std::pow(f32 - n * p32, 2) / (n * p32) +
                      std::pow(f31 - n * p31, 2) / (n * p31) +
                      std::pow(f30 - n * p30, 2) / (n * p30);
  CHECK(got.p_values[0] == Approx(std::exp(-chi2 / 2.0)).epsilon(1e-10));
}

// ---------------- spectral ----------------

TEST_CASE("spectral test: oracle agreement and a strong tone fails") {
  CHECK_FALSE(dft_spectral(BitSequence::from_ascii("10101")).applicable);

  const BitSequence fixture = random_sequence(64, 64);
  const TestResult got = dft_spectral(fixture);
  REQUIRE(got.applicable);
  std::vector<double> x(64);
  for (std::size_t i = 0; i < 64; ++i) x[i] = fixture.bit(i) ? 1.0 : -1.0;
  const auto mags = oracles::naive_dft_magnitudes(x);
  const double threshold = std::sqrt(64.0 * std::log(1.0 / 0.05));
  std::uint64_t below = 0;
  for (const double m : mags) below += m < threshold;
  const double d = (static_cast<double>(below) - 0.95 * 32.0) /
                   std::sqrt(64.0 * 0.95 * 0.05 / 4.0);
  const double expected_p = mmohocc::erfc(std::abs(d) / std::sqrt(2.0));
  CHECK(got.p_values[0] == Approx(expected_p).epsilon(1e-9));

  const TestResult tone = dft_spectral(repeat_pattern("1100", 256));
  REQUIRE(tone.applicable);
  CHECK(tone.p_values[0] < 0.01);
}

// ---------------- templates ----------------

TEST_CASE("aperiodic template enumeration") {
  CHECK(aperiodic_templates(3) == std::vector<std::uint32_t>{1, 3, 4, 6});
  const auto nine = aperiodic_templates(9);
  CHECK(nine.size() == 148);
  // Brute-force border check on the generated list.
  for (const std::uint32_t b : nine) {
    std::string bits(9, '0');
    for (int i = 0; i < 9; ++i) {
      if ((b >> (8 - i)) & 1u) bits[static_cast<std::size_t>(i)] = '1';
    }
    for (std::size_t border = 1; border < 9; ++border) {
      REQUIRE(bits.substr(0, border) != bits.substr(9 - border));
    }
  }
  CHECK(std::is_sorted(nine.begin(), nine.end()));
}

TEST_CASE("non-overlapping template matching: skip rule and closed forms") {
  // Every 10-bit block "0010000000" holds exactly one match of 001.
  const TestResult one_each = nonoverlapping_template(repeat_pattern("0010000000", 8), 0b001, 3);
  REQUIRE(one_each.applicable);
  CHECK(one_each.p_values[0] == 1.0);  // W_j == mu == 1 in every block

  // The skip rule: 001001 contains two matches of 001, 0010 01 -> positions 0 and 3,
  // but 00100 contains only one (second candidate overlaps the first).
  const TestResult skip = nonoverlapping_template(repeat_pattern("00100", 16), 0b001, 3);
  REQUIRE(skip.applicable);
  // Recount the whole-sequence statistic independently per block.
  const BitSequence seq = repeat_pattern("00100", 16);
  const std::size_t block_len = seq.size() / 8;
  const double mu = static_cast<double>(block_len - 3 + 1) / 8.0;
  const double sigma2 = static_cast<double>(block_len) * (1.0 / 8.0 - 5.0 / 64.0);
  double chi2 = 0.0;
  for (std::size_t b = 0; b < 8; ++b) {
    std::uint64_t w = 0;
    std::size_t i = b * block_len;
    const std::size_t end = b * block_len + block_len - 3;
    while (i <= end) {
      if (!seq.bit(i) && !seq.bit(i + 1) && seq.bit(i + 2)) {
        ++w;
        i += 3;
      } else {
        ++i;
      }
    }
    chi2 += std::pow(static_cast<double>(w) - mu, 2) / sigma2;
  }
  CHECK(skip.p_values[0] == Approx(igamc(4.0, chi2 / 2.0)).epsilon(1e-12));

  // All-zero input with a template containing a one: W = 0 in all blocks.
  const TestResult empty = nonoverlapping_template(
      BitSequence(std::vector<std::uint8_t>(100, 0), 800), 0b001, 3);
  REQUIRE(empty.applicable);
  const double m100 = 800.0 / 8.0;
  const double mu0 = (m100 - 3 + 1) / 8.0;
  const double s0 = m100 * (1.0 / 8.0 - 5.0 / 64.0);
  CHECK(empty.p_values[0] ==
        Approx(igamc(4.0, 8.0 * mu0 * mu0 / s0 / 2.0)).epsilon(1e-12));

  CHECK_FALSE(nonoverlapping_template(BitSequence::from_ascii("0101010"), 0b001, 3)
                  .applicable);

  const TestResult battery = nonoverlapping_template_battery(random_sequence(8192, 99), 9);
  REQUIRE(battery.applicable);
  CHECK(battery.p_values.size() == 148);
  CHECK(battery.labels.size() == 148);
  CHECK(battery.labels[0] == "000000001");
}

TEST_CASE("overlapping template matching: degenerate and oracle fixture") {
  const TestResult ones = overlapping_template(repeat_pattern("1", 1032 * 16));
  REQUIRE(ones.applicable);
  CHECK(ones.p_values[0] < 1e-10);

  CHECK_FALSE(overlapping_template(BitSequence::from_ascii("1010")).applicable);

  const BitSequence fixture = random_sequence(1000000, 271828);
  const TestResult got = overlapping_template(fixture);
  REQUIRE(got.applicable);
  // Brute-force window scan.
  const std::size_t blocks = fixture.size() / 1032;
  std::array<std::uint64_t, 6> nu{};
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint64_t count = 0;
    for (std::size_t j = 0; j + 9 <= 1032; ++j) {
      bool all = true;
      for (std::size_t k = 0; k < 9 && all; ++k) all = fixture.bit(b * 1032 + j + k);
      count += all;
    }
    nu[static_cast<std::size_t>(std::min<std::uint64_t>(count, 5))]++;
  }
  double chi2 = 0.0;
  for (int k = 0; k <= 5; ++k) {
    const double expected = static_cast<double>(blocks) * sp80022::kOverlappingPi[k];
    chi2 += std::pow(static_cast<double>(nu[static_cast<std::size_t>(k)]) - expected, 2) /
            expected;
  }
  CHECK(got.p_values[0] == Approx(igamc(2.5, chi2 / 2.0)).epsilon(1e-10));
}

// ---------------- universal ----------------

TEST_CASE("universal: length gate and last-occurrence oracle") {
  CHECK_FALSE(maurer_universal(random_sequence(100000, 5)).applicable);

  const BitSequence fixture = random_sequence(1000000, 161803);
  const TestResult got = maurer_universal(fixture);
  REQUIRE(got.applicable);

  // Independent table walk with L=7, Q=1280.
  const std::uint32_t L = 7;
  const std::uint64_t q_blocks = 1280;
  const std::uint64_t total = fixture.size() / L;
  const std::uint64_t k_blocks = total - q_blocks;
  std::vector<std::uint64_t> table(1u << L, 0);
  const auto value_of = [&fixture](std::uint64_t block_index) {
    std::uint32_t v = 0;
    for (std::uint32_t j = 0; j < 7; ++j) {
      v = (v << 1) |
          static_cast<std::uint32_t>(fixture.bit((block_index - 1) * 7 + j));
    }
    return v;
  };
  for (std::uint64_t i = 1; i <= q_blocks; ++i) table[value_of(i)] = i;
  double sum = 0.0;
  for (std::uint64_t i = q_blocks + 1; i <= q_blocks + k_blocks; ++i) {
    const std::uint32_t v = value_of(i);
    sum += std::log2(static_cast<double>(i - table[v]));
    table[v] = i;
  }
  const double fn = sum / static_cast<double>(k_blocks);
  const double c = 0.7 - 0.8 / 7.0 +
                   (4.0 + 32.0 / 7.0) * std::pow(static_cast<double>(k_blocks), -3.0 / 7.0) / 15.0;
  const double sigma = c * std::sqrt(3.125 / static_cast<double>(k_blocks));
  const double expected_p = mmohocc::erfc(std::abs(fn - 6.1962507) / (std::sqrt(2.0) * sigma));
  CHECK(got.p_values[0] == Approx(expected_p).epsilon(1e-9));
}

// ---------------- linear complexity ----------------

TEST_CASE("berlekamp-massey kernel: pinned cases and exhaustive small search") {
  CHECK(berlekamp_massey(std::vector<std::uint8_t>(32, 0)) == 0);

  std::vector<std::uint8_t> impulse(12, 0);
  impulse.back() = 1;
  CHECK(berlekamp_massey(impulse) == 12);

  // m-sequence of x^3 + x + 1 (period 7), repeated: complexity 3.
  std::vector<std::uint8_t> mseq;
  std::uint8_t reg_a = 1, reg_b = 0, reg_c = 0;
  for (int i = 0; i < 21; ++i) {
    mseq.push_back(reg_c);
    const std::uint8_t fb = reg_c ^ reg_b;
    reg_c = reg_b;
    reg_b = reg_a;
    reg_a = fb;
  }
  CHECK(berlekamp_massey(mseq) == 3);
  CHECK(oracles::min_lfsr_by_search(mseq) == 3);

  for (std::uint32_t len = 1; len <= 10; ++len) {
    for (std::uint32_t value = 0; value < (1u << len); ++value) {
      std::vector<std::uint8_t> bits(len);
      for (std::uint32_t i = 0; i < len; ++i) bits[i] = (value >> (len - 1 - i)) & 1u;
      REQUIRE(berlekamp_massey(bits) == oracles::min_lfsr_by_search(bits));
    }
  }
}

TEST_CASE("linear complexity test: degenerate input and kernel-based recount") {
  const TestResult zeros =
      linear_complexity(BitSequence(std::vector<std::uint8_t>(12500, 0), 100000), 500);
  REQUIRE(zeros.applicable);
  CHECK(zeros.p_values[0] < 1e-10);

  CHECK_FALSE(linear_complexity(BitSequence::from_ascii("0101"), 500).applicable);

  const BitSequence fixture = random_sequence(100000, 5772);
  const TestResult got = linear_complexity(fixture, 500);
  REQUIRE(got.applicable);

  const double mu = 500.0 / 2.0 + (9.0 - 1.0) / 36.0 -
                    (500.0 / 3.0 + 2.0 / 9.0) / std::pow(2.0, 500.0);
  std::array<std::uint64_t, 7> nu{};
  for (std::size_t b = 0; b < 200; ++b) {
    std::vector<std::uint8_t> block(500);
    for (std::size_t i = 0; i < 500; ++i) block[i] = fixture.bit(b * 500 + i);
    const double t = (static_cast<double>(berlekamp_massey(block)) - mu) + 2.0 / 9.0;
    int cls = 6;
    if (t <= -2.5) cls = 0;
    else if (t <= -1.5) cls = 1;
    else if (t <= -0.5) cls = 2;
    else if (t <= 0.5) cls = 3;
    else if (t <= 1.5) cls = 4;
    else if (t <= 2.5) cls = 5;
    nu[static_cast<std::size_t>(cls)]++;
  }
  double chi2 = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double expected = 200.0 * sp80022::kLinearComplexityPi[k];
    chi2 += std::pow(static_cast<double>(nu[static_cast<std::size_t>(k)]) - expected, 2) /
            expected;
  }
  CHECK(got.p_values[0] == Approx(igamc(3.0, chi2 / 2.0)).epsilon(1e-10));
}

// ---------------- serial ----------------

TEST_CASE("serial: psi identities, gates, and an independent recount") {
  CHECK(psi_squared(BitSequence::from_ascii("0101010101"), 1) == Approx(0.0));

  CHECK_FALSE(serial(BitSequence::from_ascii("0101010101"), 3).applicable);  // m too big for n=10
  const TestResult zeros = serial(BitSequence(std::vector<std::uint8_t>(125, 0), 1000), 3);
  REQUIRE(zeros.applicable);
  CHECK(zeros.p_values[0] < 1e-10);

  const BitSequence fixture = random_sequence(64, 424242);
  const TestResult got = serial(fixture, 3);
  REQUIRE(got.applicable);
  REQUIRE(got.p_values.size() == 2);
  // Recount patterns of length 1..3 by brute-force wraparound matching.
  const auto count_patterns = [&fixture](std::uint32_t m) {
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    for (std::size_t start = 0; start < fixture.size(); ++start) {
      std::uint32_t v = 0;
      for (std::uint32_t j = 0; j < m; ++j) {
        v = (v << 1) |
            static_cast<std::uint32_t>(fixture.bit((start + j) % fixture.size()));
      }
      counts[v]++;
    }
    return counts;
  };
  const auto psi = [&fixture, &count_patterns](std::uint32_t m) {
    const auto counts = count_patterns(m);
    double total = 0.0;
    for (const auto c : counts) total += static_cast<double>(c) * static_cast<double>(c);
    return std::ldexp(1.0, static_cast<int>(m)) / static_cast<double>(fixture.size()) * total -
           static_cast<double>(fixture.size());
  };
  const double del1 = psi(3) - psi(2);
  const double del2 = psi(3) - 2.0 * psi(2) + psi(1);
  CHECK(got.p_values[0] == Approx(igamc(2.0, del1 / 2.0)).epsilon(1e-10));
  CHECK(got.p_values[1] == Approx(igamc(1.0, del2 / 2.0)).epsilon(1e-10));
}

// ---------------- approximate entropy ----------------

TEST_CASE("approximate entropy: alternating failure and direct recount") {
  const TestResult alt = approximate_entropy(repeat_pattern("01", 64), 1);
  REQUIRE(alt.applicable);
  CHECK(alt.p_values[0] < 1e-10);

  CHECK_FALSE(approximate_entropy(BitSequence::from_ascii("01010101"), 3).applicable);

  const BitSequence fixture = random_sequence(10000, 990099);
  const TestResult got = approximate_entropy(fixture, 10);
  REQUIRE(got.applicable);
  const auto phi_direct = [&fixture](std::uint32_t m) {
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    for (std::size_t start = 0; start < fixture.size(); ++start) {
      std::uint32_t v = 0;
      for (std::uint32_t j = 0; j < m; ++j) {
        v = (v << 1) |
            static_cast<std::uint32_t>(fixture.bit((start + j) % fixture.size()));
      }
      counts[v]++;
    }
    double phi = 0.0;
    for (const auto c : counts) {
      if (c == 0) continue;
      const double f = static_cast<double>(c) / static_cast<double>(fixture.size());
      phi += f * std::log(f);
    }
    return phi;
  };
  const double apen = phi_direct(10) - phi_direct(11);
  const double chi2 = 2.0 * 10000.0 * (std::numbers::ln2 - apen);
  CHECK(got.p_values[0] == Approx(igamc(512.0, chi2 / 2.0)).epsilon(1e-10));
}

// ---------------- cumulative sums ----------------

TEST_CASE("cumulative sums: worked example, symmetry, extremes") {
  const TestResult fwd = cumulative_sums_forward(BitSequence::from_ascii("1011010111"));
  REQUIRE(fwd.applicable);
  CHECK(fwd.p_values[0] == Approx(0.4116588).epsilon(1e-6));

  const BitSequence palindrome = BitSequence::from_ascii("110101101011");  // reads the same reversed
  const TestResult f = cumulative_sums_forward(palindrome);
  const TestResult r = cumulative_sums_reverse(palindrome);
  CHECK(f.p_values[0] == r.p_values[0]);

  const TestResult ones = cumulative_sums_forward(repeat_pattern("1", 100));
  CHECK(ones.p_values[0] < 1e-20);

  // A maximal excursion of 1 is the minimum possible; the one-sided statistic
  // sits at the opposite extreme from a drifting walk.
  const TestResult alt = cumulative_sums_forward(repeat_pattern("10", 50));
  CHECK(alt.p_values[0] > 0.99);
}

// ---------------- random excursions ----------------

TEST_CASE("excursion walk bookkeeping on the documented example") {
  const BitSequence s = BitSequence::from_ascii("0110110101");
  CHECK(excursion_cycles(s) == 3);
  CHECK_FALSE(random_excursions(s).applicable);          // J = 3 < 500
  CHECK_FALSE(random_excursions_variant(s).applicable);  // J = 3 < 500
  CHECK_FALSE(random_excursions(repeat_pattern("0", 1000)).applicable);
  CHECK_FALSE(random_excursions_variant(repeat_pattern("0", 1000)).applicable);
  CHECK(mmohocc::erfc(1.0 / std::sqrt(12.0)) == Approx(0.6831).epsilon(1e-4));
}

TEST_CASE("random excursions and variant: recount on a long fixture") {
  const BitSequence fixture = random_sequence(1000000, 606060);
  const TestResult re = random_excursions(fixture);
  const TestResult rev = random_excursions_variant(fixture);
  REQUIRE(re.applicable);
  REQUIRE(rev.applicable);
  REQUIRE(re.p_values.size() == 8);
  REQUIRE(rev.p_values.size() == 18);

  // Walk once in test code, tally both statistics.
  std::uint64_t zeros = 0;
  long long state = 0;
  std::array<std::array<std::uint64_t, 6>, 8> classes{};
  std::array<std::uint64_t, 8> visits{};
  std::array<std::uint64_t, 18> xi{};
  const auto flush = [&] {
    for (int i = 0; i < 8; ++i) {
      classes[static_cast<std::size_t>(i)][std::min<std::uint64_t>(visits[static_cast<std::size_t>(i)], 5)]++;
      visits[static_cast<std::size_t>(i)] = 0;
    }
  };
  for (std::size_t i = 0; i < fixture.size(); ++i) {
    state += fixture.bit(i) ? 1 : -1;
    if (state == 0) {
      ++zeros;
      flush();
    } else {
      if (state >= -4 && state <= 4) {
        visits[static_cast<std::size_t>(state < 0 ? state + 4 : state + 3)]++;
      }
      if (state >= -9 && state <= 9) {
        xi[static_cast<std::size_t>(state < 0 ? state + 9 : state + 8)]++;
      }
    }
  }
  std::uint64_t cycles = zeros;
  if (state != 0) {
    ++cycles;
    flush();
  }
  REQUIRE(cycles >= 500);
  static constexpr int kStates[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
  for (int idx = 0; idx < 8; ++idx) {
    double chi2 = 0.0;
    for (int k = 0; k <= 5; ++k) {
      const double expected =
          static_cast<double>(cycles) *
          sp80022::kExcursionPi[std::abs(kStates[idx]) - 1][static_cast<std::size_t>(k)];
      chi2 += std::pow(static_cast<double>(classes[static_cast<std::size_t>(idx)][static_cast<std::size_t>(k)]) - expected, 2) /
              expected;
    }
    REQUIRE(re.p_values[static_cast<std::size_t>(idx)] ==
            Approx(igamc(2.5, chi2 / 2.0)).epsilon(1e-12));
  }
  for (int idx = 0; idx < 18; ++idx) {
    const int x = idx < 9 ? idx - 9 : idx - 8;
    const double j = static_cast<double>(cycles);
    const double expected_p =
        mmohocc::erfc(std::abs(static_cast<double>(xi[static_cast<std::size_t>(idx)]) - j) /
             std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0)));
    REQUIRE(rev.p_values[static_cast<std::size_t>(idx)] ==
            Approx(expected_p).epsilon(1e-12));
  }
}

// ---------------- cross-cutting properties ----------------

TEST_CASE("excursion probability table matches its closed form") {
  for (int x = 1; x <= 4; ++x) {
    const double inv2x = 1.0 / (2.0 * x);
    CHECK(sp80022::kExcursionPi[x - 1][0] == Approx(1.0 - inv2x).epsilon(1e-8));
    for (int k = 1; k <= 4; ++k) {
      const double expected =
          1.0 / (4.0 * x * x) * std::pow(1.0 - inv2x, k - 1);
      CHECK(sp80022::kExcursionPi[x - 1][static_cast<std::size_t>(k)] ==
            Approx(expected).epsilon(1e-7));
    }
    CHECK(sp80022::kExcursionPi[x - 1][5] ==
          Approx(inv2x * std::pow(1.0 - inv2x, 4)).epsilon(1e-7));
  }
}

TEST_CASE("all tests emit p-values in [0,1] and rerun identically") {
  const BitSequence fixture = random_sequence(1000000, 123123);
  const auto run_all = [&fixture]() {
    std::vector<TestResult> results;
    results.push_back(frequency_monobit(fixture));
    results.push_back(block_frequency(fixture));
    results.push_back(cumulative_sums_forward(fixture));
    results.push_back(cumulative_sums_reverse(fixture));
    results.push_back(runs_test(fixture));
    results.push_back(longest_run_of_ones(fixture));
    results.push_back(binary_matrix_rank(fixture));
    results.push_back(dft_spectral(fixture));
    results.push_back(nonoverlapping_template_battery(fixture));
    results.push_back(overlapping_template(fixture));
    results.push_back(maurer_universal(fixture));
    results.push_back(linear_complexity(fixture));
    results.push_back(serial(fixture));
    results.push_back(approximate_entropy(fixture));
    results.push_back(random_excursions(fixture));
    results.push_back(random_excursions_variant(fixture));
    return results;
  };
  const auto first = run_all();
  const auto second = run_all();
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    REQUIRE(first[i].p_values == second[i].p_values);
    REQUIRE(first[i].applicable == second[i].applicable);
    for (const double p : first[i].p_values) {
      REQUIRE(p >= 0.0);
      REQUIRE(p <= 1.0);
    }
  }
}
