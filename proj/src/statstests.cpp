#include "mmohocc/statstests.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "mmohocc/kernels.hpp"
#include "mmohocc/sp80022_tables.hpp"
#include "mmohocc/specfun.hpp"

namespace mmohocc {

namespace {

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

TestResult not_applicable(TestId id, std::string why) {
  TestResult r;
  r.id = id;
  r.applicable = false;
  r.note = std::move(why);
  return r;
}

/// Ones in the bit range [start, start+len). Fast path for byte-aligned
/// starts; fixtures with odd offsets fall back to a bit loop.
std::uint64_t ones_in_range(const BitSequence& s, std::size_t start,
                            std::size_t len) {
  if (start % 8 == 0) return kernels::ones_count(s.data() + start / 8, len);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += s.bit(start + i);
  return total;
}

/// Wraparound m-bit window counts (2^m entries).
std::vector<std::uint64_t> wraparound_counts(const BitSequence& s,
                                             std::uint32_t m) {
  const std::size_t n = s.size();
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  std::uint32_t w = 0;
  for (std::uint32_t i = 0; i + 1 < m; ++i) {
    w = (w << 1) | static_cast<std::uint32_t>(s.bit(i));
  }
  for (std::size_t start = 0; start < n; ++start) {
    const std::size_t incoming = (start + m - 1) % n;
    w = ((w << 1) | static_cast<std::uint32_t>(s.bit(incoming))) & mask;
    counts[w]++;
  }
  return counts;
}

/// counts_{m-1}(q) = counts_m(2q) + counts_m(2q+1); exact for wraparound
/// windows because every start position contributes once at both orders.
std::vector<std::uint64_t> reduce_order(const std::vector<std::uint64_t>& counts) {
  std::vector<std::uint64_t> out(counts.size() / 2);
  for (std::size_t q = 0; q < out.size(); ++q) {
    out[q] = counts[2 * q] + counts[2 * q + 1];
  }
  return out;
}

double psi_from_counts(const std::vector<std::uint64_t>& counts, std::size_t n) {
  std::uint64_t sum_sq = 0;
  for (const std::uint64_t c : counts) sum_sq += c * c;
  return static_cast<double>(counts.size()) / static_cast<double>(n) *
             static_cast<double>(sum_sq) -
         static_cast<double>(n);
}

double phi_from_counts(const std::vector<std::uint64_t>& counts, std::size_t n) {
  double phi = 0.0;
  for (const std::uint64_t c : counts) {
    if (c == 0) continue;
    const double f = static_cast<double>(c) / static_cast<double>(n);
    phi += f * std::log(f);
  }
  return phi;
}

/// m-bit window value at every start position (n-m+1 entries).
std::vector<std::uint16_t> window_values(const BitSequence& s, std::uint32_t m) {
  const std::size_t n = s.size();
  std::vector<std::uint16_t> w(n - m + 1);
  const std::uint32_t mask = static_cast<std::uint32_t>((1u << m) - 1);
  std::uint32_t cur = 0;
  for (std::uint32_t i = 0; i < m; ++i) {
    cur = (cur << 1) | static_cast<std::uint32_t>(s.bit(i));
  }
  w[0] = static_cast<std::uint16_t>(cur);
  for (std::size_t i = 1; i + m <= n; ++i) {
    cur = ((cur << 1) | static_cast<std::uint32_t>(s.bit(i + m - 1))) & mask;
    w[i] = static_cast<std::uint16_t>(cur);
  }
  return w;
}

/// Skip-on-match count of `tmpl` in window value range [first, last].
std::uint64_t nonoverlap_matches(const std::uint16_t* windows, std::size_t first,
                                 std::size_t last, std::uint16_t tmpl,
                                 std::uint32_t m) {
  std::uint64_t hits = 0;
  std::size_t i = first;
  while (i <= last) {
    const std::size_t len = last - i + 1;
    const std::size_t at = kernels::find_equal_u16(windows + i, len, tmpl);
    if (at == len) break;
    ++hits;
    i += at + m;
  }
  return hits;
}

}  // namespace

std::string_view test_name(TestId id) noexcept {
  switch (id) {
    case TestId::ApproximateEntropy: return "Approximate Entropy";
    case TestId::BlockFrequency: return "Block Frequency";
    case TestId::CumulativeSums: return "Cumulative Sums";
    case TestId::Dft: return "Fast Fourier Transform (Spectral)";
    case TestId::Frequency: return "Frequency (Mono-bit)";
    case TestId::LinearComplexity: return "Linear Complexity";
    case TestId::LongestRun: return "Longest Runs of Ones";
    case TestId::Universal: return "Maurer's Universal Statistical";
    case TestId::NonOverlappingTemplate: return "Non-Overlapping Template Matching";
    case TestId::OverlappingTemplate: return "Overlapping Template Matching";
    case TestId::RandomExcursions: return "Random Excursions";
    case TestId::RandomExcursionsVariant: return "Random Excursions Variant";
    case TestId::Rank: return "Rank";
    case TestId::Runs: return "Runs";
    case TestId::Serial: return "Serial";
  }
  return "Unknown";
}

TestResult frequency_monobit(const BitSequence& s) {
  const std::size_t n = s.size();
  if (n < 10) return not_applicable(TestId::Frequency, "n < 10");
  const double ones = static_cast<double>(s.ones());
  const double sum = 2.0 * ones - static_cast<double>(n);
  const double s_obs = std::abs(sum) / std::sqrt(static_cast<double>(n));
  TestResult r;
  r.id = TestId::Frequency;
  r.p_values.push_back(clamp01(erfc(s_obs / std::sqrt(2.0))));
  return r;
}

TestResult block_frequency(const BitSequence& s, std::uint32_t block_length) {
  if (block_length == 0) throw std::invalid_argument("block_length must be > 0");
  const std::size_t n = s.size();
  const std::size_t blocks = n / block_length;
  if (blocks < 1) return not_applicable(TestId::BlockFrequency, "n < block length");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    const double pi = static_cast<double>(ones_in_range(s, i * block_length, block_length)) /
                      block_length;
    chi2 += (pi - 0.5) * (pi - 0.5);
  }
  chi2 *= 4.0 * block_length;
  TestResult r;
  r.id = TestId::BlockFrequency;
  r.p_values.push_back(clamp01(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0)));
  return r;
}

namespace {

TestResult cumulative_sums_impl(const BitSequence& s, bool reverse) {
  const std::size_t n = s.size();
  long long sum = 0;
  long long z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = reverse ? n - 1 - i : i;
    sum += s.bit(idx) ? 1 : -1;
    z = std::max(z, std::llabs(sum));
  }
  // z >= 1 always (the first step leaves zero).
  const double sqn = std::sqrt(static_cast<double>(n));
  const long long nz = static_cast<long long>(n) / z;
  // Summation bounds use truncating integer division, matching the
  // reference implementation (and its published worked example).
  double sum1 = 0.0;
  for (long long k = (-nz + 1) / 4; k <= (nz - 1) / 4; ++k) {
    sum1 += normal_cdf((4.0 * k + 1) * z / sqn) - normal_cdf((4.0 * k - 1) * z / sqn);
  }
  double sum2 = 0.0;
  for (long long k = (-nz - 3) / 4; k <= (nz - 1) / 4; ++k) {
    sum2 += normal_cdf((4.0 * k + 3) * z / sqn) - normal_cdf((4.0 * k + 1) * z / sqn);
  }
  TestResult r;
  r.id = TestId::CumulativeSums;
  r.labels.push_back(reverse ? "reverse" : "forward");
  r.p_values.push_back(clamp01(1.0 - sum1 + sum2));
  return r;
}

}  // namespace

TestResult cumulative_sums_forward(const BitSequence& s) {
  return cumulative_sums_impl(s, false);
}

TestResult cumulative_sums_reverse(const BitSequence& s) {
  return cumulative_sums_impl(s, true);
}

TestResult runs_test(const BitSequence& s) {
  const std::size_t n = s.size();
  if (n < 2) return not_applicable(TestId::Runs, "n < 2");
  const double pi = static_cast<double>(s.ones()) / static_cast<double>(n);
  const double tau = 2.0 / std::sqrt(static_cast<double>(n));
  if (std::abs(pi - 0.5) >= tau) {
    TestResult r = not_applicable(TestId::Runs, "frequency prerequisite failed");
    r.p_values.push_back(0.0);
    return r;
  }
  const double v_obs =
      static_cast<double>(kernels::transition_count(s.data(), n)) + 1.0;
  const double product = pi * (1.0 - pi);
  const double arg = std::abs(v_obs - 2.0 * static_cast<double>(n) * product) /
                     (2.0 * std::sqrt(2.0 * static_cast<double>(n)) * product);
  TestResult r;
  r.id = TestId::Runs;
  r.p_values.push_back(clamp01(erfc(arg)));
  return r;
}

TestResult longest_run_of_ones(const BitSequence& s) {
  const std::size_t n = s.size();
  if (n < 128) return not_applicable(TestId::LongestRun, "n < 128");

  std::uint32_t block_length;
  std::uint32_t classes;  // K
  std::uint32_t lo, hi;   // run-length class bounds
  const double* pi;
  if (n < 6272) {
    block_length = 8;
    classes = 3;
    lo = 1;
    hi = 4;
    pi = sp80022::kLongestRunPiM8;
  } else if (n < 750000) {
    block_length = 128;
    classes = 5;
    lo = 4;
    hi = 9;
    pi = sp80022::kLongestRunPiM128;
  } else {
    block_length = 10000;
    classes = 6;
    lo = 10;
    hi = 16;
    pi = sp80022::kLongestRunPiM10000;
  }

  const std::size_t blocks = n / block_length;
  std::vector<std::uint64_t> nu(classes + 1, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint32_t run = 0;
    std::uint32_t longest = 0;
    for (std::size_t i = b * block_length; i < (b + 1) * block_length; ++i) {
      if (s.bit(i)) {
        ++run;
        longest = std::max(longest, run);
      } else {
        run = 0;
      }
    }
    const std::uint32_t clamped = std::clamp(longest, lo, hi);
    nu[clamped - lo]++;
  }
  double chi2 = 0.0;
  for (std::uint32_t k = 0; k <= classes; ++k) {
    const double expected = static_cast<double>(blocks) * pi[k];
    const double diff = static_cast<double>(nu[k]) - expected;
    chi2 += diff * diff / expected;
  }
  TestResult r;
  r.id = TestId::LongestRun;
  r.p_values.push_back(clamp01(igamc(classes / 2.0, chi2 / 2.0)));
  return r;
}

namespace {

/// P(rank == r) for a random 32x32 matrix over GF(2).
double rank_class_probability(int r) {
  constexpr int dim = 32;
  double exponent = static_cast<double>(r) * (2 * dim - r) - dim * dim;
  double prod = 1.0;
  for (int i = 0; i < r; ++i) {
    const double num = (1.0 - std::ldexp(1.0, i - dim));
    prod *= num * num / (1.0 - std::ldexp(1.0, i - r));
  }
  return std::ldexp(prod, static_cast<int>(exponent));
}

}  // namespace

TestResult binary_matrix_rank(const BitSequence& s) {
  const std::size_t n = s.size();
  const std::size_t matrices = n / 1024;
  if (matrices < 38) {
    return not_applicable(TestId::Rank, "fewer than 38 32x32 matrices");
  }
  std::uint64_t full = 0, minus_one = 0;
  std::vector<std::uint64_t> rows(32);
  for (std::size_t k = 0; k < matrices; ++k) {
    const std::uint8_t* base = s.data() + k * 128;
    for (int r = 0; r < 32; ++r) {
      const std::uint8_t* p = base + 4 * r;
      rows[r] = (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
                (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
    }
    const int rank = gf2_rank(rows, 32);
    if (rank == 32) ++full;
    else if (rank == 31) ++minus_one;
  }
  const double p32 = rank_class_probability(32);
  const double p31 = rank_class_probability(31);
  const double p30 = 1.0 - p32 - p31;
  const double m = static_cast<double>(matrices);
  const double rest = m - static_cast<double>(full) - static_cast<double>(minus_one);
  const double chi2 = std::pow(static_cast<double>(full) - m * p32, 2) / (m * p32) +
                      std::pow(static_cast<double>(minus_one) - m * p31, 2) / (m * p31) +
                      std::pow(rest - m * p30, 2) / (m * p30);
  TestResult r;
  r.id = TestId::Rank;
  r.p_values.push_back(clamp01(std::exp(-chi2 / 2.0)));
  return r;
}

TestResult dft_spectral(const BitSequence& s, const SpectralDft* plan) {
  const std::size_t n = s.size();
  if (n < 16 || n % 2 != 0) {
    return not_applicable(TestId::Dft, "length must be even and >= 16");
  }
  std::unique_ptr<SpectralDft> local;
  if (plan == nullptr || plan->length() != n) {
    local = std::make_unique<SpectralDft>(n);
    plan = local.get();
  }
  std::vector<double> x(n);
  kernels::bits_to_pm1(s.data(), n, x.data());
  std::vector<double> mags(n / 2);
  plan->magnitudes(x, mags);

  const double threshold = std::sqrt(static_cast<double>(n) * std::log(1.0 / 0.05));
  std::uint64_t below = 0;
  for (const double m : mags) below += m < threshold;
  const double expected = 0.95 * static_cast<double>(n) / 2.0;
  const double d = (static_cast<double>(below) - expected) /
                   std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
  TestResult r;
  r.id = TestId::Dft;
  r.p_values.push_back(clamp01(erfc(std::abs(d) / std::sqrt(2.0))));
  return r;
}

namespace {

TestResult nonoverlapping_impl(const BitSequence& s,
                               const std::vector<std::uint32_t>& templates,
                               std::uint32_t m) {
  const std::size_t n = s.size();
  constexpr std::size_t kBlocks = 8;  // N
  const std::size_t block_length = n / kBlocks;
  if (block_length <= m) {
    return not_applicable(TestId::NonOverlappingTemplate, "blocks shorter than template");
  }
  const double mu =
      static_cast<double>(block_length - m + 1) / std::ldexp(1.0, static_cast<int>(m));
  const double sigma2 =
      static_cast<double>(block_length) *
      (1.0 / std::ldexp(1.0, static_cast<int>(m)) -
       (2.0 * m - 1.0) / std::ldexp(1.0, static_cast<int>(2 * m)));

  const std::vector<std::uint16_t> windows = window_values(s, m);
  TestResult r;
  r.id = TestId::NonOverlappingTemplate;
  for (const std::uint32_t tmpl : templates) {
    double chi2 = 0.0;
    for (std::size_t b = 0; b < kBlocks; ++b) {
      const std::size_t first = b * block_length;
      const std::size_t last = first + block_length - m;  // last window start
      const std::uint64_t w = nonoverlap_matches(
          windows.data(), first, last, static_cast<std::uint16_t>(tmpl), m);
      const double diff = static_cast<double>(w) - mu;
      chi2 += diff * diff / sigma2;
    }
    r.p_values.push_back(clamp01(igamc(kBlocks / 2.0, chi2 / 2.0)));
    std::string label(m, '0');
    for (std::uint32_t bit = 0; bit < m; ++bit) {
      if ((tmpl >> (m - 1 - bit)) & 1u) label[bit] = '1';
    }
    r.labels.push_back(std::move(label));
  }
  return r;
}

}  // namespace

TestResult nonoverlapping_template(const BitSequence& s, std::uint32_t tmpl,
                                   std::uint32_t template_length) {
  if (template_length < 2 || template_length > 16) {
    throw std::invalid_argument("template length must be in 2..16");
  }
  if (tmpl >> template_length) {
    throw std::invalid_argument("template value wider than template length");
  }
  return nonoverlapping_impl(s, {tmpl}, template_length);
}

TestResult nonoverlapping_template_battery(const BitSequence& s,
                                           std::uint32_t template_length) {
  if (template_length < 2 || template_length > 16) {
    throw std::invalid_argument("template length must be in 2..16");
  }
  return nonoverlapping_impl(s, aperiodic_templates(template_length), template_length);
}

TestResult overlapping_template(const BitSequence& s, std::uint32_t template_length) {
  const std::size_t n = s.size();
  const std::size_t block_length = sp80022::kOverlappingBlockLength;
  const std::size_t blocks = n / block_length;
  if (blocks < 1) return not_applicable(TestId::OverlappingTemplate, "n < 1032");
  constexpr std::uint32_t kClasses = sp80022::kOverlappingClasses;

  std::array<std::uint64_t, kClasses + 1> nu{};
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint64_t count = 0;
    std::uint32_t run = 0;
    for (std::size_t i = b * block_length; i < (b + 1) * block_length; ++i) {
      run = s.bit(i) ? run + 1 : 0;
      count += run >= template_length;
    }
    nu[std::min<std::uint64_t>(count, kClasses)]++;
  }
  double chi2 = 0.0;
  for (std::uint32_t k = 0; k <= kClasses; ++k) {
    const double expected = static_cast<double>(blocks) * sp80022::kOverlappingPi[k];
    const double diff = static_cast<double>(nu[k]) - expected;
    chi2 += diff * diff / expected;
  }
  TestResult r;
  r.id = TestId::OverlappingTemplate;
  r.p_values.push_back(clamp01(igamc(kClasses / 2.0, chi2 / 2.0)));
  return r;
}

TestResult maurer_universal(const BitSequence& s) {
  const std::size_t n = s.size();
  if (n < sp80022::kUniversalLengthLadder[0]) {
    return not_applicable(TestId::Universal, "n < 387840");
  }
  std::size_t row = 0;
  while (row + 1 < std::size(sp80022::kUniversalLengthLadder) &&
         n >= sp80022::kUniversalLengthLadder[row + 1]) {
    ++row;
  }
  const std::uint32_t L = sp80022::kUniversalTable[row].block_bits;
  const std::uint64_t q_blocks = 10ull << L;  // initialization blocks
  const std::uint64_t total_blocks = n / L;
  const std::uint64_t k_blocks = total_blocks - q_blocks;

  std::vector<std::uint64_t> last_seen(std::size_t{1} << L, 0);
  const auto block_value = [&s, L](std::uint64_t i) {  // i is 1-based
    std::uint32_t v = 0;
    const std::size_t base = (i - 1) * L;
    for (std::uint32_t j = 0; j < L; ++j) {
      v = (v << 1) | static_cast<std::uint32_t>(s.bit(base + j));
    }
    return v;
  };
  for (std::uint64_t i = 1; i <= q_blocks; ++i) last_seen[block_value(i)] = i;
  double sum = 0.0;
  for (std::uint64_t i = q_blocks + 1; i <= q_blocks + k_blocks; ++i) {
    const std::uint32_t v = block_value(i);
    sum += std::log2(static_cast<double>(i - last_seen[v]));
    last_seen[v] = i;
  }
  const double fn = sum / static_cast<double>(k_blocks);
  const double c = 0.7 - 0.8 / L +
                   (4.0 + 32.0 / L) *
                       std::pow(static_cast<double>(k_blocks), -3.0 / L) / 15.0;
  const double sigma =
      c * std::sqrt(sp80022::kUniversalTable[row].variance / static_cast<double>(k_blocks));
  const double arg =
      std::abs(fn - sp80022::kUniversalTable[row].expected) / (std::sqrt(2.0) * sigma);
  TestResult r;
  r.id = TestId::Universal;
  r.p_values.push_back(clamp01(erfc(arg)));
  return r;
}

TestResult linear_complexity(const BitSequence& s, std::uint32_t block_length) {
  if (block_length < 4) throw std::invalid_argument("block_length too small");
  const std::size_t n = s.size();
  const std::size_t blocks = n / block_length;
  if (blocks < 1) return not_applicable(TestId::LinearComplexity, "n < block length");

  const double m = static_cast<double>(block_length);
  const double sign_m1 = (block_length % 2 == 0) ? -1.0 : 1.0;  // (-1)^(M+1)
  const double mu = m / 2.0 + (9.0 + sign_m1) / 36.0 -
                    (m / 3.0 + 2.0 / 9.0) / std::pow(2.0, m);
  const double sign = (block_length % 2 == 0) ? 1.0 : -1.0;  // (-1)^M

  std::array<std::uint64_t, 7> nu{};
  std::vector<std::uint8_t> block(block_length);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < block_length; ++i) {
      block[i] = s.bit(b * block_length + i) ? 1 : 0;
    }
    const double L = static_cast<double>(berlekamp_massey(block));
    const double t = sign * (L - mu) + 2.0 / 9.0;
    int cls;
    if (t <= -2.5) cls = 0;
    else if (t <= -1.5) cls = 1;
    else if (t <= -0.5) cls = 2;
    else if (t <= 0.5) cls = 3;
    else if (t <= 1.5) cls = 4;
    else if (t <= 2.5) cls = 5;
    else cls = 6;
    nu[cls]++;
  }
  double chi2 = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double expected = static_cast<double>(blocks) * sp80022::kLinearComplexityPi[k];
    const double diff = static_cast<double>(nu[k]) - expected;
    chi2 += diff * diff / expected;
  }
  TestResult r;
  r.id = TestId::LinearComplexity;
  r.p_values.push_back(clamp01(igamc(3.0, chi2 / 2.0)));
  return r;
}

TestResult serial(const BitSequence& s, std::uint32_t pattern_length) {
  const std::size_t n = s.size();
  if (pattern_length < 3) return not_applicable(TestId::Serial, "m < 3");
  if (pattern_length > 16) throw std::invalid_argument("pattern length must be <= 16");
  if (static_cast<double>(pattern_length) >= std::log2(static_cast<double>(n)) - 2.0) {
    return not_applicable(TestId::Serial, "m >= log2(n) - 2");
  }
  const auto counts_m = wraparound_counts(s, pattern_length);
  const auto counts_m1 = reduce_order(counts_m);
  const auto counts_m2 = reduce_order(counts_m1);
  const double psi_m = psi_from_counts(counts_m, n);
  const double psi_m1 = psi_from_counts(counts_m1, n);
  const double psi_m2 = psi_from_counts(counts_m2, n);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  TestResult r;
  r.id = TestId::Serial;
  r.p_values.push_back(clamp01(igamc(std::ldexp(1.0, pattern_length - 2),
                                     std::max(del1, 0.0) / 2.0)));
  r.labels.emplace_back("del1");
  r.p_values.push_back(clamp01(igamc(std::ldexp(1.0, pattern_length - 3),
                                     std::max(del2, 0.0) / 2.0)));
  r.labels.emplace_back("del2");
  return r;
}

TestResult approximate_entropy(const BitSequence& s, std::uint32_t pattern_length) {
  const std::size_t n = s.size();
  if (pattern_length < 1) return not_applicable(TestId::ApproximateEntropy, "m < 1");
  if (pattern_length > 15) throw std::invalid_argument("pattern length must be <= 15");
  if (static_cast<double>(pattern_length + 1) >= std::log2(static_cast<double>(n))) {
    return not_applicable(TestId::ApproximateEntropy, "m+1 >= log2(n)");
  }
  const auto counts_m1 = wraparound_counts(s, pattern_length + 1);
  const auto counts_m = reduce_order(counts_m1);
  const double apen = phi_from_counts(counts_m, n) - phi_from_counts(counts_m1, n);
  const double chi2 = 2.0 * static_cast<double>(n) * (std::numbers::ln2 - apen);
  TestResult r;
  r.id = TestId::ApproximateEntropy;
  r.p_values.push_back(clamp01(igamc(std::ldexp(1.0, pattern_length - 1),
                                     std::max(chi2, 0.0) / 2.0)));
  return r;
}

TestResult random_excursions(const BitSequence& s) {
  const std::size_t n = s.size();
  // Visit classes per state and cycle: 0..4 and >=5.
  std::array<std::array<std::uint64_t, 6>, 8> classes{};
  std::array<std::uint64_t, 8> visits{};
  const auto flush = [&]() {
    for (int i = 0; i < 8; ++i) {
      classes[i][std::min<std::uint64_t>(visits[i], 5)]++;
      visits[i] = 0;
    }
  };
  long long state = 0;
  std::uint64_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i) {
    state += s.bit(i) ? 1 : -1;
    if (state == 0) {
      ++zeros;
      flush();
    } else if (state >= -4 && state <= 4) {
      visits[state < 0 ? state + 4 : state + 3]++;
    }
  }
  std::uint64_t cycles = zeros;
  if (state != 0) {
    ++cycles;
    flush();
  }
  if (cycles < sp80022::kExcursionMinCycles) {
    return not_applicable(TestId::RandomExcursions, "fewer than 500 cycles");
  }
  TestResult r;
  r.id = TestId::RandomExcursions;
  static constexpr int kStates[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
  for (int idx = 0; idx < 8; ++idx) {
    const int x = kStates[idx];
    const double* pi = sp80022::kExcursionPi[std::abs(x) - 1];
    double chi2 = 0.0;
    for (int k = 0; k <= 5; ++k) {
      const double expected = static_cast<double>(cycles) * pi[k];
      const double diff = static_cast<double>(classes[idx][k]) - expected;
      chi2 += diff * diff / expected;
    }
    r.p_values.push_back(clamp01(igamc(2.5, chi2 / 2.0)));
    r.labels.push_back("x=" + std::to_string(x));
  }
  return r;
}

TestResult random_excursions_variant(const BitSequence& s) {
  const std::size_t n = s.size();
  std::array<std::uint64_t, 18> xi{};  // states -9..-1, 1..9
  long long state = 0;
  std::uint64_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i) {
    state += s.bit(i) ? 1 : -1;
    if (state == 0) {
      ++zeros;
    } else if (state >= -9 && state <= 9) {
      xi[state < 0 ? state + 9 : state + 8]++;
    }
  }
  const std::uint64_t cycles = zeros + (state != 0 ? 1 : 0);
  if (cycles < sp80022::kExcursionMinCycles) {
    return not_applicable(TestId::RandomExcursionsVariant, "fewer than 500 cycles");
  }
  TestResult r;
  r.id = TestId::RandomExcursionsVariant;
  for (int idx = 0; idx < 18; ++idx) {
    const int x = idx < 9 ? idx - 9 : idx - 8;
    const double j = static_cast<double>(cycles);
    const double arg = std::abs(static_cast<double>(xi[idx]) - j) /
                       std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0));
    r.p_values.push_back(clamp01(erfc(arg)));
    r.labels.push_back("x=" + std::to_string(x));
  }
  return r;
}

int gf2_rank(std::vector<std::uint64_t> rows, std::uint32_t ncols) {
  const std::size_t nrows = rows.size();
  std::size_t rank = 0;
  for (std::uint32_t col = 0; col < ncols && rank < nrows; ++col) {
    const std::uint64_t mask = std::uint64_t{1} << (ncols - 1 - col);
    std::size_t pivot = rank;
    while (pivot < nrows && (rows[pivot] & mask) == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = pivot + 1; r < nrows; ++r) {
      if (rows[r] & mask) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

namespace {

/// c ^= b << shift over multiword polynomials.
void xor_shifted(std::uint64_t* c, const std::uint64_t* b, std::size_t words,
                 std::size_t shift) {
  const std::size_t word_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  if (bit_shift == 0) {
    for (std::size_t i = words; i-- > word_shift;) c[i] ^= b[i - word_shift];
    return;
  }
  for (std::size_t i = words; i-- > word_shift;) {
    std::uint64_t v = b[i - word_shift] << bit_shift;
    if (i > word_shift) v |= b[i - word_shift - 1] >> (64 - bit_shift);
    c[i] ^= v;
  }
}

}  // namespace

std::size_t berlekamp_massey(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n == 0) return 0;
  const std::size_t words = n / 64 + 2;
  std::vector<std::uint64_t> c(words, 0), b(words, 0), window(words, 0), tmp(words);
  c[0] = 1;  // c_0 = 1
  b[0] = 1;
  std::size_t complexity = 0;
  std::size_t last_update = 0;  // index m of the last length change, offset by 1
  bool have_update = false;
  for (std::size_t t = 0; t < n; ++t) {
    // window bit j = bits[t - j]; shifting in the new bit keeps that order.
    for (std::size_t i = words; i-- > 1;) {
      window[i] = (window[i] << 1) | (window[i - 1] >> 63);
    }
    window[0] = (window[0] << 1) | bits[t];
    // discrepancy d = sum_j c_j * s_{t-j} (c_0 term included)
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words; ++i) acc ^= c[i] & window[i];
    const bool d = (std::popcount(acc) & 1) != 0;
    if (!d) continue;
    if (2 * complexity <= t) {
      tmp = c;
      xor_shifted(c.data(), b.data(), words, have_update ? t - last_update : t + 1);
      b = tmp;
      complexity = t + 1 - complexity;
      last_update = t;
      have_update = true;
    } else {
      xor_shifted(c.data(), b.data(), words, t - last_update);
    }
  }
  return complexity;
}

std::vector<std::uint32_t> aperiodic_templates(std::uint32_t length) {
  if (length < 2 || length > 16) {
    throw std::invalid_argument("template length must be in 2..16");
  }
  std::vector<std::uint32_t> out;
  const std::uint32_t count = 1u << length;
  for (std::uint32_t b = 0; b < count; ++b) {
    bool bordered = false;
    for (std::uint32_t border = 1; border < length && !bordered; ++border) {
      const std::uint32_t prefix = b >> (length - border);
      const std::uint32_t suffix = b & ((1u << border) - 1);
      bordered = prefix == suffix;
    }
    if (!bordered) out.push_back(b);
  }
  return out;
}

double psi_squared(const BitSequence& s, std::uint32_t m) {
  if (m == 0 || m > 16) throw std::invalid_argument("m must be in 1..16");
  return psi_from_counts(wraparound_counts(s, m), s.size());
}

std::uint64_t excursion_cycles(const BitSequence& s) {
  long long state = 0;
  std::uint64_t zeros = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    state += s.bit(i) ? 1 : -1;
    zeros += state == 0;
  }
  return zeros + (state != 0 ? 1 : 0);
}

}  // namespace mmohocc
