// Reference constants transcribed from NIST SP800-22 rev1a (April 2010),
// "A Statistical Test Suite for Random and Pseudorandom Number Generators
// for Cryptographic Applications". Section numbers cite that document so
// each value can be checked against the standard.
#pragma once

#include <cstdint>

namespace mmohocc::sp80022 {

// ---- Longest run of ones (SP800-22 sections 2.4.2, 2.4.4, 3.4) ----
// Block length M and class probabilities are chosen by sequence length:
//   n < 6272      -> M = 8,     classes {<=1, 2, 3, >=4}
//   n < 750000    -> M = 128,   classes {<=4, 5, 6, 7, 8, >=9}
//   otherwise     -> M = 10000, classes {<=10, 11, 12, 13, 14, 15, >=16}
inline constexpr double kLongestRunPiM8[4] = {0.21484375, 0.3671875,
                                              0.23046875, 0.1875};
inline constexpr double kLongestRunPiM128[6] = {0.1174035788, 0.242955959,
                                                0.249363483,  0.17517706,
                                                0.102701071,  0.112398847};
inline constexpr double kLongestRunPiM10000[7] = {0.0882, 0.2092, 0.2483,
                                                  0.1933, 0.1208, 0.0675,
                                                  0.0727};

// ---- Overlapping template matching (section 2.8.4; theory 3.8) ----
// Occupancy probabilities for m = 9, M = 1032, K = 5.
inline constexpr double kOverlappingPi[6] = {0.364091,  0.185659, 0.139381,
                                             0.100571,  0.0704323, 0.139865};
inline constexpr std::uint32_t kOverlappingBlockLength = 1032;
inline constexpr std::uint32_t kOverlappingClasses = 5;  // K

// ---- Maurer's universal statistical test (section 2.9.4) ----
// expectedValue(L) and variance(L) of the per-block statistic, L = 6..16.
struct UniversalRow {
  std::uint32_t block_bits;  // L
  double expected;
  double variance;
};
inline constexpr UniversalRow kUniversalTable[11] = {
    {6, 5.2177052, 2.954},   {7, 6.1962507, 3.125},  {8, 7.1836656, 3.238},
    {9, 8.1764248, 3.311},   {10, 9.1723243, 3.356}, {11, 10.170032, 3.384},
    {12, 11.168765, 3.401},  {13, 12.168070, 3.410}, {14, 13.167693, 3.416},
    {15, 14.167488, 3.419},  {16, 15.167379, 3.421},
};

// L selection ladder from the reference implementation (section 2.9.4):
// smallest table row such that n >= ladder threshold.
inline constexpr std::uint64_t kUniversalLengthLadder[11] = {
    387840,    904960,    2068480,   4654080,   10342400,  22753280,
    49643520,  107560960, 231669760, 496435200, 1059061760,
};

// ---- Linear complexity (sections 2.10.4, 3.10) ----
// Class probabilities of the T statistic, classes
// {T<=-2.5, (-2.5,-1.5], (-1.5,-0.5], (-0.5,0.5], (0.5,1.5], (1.5,2.5], >2.5}.
inline constexpr double kLinearComplexityPi[7] = {
    0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};

// ---- Random excursions (section 3.14) ----
// pi_k(x): probability that state x is visited exactly k times in one
// zero-to-zero cycle (k = 5 means ">= 5"), for |x| = 1..4. Closed form:
//   pi_0(x) = 1 - 1/(2|x|)
//   pi_k(x) = (1/(4x^2)) (1 - 1/(2|x|))^(k-1),  k = 1..4
//   pi_5(x) = (1/(2|x|)) (1 - 1/(2|x|))^4
inline constexpr double kExcursionPi[4][6] = {
    {0.5000000000, 0.2500000000, 0.1250000000, 0.0625000000, 0.0312500000,
     0.0312500000},
    {0.7500000000, 0.0625000000, 0.0468750000, 0.0351562500, 0.0263671875,
     0.0791015625},
    {0.8333333333, 0.0277777778, 0.0231481481, 0.0192901235, 0.0160751029,
     0.0803755143},
    {0.8750000000, 0.0156250000, 0.0136718750, 0.0119628906, 0.0104675293,
     0.0732727051},
};

// Minimum cycle count below which the excursion tests are not applicable
// (section 2.14.4 note: J >= 500).
inline constexpr std::uint64_t kExcursionMinCycles = 500;

}  // namespace mmohocc::sp80022
