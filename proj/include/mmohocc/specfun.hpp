// Special functions that map test statistics to p-values.
#pragma once

namespace mmohocc {

/// Complementary error function. Series below |x| = 1, Lentz continued
/// fraction above; relative error <= 1e-12 for |x| <= 10, graceful underflow
/// toward 0 for large x.
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x) / Gamma(a).
/// Power series for x < a+1, continued fraction otherwise; relative error
/// <= 1e-10. Throws std::domain_error for a <= 0 or x < 0.
double igamc(double a, double x);

/// Standard normal CDF, Phi(z) = erfc(-z / sqrt(2)) / 2.
double normal_cdf(double z);

}  // namespace mmohocc
