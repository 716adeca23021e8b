#pragma once

namespace psiconc {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, Phi(x) = erfc(-x/sqrt 2)/2.
double normal_cdf(double x);

/// Inverse standard normal CDF (Wichura's AS241, PPND16 coefficients).
/// Returns -inf/+inf at p = 0/1, NaN outside [0, 1].
double normal_quantile(double p);

}  // namespace psiconc
