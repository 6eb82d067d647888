#ifndef PROLIME_NORMAL_HPP
#define PROLIME_NORMAL_HPP

namespace prolime {

/// Standard normal cumulative distribution function.
double normal_cdf(double z);

/// Quantile of the standard normal distribution for u in (0, 1).
///
/// Acklam's rational approximation (relative error below 1.15e-9) followed
/// by one Halley step against the erfc-based CDF, which brings the
/// residual |normal_cdf(z) - u| down to a few ulps of u. Exactly
/// antisymmetric: inverse_normal_cdf(1 - u) == -inverse_normal_cdf(u)
/// whenever 1 - u is representable.
double inverse_normal_cdf(double u);

} // namespace prolime

#endif
