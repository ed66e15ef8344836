#pragma once

// Thin wrappers over GSL special functions. GSL's abort-on-error handler is
// switched off on first use; failures surface as txnet::Error instead.
namespace txnet::special {

// zeta(s, q) = sum_{k>=0} (k + q)^-s for s > 1, q > 0. Underflow yields 0.
double hurwitz_zeta(double s, double q);

// Standard normal upper tail P(Z > z).
double normal_upper(double z);

// Poisson upper tail P(X > k) for mean lambda; k = -1 gives 1.
double poisson_upper(long long k, double lambda);

}  // namespace txnet::special
