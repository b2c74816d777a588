#ifndef STABLEFIT_SIMULATE_HPP_
#define STABLEFIT_SIMULATE_HPP_

#include <cstddef>

#include "stablefit/rng.hpp"
#include "stablefit/types.hpp"

namespace stablefit {

// One draw from the standard stable law S(alpha, beta, 1, 0) in the One
// parametrization, by the Chambers-Mallows-Stuck transformation of a
// Uniform(-pi/2, pi/2) angle and an Exp(1) variate.
double cms_standard(double alpha, double beta, Rng& rng);

// n iid draws from the stable law described by p, in its tagged
// parametrization. Deterministic under seed.
Sample sample_uni(const StableParams& p, std::size_t n, RngSeed seed);

// n iid draws of the strictly stable random vector with discrete spectral
// measure (Modarres-Nolan): each row is
//   shift + sum_l gamma_l^{1/alpha} Z_l s_l
// with Z_l iid totally skewed (beta = 1) standard alpha-stable variates.
// alpha == 1 is unsupported.
MultiSample sample_mv(const SpectralModel& m, std::size_t n, RngSeed seed);

}  // namespace stablefit

#endif  // STABLEFIT_SIMULATE_HPP_
