#ifndef STABLEFIT_CORE_HPP_
#define STABLEFIT_CORE_HPP_

#include <complex>

#include "stablefit/types.hpp"

namespace stablefit {

// Characteristic function phi(t) of a univariate stable law, evaluated per
// the tagged parametrization. Total on valid params; phi(0) = 1, |phi| <= 1.
std::complex<double> charfn_uni(const StableParams& p, double t);

// The delta -> delta_1 conversion block:
//   delta + beta * sigma * tan(pi alpha / 2)        alpha != 1
//   delta + beta * (2/pi) * sigma * ln(sigma)       alpha == 1
double delta1_of(const StableParams& p);

// Retag between the Zero and One parametrizations via the delta_1 block.
// to_zero(to_one(p)) == p up to rounding.
StableParams to_one(const StableParams& p);
StableParams to_zero(const StableParams& p);

// psi_alpha(u) kernel used by the characteristic-function exponent.
// RealD1 and RealD3 are real-valued (imaginary part zero).
std::complex<double> psi(double u, double alpha, PsiVariant variant);

// Multivariate characteristic function
//   phi(t) = exp(-sum_l psi_alpha(<t, s_l>) gamma_l - i <delta, t>)
// with the Standard psi kernel. Throws on dimension mismatch.
std::complex<double> charfn_mv(const SpectralModel& m, const Eigen::VectorXd& t);

}  // namespace stablefit

#endif  // STABLEFIT_CORE_HPP_
