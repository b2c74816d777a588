#ifndef STABLEFIT_ESTIMATE_UNI_HPP_
#define STABLEFIT_ESTIMATE_UNI_HPP_

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "stablefit/types.hpp"

namespace stablefit {

// Empirical characteristic function (1/n) sum_j e^{i t x_j}.
std::complex<double> ecf(const Sample& sample, double t);

// ECF on the arithmetic grid t = t0, 2 t0, ..., k t0, evaluated with one
// sin/cos pair per observation and an angle-addition recurrence.
std::vector<std::complex<double>> ecf_grid(const Sample& sample, double t0,
                                           std::size_t k);

// Kogon-Williams initial estimates from characteristic-function values on the
// fixed grid t = 0.1, 0.2, ..., 1.0: a log-log regression of the squared
// modulus gives (alpha, sigma), a phase regression on the continuous-form
// imaginary-part model gives (beta, delta). Feeding exact CF values recovers
// the exact parameters.
StableParams kw_from_cf(const std::vector<std::complex<double>>& phi_at_grid);

// Kogon-Williams initial fit of a raw sample (n >= 20). The sample is
// standardized by median and quantile spread before the fixed-grid
// regressions and the estimates are mapped back, so arbitrary scales are
// handled without touching the grid.
StableParams kw_initial(const Sample& sample);

// Optimum regression length K for the second-stage grid t_k = pi k / 25,
// from the fitted lookup-table curves
//   f1(a) = 24.36 a^-1.47          (n = 200)
//   f2(a) = 20.58 a^-1.43          (n = 800)
//   f3(a) = 122.9 a^4 - 648.2 a^3 + 1245 a^2 - 1040 a + 335.2   (n = 1600)
// linearly interpolated in n (extrapolated beyond 1600), rounded, and clamped
// to [9, 134].
std::size_t select_k(double alpha0, std::size_t n);

// Regression data for ln(-ln |phi(t_k)|^2) = mu + alpha ln t_k: points with
// non-finite response are dropped before the fit.
struct RegressionPoints {
  std::vector<double> y;  // ln(-ln |phi|^2)
  std::vector<double> a;  // ln t
  double mu_hat = 0.0;
  double slope_hat = 0.0;
};

RegressionPoints regression_points(const std::vector<double>& mod2,
                                   const std::vector<double>& t_grid);

// (alpha1, sigma1) from squared-modulus values at t_grid; alpha1 is the OLS
// slope clamped to (0, 2], sigma1 = (e^mu / 2)^(1/alpha1).
std::pair<double, double> regress_alpha_sigma_mod2(
    const std::vector<double>& mod2, const std::vector<double>& t_grid);

// Same regression on the ECF of a normalized sample with k grid points.
std::pair<double, double> regress_alpha_sigma(const Sample& normalized,
                                              std::size_t k);

// The two fixed evaluation points of the Press shift estimator.
double press_t1();
double press_t2();

// Press shift estimate from phase values u(t1), u(t2): the alpha != 1 closed
// form weights by |t|^(alpha-1), the alpha == 1 form by ln|t|.
double press_delta_from_u(double u1, double u2, double alpha1);

// Press shift estimate of a normalized sample; the phases are two-argument
// arctangents of the ECF at the fixed points, no unwrapping.
double press_delta(const Sample& normalized, double alpha1);

struct StageEstimates {
  double alpha1 = 0.0;
  double sigma1 = 0.0;
  double delta1 = 0.0;
};

struct UniFitReport {
  StableParams initial;  // Kogon-Williams estimates
  StageEstimates stage;  // normalized-sample regression + Press estimates
  StableParams final;    // recombined estimates, Zero parametrization
  std::size_t k_used = 0;
  std::vector<double> t_grid;
};

// Recombination step: alpha = alpha1, beta carried from the initial fit,
// sigma = sigma0 * sigma1, delta = sigma0 * delta1 + delta0.
UniFitReport combine_steps(const StableParams& initial,
                           const StageEstimates& stage, std::size_t k_used,
                           std::vector<double> t_grid);

// The full hybrid pipeline: initial fit, normalization, K-selected
// regression, Press shift, recombination.
UniFitReport hybrid_fit(const Sample& sample);

}  // namespace stablefit

#endif  // STABLEFIT_ESTIMATE_UNI_HPP_
