#ifndef STABLEFIT_NUMERICS_HPP_
#define STABLEFIT_NUMERICS_HPP_

#include <functional>
#include <span>

#include "stablefit/types.hpp"

namespace stablefit {

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept. Throws
// Error(collinear_input) when x is (numerically) constant.
OlsFit ols(std::span<const double> x, std::span<const double> y);

struct LinearSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

// Lawson-Hanson active-set solution of min ||b - A x||_2 subject to x >= 0.
// Deterministic given the input. Throws Error(non_convergence) if the outer
// loop exceeds 3 * cols iterations.
Eigen::VectorXd nnls(const LinearSystem& sys, double tol = 1e-10);

// CDF of the stable law by Gil-Pelaez inversion of charfn_uni, adaptive
// Gauss-Kronrod quadrature, absolute error target 1e-6. Result clamped to
// [0, 1]. Throws Error(accuracy_not_met) carrying the achieved tolerance when
// the quadrature cannot reach the target.
double stable_cdf(const StableParams& p, double x);

// Two-sided Kolmogorov-Smirnov statistic of a sample against a model CDF:
// D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
double ks_statistic(Sample sample, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov p-value 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 n d^2),
// truncated when terms drop below 1e-12, clamped to [0, 1].
double ks_pvalue(double d, std::size_t n);

}  // namespace stablefit

#endif  // STABLEFIT_NUMERICS_HPP_
