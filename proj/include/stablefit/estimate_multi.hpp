#ifndef STABLEFIT_ESTIMATE_MULTI_HPP_
#define STABLEFIT_ESTIMATE_MULTI_HPP_

#include <complex>
#include <vector>

#include "stablefit/estimate_uni.hpp"
#include "stablefit/types.hpp"

namespace stablefit {

// Point masses s_l and evaluation frequencies t_l for d = 1, 2, 3:
//   d=1: s_l = (-1)^l, t_l = (-1)^{l+1}, L = 2
//   d=2: s_l = t_l = (cos 2pi(l-1)/L, sin 2pi(l-1)/L)
//   d=3: s_l = t_l = (sin(pi/l) cos(2pi(l-1)/L), sin(pi/l) sin(2pi(l-1)/L), cos(pi/l))
struct GridSpec {
  int d = 0;
  Eigen::Index L = 0;
  Eigen::MatrixXd points;  // L x d rows s_l
  Eigen::MatrixXd freqs;   // L x d rows t_l
};

GridSpec make_grid(int d, Eigen::Index L);

enum class SpectralMethod { D1Real, D2EvenNNLS, D2OddAbsRe, D3Real };

const char* method_name(SpectralMethod m);

struct SpectralFit {
  double alpha_hat = 0.0;
  Eigen::VectorXd delta_hat;
  Eigen::VectorXd gamma_hat;  // componentwise >= 0
  GridSpec grid;
  SpectralMethod method = SpectralMethod::D1Real;
};

struct MarginalJointFit {
  double alpha_hat = 0.0;
  Eigen::VectorXd delta_hat;
  std::vector<UniFitReport> marginals;
};

// Hybrid fit per coordinate; the joint index is the mean of the marginal
// alphas and the shift vector collects the marginal shifts.
MarginalJointFit marginal_joint_fit(const MultiSample& data);

// I_hat(t_l) = -Log phi_hat_n(t_l), principal branch. Throws
// Error(ecf_vanishes) when the ECF is zero to machine precision.
std::vector<std::complex<double>> empirical_I(const MultiSample& data,
                                              const Eigen::MatrixXd& freqs);

// L x L matrix with (k,l) entry psi_alpha(<t_k, s_l>).
Eigen::MatrixXcd psi_matrix(double alpha, const GridSpec& grid,
                            PsiVariant variant);

// Discretized spectral-measure estimate from exponent values I_hat on the
// grid frequencies. Per dimension:
//   d=1: 2x2 real solve with the two-point psi and Re I + Im I, negatives
//        clamped to zero
//   d=2, even L: NNLS on the real system assembled from Hermitian pairs
//   d=2, odd L:  |Re(psi^-1 I_hat)|
//   d=3: real solve with |u|^alpha and Re I_hat, negatives clamped
// Throws Error(singular_system) when the system's condition number
// exceeds 1e12.
SpectralFit estimate_gamma_from_I(const std::vector<std::complex<double>>& i_hat,
                                  double alpha, const GridSpec& grid);

SpectralFit estimate_gamma(const MultiSample& data, double alpha,
                           const GridSpec& grid);

// Full pipeline: marginal joint fit, rowwise shift removal, grid
// construction, weight estimation. d = 1 supports only L = 2.
SpectralFit fit_spectral(const MultiSample& data, Eigen::Index L);

}  // namespace stablefit

#endif  // STABLEFIT_ESTIMATE_MULTI_HPP_
