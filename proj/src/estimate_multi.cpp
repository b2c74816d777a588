#include "stablefit/estimate_multi.hpp"

#include <cmath>
#include <numbers>

#include "stablefit/core.hpp"
#include "stablefit/numerics.hpp"

namespace stablefit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCondLimit = 1e12;

void check_condition(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > kCondLimit)
    throw Error(Errc::singular_system, "psi system is numerically singular");
}

void check_condition(const Eigen::MatrixXcd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > kCondLimit)
    throw Error(Errc::singular_system, "psi system is numerically singular");
}

}  // namespace

const char* method_name(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::D1Real: return "d1-real";
    case SpectralMethod::D2EvenNNLS: return "d2-even-nnls";
    case SpectralMethod::D2OddAbsRe: return "d2-odd-abs-re";
    case SpectralMethod::D3Real: return "d3-real";
  }
  return "unknown";
}

GridSpec make_grid(int d, Eigen::Index L) {
  GridSpec grid;
  grid.d = d;
  grid.L = L;
  if (d == 1) {
    if (L != 2)
      throw Error(Errc::invalid_argument, "d=1 supports only L=2");
    grid.points.resize(2, 1);
    grid.points << -1.0, 1.0;  // s_l = (-1)^l
    grid.freqs.resize(2, 1);
    grid.freqs << 1.0, -1.0;   // t_l = (-1)^{l+1}
    return grid;
  }
  if (L < 2) throw Error(Errc::invalid_argument, "need L >= 2 grid points");
  if (d == 2) {
    grid.points.resize(L, 2);
    for (Eigen::Index l = 0; l < L; ++l) {
      const double ang = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(L);
      grid.points(l, 0) = std::cos(ang);
      grid.points(l, 1) = std::sin(ang);
    }
    // keep antipodal pairs exactly opposite so Hermitian pairing of the
    // exponent holds to machine precision
    if (L % 2 == 0)
      for (Eigen::Index l = 0; l < L / 2; ++l)
        grid.points.row(l + L / 2) = -grid.points.row(l);
    grid.freqs = grid.points;
    return grid;
  }
  if (d == 3) {
    grid.points.resize(L, 3);
    for (Eigen::Index l = 0; l < L; ++l) {
      const double polar = kPi / static_cast<double>(l + 1);
      const double ang = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(L);
      grid.points(l, 0) = std::sin(polar) * std::cos(ang);
      grid.points(l, 1) = std::sin(polar) * std::sin(ang);
      grid.points(l, 2) = std::cos(polar);
    }
    grid.freqs = grid.points;
    return grid;
  }
  throw Error(Errc::invalid_argument, "spectral grids exist for d in {1,2,3}");
}

MarginalJointFit marginal_joint_fit(const MultiSample& data) {
  const Eigen::Index d = data.dim();
  if (d < 1) throw Error(Errc::invalid_argument, "data has no columns");
  MarginalJointFit out;
  out.delta_hat.resize(d);
  double alpha_sum = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    Sample column(data.data.rows());
    Eigen::VectorXd::Map(column.data(), data.data.rows()) = data.data.col(j);
    out.marginals.push_back(hybrid_fit(column));
    alpha_sum += out.marginals.back().final.alpha;
    out.delta_hat[j] = out.marginals.back().final.delta;
  }
  out.alpha_hat = alpha_sum / static_cast<double>(d);
  return out;
}

std::vector<std::complex<double>> empirical_I(const MultiSample& data,
                                              const Eigen::MatrixXd& freqs) {
  if (data.n() < 1) throw Error(Errc::empty_input, "empirical_I: no observations");
  if (freqs.cols() != data.dim())
    throw Error(Errc::dimension_mismatch, "empirical_I: frequency dimension mismatch");
  const double n = static_cast<double>(data.n());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(freqs.rows()));
  for (Eigen::Index l = 0; l < freqs.rows(); ++l) {
    const Eigen::VectorXd angles = data.data * freqs.row(l).transpose();
    double re = 0.0, im = 0.0;
    for (Eigen::Index i = 0; i < angles.size(); ++i) {
      re += std::cos(angles[i]);
      im += std::sin(angles[i]);
    }
    const std::complex<double> phi{re / n, im / n};
    if (std::abs(phi) < 1e-15)
      throw Error(Errc::ecf_vanishes, "empirical characteristic function vanishes");
    out[static_cast<std::size_t>(l)] = -std::log(phi);
  }
  return out;
}

Eigen::MatrixXcd psi_matrix(double alpha, const GridSpec& grid,
                            PsiVariant variant) {
  Eigen::MatrixXcd m(grid.L, grid.L);
  for (Eigen::Index k = 0; k < grid.L; ++k)
    for (Eigen::Index l = 0; l < grid.L; ++l)
      m(k, l) = psi(grid.freqs.row(k).dot(grid.points.row(l)), alpha, variant);
  return m;
}

SpectralFit estimate_gamma_from_I(const std::vector<std::complex<double>>& i_hat,
                                  double alpha, const GridSpec& grid) {
  if (static_cast<Eigen::Index>(i_hat.size()) != grid.L)
    throw Error(Errc::dimension_mismatch, "estimate_gamma: I length != L");
  SpectralFit fit;
  fit.alpha_hat = alpha;
  fit.grid = grid;
  fit.delta_hat = Eigen::VectorXd::Zero(grid.d);
  const Eigen::Index L = grid.L;

  if (grid.d == 1) {
    fit.method = SpectralMethod::D1Real;
    const Eigen::MatrixXd m =
        psi_matrix(alpha, grid, PsiVariant::RealD1).real();
    check_condition(m);
    Eigen::VectorXd b(2);
    for (Eigen::Index l = 0; l < 2; ++l)
      b[l] = i_hat[static_cast<std::size_t>(l)].real() +
             i_hat[static_cast<std::size_t>(l)].imag();
    fit.gamma_hat = m.partialPivLu().solve(b).cwiseMax(0.0);
    return fit;
  }

  if (grid.d == 2) {
    const Eigen::MatrixXcd m = psi_matrix(alpha, grid, PsiVariant::Standard);
    if (L % 2 == 0) {
      fit.method = SpectralMethod::D2EvenNNLS;
      // Hermitian pairs I_l = conj(I_{l+m}): stack averaged real parts over
      // rows Re psi and the second-half imaginary parts over rows Im psi
      const Eigen::Index half = L / 2;
      LinearSystem sys;
      sys.a.resize(L, L);
      sys.b.resize(L);
      for (Eigen::Index k = 0; k < half; ++k) {
        sys.a.row(k) = m.row(k).real();
        sys.a.row(half + k) = m.row(half + k).imag();
        const auto& lo = i_hat[static_cast<std::size_t>(k)];
        const auto& hi = i_hat[static_cast<std::size_t>(k + half)];
        sys.b[k] = 0.5 * (lo.real() + hi.real());
        sys.b[half + k] = 0.5 * (hi.imag() - lo.imag());
      }
      check_condition(sys.a);
      fit.gamma_hat = nnls(sys);
      return fit;
    }
    fit.method = SpectralMethod::D2OddAbsRe;
    check_condition(m);
    Eigen::VectorXcd b(L);
    for (Eigen::Index l = 0; l < L; ++l) b[l] = i_hat[static_cast<std::size_t>(l)];
    fit.gamma_hat = m.partialPivLu().solve(b).real().cwiseAbs();
    return fit;
  }

  if (grid.d == 3) {
    fit.method = SpectralMethod::D3Real;
    const Eigen::MatrixXd m =
        psi_matrix(alpha, grid, PsiVariant::RealD3).real();
    check_condition(m);
    Eigen::VectorXd b(L);
    for (Eigen::Index l = 0; l < L; ++l)
      b[l] = i_hat[static_cast<std::size_t>(l)].real();
    fit.gamma_hat = m.partialPivLu().solve(b).cwiseMax(0.0);
    return fit;
  }
  throw Error(Errc::invalid_argument, "estimate_gamma: d must be 1, 2 or 3");
}

SpectralFit estimate_gamma(const MultiSample& data, double alpha,
                           const GridSpec& grid) {
  if (data.dim() != grid.d)
    throw Error(Errc::dimension_mismatch, "estimate_gamma: data/grid dimension mismatch");
  return estimate_gamma_from_I(empirical_I(data, grid.freqs), alpha, grid);
}

SpectralFit fit_spectral(const MultiSample& data, Eigen::Index L) {
  const Eigen::Index d = data.dim();
  if (d < 1 || d > 3)
    throw Error(Errc::invalid_argument, "fit_spectral: d must be 1, 2 or 3");
  if (d == 1 && L != 2)
    throw Error(Errc::invalid_argument, "fit_spectral: d=1 supports only L=2");

  const MarginalJointFit mj = marginal_joint_fit(data);
  MultiSample centered;
  centered.data = data.data.rowwise() - mj.delta_hat.transpose();

  const GridSpec grid = make_grid(static_cast<int>(d), L);
  SpectralFit fit = estimate_gamma(centered, mj.alpha_hat, grid);
  fit.delta_hat = mj.delta_hat;
  return fit;
}

}  // namespace stablefit
