#include "stablefit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stablefit/core.hpp"

namespace stablefit {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

OlsFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(Errc::dimension_mismatch, "ols: x and y lengths differ");
  const std::size_t n = x.size();
  if (n < 2) throw Error(Errc::insufficient_points, "ols: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (!(sxx > 0.0))
    throw Error(Errc::collinear_input, "ols: regressor is constant");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

Eigen::VectorXd nnls(const LinearSystem& sys, double tol) {
  const Eigen::MatrixXd& A = sys.a;
  const Eigen::VectorXd& b = sys.b;
  if (A.rows() != b.size())
    throw Error(Errc::dimension_mismatch, "nnls: matrix/vector shapes differ");
  if (A.rows() < 1 || A.cols() < 1)
    throw Error(Errc::invalid_argument, "nnls: empty system");
  if (!A.allFinite() || !b.allFinite())
    throw Error(Errc::invalid_argument, "nnls: non-finite entries");

  const Eigen::Index ncol = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ncol);
  std::vector<bool> passive(static_cast<std::size_t>(ncol), false);
  Eigen::Index npassive = 0;

  // least-squares restricted to the passive set, zeros elsewhere
  auto solve_passive = [&](Eigen::VectorXd& z) {
    Eigen::MatrixXd Ap(A.rows(), npassive);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < ncol; ++j)
      if (passive[static_cast<std::size_t>(j)]) Ap.col(c++) = A.col(j);
    const Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    z.setZero(ncol);
    c = 0;
    for (Eigen::Index j = 0; j < ncol; ++j)
      if (passive[static_cast<std::size_t>(j)]) z[j] = zp[c++];
  };

  const int outer_cap = 3 * static_cast<int>(ncol);
  int outer = 0;
  while (true) {
    const Eigen::VectorXd w = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < ncol; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    if (best < 0) break;  // KKT satisfied
    if (++outer > outer_cap)
      throw Error(Errc::non_convergence, "nnls: outer iteration cap exceeded");

    passive[static_cast<std::size_t>(best)] = true;
    ++npassive;

    Eigen::VectorXd z(ncol);
    solve_passive(z);
    while (true) {
      bool feasible = true;
      for (Eigen::Index j = 0; j < ncol; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          feasible = false;
          break;
        }
      if (feasible) break;
      // step toward z until the first passive coordinate hits zero
      double step = 2.0;
      for (Eigen::Index j = 0; j < ncol; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0)
          step = std::min(step, x[j] / (x[j] - z[j]));
      for (Eigen::Index j = 0; j < ncol; ++j)
        if (passive[static_cast<std::size_t>(j)]) x[j] += step * (z[j] - x[j]);
      for (Eigen::Index j = 0; j < ncol; ++j)
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
          --npassive;
        }
      if (npassive == 0) {
        z.setZero(ncol);
        break;
      }
      solve_passive(z);
    }
    x = z;
  }
  return x;
}

namespace {

// 15-point Gauss-Kronrod pair on [-1, 1] (abscissae and weights from
// QUADPACK dqk15); the embedded 7-point Gauss rule gives the error estimate.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
QuadResult gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  QuadResult r;
  r.value = kron * h;
  const double diff = (kron - gauss) * h;
  r.error = std::fabs(diff);
  return r;
}

template <typename F>
QuadResult adaptive_gk(const F& f, double a, double b, double tol, int depth) {
  const QuadResult whole = gk15(f, a, b);
  if (whole.error <= tol || depth <= 0) return whole;
  const double mid = 0.5 * (a + b);
  const QuadResult left = adaptive_gk(f, a, mid, 0.5 * tol, depth - 1);
  const QuadResult right = adaptive_gk(f, mid, b, 0.5 * tol, depth - 1);
  return {left.value + right.value, left.error + right.error};
}

}  // namespace

double stable_cdf(const StableParams& p, double x) {
  validate(p);
  // Gil-Pelaez: F(x) = 1/2 - (1/pi) int_0^inf Im(e^{-itx} phi(t)) / t dt.
  const auto integrand = [&](double t) {
    const std::complex<double> v =
        charfn_uni(p, t) * std::exp(std::complex<double>{0.0, -t * x});
    return v.imag() / t;
  };
  // |phi(t)| = exp(-(sigma t)^alpha): integrate until the modulus is
  // negligible, in segments short enough to resolve the oscillation. The
  // linear part of the phase runs at the One-form shift of the law.
  const double horizon = std::pow(27.6, 1.0 / p.alpha) / p.sigma;
  double drift;
  if (alpha_is_one(p.alpha)) {
    drift = p.param == Param::One
                ? p.delta + p.beta * (2.0 / kPi) * p.sigma * std::log(p.sigma)
                : p.delta;
  } else {
    drift = p.param == Param::One
                ? p.delta
                : p.delta - p.beta * p.sigma * std::tan(kPi * p.alpha / 2.0);
  }
  const double skew_rate =
      alpha_is_one(p.alpha)
          ? p.sigma
          : std::fabs(p.beta * std::tan(kPi * p.alpha / 2.0)) * p.sigma * p.alpha;
  const double rate = std::fabs(x - drift) + p.sigma + skew_rate;
  const double seg = std::min(kPi / rate, horizon / 8.0);

  const double target = 1e-8;
  const long max_segments = 200000;
  double acc = 0.0;
  double err = 0.0;
  double t0 = 0.0;
  long nseg = 0;
  while (t0 < horizon && nseg < max_segments) {
    const double t1 = std::min(t0 + seg, horizon);
    const QuadResult r = adaptive_gk(integrand, t0, t1, target * (t1 - t0) / horizon, 48);
    acc += r.value;
    err += r.error;
    t0 = t1;
    ++nseg;
  }
  if (t0 < horizon || err > 1e-6) {
    throw Error(Errc::accuracy_not_met,
                "stable_cdf: quadrature achieved only " + std::to_string(err));
  }
  return std::clamp(0.5 - acc / kPi, 0.0, 1.0);
}

double ks_statistic(Sample sample, const std::function<double(double)>& cdf) {
  if (sample.empty())
    throw Error(Errc::empty_input, "ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  if (!(d >= 0.0 && d <= 1.0))
    throw Error(Errc::invalid_argument, "ks_pvalue: d must be in [0, 1]");
  if (n < 1) throw Error(Errc::invalid_argument, "ks_pvalue: n must be >= 1");
  const double a = 2.0 * static_cast<double>(n) * d * d;
  if (a < 1e-10) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100000; ++k) {
    const double term = std::exp(-a * static_cast<double>(k) * static_cast<double>(k));
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace stablefit
