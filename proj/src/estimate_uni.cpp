#include "stablefit/estimate_uni.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stablefit/numerics.hpp"

namespace stablefit {

namespace {

constexpr double kPi = std::numbers::pi;

// fixed Kogon-Williams grid t = 0.1, ..., 1.0
constexpr double kKwStep = 0.1;
constexpr std::size_t kKwPoints = 10;

// clamps applied after each regression stage
constexpr double kKwAlphaMin = 0.1;
constexpr double kAlphaFloor = 0.01;

double quantile(std::vector<double> sorted, double prob) {
  // linear interpolation between order statistics (R type 7)
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::complex<double> ecf(const Sample& sample, double t) {
  if (sample.empty()) throw Error(Errc::empty_input, "ecf: empty sample");
  double re = 0.0, im = 0.0;
  for (double x : sample) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  const double n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

std::vector<std::complex<double>> ecf_grid(const Sample& sample, double t0,
                                           std::size_t k) {
  if (sample.empty()) throw Error(Errc::empty_input, "ecf_grid: empty sample");
  std::vector<double> re(k, 0.0), im(k, 0.0);
  for (double x : sample) {
    const double c1 = std::cos(t0 * x);
    const double s1 = std::sin(t0 * x);
    double c = c1, s = s1;
    for (std::size_t j = 0; j < k; ++j) {
      re[j] += c;
      im[j] += s;
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
  }
  const double n = static_cast<double>(sample.size());
  std::vector<std::complex<double>> out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = {re[j] / n, im[j] / n};
  return out;
}

StableParams kw_from_cf(const std::vector<std::complex<double>>& phi_at_grid) {
  if (phi_at_grid.size() != kKwPoints)
    throw Error(Errc::invalid_argument, "kw_from_cf: expected 10 grid values");
  std::vector<double> ts(kKwPoints);
  for (std::size_t j = 0; j < kKwPoints; ++j)
    ts[j] = kKwStep * static_cast<double>(j + 1);

  // modulus regression: ln(-ln |phi|^2) = ln(2 sigma^alpha) + alpha ln t
  std::vector<double> ya, aa;
  for (std::size_t j = 0; j < kKwPoints; ++j) {
    const double y = std::log(-std::log(std::norm(phi_at_grid[j])));
    if (std::isfinite(y)) {
      ya.push_back(y);
      aa.push_back(std::log(ts[j]));
    }
  }
  if (ya.size() < 2)
    throw Error(Errc::degenerate_sample, "kw_from_cf: modulus regression has no usable points");
  const OlsFit mod = ols(aa, ya);
  const double alpha0 = std::clamp(mod.slope, kKwAlphaMin, 2.0);
  const double sigma0 = std::pow(std::exp(mod.intercept) / 2.0, 1.0 / alpha0);

  // phase regression on the continuous-form model
  //   u(t) = delta t + beta g(t),
  //   g(t) = tan(pi alpha/2) ((sigma t)^alpha - sigma t)   for alpha != 1
  //   g(t) = -(2/pi) sigma t ln(sigma t)                   for alpha == 1
  double stt = 0.0, stg = 0.0, sgg = 0.0, stu = 0.0, sgu = 0.0;
  for (std::size_t j = 0; j < kKwPoints; ++j) {
    const double t = ts[j];
    const double u = std::atan2(phi_at_grid[j].imag(), phi_at_grid[j].real());
    const double st = sigma0 * t;
    const double g = alpha_is_one(alpha0)
                         ? -(2.0 / kPi) * st * std::log(st)
                         : std::tan(kPi * alpha0 / 2.0) * (std::pow(st, alpha0) - st);
    stt += t * t;
    stg += t * g;
    sgg += g * g;
    stu += t * u;
    sgu += g * u;
  }
  double delta0, beta0;
  const double det = stt * sgg - stg * stg;
  if (sgg < 1e-20 || std::fabs(det) < 1e-14 * stt * sgg + 1e-300) {
    // alpha near 2 makes g vanish and beta unidentifiable
    beta0 = 0.0;
    delta0 = stu / stt;
  } else {
    delta0 = (sgg * stu - stg * sgu) / det;
    beta0 = std::clamp((stt * sgu - stg * stu) / det, -1.0, 1.0);
  }
  return {alpha0, beta0, sigma0, delta0, Param::Zero};
}

StableParams kw_initial(const Sample& sample) {
  if (sample.size() < 20)
    throw Error(Errc::insufficient_points, "kw_initial: need at least 20 observations");
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  const double center = quantile(sorted, 0.5);
  // (q72 - q28)/1.654 is close to the scale for the whole alpha range; any
  // rough standardization works since the estimates are mapped back exactly
  double spread = (quantile(sorted, 0.72) - quantile(sorted, 0.28)) / 1.654;
  if (!(spread > 0.0)) {
    double ss = 0.0, mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(sample.size());
    for (double x : sample) ss += (x - mean) * (x - mean);
    spread = std::sqrt(ss / static_cast<double>(sample.size() - 1));
  }
  if (!(spread > 0.0) || !std::isfinite(spread))
    throw Error(Errc::degenerate_sample, "kw_initial: sample has zero spread");

  Sample w(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    w[i] = (sample[i] - center) / spread;

  const StableParams kp = kw_from_cf(ecf_grid(w, kKwStep, kKwPoints));
  return {kp.alpha, kp.beta, spread * kp.sigma, spread * kp.delta + center,
          Param::Zero};
}

std::size_t select_k(double alpha0, std::size_t n) {
  const auto f1 = [](double a) { return 24.36 * std::pow(a, -1.47); };
  const auto f2 = [](double a) { return 20.58 * std::pow(a, -1.43); };
  const auto f3 = [](double a) {
    return 122.9 * a * a * a * a - 648.2 * a * a * a + 1245.0 * a * a -
           1040.0 * a + 335.2;
  };
  const double nn = static_cast<double>(n);
  double v;
  if (nn <= 200.0)
    v = f1(alpha0);
  else if (nn <= 800.0)
    v = f1(alpha0) + (f2(alpha0) - f1(alpha0)) * (nn - 200.0) / 600.0;
  else  // interpolates up to 1600 and extrapolates on the same line beyond
    v = f2(alpha0) + (f3(alpha0) - f2(alpha0)) * (nn - 800.0) / 800.0;
  const double rounded = std::round(v);
  return static_cast<std::size_t>(std::clamp(rounded, 9.0, 134.0));
}

RegressionPoints regression_points(const std::vector<double>& mod2,
                                   const std::vector<double>& t_grid) {
  if (mod2.size() != t_grid.size())
    throw Error(Errc::dimension_mismatch, "regression_points: length mismatch");
  RegressionPoints pts;
  for (std::size_t j = 0; j < mod2.size(); ++j) {
    if (mod2[j] <= 1e-300) continue;
    const double y = std::log(-std::log(mod2[j]));
    if (!std::isfinite(y)) continue;
    pts.y.push_back(y);
    pts.a.push_back(std::log(std::fabs(t_grid[j])));
  }
  if (pts.y.size() < 2)
    throw Error(Errc::insufficient_points,
                "regression: fewer than two usable points");
  const OlsFit fit = ols(pts.a, pts.y);
  pts.mu_hat = fit.intercept;
  pts.slope_hat = fit.slope;
  return pts;
}

std::pair<double, double> regress_alpha_sigma_mod2(
    const std::vector<double>& mod2, const std::vector<double>& t_grid) {
  const RegressionPoints pts = regression_points(mod2, t_grid);
  const double alpha1 = std::clamp(pts.slope_hat, kAlphaFloor, 2.0);
  const double sigma1 = std::pow(std::exp(pts.mu_hat) / 2.0, 1.0 / alpha1);
  return {alpha1, sigma1};
}

std::pair<double, double> regress_alpha_sigma(const Sample& normalized,
                                              std::size_t k) {
  if (k < 2)
    throw Error(Errc::insufficient_points, "regress_alpha_sigma: k must be >= 2");
  const auto phi = ecf_grid(normalized, kPi / 25.0, k);
  std::vector<double> mod2(k), ts(k);
  for (std::size_t j = 0; j < k; ++j) {
    mod2[j] = std::norm(phi[j]);
    ts[j] = kPi * static_cast<double>(j + 1) / 25.0;
  }
  return regress_alpha_sigma_mod2(mod2, ts);
}

double press_t1() { return std::pow(std::pow(3.0, 2.3), 3.7); }
double press_t2() { return std::pow(std::pow(3.0, 2.1), 3.7); }

double press_delta_from_u(double u1, double u2, double alpha1) {
  const double t1 = press_t1();
  const double t2 = press_t2();
  double w1, w2;
  if (alpha_is_one(alpha1)) {
    w1 = std::log(t1);
    w2 = std::log(t2);
  } else {
    w1 = std::pow(t1, alpha1 - 1.0);
    w2 = std::pow(t2, alpha1 - 1.0);
  }
  const double denom = w2 - w1;
  if (std::fabs(denom) < 1e-14)
    throw Error(Errc::degenerate_weights, "press_delta: weights coincide");
  return (w2 * u1 / t1 - w1 * u2 / t2) / denom;
}

double press_delta(const Sample& normalized, double alpha1) {
  if (normalized.empty()) throw Error(Errc::empty_input, "press_delta: empty sample");
  const auto phase = [&](double t) {
    double c = 0.0, s = 0.0;
    for (double x : normalized) {
      c += std::cos(t * x);
      s += std::sin(t * x);
    }
    return std::atan2(s, c);
  };
  return press_delta_from_u(phase(press_t1()), phase(press_t2()), alpha1);
}

UniFitReport combine_steps(const StableParams& initial,
                           const StageEstimates& stage, std::size_t k_used,
                           std::vector<double> t_grid) {
  UniFitReport rep;
  rep.initial = initial;
  rep.stage = stage;
  rep.k_used = k_used;
  rep.t_grid = std::move(t_grid);
  rep.final.alpha = std::clamp(stage.alpha1, kAlphaFloor, 2.0);
  rep.final.beta = initial.beta;
  rep.final.sigma = initial.sigma * stage.sigma1;
  rep.final.delta = initial.sigma * stage.delta1 + initial.delta;
  rep.final.param = Param::Zero;
  return rep;
}

UniFitReport hybrid_fit(const Sample& sample) {
  const StableParams initial = kw_initial(sample);
  Sample w(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    w[i] = (sample[i] - initial.delta) / initial.sigma;

  const std::size_t k = select_k(initial.alpha, sample.size());
  const auto [alpha1, sigma1] = regress_alpha_sigma(w, k);
  const double delta1 = press_delta(w, alpha1);

  std::vector<double> ts(k);
  for (std::size_t j = 0; j < k; ++j)
    ts[j] = kPi * static_cast<double>(j + 1) / 25.0;
  return combine_steps(initial, {alpha1, sigma1, delta1}, k, std::move(ts));
}

}  // namespace stablefit
