#include "stablefit/core.hpp"

#include <numbers>

namespace stablefit {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
}  // namespace

const char* category_name(Errc code) {
  switch (code) {
    case Errc::degenerate_sample: return "degenerate-sample";
    case Errc::insufficient_points: return "insufficient-points";
    case Errc::degenerate_weights: return "degenerate-weights";
    case Errc::singular_system: return "singular-system";
    case Errc::ecf_vanishes: return "ecf-vanishes";
    case Errc::unsupported_alpha: return "unsupported-alpha";
    case Errc::non_convergence: return "non-convergence";
    case Errc::accuracy_not_met: return "accuracy-not-met";
    case Errc::collinear_input: return "collinear-input";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::empty_input: return "empty-input";
    case Errc::missing_column: return "missing-column";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

void validate(const StableParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 2.0))
    throw Error(Errc::invalid_argument, "alpha must be in (0, 2]");
  if (!(p.beta >= -1.0 && p.beta <= 1.0))
    throw Error(Errc::invalid_argument, "beta must be in [-1, 1]");
  if (!(p.sigma > 0.0))
    throw Error(Errc::invalid_argument, "sigma must be positive");
  if (!std::isfinite(p.delta))
    throw Error(Errc::invalid_argument, "delta must be finite");
}

void validate(const SpectralModel& m) {
  if (!(m.alpha > 0.0 && m.alpha <= 2.0))
    throw Error(Errc::invalid_argument, "alpha must be in (0, 2]");
  const Eigen::Index L = m.L();
  const Eigen::Index d = m.dim();
  if (L < 1) throw Error(Errc::invalid_argument, "need at least one point mass");
  if (d < 1) throw Error(Errc::invalid_argument, "dimension must be >= 1");
  if (static_cast<Eigen::Index>(m.weights.size()) != L)
    throw Error(Errc::dimension_mismatch, "weights length must equal number of points");
  if (m.shift.size() != d)
    throw Error(Errc::dimension_mismatch, "shift length must equal dimension");
  for (double w : m.weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(Errc::invalid_argument, "weights must be nonnegative");
  for (Eigen::Index l = 0; l < L; ++l) {
    if (std::fabs(m.points.row(l).norm() - 1.0) > 1e-12)
      throw Error(Errc::invalid_argument, "spectral points must lie on the unit sphere");
    for (Eigen::Index k = 0; k < l; ++k)
      if ((m.points.row(l) - m.points.row(k)).norm() < 1e-12)
        throw Error(Errc::invalid_argument, "spectral points must be distinct");
  }
}

std::complex<double> charfn_uni(const StableParams& p, double t) {
  if (t == 0.0) return {1.0, 0.0};
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double st = p.sigma * std::fabs(t);
  double re, im;
  if (alpha_is_one(p.alpha)) {
    // the One form carries ln|t| where the Zero form carries ln(sigma|t|)
    const double lg = p.param == Param::Zero ? std::log(st) : std::log(std::fabs(t));
    re = -st;
    im = -st * p.beta * kTwoOverPi * sgn * lg + p.delta * t;
  } else {
    const double sa = std::pow(st, p.alpha);
    const double ta = std::tan(kPi * p.alpha / 2.0);
    re = -sa;
    if (p.param == Param::Zero) {
      const double corr = std::pow(st, 1.0 - p.alpha) - 1.0;
      im = -sa * p.beta * sgn * ta * corr + p.delta * t;
    } else {
      im = sa * p.beta * sgn * ta + p.delta * t;
    }
  }
  return std::exp(std::complex<double>{re, im});
}

double delta1_of(const StableParams& p) {
  if (p.beta == 0.0) return p.delta;
  if (alpha_is_one(p.alpha))
    return p.delta + p.beta * kTwoOverPi * p.sigma * std::log(p.sigma);
  return p.delta + p.beta * p.sigma * std::tan(kPi * p.alpha / 2.0);
}

StableParams to_one(const StableParams& p) {
  if (p.param == Param::One) return p;
  StableParams out = p;
  out.delta = delta1_of(p);
  out.param = Param::One;
  return out;
}

StableParams to_zero(const StableParams& p) {
  if (p.param == Param::Zero) return p;
  StableParams out = p;
  const double shift = alpha_is_one(p.alpha)
                           ? p.beta * kTwoOverPi * p.sigma * std::log(p.sigma)
                           : p.beta * p.sigma * std::tan(kPi * p.alpha / 2.0);
  out.delta = p.delta - shift;
  out.param = Param::Zero;
  return out;
}

std::complex<double> psi(double u, double alpha, PsiVariant variant) {
  if (u == 0.0) return {0.0, 0.0};
  const double sgn = u > 0.0 ? 1.0 : -1.0;
  const double au = std::fabs(u);
  const bool one = alpha_is_one(alpha);
  switch (variant) {
    case PsiVariant::Standard: {
      if (one) return {au, au * kTwoOverPi * sgn * std::log(au)};
      const double ua = std::pow(au, alpha);
      return {ua, -ua * sgn * std::tan(kPi * alpha / 2.0)};
    }
    case PsiVariant::Continuous: {
      if (one) return {au, au * kTwoOverPi * sgn * std::log(au)};
      const double ua = std::pow(au, alpha);
      const double corr = std::pow(au, 1.0 - alpha) - 1.0;
      return {ua, ua * sgn * std::tan(kPi * alpha / 2.0) * corr};
    }
    case PsiVariant::RealD1: {
      if (one) return {au * (1.0 + kTwoOverPi * sgn * std::log(au)), 0.0};
      return {std::pow(au, alpha) * (1.0 - sgn * std::tan(kPi * alpha / 2.0)), 0.0};
    }
    case PsiVariant::RealD3:
      return {std::pow(au, alpha), 0.0};
  }
  return {0.0, 0.0};
}

std::complex<double> charfn_mv(const SpectralModel& m, const Eigen::VectorXd& t) {
  if (t.size() != m.dim())
    throw Error(Errc::dimension_mismatch, "frequency dimension does not match model");
  std::complex<double> expo = {0.0, -m.shift.dot(t)};
  for (Eigen::Index l = 0; l < m.L(); ++l)
    expo -= psi(m.points.row(l).dot(t), m.alpha, PsiVariant::Standard) * m.weights[l];
  return std::exp(expo);
}

}  // namespace stablefit
