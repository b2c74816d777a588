#include "stablefit/simulate.hpp"

#include <numbers>
#include <vector>

namespace stablefit {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

double cms_standard(double alpha, double beta, Rng& rng) {
  const double u = kPi * (rng.uniform_open() - 0.5);
  const double w = rng.exponential();
  if (alpha_is_one(alpha)) {
    const double h = kHalfPi + beta * u;
    return (2.0 / kPi) *
           (h * std::tan(u) - beta * std::log(kHalfPi * w * std::cos(u) / h));
  }
  const double ta = std::tan(kHalfPi * alpha);
  const double b = std::atan(beta * ta) / alpha;
  const double scale = std::pow(1.0 + beta * beta * ta * ta, 0.5 / alpha);
  return scale * std::sin(alpha * (u + b)) / std::pow(std::cos(u), 1.0 / alpha) *
         std::pow(std::cos(u - alpha * (u + b)) / w, (1.0 - alpha) / alpha);
}

Sample sample_uni(const StableParams& p, std::size_t n, RngSeed seed) {
  validate(p);
  if (n < 1) throw Error(Errc::invalid_argument, "sample size must be >= 1");
  // sigma * Z has One-form shift 0 for alpha != 1 but needs the
  // (2/pi) beta sigma ln sigma correction at alpha == 1; the Zero form is the
  // other way round. Expanding the Zero-form exponent gives its One-form
  // shift as delta - beta sigma tan(pi alpha / 2).
  double shift;
  if (alpha_is_one(p.alpha)) {
    shift = p.param == Param::One
                ? p.delta + p.beta * (2.0 / kPi) * p.sigma * std::log(p.sigma)
                : p.delta;
  } else {
    shift = p.param == Param::One
                ? p.delta
                : p.delta - p.beta * p.sigma * std::tan(kHalfPi * p.alpha);
  }
  Rng rng(seed);
  Sample out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = p.sigma * cms_standard(p.alpha, p.beta, rng) + shift;
  return out;
}

MultiSample sample_mv(const SpectralModel& m, std::size_t n, RngSeed seed) {
  validate(m);
  if (n < 1) throw Error(Errc::invalid_argument, "sample size must be >= 1");
  if (alpha_is_one(m.alpha))
    throw Error(Errc::unsupported_alpha,
                "multivariate sampling requires alpha != 1");
  const Eigen::Index L = m.L();
  const Eigen::Index d = m.dim();
  std::vector<double> scale(static_cast<std::size_t>(L));
  for (Eigen::Index l = 0; l < L; ++l)
    scale[static_cast<std::size_t>(l)] = std::pow(m.weights[static_cast<std::size_t>(l)], 1.0 / m.alpha);

  Rng rng(seed);
  MultiSample out;
  out.data.resize(static_cast<Eigen::Index>(n), d);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    Eigen::RowVectorXd row = m.shift.transpose();
    for (Eigen::Index l = 0; l < L; ++l) {
      const double z = cms_standard(m.alpha, 1.0, rng);
      row += scale[static_cast<std::size_t>(l)] * z * m.points.row(l);
    }
    out.data.row(i) = row;
  }
  return out;
}

}  // namespace stablefit
