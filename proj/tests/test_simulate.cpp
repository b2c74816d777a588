#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "stablefit/core.hpp"
#include "stablefit/estimate_uni.hpp"
#include "stablefit/simulate.hpp"

using namespace stablefit;

namespace {

double mean_of(const Sample& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double var_of(const Sample& x) {
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double median_of(Sample x) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  return n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

SpectralModel uniform_model(double alpha, int d, Eigen::Index L) {
  SpectralModel m;
  m.alpha = alpha;
  m.points = make_grid(d, L).points;
  m.weights.assign(static_cast<std::size_t>(L), 1.0 / static_cast<double>(L));
  m.shift = Eigen::VectorXd::Zero(d);
  return m;
}

}  // namespace

#include "stablefit/estimate_multi.hpp"

TEST_CASE("gaussian case has the right mean and variance") {
  const Sample x = sample_uni({2.0, 0.0, 1.0, 0.0, Param::Zero}, 100000, RngSeed{1});
  CHECK(mean_of(x) > -0.05);
  CHECK(mean_of(x) < 0.05);
  CHECK(var_of(x) > 1.9);  // alpha=2, sigma=1 is Normal(delta, 2 sigma^2)
  CHECK(var_of(x) < 2.1);
}

TEST_CASE("cauchy case is centered") {
  const Sample x = sample_uni({1.0, 0.0, 1.0, 0.0, Param::Zero}, 100000, RngSeed{2});
  const double med = median_of(x);
  CHECK(med > -0.03);
  CHECK(med < 0.03);
}

TEST_CASE("sampler ECF matches the characteristic function") {
  const StableParams p{1.5, 0.0, 1.0, 0.0, Param::Zero};
  const Sample x = sample_uni(p, 100000, RngSeed{3});
  for (double t : {0.5, 1.0}) {
    const auto emp = ecf(x, t);
    const auto thy = charfn_uni(p, t);
    CHECK(std::abs(emp - thy) < 0.02);
  }
}

TEST_CASE("skewed sampler matches the characteristic function in both tags") {
  for (auto param : {Param::Zero, Param::One}) {
    const StableParams p{1.4, 0.7, 1.2, 0.3, param};
    const Sample x = sample_uni(p, 100000, RngSeed{17});
    for (double t : {0.4, 0.9}) {
      CHECK(std::abs(ecf(x, t) - charfn_uni(p, t)) < 0.02);
    }
  }
  // alpha = 1 with skew
  const StableParams p1{1.0, 0.6, 1.5, -0.5, Param::Zero};
  const Sample x1 = sample_uni(p1, 100000, RngSeed{18});
  for (double t : {0.4, 0.9}) {
    CHECK(std::abs(ecf(x1, t) - charfn_uni(p1, t)) < 0.02);
  }
}

TEST_CASE("sampling is deterministic under the seed") {
  const StableParams p{1.3, 0.2, 1.0, 0.5, Param::Zero};
  const Sample a = sample_uni(p, 500, RngSeed{42});
  const Sample b = sample_uni(p, 500, RngSeed{42});
  CHECK(a == b);
  const Sample c = sample_uni(p, 500, RngSeed{43});
  CHECK(a != c);
}

TEST_CASE("split streams are reproducible and distinct") {
  const RngSeed parent{99};
  const RngSeed c0 = split(parent, 0);
  const RngSeed c1 = split(parent, 1);
  CHECK(c0.value == split(parent, 0).value);
  CHECK(c0.value != c1.value);
}

TEST_CASE("stability identity holds for normalized sums") {
  // (X1 + ... + Xk) / k^{1/alpha} has the law of X for strictly stable X
  const double alpha = 1.5;
  const StableParams p{alpha, 0.0, 1.0, 0.0, Param::One};
  const std::size_t n = 20000, k = 3;
  Sample summed(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const Sample x = sample_uni(p, n, split(RngSeed{7}, j));
    for (std::size_t i = 0; i < n; ++i) summed[i] += x[i];
  }
  const double norm = std::pow(static_cast<double>(k), 1.0 / alpha);
  for (std::size_t i = 0; i < n; ++i) summed[i] /= norm;
  for (double t : {0.3, 0.8, 1.5}) {
    CHECK(std::abs(ecf(summed, t) - charfn_uni(p, t)) < 0.03);
  }
}

TEST_CASE("two-point model at alpha=2 is a normal law") {
  const SpectralModel m = uniform_model(2.0, 1, 2);
  const MultiSample x = sample_mv(m, 100000, RngSeed{5});
  Sample col(x.data.rows());
  Eigen::VectorXd::Map(col.data(), x.data.rows()) = x.data.col(0);
  CHECK(var_of(col) > 1.9);  // forward CF is e^{-t^2}, i.e. Normal(0, 2)
  CHECK(var_of(col) < 2.1);
}

TEST_CASE("multivariate sampling is deterministic and rejects alpha=1") {
  const SpectralModel m = uniform_model(1.3, 2, 4);
  const MultiSample a = sample_mv(m, 200, RngSeed{6});
  const MultiSample b = sample_mv(m, 200, RngSeed{6});
  CHECK(a.data == b.data);

  SpectralModel bad = m;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(sample_mv(bad, 10, RngSeed{6}), Error);
}

TEST_CASE("multivariate empirical exponent matches the model") {
  const SpectralModel m = uniform_model(1.3, 2, 4);
  const MultiSample x = sample_mv(m, 100000, RngSeed{8});
  const GridSpec grid = make_grid(2, 4);
  const auto i_hat = empirical_I(x, grid.freqs);
  for (Eigen::Index l = 0; l < grid.L; ++l) {
    const auto truth = -std::log(charfn_mv(m, grid.freqs.row(l).transpose()));
    CHECK(std::fabs(i_hat[static_cast<std::size_t>(l)].real() - truth.real()) < 0.05);
    CHECK(std::fabs(i_hat[static_cast<std::size_t>(l)].imag() - truth.imag()) < 0.05);
  }
}

TEST_CASE("projections of the stable vector are stable with the same alpha") {
  const SpectralModel m = uniform_model(1.6, 2, 4);
  const MultiSample x = sample_mv(m, 10000, RngSeed{9});
  Sample proj(x.data.rows());
  Eigen::VectorXd::Map(proj.data(), x.data.rows()) =
      x.data * m.points.row(0).transpose();
  const UniFitReport rep = hybrid_fit(proj);
  CHECK(rep.final.alpha > 1.5);
  CHECK(rep.final.alpha < 1.7);
}

TEST_CASE("shift vector is applied additively") {
  SpectralModel m = uniform_model(1.5, 2, 4);
  m.shift << 3.0, -2.0;
  const MultiSample with = sample_mv(m, 5000, RngSeed{10});
  m.shift.setZero();
  const MultiSample without = sample_mv(m, 5000, RngSeed{10});
  CHECK((with.data.col(0) - without.data.col(0)).cwiseAbs().maxCoeff() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK((with.data.col(1) - without.data.col(1)).cwiseAbs().maxCoeff() ==
        doctest::Approx(2.0).epsilon(1e-12));
}
