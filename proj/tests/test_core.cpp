#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "stablefit/core.hpp"
#include "stablefit/rng.hpp"

using namespace stablefit;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
}  // namespace

TEST_CASE("charfn_uni closed-form cases") {
  // Gaussian: tan(pi) kills the skew term
  const auto g = charfn_uni({2.0, 0.0, 1.0, 0.0, Param::One}, 1.0);
  CHECK(g.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.imag() == doctest::Approx(0.0).epsilon(1e-14));

  // Cauchy
  const auto c = charfn_uni({1.0, 0.0, 1.0, 0.0, Param::One}, 2.0);
  CHECK(c.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(c.imag() == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(charfn_uni({1.5, 0.5, 2.0, 1.0, Param::Zero}, 0.0) == std::complex<double>{1.0, 0.0});
}

TEST_CASE("charfn_uni matches high-precision evaluation of the continuous form") {
  // (alpha=1.5, beta=0.5, sigma=2, delta=1, Zero) at t = 0.7, 40-digit
  // reference value
  const auto v = charfn_uni({1.5, 0.5, 2.0, 1.0, Param::Zero}, 0.7);
  CHECK(v.real() == doctest::Approx(0.16045875911827017277).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(0.10324536640071491961).epsilon(1e-13));
}

TEST_CASE("charfn_uni hermitian symmetry and modulus bound") {
  Rng rng(RngSeed{11});
  const double alphas[] = {0.4, 0.9, 1.0, 1.0 + 5e-10, 1.3, 2.0};
  for (double a : alphas) {
    for (int rep = 0; rep < 20; ++rep) {
      StableParams p{a, 2.0 * rng.uniform_open() - 1.0, 0.2 + 2.0 * rng.uniform_open(),
                     4.0 * rng.uniform_open() - 2.0,
                     rep % 2 ? Param::One : Param::Zero};
      const double t = 10.0 * (rng.uniform_open() - 0.5);
      const auto plus = charfn_uni(p, t);
      const auto minus = charfn_uni(p, -t);
      CHECK(minus.real() == doctest::Approx(plus.real()).epsilon(1e-12));
      CHECK(minus.imag() == doctest::Approx(-plus.imag()).epsilon(1e-12));
      CHECK(std::abs(plus) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("alpha=2 characteristic function is beta-free") {
  for (double beta : {-1.0, -0.3, 0.5, 1.0}) {
    for (double t : {-2.0, 0.4, 1.7}) {
      const auto with_skew = charfn_uni({2.0, beta, 1.5, 0.7, Param::Zero}, t);
      const auto base = charfn_uni({2.0, 0.0, 1.5, 0.7, Param::Zero}, t);
      CHECK(std::abs(with_skew - base) < 1e-12);
      CHECK(std::abs(with_skew) ==
            doctest::Approx(std::exp(-1.5 * 1.5 * t * t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("delta1_of closed forms") {
  CHECK(delta1_of({1.5, 0.0, 3.0, 4.0, Param::One}) == doctest::Approx(4.0));
  // tan(3 pi / 4) = -1 exactly
  CHECK(delta1_of({1.5, 1.0, 1.0, 0.0, Param::One}) == doctest::Approx(-1.0).epsilon(1e-14));
  // ln e = 1
  CHECK(delta1_of({1.0, 1.0, kE, 0.0, Param::One}) ==
        doctest::Approx(2.0 * kE / kPi).epsilon(1e-14));
}

TEST_CASE("parametrization round trip is the identity") {
  const double alphas[] = {0.5, 1.0 - 1e-6, 1.0, 1.5, 2.0};
  const double betas[] = {-1.0, 0.0, 1.0};
  const double deltas[] = {0.0, 0.6, -2.5};
  for (double a : alphas)
    for (double b : betas)
      for (double d : deltas) {
        const StableParams p{a, b, 1.3, d, Param::Zero};
        const StableParams onep = to_one(p);
        CHECK(onep.param == Param::One);
        const StableParams back = to_zero(onep);
        CHECK(back.param == Param::Zero);
        // tolerance scaled by the intermediate magnitude: near alpha = 1 the
        // tan factor is ~6e5 and absolute 1e-12 is below one ulp of it
        const double scale = std::max({1.0, std::fabs(p.delta), std::fabs(onep.delta)});
        CHECK(std::fabs(back.delta - p.delta) <= 1e-12 * scale);
        CHECK(back.alpha == p.alpha);
        CHECK(back.beta == p.beta);
        CHECK(back.sigma == p.sigma);
      }
}

TEST_CASE("psi trivial values") {
  for (auto variant : {PsiVariant::Standard, PsiVariant::Continuous,
                       PsiVariant::RealD1, PsiVariant::RealD3}) {
    CHECK(psi(0.0, 0.7, variant) == std::complex<double>{0.0, 0.0});
    CHECK(psi(0.0, 1.0, variant) == std::complex<double>{0.0, 0.0});
  }
  CHECK(psi(-2.0, 1.0, PsiVariant::RealD3).real() == doctest::Approx(2.0));
  const auto std_a2 = psi(1.0, 2.0, PsiVariant::Standard);
  CHECK(std_a2.real() == doctest::Approx(1.0));
  CHECK(std_a2.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("RealD1 psi pairs sum to twice the even part") {
  for (double alpha : {0.4, 0.8, 1.3, 1.9}) {
    for (double u : {0.3, 1.0, 2.7}) {
      const double sum = psi(u, alpha, PsiVariant::RealD1).real() +
                         psi(-u, alpha, PsiVariant::RealD1).real();
      CHECK(sum == doctest::Approx(2.0 * std::pow(u, alpha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("charfn_mv closed-form and frozen values") {
  SpectralModel m;
  m.alpha = 2.0;
  m.points.resize(2, 1);
  m.points << -1.0, 1.0;
  m.weights = {0.5, 0.5};
  m.shift = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd t(1);
  t << 1.5;
  // psi_2(u) = u^2, so I(t) = t^2
  CHECK(std::abs(charfn_mv(m, t) - std::exp(-2.25)) < 1e-12);
  t << 0.0;
  CHECK(charfn_mv(m, t) == std::complex<double>{1.0, 0.0});

  SpectralModel m2;
  m2.alpha = 1.3;
  m2.points.resize(4, 2);
  m2.points << 1, 0, 0, 1, -1, 0, 0, -1;
  m2.weights = {0.25, 0.25, 0.25, 0.25};
  m2.shift = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd t2(2);
  t2 << 1.0, 0.0;
  // 40-digit reference of the term-by-term sum
  auto v = charfn_mv(m2, t2);
  CHECK(v.real() == doctest::Approx(0.6065306597126334236).epsilon(1e-13));
  CHECK(std::fabs(v.imag()) < 1e-13);
  t2 << 0.3, 0.8;
  v = charfn_mv(m2, t2);
  CHECK(v.real() == doctest::Approx(0.61963407647100778035).epsilon(1e-13));
  CHECK(std::fabs(v.imag()) < 1e-13);
}

TEST_CASE("charfn_mv modulus bound and dimension check") {
  SpectralModel m;
  m.alpha = 1.7;
  m.points.resize(3, 2);
  const double c = std::sqrt(0.5);
  m.points << 1, 0, c, c, 0, -1;
  m.weights = {0.2, 0.5, 0.3};
  m.shift = Eigen::VectorXd::Zero(2);
  Rng rng(RngSeed{3});
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd t(2);
    t << 6.0 * (rng.uniform_open() - 0.5), 6.0 * (rng.uniform_open() - 0.5);
    CHECK(std::abs(charfn_mv(m, t)) <= 1.0 + 1e-12);
  }
  Eigen::VectorXd bad(3);
  bad << 1, 2, 3;
  CHECK_THROWS_AS(charfn_mv(m, bad), Error);
}

TEST_CASE("validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate(StableParams{0.0, 0, 1, 0, Param::Zero}), Error);
  CHECK_THROWS_AS(validate(StableParams{2.5, 0, 1, 0, Param::Zero}), Error);
  CHECK_THROWS_AS(validate(StableParams{1.5, -1.5, 1, 0, Param::Zero}), Error);
  CHECK_THROWS_AS(validate(StableParams{1.5, 0, 0.0, 0, Param::Zero}), Error);

  SpectralModel m;
  m.alpha = 1.5;
  m.points.resize(2, 2);
  m.points << 1, 0, 0.5, 0.5;  // second point off the sphere
  m.weights = {0.5, 0.5};
  m.shift = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(validate(m), Error);
}
