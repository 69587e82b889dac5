#include <cmath>
#include <random>

#include "doctest.h"
#include "expapprox/bandlimited.hpp"
#include "expapprox/harness.hpp"

using namespace expapprox;

TEST_CASE("kernel values at distinguished points") {
  CHECK(vp_kernel(0.0) == doctest::Approx(3.0 / (2.0 * M_PI)).epsilon(1e-12));
  // (cos pi - cos 2pi)/(pi pi^2) = -2/pi^3
  CHECK(vp_kernel(M_PI) ==
        doctest::Approx(-2.0 / (M_PI * M_PI * M_PI)).epsilon(1e-12));
  CHECK(vp_kernel(1e-9) == doctest::Approx(vp_kernel(0.0)).epsilon(1e-6));
}

TEST_CASE("kernel has unit mass") {
  auto k = [](double x) { return vp_kernel(x); };
  QuadratureConfig cfg;
  cfg.tail_rel = 1e-9;
  const double mass =
      integrate_line(k, DecayEnvelope::polynomial(2.0, 2.0 / M_PI, 1.0), cfg)
          .value;
  // the slowly decaying oscillatory tail limits the achievable accuracy
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sinc expansions are reproduced by the operator of their type") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (double sigma : {1.0, 2.0}) {
    SincExpansion e{sigma, Eigen::VectorXd(9)};
    for (int i = 0; i < 9; ++i) e.coeffs[i] = coeff(rng);
    // zero out the alternating sum so the expansion decays like 1/x^2 and
    // stays integrable for the approximation operator
    double alt = 0.0;
    for (int i = 0; i < 9; ++i) alt += (i % 2 == 0 ? e.coeffs[i] : -e.coeffs[i]);
    for (int i = 0; i < 9; ++i)
      e.coeffs[i] -= (i % 2 == 0 ? 1.0 : -1.0) * alt / 9.0;
    RealFunction g = e.to_function();
    RealFunction jg = vp_approx(g, sigma);
    double sup = 0.0, err = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.5) {
      sup = std::max(sup, std::abs(g(x)));
      err = std::max(err, std::abs(jg(x) - g(x)));
    }
    CHECK(err <= 1e-4 * sup);
  }
}

TEST_CASE("spectral type estimates") {
  SincExpansion unit{1.0, Eigen::VectorXd::Zero(1)};
  unit.coeffs[0] = 1.0;
  const double t = exp_type_estimate(unit.to_function(), 1.0);
  CHECK(t >= 0.8);
  CHECK(t <= 1.3);
  CHECK_THROWS(exp_type_estimate(RealFunction::zero(), 1.0));

  RealFunction j2 = vp_approx(fixture_by_name("gaussian").f, 2.0);
  CHECK(exp_type_estimate(j2, 2.0) <= 4.2);
}

TEST_CASE("band-limit error of the gaussian decreases along the sigma ladder") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  double prev = 1e300;
  for (double s : {1.0, 2.0, 4.0, 8.0}) {
    const double v = deviation_upper(f, s, sp).upper;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("oracle search does not end above the constructive bound") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double nf = weighted_norm(f, sp);
  const double vp = deviation_upper(f, 4.0, sp).upper;
  const double oracle = deviation_oracle(f, 4.0, sp, 12).upper;
  CHECK(oracle >= 0.0);
  CHECK(oracle <= vp + 1e-3 * nf);
}

TEST_CASE("oracle value is nonincreasing in the node count") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  double prev = 1e300;
  for (int n : {2, 6, 12}) {
    const double v = deviation_oracle(f, 2.0, sp, n).upper;
    // allow a little slack: the search is stochastic coordinate descent and
    // larger parameter spaces can stall slightly above a smaller one
    CHECK(v <= prev * 1.01);
    prev = v;
  }
}

TEST_CASE("derivative of the band-limited approximant commutes") {
  RealFunction f = fixture_by_name("gaussian").f;
  RealFunction jf = vp_approx(f, 2.0);
  RealFunction jfp = vp_approx(f.derivative(1), 2.0);
  const double h = 1e-4;
  for (double x : {0.0, 0.7}) {
    const double fd = (jf(x + h) - jf(x - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(jfp(x)).epsilon(1e-3));
  }
}

TEST_CASE("type-2 expansion is not of type 1") {
  SincExpansion e{2.0, Eigen::VectorXd(11)};
  e.coeffs << -0.15, 0.45, 0.8, -0.3, 1.2, 0.9, 0.35, -0.5, 0.25, 0.6, -1.3;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double a1 = deviation_oracle(e.to_function(), 1.0, sp, 12).upper;
  CHECK(a1 > 0.1);  // regression-pinned: 2.29849388714 against sigma = 1
  CHECK(a1 == doctest::Approx(2.29849388714).epsilon(1e-3));
}
