#include <cmath>

#include "doctest.h"
#include "expapprox/harness.hpp"
#include "expapprox/smoothness.hpp"
#include "expapprox/steklov.hpp"

using namespace expapprox;

TEST_CASE("smoothing combination of a linear function is its shift") {
  RealFunction lin;
  lin.eval = [](double x) { return x; };
  lin.decay = DecayEnvelope::bounded(64.0);
  lin.label = "x";
  const double d = 0.25;
  SobolevCandidate sc = smooth_candidate(lin, d, 1);
  // T_d^2 x = x + d; derivative identically 1
  for (double x : {-1.0, 0.0, 2.0}) {
    CHECK(sc.g(x) == doctest::Approx(x + d).epsilon(1e-9));
    CHECK(sc.derivative_r(x) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("zero input produces the zero candidate") {
  SobolevCandidate sc = smooth_candidate(RealFunction::zero(), 0.5, 2);
  for (double x : {-1.0, 0.3}) {
    CHECK(sc.g(x) == doctest::Approx(0.0));
    CHECK(sc.derivative_r(x) == doctest::Approx(0.0));
  }
}

TEST_CASE("exact derivative bookkeeping matches finite differences") {
  RealFunction f = fixture_by_name("gaussian").f;
  SobolevCandidate sc = smooth_candidate(f, 0.25, 2);
  const double h = 1e-3;
  for (double x : {0.0, 0.8}) {
    const double fd =
        (sc.g(x + h) - 2.0 * sc.g(x) + sc.g(x - h)) / (h * h);
    CHECK(sc.derivative_r(x) == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("K estimate obeys the trivial candidate bounds") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double nf = weighted_norm(f, sp);
  for (double d : {1.0, 0.25, 0.0625}) {
    KEstimate k = k_functional(f, d, 1, sp);
    CHECK(k.value <= nf + 1e-9);  // zero candidate
    const double self = d * weighted_norm(f.derivative(1), sp);
    CHECK(k.value <= self * (1.0 + 1e-9));  // self candidate
  }
}

TEST_CASE("K estimate is absolutely homogeneous") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double base = k_functional(f, 0.25, 1, sp).value;
  const double tripled = k_functional(scaled(f, -3.0), 0.25, 1, sp).value;
  // candidate norms carry absolute quadrature noise floors, so homogeneity
  // holds only up to that resolution
  CHECK(tripled == doctest::Approx(3.0 * base).epsilon(1e-2));
}

TEST_CASE("K-modulus sandwich at the spec anchor point") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double c1 = c1_constant(2.0, 1.0);
  CHECK(c1 == doctest::Approx(18.0));
  const double om = modulus(f, 0.25, 1, sp);
  const double k = k_functional(f, 0.25, 1, sp).value;
  CHECK(om / (2.0 * c1) <= k * (1.0 + 1e-9));
  CHECK(k <= (2.0 + 2.0 * 34.0) * c1 * om * (1.0 + 1e-9));
}

TEST_CASE("K estimate vanishes with the scale") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double nf = weighted_norm(f, sp);
  CHECK(k_functional(f, std::pow(2.0, -8), 1, sp).value <= 1e-2 * nf);
  CHECK(k_functional(f, std::pow(2.0, -12), 1, sp).value <= 1e-3 * nf);
}

TEST_CASE("default kernel is a unit-mass approximate identity") {
  RealFunction phi = default_mollifier_kernel();
  Mollifier m = Mollifier::make(phi, 0.5);
  CHECK(m.radial_majorant_norm >= 1.0);
  RealFunction f = fixture_by_name("gaussian").f;
  RealFunction g = mollify(f, m);
  CHECK(g(0.0) == doctest::Approx(f(0.0)).epsilon(0.1));
  // contraction of the mollified error as t -> 0
  Mollifier fine = Mollifier::make(phi, 1.0 / 64.0);
  RealFunction gf = mollify(f, fine);
  CHECK(std::abs(gf(0.3) - f(0.3)) < std::abs(g(0.3) - f(0.3)));
}
