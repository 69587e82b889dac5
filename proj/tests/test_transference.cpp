#include <cmath>

#include "doctest.h"
#include "expapprox/harness.hpp"
#include "expapprox/transference.hpp"

using namespace expapprox;

namespace {

RealFunction indicator11() {
  RealFunction f;
  f.eval = [](double x) { return (x >= -1.0 && x < 1.0) ? 1.0 : 0.0; };
  f.decay = DecayEnvelope::compact(-1.0, 1.0);
  f.nonsmooth_points = {-1.0, 1.0};
  f.label = "chi";
  return f;
}

DualWitness indicator_witness() {
  DualWitness G;
  G.G = indicator11();
  G.norm_pprime = 1.0;
  G.space = WeightedSpaceParams{1.0, Weight::constant(1.0)};
  return G;
}

}  // namespace

TEST_CASE("pairing of overlapping indicators: exact overlap integral") {
  RealFunction f = indicator11();
  DualWitness G = indicator_witness();
  // S_{1,0} chi is the overlap length min(1, 3/2 - |x|)_+; over [-1,1] the
  // integral is 1 + 3/4
  CHECK(transfer_functional(f, G, 0.0) == doctest::Approx(1.75).epsilon(1e-8));
  CHECK(transfer_functional(f, G, 10.0) == doctest::Approx(0.0));
}

TEST_CASE("functional is linear in the function argument") {
  RealFunction f = fixture_by_name("gaussian").f;
  RealFunction g = fixture_by_name("bump").f;
  DualWitness G = indicator_witness();
  RealFunction combo = linear_combination({1.5, -0.25}, {f, g});
  for (double u : {-2.0, 0.0, 0.9}) {
    const double lhs = transfer_functional(combo, G, u);
    const double rhs = 1.5 * transfer_functional(f, G, u) -
                       0.25 * transfer_functional(g, G, u);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("functional is bounded by the norm times the operator constant") {
  RealFunction f = abs_of(fixture_by_name("gaussian").f);
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  const double nf = weighted_norm(f, sp);
  DualWitness G = extremal_dual(f, sp);
  const double c1 = c1_constant(sp.p, 1.0);
  for (double u = -6.0; u <= 6.0; u += 1.5)
    CHECK(std::abs(transfer_functional(f, G, u)) <= c1 * nf);
}

TEST_CASE("extremal witness attains the norm at zero shift for p = 1") {
  RealFunction f = abs_of(fixture_by_name("gaussian").f);
  WeightedSpaceParams sp{1.0, Weight::constant(1.0)};
  const double nf = weighted_norm(f, sp);
  DualWitness G = extremal_dual(f, sp);
  // at p = 1 the witness is constant, so F(u) = ||f||_1 for every u
  CHECK(transfer_functional(f, G, 0.0) == doctest::Approx(nf).epsilon(1e-7));
  const double sup = transfer_sup(f, G, TransferScan{0.1, 4.0, 10});
  CHECK(sup >= nf - 1e-6 * nf);
  CHECK(sup <= 27.0 * nf);  // 3 * 3^2 at p = 1
}

TEST_CASE("scan supremum dominates direct evaluations") {
  RealFunction f = abs_of(fixture_by_name("gaussian").f);
  WeightedSpaceParams sp{2.0, Weight::power(0.5)};
  DualWitness G = extremal_dual(f, sp);
  const double sup = transfer_sup(f, G, TransferScan{0.1, 8.0, 20});
  for (double u : {-1.3, 0.0, 0.4, 2.0})
    CHECK(sup >= transfer_functional(f, G, u) - 1e-6);
}

TEST_CASE("derivative of the functional transfers to the derivative") {
  RealFunction f = fixture_by_name("gaussian").f;
  WeightedSpaceParams sp{2.0, Weight::constant(1.0)};
  DualWitness G = extremal_dual(f, sp);
  for (int k : {1, 2}) {
    auto [fd, exact] = transfer_derivative_check(f, G, k, k == 1 ? 0.3 : 0.5);
    CHECK(fd == doctest::Approx(exact).epsilon(1e-5));
  }
}
