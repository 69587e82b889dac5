#pragma once

#include <utility>

#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/steklov.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

// F_{f,G}(u) = int S_{1,u} f(x) |G(x)| w(x) dx: pairing of the shifted
// unit-window Steklov mean against a dual witness.
double transfer_functional(const RealFunction& f, const DualWitness& G,
                           double u, const QuadratureConfig& cfg = {});

struct TransferScan {
  double step = 0.1;
  double max_radius = 24.0;
  int refine_iters = 30;  // golden refinement around the best grid point
};

// sup_u F_{f,G}(u) over a symmetric grid, then locally refined.
double transfer_sup(const RealFunction& f, const DualWitness& G,
                    const TransferScan& scan = {},
                    const QuadratureConfig& cfg = {});

// (finite-difference d^k/du^k F_f at u, F_{f^(k)}(u)); f must carry k exact
// derivatives with envelopes. k in {1, 2}.
std::pair<double, double> transfer_derivative_check(
    const RealFunction& f, const DualWitness& G, int k, double u,
    const QuadratureConfig& cfg = {});

}  // namespace expapprox
