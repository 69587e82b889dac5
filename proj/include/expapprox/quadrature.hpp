#pragma once

#include <functional>
#include <vector>

#include "expapprox/envelope.hpp"
#include "expapprox/errors.hpp"

namespace expapprox {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double tail_rel = 1e-7;  // truncation threshold relative to a pilot integral
  int max_subdivisions = 4000;
  double truncation_radius = 32.0;  // initial L for whole-line integrals
  double max_radius = 1e8;          // hard cap on the truncation radius
  std::vector<double> singular_points;

  QuadratureConfig with_singular(std::vector<double> pts) const {
    QuadratureConfig c = *this;
    c.singular_points = std::move(pts);
    return c;
  }
  QuadratureConfig tighter(double factor = 1e-3) const {
    QuadratureConfig c = *this;
    c.rel_tol *= factor;
    c.abs_tol *= factor;
    return c;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) over [a,b], pre-split at the config's
// singular points. Throws BudgetExhausted / NonFinite.
QuadratureResult integrate_interval(const Integrand& g, double a, double b,
                                    const QuadratureConfig& cfg = {});

// Whole-line integral. A pilot pass over [-L0, L0] sets the truncation
// threshold eps = max(abs_tol, tail_rel * |pilot|); the domain is then grown
// until the envelope's analytic tail bound falls below eps, and that bound is
// added to err_estimate. Throws TailUnbounded for non-integrable envelopes.
QuadratureResult integrate_line(const Integrand& g, const DecayEnvelope& env,
                                const QuadratureConfig& cfg = {});

}  // namespace expapprox
