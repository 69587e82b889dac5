#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "expapprox/envelope.hpp"

namespace expapprox {

// An evaluable real function on the line with a declared decay envelope,
// optional exact derivatives, and the points where it is not smooth
// (quadrature pre-splits there).
struct RealFunction {
  std::function<double(double)> eval;
  DecayEnvelope decay;
  std::vector<std::function<double(double)>> derivatives;  // order 1..k
  std::vector<DecayEnvelope> derivative_envelopes;         // parallel, optional
  std::vector<double> nonsmooth_points;
  std::string label;

  double operator()(double x) const { return eval(x); }

  bool has_derivatives(int order) const {
    return static_cast<int>(derivatives.size()) >= order;
  }

  // The j-th exact derivative as a RealFunction (1 <= j <= derivatives.size()),
  // with a caller-supplied envelope (or the stored one).
  RealFunction derivative(int j, DecayEnvelope env) const;
  RealFunction derivative(int j) const {
    return derivative(j, derivative_envelopes.at(j - 1));
  }
  bool has_derivative_envelopes(int order) const {
    return static_cast<int>(derivative_envelopes.size()) >= order &&
           has_derivatives(order);
  }

  static RealFunction zero();
};

inline RealFunction RealFunction::derivative(int j, DecayEnvelope env) const {
  RealFunction d;
  d.eval = derivatives.at(j - 1);
  d.decay = std::move(env);
  d.nonsmooth_points = nonsmooth_points;
  d.label = label + "^(" + std::to_string(j) + ")";
  for (int i = j; i < static_cast<int>(derivatives.size()); ++i)
    d.derivatives.push_back(derivatives[i]);
  for (int i = j; i < static_cast<int>(derivative_envelopes.size()); ++i)
    d.derivative_envelopes.push_back(derivative_envelopes[i]);
  return d;
}

inline RealFunction RealFunction::zero() {
  RealFunction f;
  f.eval = [](double) { return 0.0; };
  f.decay = DecayEnvelope::compact(0.0, 0.0);
  f.label = "zero";
  return f;
}

// |f| with the same envelope.
RealFunction abs_of(const RealFunction& f);

// c*f + g style combinations used throughout.
RealFunction linear_combination(const std::vector<double>& coeffs,
                                const std::vector<RealFunction>& fs);

RealFunction scaled(const RealFunction& f, double c);
RealFunction translated(const RealFunction& f, double shift);  // x -> f(x - shift)

}  // namespace expapprox
