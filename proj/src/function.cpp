#include "expapprox/function.hpp"

#include <cmath>
#include <stdexcept>

namespace expapprox {

RealFunction abs_of(const RealFunction& f) {
  RealFunction g;
  auto ev = f.eval;
  g.eval = [ev](double x) { return std::abs(ev(x)); };
  g.decay = f.decay;
  g.nonsmooth_points = f.nonsmooth_points;
  g.label = "|" + f.label + "|";
  return g;
}

RealFunction linear_combination(const std::vector<double>& coeffs,
                                const std::vector<RealFunction>& fs) {
  if (coeffs.size() != fs.size() || fs.empty())
    throw std::invalid_argument("linear_combination: size mismatch");
  RealFunction g;
  std::vector<std::function<double(double)>> evals;
  evals.reserve(fs.size());
  for (const auto& f : fs) evals.push_back(f.eval);
  auto cs = coeffs;
  g.eval = [cs, evals](double x) {
    double s = 0.0;
    for (size_t i = 0; i < cs.size(); ++i) s += cs[i] * evals[i](x);
    return s;
  };
  DecayEnvelope env = fs[0].decay.scaled(coeffs[0]);
  for (size_t i = 1; i < fs.size(); ++i)
    env = sum(env, fs[i].decay.scaled(coeffs[i]));
  g.decay = env;
  for (const auto& f : fs)
    g.nonsmooth_points.insert(g.nonsmooth_points.end(),
                              f.nonsmooth_points.begin(),
                              f.nonsmooth_points.end());
  g.label = "lincomb";
  return g;
}

RealFunction scaled(const RealFunction& f, double c) {
  RealFunction g;
  auto ev = f.eval;
  g.eval = [ev, c](double x) { return c * ev(x); };
  g.decay = f.decay.scaled(c);
  g.nonsmooth_points = f.nonsmooth_points;
  g.label = f.label + "*c";
  for (const auto& d : f.derivatives) {
    auto dv = d;
    g.derivatives.push_back([dv, c](double x) { return c * dv(x); });
  }
  return g;
}

RealFunction translated(const RealFunction& f, double shift) {
  RealFunction g;
  auto ev = f.eval;
  g.eval = [ev, shift](double x) { return ev(x - shift); };
  g.decay = f.decay.widened(std::abs(shift));
  for (double p : f.nonsmooth_points) g.nonsmooth_points.push_back(p + shift);
  g.label = f.label + "-shift";
  for (const auto& d : f.derivatives) {
    auto dv = d;
    g.derivatives.push_back([dv, shift](double x) { return dv(x - shift); });
  }
  return g;
}

}  // namespace expapprox
