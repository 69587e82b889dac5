#include "expapprox/smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "expapprox/bandlimited.hpp"
#include "expapprox/steklov.hpp"

namespace expapprox {

RealFunction default_mollifier_kernel() {
  RealFunction phi;
  phi.eval = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return (35.0 / 32.0) * u * u * u;
  };
  phi.derivatives.push_back([](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return -(105.0 / 16.0) * x * u * u;
  });
  phi.derivatives.push_back([](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return (35.0 / 32.0) * u * (30.0 * x * x - 6.0);
  });
  phi.decay = DecayEnvelope::compact(-1.0, 1.0);
  phi.derivative_envelopes.assign(2, phi.decay);
  phi.nonsmooth_points = {-1.0, 1.0};
  phi.label = "phi";
  return phi;
}

namespace {

// scale * int f(x - t v) ker(v) dv over the kernel's compact support
RealFunction kernel_convolution(const RealFunction& f, const RealFunction& ker,
                                double t, double scale, double ker_l1) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-14;
  auto fe = f.eval;
  auto ke = ker.eval;
  auto ksplits = ker.nonsmooth_points;
  auto fsplits = f.nonsmooth_points;
  const double lo = ker.decay.support_lo, hi = ker.decay.support_hi;

  RealFunction g;
  g.eval = [fe, ke, ksplits, fsplits, t, scale, lo, hi, cfg](double x) {
    QuadratureConfig c = cfg;
    c.singular_points = ksplits;
    for (double p : fsplits) c.singular_points.push_back((x - p) / t);
    auto h = [fe, ke, t, x](double v) { return fe(x - t * v) * ke(v); };
    return scale * integrate_interval(h, lo, hi, c).value;
  };
  const double reach = t * std::max(std::abs(lo), std::abs(hi));
  g.decay = f.decay.widened(reach).scaled(std::abs(scale) * ker_l1);
  g.label = "conv[" + f.label + "]";
  return g;
}

double kernel_l1(const RealFunction& ker) {
  QuadratureConfig c;
  c.singular_points = ker.nonsmooth_points;
  auto ke = ker.eval;
  return integrate_interval([ke](double v) { return std::abs(ke(v)); },
                            ker.decay.support_lo, ker.decay.support_hi, c)
      .value;
}

// r-th order forward difference delta^{-r} sum_i (-1)^{r-i} C(r,i) f(.+ i delta)
RealFunction forward_difference(const RealFunction& f, double delta, int r) {
  auto fe = f.eval;
  RealFunction d;
  d.eval = [fe, delta, r](double x) {
    double acc = 0.0;
    for (int i = 0; i <= r; ++i) {
      const double term = binomial(r, i) * fe(x + i * delta);
      acc += ((r - i) % 2 == 0) ? term : -term;
    }
    return acc / std::pow(delta, r);
  };
  d.decay = f.decay.widened(r * delta).scaled(std::pow(2.0, r) /
                                              std::pow(delta, r));
  for (double p : f.nonsmooth_points)
    for (int i = 0; i <= r; ++i) d.nonsmooth_points.push_back(p - i * delta);
  d.label = "diff^" + std::to_string(r) + "[" + f.label + "]";
  return d;
}

bool norm_feasible(const DecayEnvelope& env, const WeightedSpaceParams& sp,
                   double cap) {
  DecayEnvelope e = weight_product(env.powed(sp.p), sp.weight);
  return e.integrable() && e.truncation_radius(1e-8, 32.0, cap) < cap;
}

}  // namespace

SobolevCandidate smooth_candidate(const RealFunction& f, double delta, int r,
                                  const QuadratureConfig& cfg) {
  if (r < 1) throw std::invalid_argument("smooth_candidate: r < 1");
  if (!(delta > 0.0)) throw std::invalid_argument("smooth_candidate: delta");

  std::vector<double> coeffs;
  std::vector<RealFunction> terms, dterms;
  RealFunction diff = forward_difference(f, delta, r);
  for (int l = 1; l <= r; ++l) {
    coeffs.push_back(((l % 2 == 1) ? 1.0 : -1.0) * binomial(r, l));
    terms.push_back(steklov_iterate(f, delta, 2 * r * l, cfg));
    terms.back().label = "T^" + std::to_string(2 * r * l);
    dterms.push_back(steklov_iterate(diff, delta, 2 * r * l - r, cfg));
  }

  SobolevCandidate c;
  c.g = linear_combination(coeffs, terms);
  c.g.label = "steklov_combo[" + f.label + "]";
  c.derivative_r = linear_combination(coeffs, dterms);
  c.derivative_r.label = c.g.label + "'";
  c.r = r;
  c.provenance = "steklov_combo";
  return c;
}

KEstimate k_functional(const RealFunction& f, double delta, int r,
                       const WeightedSpaceParams& sp,
                       const QuadratureConfig& cfg) {
  if (r < 1) throw std::invalid_argument("k_functional: r < 1");
  if (!(delta > 0.0)) throw std::invalid_argument("k_functional: delta");

  const double dr = std::pow(delta, r);
  KEstimate best{weighted_norm(f, sp, cfg), "zero"};

  auto consider = [&](const RealFunction& g, const RealFunction& deriv,
                      const std::string& tag, double cap, double max_radius,
                      double rel_floor, double abs_floor) {
    RealFunction d = linear_combination({1.0, -1.0}, {f, g});
    if (!norm_feasible(d.decay, sp, cap) ||
        !norm_feasible(deriv.decay, sp, cap))
      return;
    QuadratureConfig c = cfg;
    c.max_radius = std::min(cfg.max_radius, max_radius);
    // candidates whose evaluations are themselves quadratures carry a noise
    // floor the outer norm cannot resolve below
    c.rel_tol = std::max(c.rel_tol, rel_floor);
    c.abs_tol = std::max(c.abs_tol, abs_floor);
    const double v =
        weighted_norm(d, sp, c) + dr * weighted_norm(deriv, sp, c);
    if (v < best.value) best = {v, tag};
  };

  if (f.has_derivative_envelopes(r)) {
    RealFunction fr = f.derivative(r);
    if (norm_feasible(fr.decay, sp, 3e4)) {
      const double v = dr * weighted_norm(fr, sp, cfg);
      if (v < best.value) best = {v, "self"};
    }
  }

  SobolevCandidate sc = smooth_candidate(f, delta, r, cfg);
  consider(sc.g, sc.derivative_r, sc.provenance, 3e4, cfg.max_radius, 1e-7,
           1e-8);

  if (r <= 2) {
    RealFunction phi = default_mollifier_kernel();
    RealFunction ker_r = phi.derivative(r);
    const double l1 = kernel_l1(ker_r);
    for (double t : {delta, delta / 2.0}) {
      RealFunction g = mollify(f, Mollifier::make(phi, t, cfg), cfg);
      RealFunction deriv =
          kernel_convolution(f, ker_r, t, std::pow(t, -r), l1);
      consider(g, deriv, "mollified(" + std::to_string(t) + ")", 3e4,
               cfg.max_radius, 1e-7, 1e-8);
    }

    // band-limited candidates only win at coarse scales; skipping them for
    // small delta keeps the estimator an upper bound and saves convolutions
    if (delta >= 0.5) {
      for (double s : {1.0 / delta, 2.0 / delta}) {
        RealFunction g = vp_approx(f, s, cfg);
        consider(g, g.derivative(r), "vp(" + std::to_string(s) + ")", 300.0,
                 256.0, 1e-6, 1e-6);
      }
    }
  }

  return best;
}

}  // namespace expapprox
