#include "expapprox/steklov.hpp"

#include <algorithm>
#include <cmath>

namespace expapprox {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double bspline_kernel(int j, double delta, double s) {
  if (j < 1) throw std::invalid_argument("bspline_kernel: j < 1");
  const double u = s / delta;
  if (u <= 0.0 || u >= j) return 0.0;
  // cardinal B-spline N_j(u) on knots 0..j via the Cox-de Boor recursion;
  // all terms are nonnegative, unlike the alternating truncated-power sum,
  // whose cancellation noise near the support edge grows like C(j) * eps
  std::vector<double> v(j, 0.0);
  v[static_cast<int>(u)] = 1.0;
  for (int k = 2; k <= j; ++k)
    for (int i = 0; i + k <= j; ++i)
      v[i] = ((u - i) * v[i] + (i + k - u) * v[i + 1]) / (k - 1);
  return v[0] / delta;
}

namespace {

QuadratureConfig inner_defaults(QuadratureConfig cfg) {
  // inner quadratures sit under an outer adaptive rule; keep them tighter
  cfg.rel_tol = std::min(cfg.rel_tol, 1e-10);
  cfg.abs_tol = std::min(cfg.abs_tol, 1e-14);
  return cfg;
}

std::vector<double> shifted_points(const std::vector<double>& pts,
                                   std::initializer_list<double> shifts) {
  std::vector<double> out;
  for (double p : pts)
    for (double s : shifts) out.push_back(p - s);
  return out;
}

}  // namespace

RealFunction steklov_mean(const RealFunction& f, const SteklovParams& sp,
                          const QuadratureConfig& inner) {
  if (!(sp.lambda > 0.0))
    throw std::invalid_argument("steklov_mean: lambda <= 0");
  const double half = 1.0 / (2.0 * sp.lambda);
  const double tau = sp.tau;
  const double lambda = sp.lambda;
  QuadratureConfig cfg = inner_defaults(inner);
  auto fe = f.eval;
  auto splits = f.nonsmooth_points;

  RealFunction g;
  g.eval = [fe, lambda, tau, half, cfg, splits](double x) {
    QuadratureConfig c = cfg;
    const double a = x + tau - half, b = x + tau + half;
    for (double p : splits)
      if (p > a && p < b) c.singular_points.push_back(p);
    auto h = [fe](double t) { return fe(t); };
    return lambda * integrate_interval(h, a, b, c).value;
  };
  g.decay = f.decay.widened(std::abs(tau) + half);
  g.nonsmooth_points = shifted_points(f.nonsmooth_points, {tau - half, tau + half});
  g.label = "S[" + f.label + "]";
  return g;
}

RealFunction steklov_average(const RealFunction& f, double delta,
                             const QuadratureConfig& inner) {
  if (!(delta > 0.0)) throw std::invalid_argument("steklov_average: delta <= 0");
  return steklov_mean(f, SteklovParams{1.0 / delta, delta / 2.0}, inner);
}

RealFunction steklov_iterate(const RealFunction& f, double delta, int j,
                             const QuadratureConfig& inner) {
  if (j < 0) throw std::invalid_argument("steklov_iterate: j < 0");
  if (j == 0) return f;
  if (!(delta > 0.0)) throw std::invalid_argument("steklov_iterate: delta <= 0");
  QuadratureConfig cfg = inner_defaults(inner);
  auto fe = f.eval;
  auto splits = f.nonsmooth_points;

  RealFunction g;
  g.eval = [fe, delta, j, cfg, splits](double x) {
    QuadratureConfig c = cfg;
    // kernel knots plus f's kinks mapped into the s-variable
    for (int i = 1; i < j; ++i) c.singular_points.push_back(i * delta);
    for (double p : splits) {
      const double s = p - x;
      if (s > 0.0 && s < j * delta) c.singular_points.push_back(s);
    }
    auto h = [fe, delta, j, x](double s) {
      return fe(x + s) * bspline_kernel(j, delta, s);
    };
    return integrate_interval(h, 0.0, j * delta, c).value;
  };
  g.decay = f.decay.widened(j * delta);
  std::vector<double> shifts;
  for (int i = 0; i <= j; ++i) shifts.push_back(i * delta);
  for (double p : f.nonsmooth_points)
    for (double s : shifts) g.nonsmooth_points.push_back(p - s);
  g.label = "T^" + std::to_string(j) + "[" + f.label + "]";
  return g;
}

RealFunction iterated_difference(const RealFunction& f, double delta, int r,
                                 const QuadratureConfig& inner) {
  if (r < 1) throw std::invalid_argument("iterated_difference: r < 1");
  std::vector<double> coeffs;
  std::vector<RealFunction> terms;
  for (int j = 0; j <= r; ++j) {
    coeffs.push_back(((j % 2 == 0) ? 1.0 : -1.0) * binomial(r, j));
    terms.push_back(steklov_iterate(f, delta, j, inner));
  }
  RealFunction g = linear_combination(coeffs, terms);
  g.label = "(I-T)^" + std::to_string(r) + "[" + f.label + "]";
  return g;
}

double modulus(const RealFunction& f, double delta, int r,
               const WeightedSpaceParams& sp, const QuadratureConfig& cfg) {
  return weighted_norm(iterated_difference(f, delta, r, cfg), sp, cfg);
}

RealFunction averaging_operator(const RealFunction& f, double partition_offset,
                                const QuadratureConfig& cfg) {
  double R = f.decay.truncation_radius(cfg.abs_tol, 1.0);
  R = std::min(R, 2.0 * cfg.truncation_radius);
  const long k_lo = static_cast<long>(std::floor(-R - partition_offset)) - 1;
  const long k_hi = static_cast<long>(std::ceil(R - partition_offset)) + 1;

  QuadratureConfig c = cfg;
  c.singular_points = f.nonsmooth_points;
  auto fe = f.eval;
  std::vector<double> averages;
  averages.reserve(k_hi - k_lo + 1);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double a = k + partition_offset;
    averages.push_back(
        integrate_interval([fe](double x) { return std::abs(fe(x)); }, a,
                           a + 1.0, c)
            .value);
  }

  RealFunction g;
  const double off = partition_offset;
  g.eval = [averages, k_lo, k_hi, off](double x) {
    const long k = static_cast<long>(std::floor(x - off));
    if (k < k_lo || k > k_hi) return 0.0;
    return averages[k - k_lo];
  };
  g.decay = DecayEnvelope::compact(k_lo + off, k_hi + 1.0 + off);
  for (long k = k_lo; k <= k_hi + 1; ++k)
    g.nonsmooth_points.push_back(k + off);
  g.label = "T_Q[" + f.label + "]";
  return g;
}

Mollifier Mollifier::make(RealFunction phi, double t,
                          const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("Mollifier: t <= 0");
  QuadratureConfig c = cfg;
  c.singular_points = phi.nonsmooth_points;
  const double mass = integrate_line(phi.eval, phi.decay, c).value;
  if (std::abs(mass - 1.0) > 1e-8)
    throw std::invalid_argument("Mollifier: kernel mass is not 1");

  // radial majorant: cumulative max of |phi| from the outside in
  const double R = phi.decay.truncation_radius(1e-14, 1.0, 1e6);
  const int n = 1 << 13;
  std::vector<double> maj(n);
  const double h = R / n;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;
    maj[i] = std::max(std::abs(phi(x)), std::abs(phi(-x)));
  }
  for (int i = n - 2; i >= 0; --i) maj[i] = std::max(maj[i], maj[i + 1]);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) norm += 2.0 * maj[i] * h;

  Mollifier m;
  m.phi = std::move(phi);
  m.radial_majorant_norm = std::max(norm, 1.0);
  m.t = t;
  return m;
}

RealFunction mollify(const RealFunction& f, const Mollifier& m,
                     const QuadratureConfig& inner) {
  QuadratureConfig cfg = inner_defaults(inner);
  auto fe = f.eval;
  auto pe = m.phi.eval;
  auto penv = m.phi.decay;
  auto psplits = m.phi.nonsmooth_points;
  auto fsplits = f.nonsmooth_points;
  const double t = m.t;

  RealFunction g;
  g.eval = [fe, pe, penv, psplits, fsplits, t, cfg](double x) {
    QuadratureConfig c = cfg;
    c.singular_points = psplits;
    for (double p : fsplits) c.singular_points.push_back((x - p) / t);
    auto h = [fe, pe, t, x](double v) { return fe(x - t * v) * pe(v); };
    return integrate_line(h, penv, c).value;
  };
  const double Rphi =
      std::min(m.phi.decay.truncation_radius(1e-14, 1.0, 1e6), 1e6);
  g.decay = f.decay.widened(t * Rphi);
  for (double p : fsplits)
    g.nonsmooth_points.push_back(p);  // kinks are smeared; keep conservative
  g.label = "mollify[" + f.label + "]";
  return g;
}

}  // namespace expapprox
