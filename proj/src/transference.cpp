#include "expapprox/transference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expapprox {

double transfer_functional(const RealFunction& f, const DualWitness& G,
                           double u, const QuadratureConfig& cfg) {
  RealFunction s = steklov_mean(f, SteklovParams{1.0, u});
  auto se = s.eval;
  auto ge = G.G.eval;
  const Weight w = G.space.weight;
  auto integrand = [se, ge, w](double x) {
    return se(x) * std::abs(ge(x)) * w(x);
  };
  DecayEnvelope env =
      weight_product(product(s.decay, G.G.decay), w);
  QuadratureConfig c = cfg;
  c.singular_points = s.nonsmooth_points;
  for (double p : G.G.nonsmooth_points) c.singular_points.push_back(p);
  for (double p : w.singular_points) c.singular_points.push_back(p);
  return integrate_line(integrand, env, c).value;
}

namespace {

// Cumulative-integral table of q(x) = |G(x)| w(x): prefix(z) approximates
// int_{node[0]}^{z} q with per-cell Gauss-Kronrod sums at the nodes and a
// cubic Hermite (using the known derivative q) inside each cell. Kink points
// of q are inserted as nodes so every cell is smooth.
struct PrefixTable {
  std::vector<double> node;
  std::vector<double> cum;      // cum[i] = int_{node[0]}^{node[i]} q
  std::vector<double> qa, qb;   // one-sided q at each cell's endpoints

  double total() const { return cum.back(); }

  double prefix(double z) const {
    if (z <= node.front()) return 0.0;
    if (z >= node.back()) return cum.back();
    const size_t i =
        std::upper_bound(node.begin(), node.end(), z) - node.begin() - 1;
    const double a = node[i], b = node[i + 1], h = b - a;
    const double t = (z - a) / h;
    const double d = cum[i + 1] - cum[i];
    const double t2 = t * t, t3 = t2 * t;
    return cum[i] + d * (3.0 * t2 - 2.0 * t3) +
           h * (qa[i] * (t - 2.0 * t2 + t3) + qb[i] * (t3 - t2));
  }

  // M(y) = int_{y-1/2}^{y+1/2} q: the unit-window Steklov mean of q.
  double window(double y) const { return prefix(y + 0.5) - prefix(y - 0.5); }
};

PrefixTable build_prefix(const Integrand& q, double Y, double h,
                         const std::vector<double>& kinks) {
  std::vector<double> node;
  const int n = std::max(2, static_cast<int>(std::ceil(2.0 * Y / h)));
  for (int i = 0; i <= n; ++i) node.push_back(-Y + 2.0 * Y * i / n);
  for (double k : kinks)
    if (k > -Y && k < Y) node.push_back(k);
  std::sort(node.begin(), node.end());
  node.erase(std::unique(node.begin(), node.end(),
                         [](double a, double b) {
                           return std::abs(b - a) < 1e-12;
                         }),
             node.end());

  PrefixTable T;
  T.node = node;
  T.cum.assign(node.size(), 0.0);
  T.qa.resize(node.size() - 1);
  T.qb.resize(node.size() - 1);
  QuadratureConfig c;
  c.rel_tol = 1e-10;
  c.abs_tol = 1e-14;
  for (size_t i = 0; i + 1 < node.size(); ++i) {
    const double a = node[i], b = node[i + 1];
    T.cum[i + 1] = T.cum[i] + integrate_interval(q, a, b, c).value;
    const double eps = 1e-9 * (b - a);
    T.qa[i] = q(a + eps);
    T.qb[i] = q(b - eps);
  }
  return T;
}

}  // namespace

double transfer_sup(const RealFunction& f, const DualWitness& G,
                    const TransferScan& scan, const QuadratureConfig& cfg) {
  double R = f.decay.truncation_radius(1e-6, 4.0, 1e6);
  if (!std::isfinite(R)) R = scan.max_radius;
  R = std::min(R + 2.0, scan.max_radius);

  // Adjoint form: F(u) = int f(t) M(t - u) dt with M = S_{1,0}[|G| w]
  // tabulated once, instead of a nested Steklov quadrature at every node of
  // every scan point.
  const Weight w = G.space.weight;
  auto ge = G.G.eval;
  Integrand q = [ge, w](double x) { return std::abs(ge(x)) * w(x); };
  DecayEnvelope qenv = weight_product(G.G.decay, w);
  double Y = qenv.truncation_radius(1e-10, 8.0, 160.0);
  if (!std::isfinite(Y)) Y = 160.0;
  std::vector<double> kinks = G.G.nonsmooth_points;
  for (double s : w.singular_points) kinks.push_back(s);
  const PrefixTable T = build_prefix(q, Y, 1.0 / 128.0, kinks);

  auto fe = f.eval;
  DecayEnvelope env = f.decay.scaled(std::max(T.total(), 1e-300));
  auto F = [&](double u) {
    QuadratureConfig c = cfg;
    c.singular_points = f.nonsmooth_points;
    for (double k : kinks) {
      c.singular_points.push_back(u + k + 0.5);
      c.singular_points.push_back(u + k - 0.5);
    }
    auto g = [fe, &T, u](double t) { return fe(t) * T.window(t - u); };
    return integrate_line(g, env, c).value;
  };

  double best = -std::numeric_limits<double>::infinity();
  double best_u = 0.0;
  const int K = static_cast<int>(std::ceil(R / scan.step));
  for (int k = -K; k <= K; ++k) {
    const double u = k * scan.step;  // grid contains u = 0 exactly
    const double v = F(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }

  // golden refinement on [best_u - step, best_u + step]
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_u - scan.step, b = best_u + scan.step;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = F(c);
  double fd = F(d);
  best = std::max({best, fc, fd});
  for (int i = 0; i < scan.refine_iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = F(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = F(d);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

std::pair<double, double> transfer_derivative_check(
    const RealFunction& f, const DualWitness& G, int k, double u,
    const QuadratureConfig& cfg) {
  if (k < 1 || k > 2)
    throw std::invalid_argument("transfer_derivative_check: k");
  if (!f.has_derivative_envelopes(k))
    throw std::invalid_argument(
        "transfer_derivative_check: f lacks exact derivatives");

  QuadratureConfig tight = cfg.tighter();
  auto F = [&](double v) { return transfer_functional(f, G, v, tight); };

  const double h = 0.05;
  double fd;
  if (k == 1) {
    fd = (-F(u + 2 * h) + 8.0 * F(u + h) - 8.0 * F(u - h) + F(u - 2 * h)) /
         (12.0 * h);
  } else {
    fd = (-F(u + 2 * h) + 16.0 * F(u + h) - 30.0 * F(u) + 16.0 * F(u - h) -
          F(u - 2 * h)) /
         (12.0 * h * h);
  }
  const double exact = transfer_functional(f.derivative(k), G, u, tight);
  return {fd, exact};
}

}  // namespace expapprox
