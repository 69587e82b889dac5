#include "expapprox/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expapprox {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// int_a^b |x|^alpha dx; +inf when the interval touches 0 and alpha <= -1.
double power_mass(double alpha, double a, double b) {
  if (a > b) std::swap(a, b);
  if (alpha == 0.0) return b - a;
  auto prim = [alpha](double x) {
    return (x >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x), alpha + 1.0) /
           (alpha + 1.0);
  };
  if (a < 0.0 && b > 0.0) {
    if (alpha <= -1.0) return kInf;
    return prim(b) - prim(a);
  }
  if ((a == 0.0 || b == 0.0) && alpha <= -1.0) return kInf;
  return prim(b) - prim(a);
}
}  // namespace

double Weight::operator()(double x) const {
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::Power:
      return std::pow(std::abs(x), alpha);
    case Kind::Tabulated: {
      if (grid.empty()) return 1.0;
      if (x <= grid.front()) return values.front();
      if (x >= grid.back()) return values.back();
      auto it = std::upper_bound(grid.begin(), grid.end(), x);
      size_t i = static_cast<size_t>(it - grid.begin());
      double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
      return values[i - 1] + t * (values[i] - values[i - 1]);
    }
  }
  return 1.0;
}

Weight Weight::constant(double c) {
  Weight w;
  w.kind = Kind::Constant;
  w.c = c;
  return w;
}

Weight Weight::power(double alpha) {
  Weight w;
  w.kind = Kind::Power;
  w.alpha = alpha;
  if (alpha != 0.0) w.singular_points = {0.0};
  return w;
}

Weight Weight::tabulated(std::vector<double> grid, std::vector<double> values) {
  Weight w;
  w.kind = Kind::Tabulated;
  w.grid = std::move(grid);
  w.values = std::move(values);
  return w;
}

std::string Weight::describe() const {
  char buf[48];
  switch (kind) {
    case Kind::Constant:
      std::snprintf(buf, sizeof(buf), "const:%g", c);
      return buf;
    case Kind::Power:
      std::snprintf(buf, sizeof(buf), "power:%g", alpha);
      return buf;
    case Kind::Tabulated:
      return "tabulated";
  }
  return "?";
}

double WeightedSpaceParams::pprime() const {
  if (p <= 1.0) return kInf;
  return p / (p - 1.0);
}

namespace {

// int_J w and int_J w^{1/(1-p)}, analytic for constant/power weights.
double weight_mass(const Weight& w, double a, double b, double exponent,
                   const QuadratureConfig& cfg) {
  switch (w.kind) {
    case Weight::Kind::Constant:
      return std::pow(w.c, exponent) * (b - a);
    case Weight::Kind::Power:
      return power_mass(w.alpha * exponent, a, b);
    case Weight::Kind::Tabulated: {
      auto g = [&](double x) { return std::pow(w(x), exponent); };
      return integrate_interval(g, a, b, cfg).value;
    }
  }
  return 0.0;
}

double weight_essinf(const Weight& w, double a, double b, int samples) {
  switch (w.kind) {
    case Weight::Kind::Constant:
      return w.c;
    case Weight::Kind::Power: {
      double lo = std::min(std::abs(a), std::abs(b));
      double hi = std::max(std::abs(a), std::abs(b));
      if (a < 0.0 && b > 0.0) lo = 0.0;
      if (w.alpha > 0.0) return std::pow(lo, w.alpha);
      if (w.alpha < 0.0) return std::pow(hi, w.alpha);
      return 1.0;
    }
    case Weight::Kind::Tabulated: {
      double m = kInf;
      for (int i = 0; i < samples; ++i) {
        double x = a + (b - a) * (i + 0.5) / samples;
        m = std::min(m, w(x));
      }
      return m;
    }
  }
  return 1.0;
}

// A_p quantity of one interval.
double interval_ap(const Weight& w, double p, double a, double b,
                   const ApScanSpec& scan, const QuadratureConfig& cfg) {
  const double len = b - a;
  if (len <= 0.0) return 1.0;
  double m = weight_mass(w, a, b, 1.0, cfg);
  if (!std::isfinite(m)) return kInf;
  if (p == 1.0) {
    double ei = weight_essinf(w, a, b, scan.essinf_samples);
    if (ei <= 0.0) return kInf;
    return (m / len) / ei;
  }
  double md = weight_mass(w, a, b, 1.0 / (1.0 - p), cfg);
  if (!std::isfinite(md)) return kInf;
  return (m / len) * std::pow(md / len, p - 1.0);
}

}  // namespace

double power_anchored_ap(double alpha, double p) {
  if (p > 1.0)
    return 1.0 /
           ((alpha + 1.0) * std::pow(1.0 - alpha / (p - 1.0), p - 1.0));
  return 1.0 / (alpha + 1.0);
}

ApEstimate ap_constant(const Weight& w, double p, const ApScanSpec& scan) {
  if (p < 1.0) throw std::invalid_argument("ap_constant: p < 1");
  QuadratureConfig cfg;
  cfg.singular_points = w.singular_points;

  ApEstimate est;
  est.p = p;
  est.method = ApEstimate::Method::Scan;

  // closed form for power weights, attained on origin-anchored intervals
  double closed = -1.0;
  if (w.kind == Weight::Kind::Power) {
    const double alpha = w.alpha;
    bool in_ap = (p > 1.0) ? (alpha > -1.0 && alpha < p - 1.0)
                           : (alpha > -1.0 && alpha <= 0.0);
    if (!in_ap) {
      est.finite = false;
      est.constant = kInf;
      return est;
    }
    closed = power_anchored_ap(alpha, p);
    est.method = ApEstimate::Method::ClosedForm;
  }

  double best = 0.0;
  std::pair<double, double> best_j{0.0, 0.0};
  auto consider = [&](double center, double half) {
    double v = interval_ap(w, p, center - half, center + half, scan, cfg);
    if (!std::isfinite(v)) {
      est.finite = false;
      return;
    }
    if (v > best) {
      best = v;
      best_j = {center, half};
    }
  };

  for (int j = scan.j_min; j <= scan.j_max && est.finite; ++j) {
    const double half = std::ldexp(1.0, j);
    for (double c = -scan.L; c <= scan.L + 1e-12 && est.finite;
         c += scan.center_step)
      consider(c, half);
    // origin-anchored [0, 2^j] and [-2^j, 0]
    consider(half / 2.0, half / 2.0);
    consider(-half / 2.0, half / 2.0);
  }
  if (!est.finite) {
    est.constant = kInf;
    return est;
  }
  est.constant = std::max({best, closed, 1.0});
  est.attaining_interval = best_j;
  if (closed >= best) est.method = ApEstimate::Method::ClosedForm;
  return est;
}

DecayEnvelope weight_product(const DecayEnvelope& env, const Weight& w) {
  using K = DecayEnvelope::Kind;
  switch (w.kind) {
    case Weight::Kind::Constant:
      return env.scaled(w.c);
    case Weight::Kind::Tabulated: {
      double m = 0.0;
      for (double v : w.values) m = std::max(m, v);
      return env.scaled(m);
    }
    case Weight::Kind::Power:
      break;
  }
  const double alpha = w.alpha;
  if (alpha == 0.0) return env;
  if (alpha < 0.0) {
    // |x|^alpha <= 1 beyond radius 1
    if (env.kind == K::Compact) return env;
    DecayEnvelope e = env;
    e.valid_from = std::max(env.valid_from, 1.0);
    return e;
  }
  DecayEnvelope e = env;
  switch (env.kind) {
    case K::Compact:
      return env;
    case K::Gaussian: {
      const double a = env.rate;
      const double m = std::pow(alpha / a, alpha / 2.0) * std::exp(-alpha / 2.0);
      e.rate = a / 2.0;
      e.scale = env.scale * m;
      return e;
    }
    case K::Exponential: {
      const double r = env.rate;
      const double m = std::pow(2.0 * alpha / (r * std::exp(1.0)), alpha);
      e.rate = r / 2.0;
      e.scale = env.scale * m;
      return e;
    }
    case K::Polynomial:
      e.q = env.q - alpha;  // integrate_line rejects q <= 1
      return e;
    case K::Bounded:
      // bounded times a growing weight: certainly not line-integrable
      e.kind = K::Polynomial;
      e.q = -alpha;
      return e;
  }
  return e;
}

double weighted_norm(const RealFunction& f, const WeightedSpaceParams& sp,
                     const QuadratureConfig& cfg) {
  const double p = sp.p;
  if (p < 1.0) throw std::invalid_argument("weighted_norm: p < 1");
  const Weight w = sp.weight;
  auto fe = f.eval;
  auto g = [fe, w, p](double x) {
    return std::pow(std::abs(fe(x)), p) * w(x);
  };
  DecayEnvelope env = weight_product(f.decay.powed(p), w);
  QuadratureConfig c = cfg;
  c.singular_points = f.nonsmooth_points;
  c.singular_points.insert(c.singular_points.end(), w.singular_points.begin(),
                           w.singular_points.end());
  QuadratureResult r = integrate_line(g, env, c);
  return std::pow(std::max(r.value, 0.0), 1.0 / p);
}

double essential_sup(const RealFunction& f, double L, int samples) {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = -L + 2.0 * L * (i + 0.5) / samples;
    m = std::max(m, std::abs(f(x)));
  }
  return m;
}

DualWitness extremal_dual(const RealFunction& f, const WeightedSpaceParams& sp,
                          const QuadratureConfig& cfg) {
  const double nf = weighted_norm(f, sp, cfg);
  if (nf <= 0.0) throw ZeroFunction("extremal_dual: ||f|| = 0");

  DualWitness wit;
  wit.space = sp;
  if (sp.p == 1.0) {
    RealFunction one;
    one.eval = [](double) { return 1.0; };
    one.decay = DecayEnvelope::bounded(1.0);
    one.label = "dual-one";
    wit.G = one;
    wit.norm_pprime = 1.0;
    return wit;
  }
  const double e = sp.p - 1.0;
  auto fe = f.eval;
  RealFunction G;
  G.eval = [fe, nf, e](double x) {
    return std::pow(std::abs(fe(x)) / nf, e);
  };
  G.decay = f.decay.powed(e).scaled(std::pow(nf, -e));
  G.nonsmooth_points = f.nonsmooth_points;
  G.label = "dual(" + f.label + ")";
  wit.G = G;
  WeightedSpaceParams dual_sp{sp.pprime(), sp.weight};
  wit.norm_pprime = weighted_norm(G, dual_sp, cfg);
  if (wit.norm_pprime > 1.0 + 1e-6)
    throw NumericError("extremal_dual: witness norm exceeds 1");
  return wit;
}

InequalityReport embed_l1(const RealFunction& f, const WeightedSpaceParams& sp,
                          double a, double b, const ApEstimate& ap,
                          const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.singular_points = f.nonsmooth_points;
  c.singular_points.insert(c.singular_points.end(),
                           sp.weight.singular_points.begin(),
                           sp.weight.singular_points.end());
  auto fe = f.eval;
  const double lhs =
      integrate_interval([fe](double x) { return std::abs(fe(x)); }, a, b, c)
          .value;
  const Weight w = sp.weight;
  const double p = sp.p;
  const double mass = weight_mass(w, a, b, 1.0, c);
  auto g = [fe, w, p](double x) {
    return std::pow(std::abs(fe(x)), p) * w(x);
  };
  const double fnorm =
      std::pow(std::max(integrate_interval(g, a, b, c).value, 0.0), 1.0 / p);
  double rhs;
  std::string note;
  if (!ap.finite) {
    rhs = kInf;
    note = "NotInAp";
  } else {
    // <w>_A = |A|^{-p} int_A w, so <w>_A^{-1/p} = |A| (int_A w)^{-1/p}
    rhs = std::pow(ap.constant, 1.0 / p) * (b - a) *
          std::pow(mass, -1.0 / p) * fnorm;
  }
  return InequalityReport::make("embed_l1/" + f.label, p, w.describe(), 0, 0,
                                b - a, lhs, rhs, ap.constant,
                                "[w]_p^{1/p} <w>_A^{-1/p}", note, cfg.rel_tol);
}

}  // namespace expapprox
