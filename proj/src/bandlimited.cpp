#include "expapprox/bandlimited.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace expapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |d^j/dx^j (cos x - cos 2x)| <= {2, 3, 5}; the tail constants below bound
// |vp_kernel_deriv(j, x)| by kTailC[j] / (pi x^2) for |x| >= 1.
constexpr double kTailC[3] = {2.0, 7.0, 29.0};

}  // namespace

double vp_kernel(double x) { return vp_kernel_deriv(0, x); }

double vp_kernel_deriv(int j, double x) {
  if (j < 0 || j > 2) throw std::invalid_argument("vp_kernel_deriv: j");
  const double ax = std::abs(x);
  if (ax < 0.05) {
    const double x2 = x * x;
    const double c = 3.0 / (2.0 * M_PI);
    switch (j) {
      case 0:
        return c * (1.0 - (5.0 / 12.0) * x2 + (7.0 / 120.0) * x2 * x2);
      case 1:
        return c * x * (-(5.0 / 6.0) + (7.0 / 30.0) * x2 -
                        (17.0 / 672.0) * x2 * x2);
      default:
        return c * (-(5.0 / 6.0) + (7.0 / 10.0) * x2 -
                    (85.0 / 672.0) * x2 * x2);
    }
  }
  const double n0 = std::cos(x) - std::cos(2.0 * x);
  const double x2 = x * x;
  if (j == 0) return n0 / (M_PI * x2);
  const double n1 = -std::sin(x) + 2.0 * std::sin(2.0 * x);
  const double x3 = x2 * x;
  if (j == 1) return n1 / (M_PI * x2) - 2.0 * n0 / (M_PI * x3);
  const double n2 = -std::cos(x) + 4.0 * std::cos(2.0 * x);
  return n2 / (M_PI * x2) - 4.0 * n1 / (M_PI * x3) + 6.0 * n0 / (M_PI * x2 * x2);
}

namespace {

// int |vp_kernel_deriv(j, .)| (upper bounds; used only for envelope scales).
double kernel_abs_mass(int j) {
  static const std::array<double, 3> masses = [] {
    QuadratureConfig c;
    c.rel_tol = 1e-6;
    c.abs_tol = 1e-8;
    c.max_subdivisions = 20000;
    const double R = 200.0;
    std::array<double, 3> out{};
    for (int d = 0; d <= 2; ++d) {
      double core = integrate_interval(
                        [d](double x) { return std::abs(vp_kernel_deriv(d, x)); },
                        -R, R, c)
                        .value;
      out[d] = core + 2.0 * kTailC[d] / (M_PI * R);
    }
    return out;
  }();
  return masses[j];
}

// Envelope shape at |x|/2: bounds sup_{|u| <= |x|/2} |f(x-u)|.
DecayEnvelope dilate2(const DecayEnvelope& e) {
  using K = DecayEnvelope::Kind;
  DecayEnvelope d = e;
  switch (e.kind) {
    case K::Compact: {
      const double m =
          std::max(std::abs(e.support_lo), std::abs(e.support_hi));
      d.support_lo = -2.0 * m;
      d.support_hi = 2.0 * m;
      return d;
    }
    case K::Exponential:
      d.rate = e.rate / 2.0;
      break;
    case K::Gaussian:
      d.rate = e.rate / 4.0;
      break;
    case K::Polynomial:
      d.scale = e.scale * std::pow(2.0, e.q);
      break;
    case K::Bounded:
      break;
  }
  d.valid_from = 2.0 * e.valid_from;
  return d;
}

struct Interval {
  double a, b;
};

// Union of at most two intervals, merged when overlapping.
std::vector<Interval> merge(Interval p, Interval q) {
  if (p.a > q.a) std::swap(p, q);
  if (q.a <= p.b) return {{p.a, std::max(p.b, q.b)}};
  return {p, q};
}

// Domain radii for the convolution sigma^{j+1} int f(x-u) theta^{(j)}(sigma u) du:
// integrate over [x-Rf, x+Rf] (f window) union [-Rk, Rk] (kernel window).
// The neglected region has both |u| > Rk and |x-u| > Rf, so the residual is
// bounded by min(sup-kernel * tail-f, tail-kernel * sup-f).
struct ConvolutionDomain {
  double Rf, Rk, residual;
};

ConvolutionDomain convolution_domain(const DecayEnvelope& fenv, double sigma,
                                     int j, double tol) {
  const double cj = kTailC[j] * std::pow(sigma, j - 1) / M_PI;
  double Rf = std::max(4.0, fenv.valid_from);
  double Rk = 8.0 / sigma;  // phase sigma*u stays modest: ~2 kernel periods
  auto residual = [&] {
    const double tail_f = fenv.tail_bound(Rf);        // int over |t| > Rf
    const double sup_f = fenv.point(Rf);              // sup over |t| >= Rf
    const double sup_k = cj / (Rk * Rk);
    const double tail_k = 2.0 * cj / Rk;
    return std::min(sup_k * tail_f, tail_k * sup_f);
  };
  while (residual() > tol && Rf < 1e7) {
    Rf *= 2.0;
    Rk *= 2.0;
  }
  return {Rf, Rk, residual()};
}

std::function<double(double)> vp_convolve(
    const std::function<double(double)>& fe, const std::vector<double>& fsplits,
    const DecayEnvelope& fenv, double sigma, int j) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-9;
  cfg.max_subdivisions = 8000;
  ConvolutionDomain dom = convolution_domain(fenv, sigma, j, 1e-8);
  return [fe, fsplits, sigma, j, cfg, dom](double x) {
    QuadratureConfig c = cfg;
    for (double p : fsplits) c.singular_points.push_back(x - p);
    auto h = [&](double u) {
      return std::pow(sigma, j + 1) * fe(x - u) *
             vp_kernel_deriv(j, sigma * u);
    };
    double total = 0.0;
    for (const Interval& iv :
         merge({x - dom.Rf, x + dom.Rf}, {-dom.Rk, dom.Rk}))
      total += integrate_interval(h, iv.a, iv.b, c).value;
    return total;
  };
}

}  // namespace

RealFunction vp_approx(const RealFunction& f, double sigma,
                       const QuadratureConfig& cfg) {
  if (!(sigma > 0.0)) throw std::invalid_argument("vp_approx: sigma <= 0");
  if (!f.decay.integrable())
    throw TailUnbounded("vp_approx: f must be integrable");

  QuadratureConfig mcfg = cfg;
  mcfg.singular_points = f.nonsmooth_points;
  auto fe = f.eval;
  const double m1 =
      integrate_line([fe](double x) { return std::abs(fe(x)); }, f.decay, mcfg)
          .value;

  RealFunction g;
  g.eval = vp_convolve(f.eval, f.nonsmooth_points, f.decay, sigma, 0);
  g.derivatives.push_back(
      vp_convolve(f.eval, f.nonsmooth_points, f.decay, sigma, 1));
  g.derivatives.push_back(
      vp_convolve(f.eval, f.nonsmooth_points, f.decay, sigma, 2));

  // |(J f)^(j)(x)| <= sigma^j ||theta^(j)||_1 sup_{|t| >= |x|/2} |f(t)|
  //                 + (4 kTailC[j] sigma^{j-1} / (pi x^2)) ||f||_1
  for (int j = 0; j <= 2; ++j) {
    DecayEnvelope far = DecayEnvelope::polynomial(
        2.0, 4.0 * kTailC[j] * std::pow(sigma, j - 1) * m1 / M_PI,
        std::max(1.0, 2.0 / sigma));
    DecayEnvelope env;
    if (f.decay.kind == DecayEnvelope::Kind::Compact) {
      const double m = std::max(std::abs(f.decay.support_lo),
                                std::abs(f.decay.support_hi));
      far.valid_from = std::max(far.valid_from, 2.0 * m);
      env = far;
    } else {
      env = sum(dilate2(f.decay).scaled(std::pow(sigma, j) *
                                        kernel_abs_mass(j)),
                far);
    }
    if (j == 0)
      g.decay = env;
    else
      g.derivative_envelopes.push_back(env);
  }
  g.label = "J[" + f.label + "]";
  return g;
}

double SincExpansion::operator()(double x) const {
  const int N = order();
  const double y = sigma * x / M_PI;
  double s = 0.0;
  for (int n = -N; n <= N; ++n) {
    const double t = y - n;
    double sn;
    if (std::abs(t) < 1e-8) {
      const double pt = M_PI * t;
      sn = 1.0 - pt * pt / 6.0;
    } else {
      sn = std::sin(M_PI * t) / (M_PI * t);
    }
    s += coeff(n) * sn;
  }
  return s;
}

RealFunction SincExpansion::to_function() const {
  const int N = order();
  double alt = 0.0, abs_sum = 0.0, mom = 0.0;
  for (int n = -N; n <= N; ++n) {
    const double c = coeff(n);
    alt += (n % 2 == 0 ? c : -c);
    abs_sum += std::abs(c);
    mom += std::abs(c) * std::abs(n);
  }

  SincExpansion s = *this;
  RealFunction f;
  f.eval = [s](double x) { return s(x); };
  const double from = std::max(1.0, 2.0 * N * M_PI / sigma);
  if (std::abs(alt) > 1e-12 * std::max(abs_sum, 1.0)) {
    // sum c_n sinc(y - n) ~ sin(sigma x) sum (-1)^n c_n / (sigma x)
    f.decay = DecayEnvelope::polynomial(
        1.0, 2.0 * std::abs(alt) / sigma + 2.0 * M_PI * mom / (sigma * sigma),
        from);
  } else {
    // the 1/x terms cancel; analytically |f| <= 2 pi sum |c_n||n| / (sigma x)^2
    // for |x| >= 2 N pi / sigma, but that is loose; tighten against a sampled
    // sup of |f| x^2 over a long window (with margin)
    double analytic = 2.0 * M_PI * std::max(mom, 1e-300) / (sigma * sigma);
    double sampled = 0.0;
    const double step = M_PI / (8.0 * sigma);
    for (double x = from; x <= 24.0 * from; x += step)
      sampled = std::max(sampled, std::abs(s(x)) * x * x);
    f.decay = DecayEnvelope::polynomial(
        2.0, std::min(analytic, 2.0 * sampled + 1e-300), from);
  }
  f.label = "sinc[" + std::to_string(2 * N + 1) + "]";
  return f;
}

double exp_type_estimate(const RealFunction& g, double sigma_probe,
                         const SpectralGrid& grid) {
  const int n = grid.samples;
  const double L = grid.L;
  const double dx = 2.0 * L / n;
  const double nyquist = M_PI / dx;
  if (nyquist < 4.0 * sigma_probe)
    throw GridTooCoarse("exp_type_estimate: Nyquist below 4x probe type");

  std::vector<double> samples(n);
  for (int k = 0; k < n; ++k) {
    const double x = -L + k * dx;
    const double hann =
        0.5 * (1.0 - std::cos(2.0 * M_PI * k / (n - 1)));
    samples[k] = g(x) * hann;
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, samples);

  const int half = n / 2;
  std::vector<double> energy(half + 1);
  double total = 0.0;
  for (int m = 0; m <= half; ++m) {
    energy[m] = std::norm(spectrum[m]);
    total += energy[m];
  }
  if (total <= 0.0) throw ZeroFunction("exp_type_estimate: zero signal");

  double tail = 0.0;
  int cutoff = half;
  for (int m = half; m >= 1; --m) {
    tail += energy[m];
    if (tail > grid.energy_fraction * total) break;
    cutoff = m;
  }
  return 2.0 * M_PI * cutoff / (n * dx);
}

DeviationEstimate deviation_upper(const RealFunction& f, double sigma,
                                  const WeightedSpaceParams& sp,
                                  const QuadratureConfig& cfg) {
  RealFunction g = vp_approx(f, sigma / 2.0, cfg);
  RealFunction diff = linear_combination({1.0, -1.0}, {f, g});
  diff.label = f.label + "-J";
  // each diff eval is a kernel quadrature; keep the outer domain tight and
  // let the envelope tail bound account for the (oscillatory) remainder
  QuadratureConfig ncfg = cfg;
  ncfg.max_radius = std::min(cfg.max_radius, 256.0);
  return {sigma, weighted_norm(diff, sp, ncfg), "vp", f.label};
}

namespace {

// Fixed Gauss-Legendre composite grid for the oracle objective.
struct ObjectiveGrid {
  Eigen::VectorXd x, qw;        // nodes, quadrature * weight(x)
  Eigen::VectorXd fvals;        // f at nodes
  Eigen::MatrixXd basis;        // basis(m, n) = sinc_n(x_m)
};

ObjectiveGrid make_grid(const RealFunction& f, double sigma, int N,
                        const WeightedSpaceParams& sp) {
  // 5-point Gauss-Legendre on [-1, 1]
  static const double gx[5] = {0.0, 0.538469310105683, -0.538469310105683,
                               0.906179845938664, -0.906179845938664};
  static const double gw[5] = {0.568888888888889, 0.478628670499366,
                               0.478628670499366, 0.236926885056189,
                               0.236926885056189};
  double L = std::max(f.decay.truncation_radius(1e-6, 8.0, 1e6),
                      N * M_PI / sigma + 8.0);
  L = std::min(L, 64.0);
  const double cell = std::min(0.5, M_PI / (4.0 * sigma));
  const int cells = static_cast<int>(std::ceil(2.0 * L / cell));
  const int M = 5 * cells;

  ObjectiveGrid g;
  g.x.resize(M);
  g.qw.resize(M);
  g.fvals.resize(M);
  g.basis.resize(M, 2 * N + 1);
  SincExpansion unit{sigma, Eigen::VectorXd::Zero(2 * N + 1)};
  int m = 0;
  for (int c = 0; c < cells; ++c) {
    const double a = -L + c * (2.0 * L / cells);
    const double b = -L + (c + 1) * (2.0 * L / cells);
    for (int i = 0; i < 5; ++i, ++m) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      g.x[m] = x;
      g.qw[m] = 0.5 * (b - a) * gw[i] * sp.weight(x);
      g.fvals[m] = f(x);
    }
  }
  for (int n = -N; n <= N; ++n) {
    SincExpansion e = unit;
    e.coeffs[n + N] = 1.0;
    for (int i = 0; i < M; ++i) g.basis(i, n + N) = e(g.x[i]);
  }
  return g;
}

double objective(const ObjectiveGrid& g, const Eigen::VectorXd& c, double p) {
  Eigen::VectorXd resid = g.fvals - g.basis * c;
  double acc = 0.0;
  for (int i = 0; i < resid.size(); ++i)
    acc += g.qw[i] * std::pow(std::abs(resid[i]), p);
  return acc;
}

// Golden-section minimization of phi over [a, b].
template <class F>
double golden_min(const F& phi, double a, double b, int iters = 40) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = phi(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DeviationEstimate deviation_oracle(const RealFunction& f, double sigma,
                                   const WeightedSpaceParams& sp, int N,
                                   const QuadratureConfig& cfg) {
  if (N < 0) throw std::invalid_argument("deviation_oracle: N < 0");
  const int dim = 2 * N + 1;
  ObjectiveGrid grid = make_grid(f, sigma, N, sp);

  Eigen::VectorXd init(dim);
  SincExpansion probe{sigma, Eigen::VectorXd::Zero(dim)};
  for (int n = -N; n <= N; ++n) init[n + N] = f(probe.node(n));
  const double span = std::max(1.0, init.cwiseAbs().maxCoeff());

  std::mt19937 rng(0x5eed);
  std::normal_distribution<double> jitter(0.0, 0.1 * span);

  Eigen::VectorXd best = init;
  double best_obj = objective(grid, best, sp.p);
  for (int restart = 0; restart < 3; ++restart) {
    Eigen::VectorXd c = init;
    if (restart > 0)
      for (int i = 0; i < dim; ++i) c[i] += jitter(rng);
    double obj = objective(grid, c, sp.p);
    for (int sweep = 0; sweep < 8; ++sweep) {
      const double before = obj;
      for (int i = 0; i < dim; ++i) {
        const double h = std::max(0.25 * span, std::abs(c[i]));
        auto phi = [&](double v) {
          Eigen::VectorXd t = c;
          t[i] = v;
          return objective(grid, t, sp.p);
        };
        c[i] = golden_min(phi, c[i] - h, c[i] + h);
        obj = objective(grid, c, sp.p);
      }
      if (before - obj < 1e-10 * (1.0 + obj)) break;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best = c;
    }
  }

  // honest value: full adaptive norm of f minus the winner
  SincExpansion win{sigma, best};
  {
    // a nonzero alternating coefficient sum leaves only 1/x decay, whose
    // p-th power need not be weight-integrable (p = 1); project onto the
    // alternating-sum-zero subspace -- still a valid candidate
    RealFunction wf = win.to_function();
    if (!weight_product(sum(f.decay, wf.decay).powed(sp.p), sp.weight)
             .integrable()) {
      double alt = 0.0;
      for (int n = -N; n <= N; ++n)
        alt += (n % 2 == 0 ? win.coeffs[n + N] : -win.coeffs[n + N]);
      for (int n = -N; n <= N; ++n)
        win.coeffs[n + N] -= (n % 2 == 0 ? 1.0 : -1.0) * alt / dim;
    }
  }
  RealFunction diff = linear_combination({1.0, -1.0}, {f, win.to_function()});
  diff.label = f.label + "-sinc";
  const double norm = weighted_norm(diff, sp, cfg);
  return {sigma, norm, "oracle(" + std::to_string(N) + ")", f.label};
}

}  // namespace expapprox
