#include "expapprox/envelope.hpp"

#include <algorithm>
#include <limits>

namespace expapprox {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest r >= lo with pred(r) true, by doubling then bisection.
template <class Pred>
double rising_threshold(double lo, double hi, Pred pred) {
  if (pred(lo)) return lo;
  double a = lo, b = lo > 0 ? 2 * lo : 1.0;
  while (b < hi && !pred(b)) {
    a = b;
    b *= 2;
  }
  if (b >= hi) return hi;
  for (int i = 0; i < 60; ++i) {
    double m = 0.5 * (a + b);
    (pred(m) ? b : a) = m;
  }
  return b;
}
}  // namespace

DecayEnvelope DecayEnvelope::compact(double lo, double hi) {
  DecayEnvelope e;
  e.kind = Kind::Compact;
  e.support_lo = lo;
  e.support_hi = hi;
  return e;
}

DecayEnvelope DecayEnvelope::exponential(double rate, double scale) {
  DecayEnvelope e;
  e.kind = Kind::Exponential;
  e.rate = rate;
  e.scale = scale;
  return e;
}

DecayEnvelope DecayEnvelope::gaussian(double rate, double scale) {
  DecayEnvelope e;
  e.kind = Kind::Gaussian;
  e.rate = rate;
  e.scale = scale;
  return e;
}

DecayEnvelope DecayEnvelope::polynomial(double q, double scale,
                                        double valid_from) {
  DecayEnvelope e;
  e.kind = Kind::Polynomial;
  e.q = q;
  e.scale = scale;
  e.valid_from = std::max(valid_from, 1e-12);
  return e;
}

DecayEnvelope DecayEnvelope::bounded(double scale) {
  DecayEnvelope e;
  e.kind = Kind::Bounded;
  e.scale = scale;
  return e;
}

bool DecayEnvelope::integrable() const {
  switch (kind) {
    case Kind::Compact:
    case Kind::Exponential:
    case Kind::Gaussian:
      return true;
    case Kind::Polynomial:
      return q > 1.0;
    case Kind::Bounded:
      return false;
  }
  return false;
}

double DecayEnvelope::point(double r) const {
  r = std::abs(r);
  switch (kind) {
    case Kind::Compact:
      return (r > std::max(std::abs(support_lo), std::abs(support_hi)))
                 ? 0.0
                 : kInf;
    case Kind::Exponential:
      if (r < valid_from) return kInf;
      return scale * std::exp(-rate * r);
    case Kind::Gaussian:
      if (r < valid_from) return kInf;
      return scale * std::exp(-rate * r * r);
    case Kind::Polynomial:
      if (r < valid_from) return kInf;
      return scale * std::pow(r, -q);
    case Kind::Bounded:
      return scale;
  }
  return kInf;
}

double DecayEnvelope::tail_bound(double L) const {
  switch (kind) {
    case Kind::Compact:
      return (L >= std::max(std::abs(support_lo), std::abs(support_hi)))
                 ? 0.0
                 : kInf;
    case Kind::Exponential:
      if (L < valid_from) return kInf;
      return 2.0 * scale * std::exp(-rate * L) / rate;
    case Kind::Gaussian:
      if (L < valid_from || L <= 0) return kInf;
      return scale * std::exp(-rate * L * L) / (rate * L);
    case Kind::Polynomial:
      if (q <= 1.0 || L < valid_from) return kInf;
      return 2.0 * scale * std::pow(L, 1.0 - q) / (q - 1.0);
    case Kind::Bounded:
      return kInf;
  }
  return kInf;
}

double DecayEnvelope::truncation_radius(double eps, double start,
                                        double cap) const {
  if (!integrable()) return kInf;
  double L = std::max({start, valid_from, 1e-6});
  if (kind == Kind::Compact)
    return std::max(
        {L, std::abs(support_lo), std::abs(support_hi)});
  while (L < cap && tail_bound(L) > eps) L *= 2;
  if (tail_bound(L) > eps) return kInf;
  return L;
}

DecayEnvelope DecayEnvelope::powed(double p) const {
  DecayEnvelope e = *this;
  e.scale = std::pow(scale, p);
  switch (kind) {
    case Kind::Compact:
      return *this;
    case Kind::Exponential:
      e.rate = rate * p;
      break;
    case Kind::Gaussian:
      e.rate = rate * p;
      break;
    case Kind::Polynomial:
      e.q = q * p;
      break;
    case Kind::Bounded:
      break;
  }
  return e;
}

DecayEnvelope DecayEnvelope::widened(double shift) const {
  shift = std::abs(shift);
  DecayEnvelope e = *this;
  switch (kind) {
    case Kind::Compact:
      e.support_lo -= shift;
      e.support_hi += shift;
      return e;
    case Kind::Exponential:
      // exp(-a(|x|-s)) = e^{as} exp(-a|x|)
      e.scale = scale * std::exp(rate * shift);
      return e;
    case Kind::Gaussian:
      // (|x|-s)^2 >= x^2/2 - s^2 for all x
      e.rate = rate / 2.0;
      e.scale = scale * std::exp(rate * shift * shift);
      return e;
    case Kind::Polynomial:
      // |x+t| >= |x|/2 for |x| >= 2s
      e.scale = scale * std::pow(2.0, q);
      e.valid_from = std::max(valid_from, 2.0 * shift);
      return e;
    case Kind::Bounded:
      return e;
  }
  return e;
}

DecayEnvelope DecayEnvelope::scaled(double c) const {
  DecayEnvelope e = *this;
  e.scale = scale * std::abs(c);
  return e;
}

DecayEnvelope product(const DecayEnvelope& a, const DecayEnvelope& b) {
  using K = DecayEnvelope::Kind;
  // Compact wins: the product vanishes outside the compact support.
  if (a.kind == K::Compact && b.kind == K::Compact) {
    return DecayEnvelope::compact(std::max(a.support_lo, b.support_lo),
                                  std::min(a.support_hi, b.support_hi));
  }
  if (a.kind == K::Compact) return a;
  if (b.kind == K::Compact) return b;
  if (a.kind == K::Bounded) return b.scaled(a.scale);
  if (b.kind == K::Bounded) return a.scaled(b.scale);

  DecayEnvelope e;
  e.valid_from = std::max({a.valid_from, b.valid_from, 1.0});
  e.scale = a.scale * b.scale;
  if (a.kind == K::Gaussian || b.kind == K::Gaussian) {
    const DecayEnvelope& g = (a.kind == K::Gaussian) ? a : b;
    const DecayEnvelope& o = (a.kind == K::Gaussian) ? b : a;
    e.kind = K::Gaussian;
    // other factor <= its scale for |x| >= 1 (poly) or everywhere (exp)
    e.rate = (o.kind == K::Gaussian) ? g.rate + o.rate : g.rate;
    return e;
  }
  if (a.kind == K::Exponential || b.kind == K::Exponential) {
    const DecayEnvelope& x = (a.kind == K::Exponential) ? a : b;
    const DecayEnvelope& o = (a.kind == K::Exponential) ? b : a;
    e.kind = K::Exponential;
    e.rate = (o.kind == K::Exponential) ? x.rate + o.rate : x.rate;
    return e;
  }
  e.kind = K::Polynomial;
  e.q = a.q + b.q;
  return e;
}

DecayEnvelope sum(const DecayEnvelope& a, const DecayEnvelope& b) {
  using K = DecayEnvelope::Kind;
  auto rank = [](K k) {
    switch (k) {
      case K::Compact: return 4;
      case K::Gaussian: return 3;
      case K::Exponential: return 2;
      case K::Polynomial: return 1;
      case K::Bounded: return 0;
    }
    return 0;
  };
  const DecayEnvelope& weak = rank(a.kind) <= rank(b.kind) ? a : b;
  const DecayEnvelope& strong = rank(a.kind) <= rank(b.kind) ? b : a;

  if (strong.kind == weak.kind) {
    DecayEnvelope e = weak;
    e.scale = a.scale + b.scale;
    e.valid_from = std::max(a.valid_from, b.valid_from);
    switch (weak.kind) {
      case K::Compact:
        e.support_lo = std::min(a.support_lo, b.support_lo);
        e.support_hi = std::max(a.support_hi, b.support_hi);
        break;
      case K::Gaussian:
      case K::Exponential:
        e.rate = std::min(a.rate, b.rate);
        break;
      case K::Polynomial:
        e.q = std::min(a.q, b.q);
        break;
      case K::Bounded:
        break;
    }
    return e;
  }

  // Mixed kinds: express the stronger envelope in the weaker form beyond a
  // crossover radius found numerically, then add scales.
  DecayEnvelope e = weak;
  e.scale = weak.scale + strong.scale;
  double from = std::max(weak.valid_from, strong.valid_from);
  if (strong.kind != K::Compact) {
    // crossover: strong.point(r) <= strong.scale * weak_shape(r)
    auto weak_shape = [&](double r) {
      switch (weak.kind) {
        case K::Exponential: return std::exp(-weak.rate * r);
        case K::Polynomial: return std::pow(r, -weak.q);
        case K::Bounded: return 1.0;
        default: return 1.0;
      }
    };
    auto ok = [&](double r) {
      double p = strong.point(r);
      return std::isfinite(p) && p <= strong.scale * weak_shape(r);
    };
    from = std::max(from, rising_threshold(std::max(from, 0.5), 1e9, ok));
  } else {
    from = std::max(from, std::max(std::abs(strong.support_lo),
                                   std::abs(strong.support_hi)));
  }
  e.valid_from = from;
  return e;
}

}  // namespace expapprox
