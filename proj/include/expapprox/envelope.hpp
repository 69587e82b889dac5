#pragma once

#include <cmath>

namespace expapprox {

// Pointwise decay envelope of a function on the real line: |f(x)| <= point(|x|)
// for |x| >= valid_from. tail_bound(L) is an analytic bound on
// int_{|x|>L} |f| and drives every truncation radius in the library.
struct DecayEnvelope {
  enum class Kind { Compact, Exponential, Gaussian, Polynomial, Bounded };

  Kind kind = Kind::Bounded;
  double support_lo = 0.0;  // Compact only
  double support_hi = 0.0;  // Compact only
  double rate = 1.0;        // Exponential / Gaussian
  double q = 2.0;           // Polynomial power
  double scale = 1.0;
  double valid_from = 0.0;  // envelope formula holds for |x| >= valid_from

  static DecayEnvelope compact(double lo, double hi);
  static DecayEnvelope exponential(double rate, double scale = 1.0);
  static DecayEnvelope gaussian(double rate, double scale = 1.0);
  static DecayEnvelope polynomial(double q, double scale = 1.0,
                                  double valid_from = 1.0);
  static DecayEnvelope bounded(double scale = 1.0);

  // True when tail_bound(L) -> 0 as L grows.
  bool integrable() const;

  // Pointwise bound at |x| = r (infinity below valid_from for non-compact).
  double point(double r) const;

  // Bound on int_{|x| > L} of the envelope; +inf when not integrable or
  // L < valid_from.
  double tail_bound(double L) const;

  // Smallest radius (by doubling from `start`) with tail_bound <= eps.
  // Returns +inf if not reached below `cap`.
  double truncation_radius(double eps, double start = 1.0,
                           double cap = 1e12) const;

  // Envelope of |f|^p.
  DecayEnvelope powed(double p) const;

  // Envelope of sup_{|t| <= shift} |f(x+t)| (sliding-window widening).
  DecayEnvelope widened(double shift) const;

  DecayEnvelope scaled(double c) const;
};

// Envelope of a pointwise product |f*g|.
DecayEnvelope product(const DecayEnvelope& a, const DecayEnvelope& b);

// Envelope of |f| + |g| (conservative; converts the stronger kind down).
DecayEnvelope sum(const DecayEnvelope& a, const DecayEnvelope& b);

}  // namespace expapprox
