#pragma once

#include <string>
#include <vector>

#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

// One admissible g for the K-functional objective ||f-g|| + delta^r ||g^(r)||.
struct SobolevCandidate {
  RealFunction g;
  RealFunction derivative_r;  // exact r-th derivative of g
  int r = 1;
  std::string provenance;  // "zero", "self", "mollified(t)", "vp(s)", "steklov_combo"
};

// The combination g = sum_{l=1..r} (-1)^{l-1} C(r,l) T_delta^{2rl} f, whose
// r-th derivative is an exact finite-difference expression in f (via
// (T_delta h)' = (h(.+delta) - h)/delta), never a numerical derivative.
SobolevCandidate smooth_candidate(const RealFunction& f, double delta, int r,
                                  const QuadratureConfig& cfg = {});

struct KEstimate {
  double value = 0.0;
  std::string best;  // provenance of the minimizing candidate
};

// Upper estimate of Peetre's K_r(f, delta) between L^p(w dx) and W^r: the
// minimum of the objective over {zero, self, mollified, vp, steklov_combo}.
KEstimate k_functional(const RealFunction& f, double delta, int r,
                       const WeightedSpaceParams& sp,
                       const QuadratureConfig& cfg = {});

// The default approximate-identity kernel (35/32)(1-x^2)^3 on [-1,1], with
// exact derivatives to order 2.
RealFunction default_mollifier_kernel();

}  // namespace expapprox
