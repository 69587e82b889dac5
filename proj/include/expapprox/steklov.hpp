#pragma once

#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

struct SteklovParams {
  double lambda = 1.0;  // rate: window width 1/lambda
  double tau = 0.0;     // shift
};

// Order-j B-spline kernel: density of the sum of j independent uniforms on
// [0, delta]; supported on [0, j*delta], piecewise polynomial of degree j-1.
double bspline_kernel(int j, double delta, double s);

// S_{lambda,tau} f(x) = lambda int_{x+tau-1/(2 lambda)}^{x+tau+1/(2 lambda)} f
RealFunction steklov_mean(const RealFunction& f, const SteklovParams& sp,
                          const QuadratureConfig& inner = {});

// One-sided average T_delta f(x) = (1/delta) int_0^delta f(x+t) dt.
RealFunction steklov_average(const RealFunction& f, double delta,
                             const QuadratureConfig& inner = {});

// T_delta^j f via the B-spline kernel: a single quadrature per evaluation.
// j = 0 returns f.
RealFunction steklov_iterate(const RealFunction& f, double delta, int j,
                             const QuadratureConfig& inner = {});

// (I - T_delta)^r f = sum_j (-1)^j C(r,j) T_delta^j f.
RealFunction iterated_difference(const RealFunction& f, double delta, int r,
                                 const QuadratureConfig& inner = {});

// Omega_r(f, delta)_{p,w} = ||(I - T_delta)^r f||_{p,w}.
double modulus(const RealFunction& f, double delta, int r,
               const WeightedSpaceParams& sp, const QuadratureConfig& cfg = {});

// Averaging over the unit-interval partition [k+offset, k+1+offset).
RealFunction averaging_operator(const RealFunction& f, double partition_offset,
                                const QuadratureConfig& cfg = {});

// Potential-type approximate identity at scale t.
struct Mollifier {
  RealFunction phi;              // unit mass
  double radial_majorant_norm;   // ||phi~||_1
  double t;

  // Validates int phi = 1 (to 1e-8) and computes the majorant norm.
  static Mollifier make(RealFunction phi, double t,
                        const QuadratureConfig& cfg = {});
};

// f * phi_t with phi_t(x) = phi(x/t)/t.
RealFunction mollify(const RealFunction& f, const Mollifier& m,
                     const QuadratureConfig& inner = {});

double binomial(int n, int k);

}  // namespace expapprox
