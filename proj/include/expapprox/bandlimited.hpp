#pragma once

#include <Eigen/Core>
#include <string>

#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

// de la Vallee Poussin kernel: (cos x - cos 2x)/(pi x^2), value 3/(2 pi) at 0.
double vp_kernel(double x);

// j-th derivative of the kernel, j in {0, 1, 2}.
double vp_kernel_deriv(int j, double x);

// J(f, sigma)(x) = sigma int f(x-u) vp_kernel(sigma u) du; band-limited to
// type 2*sigma, reproduces type-sigma functions. The result carries exact
// first and second derivatives (differentiated through the kernel).
RealFunction vp_approx(const RealFunction& f, double sigma,
                       const QuadratureConfig& cfg = {});

// Finite Shannon-sampling representation of an entire function of
// exponential type sigma: eval(x) = sum c_n sinc(sigma x / pi - n),
// nodes x_n = n pi / sigma.
struct SincExpansion {
  double sigma = 1.0;
  Eigen::VectorXd coeffs;  // c_{-N} .. c_N, size 2N+1

  int order() const { return (static_cast<int>(coeffs.size()) - 1) / 2; }
  double node(int n) const { return n * M_PI / sigma; }
  double coeff(int n) const { return coeffs[n + order()]; }
  double operator()(double x) const;

  // RealFunction view. When the alternating coefficient sum vanishes the
  // envelope is an analytic 1/x^2 bound; otherwise only 1/x decay holds.
  RealFunction to_function() const;
};

struct SpectralGrid {
  int samples = 1 << 14;
  double L = 32.0;
  double energy_fraction = 1e-3;  // tail energy threshold
};

// Smallest angular frequency above which the windowed discrete spectrum
// holds less than energy_fraction of the total energy.
double exp_type_estimate(const RealFunction& g, double sigma_probe,
                         const SpectralGrid& grid = {});

struct DeviationEstimate {
  double sigma = 0.0;
  double upper = 0.0;
  std::string method;   // "vp" or "oracle(N)"
  std::string fixture;
};

// ||f - J(f, sigma/2)||_{p,w}: constructive upper bound for the deviation
// A_sigma(f)_{p,w}.
DeviationEstimate deviation_upper(const RealFunction& f, double sigma,
                                  const WeightedSpaceParams& sp,
                                  const QuadratureConfig& cfg = {});

// Derivative-free minimization of ||f - g||_{p,w} over sinc expansions of
// type sigma with 2N+1 coefficients, initialized at samples of f.
DeviationEstimate deviation_oracle(const RealFunction& f, double sigma,
                                   const WeightedSpaceParams& sp, int N,
                                   const QuadratureConfig& cfg = {});

}  // namespace expapprox
