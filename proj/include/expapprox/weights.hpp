#pragma once

#include <string>
#include <utility>
#include <vector>

#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/report.hpp"

namespace expapprox {

// A Muckenhoupt-candidate weight.
struct Weight {
  enum class Kind { Constant, Power, Tabulated };
  Kind kind = Kind::Constant;
  double c = 1.0;      // Constant
  double alpha = 0.0;  // Power: |x|^alpha
  std::vector<double> grid, values;  // Tabulated (linear interpolation)
  std::vector<double> singular_points;

  double operator()(double x) const;

  static Weight constant(double c);
  static Weight power(double alpha);
  static Weight tabulated(std::vector<double> grid, std::vector<double> values);

  std::string describe() const;  // "const:1", "power:0.5", ...
};

struct ApEstimate {
  double p = 2.0;
  double constant = 1.0;
  bool finite = true;  // false = the NotInAp flag
  std::pair<double, double> attaining_interval{0.0, 0.0};  // center, half-length
  enum class Method { ClosedForm, Scan } method = Method::Scan;
};

struct ApScanSpec {
  double L = 32.0;
  double center_step = 0.25;
  int j_min = -20;
  int j_max = 6;
  int essinf_samples = 4097;
};

struct WeightedSpaceParams {
  double p = 2.0;
  Weight weight;
  // Conjugate exponent; +inf when p == 1.
  double pprime() const;
};

struct DualWitness {
  RealFunction G;
  double norm_pprime = 0.0;  // ||G||_{p',w}, checked <= 1 + 1e-9
  WeightedSpaceParams space;
};

// [w]_p over the scan family; for power weights the closed form from
// origin-anchored intervals is cross-checked and the larger value returned.
// (Asymmetric intervals can beat the anchored family: |x|^{1/2} at p = 2
// gives 3/2, not the anchored 4/3.)
ApEstimate ap_constant(const Weight& w, double p, const ApScanSpec& scan = {});

// Closed-form A_p quantity of |x|^alpha over origin-anchored intervals
// [0, h]: 1/((alpha+1)(1 - alpha/(p-1))^{p-1}). A lower bound for [w]_p.
double power_anchored_ap(double alpha, double p);

// (int |f|^p w dx)^{1/p} via integrate_line.
double weighted_norm(const RealFunction& f, const WeightedSpaceParams& sp,
                     const QuadratureConfig& cfg = {});

// Essential sup of |f| by dense sampling of [-L, L].
double essential_sup(const RealFunction& f, double L = 32.0,
                     int samples = 4097);

// The norm-attaining dual witness: G = (|f|/||f||)^{p-1} for p > 1, G = 1
// for p = 1. Throws ZeroFunction when ||f|| = 0.
DualWitness extremal_dual(const RealFunction& f, const WeightedSpaceParams& sp,
                          const QuadratureConfig& cfg = {});

// ||f chi_A||_1 <= [w]_p^{1/p} <w>_A^{-1/p} ||f chi_A||_{p,w} on A = [a,b].
InequalityReport embed_l1(const RealFunction& f, const WeightedSpaceParams& sp,
                          double a, double b, const ApEstimate& ap,
                          const QuadratureConfig& cfg = {});

// Envelope of g*w given an envelope of g (handles growing power weights).
DecayEnvelope weight_product(const DecayEnvelope& env, const Weight& w);

}  // namespace expapprox
