#pragma once

#include <map>
#include <string>
#include <vector>

#include "expapprox/bandlimited.hpp"
#include "expapprox/function.hpp"
#include "expapprox/quadrature.hpp"
#include "expapprox/report.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

struct Fixture {
  RealFunction f;
  std::string name;
  double known_type = 0.0;  // > 0 for band-limited fixtures
  bool smooth = false;      // admitted to convergence/K suites
  int sobolev_order = 0;    // largest r with f in W^r (a.e. derivative = weak)
};

// gaussian, bump, indicator, sinc1, sinc2, expabs
std::vector<Fixture> default_corpus();
Fixture fixture_by_name(const std::string& name);

// {(1, const 1), (2, const 1), (2, power 1/2), (3, power 1)}
std::vector<WeightedSpaceParams> default_spaces();

// "const:1", "power:0.5", ...
Weight parse_weight(const std::string& text);

struct SuiteGrids {
  std::vector<int> rs{1, 2};
  std::vector<int> ks{1};
  std::vector<double> deltas;  // 2^-j, j = 0..6
  std::vector<double> sigmas{1, 2, 4, 8};
  std::vector<double> taus{-5, -1, 0, 0.3, 2, 10};
  std::vector<double> lambdas{0.25, 1, 8};
  int convergence_j = 12;   // 2^-j scale for modulus/K/mollifier tails
  int vp_convergence_j = 10;  // sigma = 2^(j-1) for the band-limit tail
  int oracle_terms = 12;
  SuiteGrids() {
    for (int j = 0; j <= 6; ++j) deltas.push_back(std::pow(2.0, -j));
  }
};

double c1_constant(double p, double ap);             // 6 * 3^{2/p} ap^{1/p}
double c2_jackson(int r);                            // 1; 2^r (r^r + 34^r)
double c2_marchaud(int r);                           // 36; 2^r (r^r + 34^r)
double c3_constant(double c1v, int r);
double c4_constant(double c1v, int r, int k);
double c5_constant(double c1v, int r, int k);

const std::vector<std::string>& check_registry();

// Runs registry checks over corpus x spaces with shared caches for norms,
// moduli and deviations. Serial and deterministic.
class Harness {
 public:
  Harness(std::vector<Fixture> corpus, std::vector<WeightedSpaceParams> spaces,
          SuiteGrids grids = {}, QuadratureConfig cfg = {});

  std::vector<InequalityReport> run_check(const std::string& check_id);
  std::vector<InequalityReport> run_suite();

  // cached primitives (shared with the CLI)
  double norm(const Fixture& fx, const WeightedSpaceParams& sp);
  double omega(const Fixture& fx, const WeightedSpaceParams& sp, int r,
               double delta);
  // min over the computable upper bounds of A_sigma; method recorded
  DeviationEstimate deviation(const Fixture& fx, const WeightedSpaceParams& sp,
                              double sigma);
  const ApEstimate& ap_of(const WeightedSpaceParams& sp);
  bool admissible(const Fixture& fx, const WeightedSpaceParams& sp);

  const std::vector<Fixture>& corpus() const { return corpus_; }
  const std::vector<WeightedSpaceParams>& spaces() const { return spaces_; }
  const SuiteGrids& grids() const { return grids_; }

 private:
  using Report = InequalityReport;
  using Reports = std::vector<InequalityReport>;

  std::string space_key(const WeightedSpaceParams& sp) const;
  double cached_norm_of(const std::string& key, const RealFunction& g,
                        const WeightedSpaceParams& sp,
                        const QuadratureConfig& cfg);
  const DualWitness& dual_of(const Fixture& fx, const WeightedSpaceParams& sp);
  // A_{s} upper bound evaluated on the cached sigma ladder (monotone
  // substitution: the largest ladder point <= s)
  double deviation_ladder(const Fixture& fx, const WeightedSpaceParams& sp,
                          double s);

  void check_steklov_bound(Reports& out, bool lt);
  void check_averaging(Reports& out);
  void check_mollifier_bound(Reports& out);
  void check_mollifier_converge(Reports& out);
  void check_embed_l1(Reports& out);
  void check_duality(Reports& out);
  void check_transfer_sandwich(Reports& out);
  void check_bernstein_step(Reports& out);
  void check_quasi_monotone(Reports& out);
  void check_k_equiv_upper(Reports& out);
  void check_jackson(Reports& out);
  void check_inverse(Reports& out);
  void check_marchaud(Reports& out);
  void check_derivative_inverse(Reports& out);
  void check_vp_properties(Reports& out);
  void check_modulus_props(Reports& out);

  std::vector<Fixture> corpus_;
  std::vector<WeightedSpaceParams> spaces_;
  SuiteGrids grids_;
  QuadratureConfig cfg_;

  std::map<std::string, double> norm_cache_;
  std::map<std::string, DeviationEstimate> dev_cache_;
  std::map<std::string, ApEstimate> ap_cache_;
  std::map<std::string, DualWitness> dual_cache_;
  std::map<std::string, bool> admissible_cache_;
};

}  // namespace expapprox
