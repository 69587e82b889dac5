#pragma once

#include <string>
#include <vector>

namespace expapprox {

// One verified inequality: both sides, the explicit constant, and the margin.
struct InequalityReport {
  std::string check_id;  // "<registry id>/<fixture label>"
  double p = 0.0;
  std::string weight;
  int r = 0;
  int k = 0;
  double param = 0.0;  // delta, sigma, tau, t ... whichever the check varies
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_used = 0.0;
  std::string constant_formula;
  double margin = 0.0;
  bool pass = false;
  std::string notes;

  // Quadrature slack folded into the pass rule.
  static InequalityReport make(std::string check_id, double p,
                               std::string weight, int r, int k, double param,
                               double lhs, double rhs, double constant_used,
                               std::string constant_formula,
                               std::string notes = "",
                               double rel_tol = 1e-8);
};

std::string to_csv(const std::vector<InequalityReport>& reports);
std::string to_json(const std::vector<InequalityReport>& reports);

// Deterministic ordering: by check_id, then p, weight, r, k, param.
void sort_reports(std::vector<InequalityReport>& reports);

}  // namespace expapprox
