#include "expapprox/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace expapprox {

namespace {
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

InequalityReport InequalityReport::make(std::string check_id, double p,
                                        std::string weight, int r, int k,
                                        double param, double lhs, double rhs,
                                        double constant_used,
                                        std::string constant_formula,
                                        std::string notes, double rel_tol) {
  InequalityReport rep;
  rep.check_id = std::move(check_id);
  rep.p = p;
  rep.weight = std::move(weight);
  rep.r = r;
  rep.k = k;
  rep.param = param;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.constant_used = constant_used;
  rep.constant_formula = std::move(constant_formula);
  rep.margin = rhs - lhs;
  const double slack = 10.0 * rel_tol * (std::abs(lhs) + std::abs(rhs));
  rep.pass = lhs <= rhs * (1.0 + 1e-9) + slack;
  rep.notes = std::move(notes);
  return rep;
}

std::string to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "check_id,p,weight,r,k,param,lhs,rhs,constant,margin,pass\n";
  for (const auto& r : reports) {
    os << r.check_id << ',' << fmt12(r.p) << ',' << r.weight << ',' << r.r
       << ',' << r.k << ',' << fmt12(r.param) << ',' << fmt12(r.lhs) << ','
       << fmt12(r.rhs) << ',' << fmt12(r.constant_used) << ','
       << fmt12(r.margin) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<InequalityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check_id"] = r.check_id;
    j["p"] = fmt12(r.p);
    j["weight"] = r.weight;
    j["r"] = r.r;
    j["k"] = r.k;
    j["param"] = fmt12(r.param);
    j["lhs"] = fmt12(r.lhs);
    j["rhs"] = fmt12(r.rhs);
    j["constant"] = fmt12(r.constant_used);
    j["margin"] = fmt12(r.margin);
    j["pass"] = r.pass;
    j["constant_formula"] = r.constant_formula;
    j["notes"] = r.notes;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

void sort_reports(std::vector<InequalityReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const InequalityReport& a, const InequalityReport& b) {
                     return std::tie(a.check_id, a.p, a.weight, a.r, a.k,
                                     a.param, a.notes) <
                            std::tie(b.check_id, b.p, b.weight, b.r, b.k,
                                     b.param, b.notes);
                   });
}

}  // namespace expapprox
