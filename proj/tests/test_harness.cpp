#include <cmath>

#include "doctest.h"
#include "expapprox/harness.hpp"
#include "expapprox/report.hpp"

using namespace expapprox;

TEST_CASE("default corpus and spaces") {
  auto corpus = default_corpus();
  REQUIRE(corpus.size() == 6);
  CHECK(corpus[0].name == "gaussian");
  CHECK(fixture_by_name("sinc2").known_type == doctest::Approx(2.0));
  CHECK(fixture_by_name("expabs").sobolev_order == 1);
  CHECK_THROWS(fixture_by_name("nonesuch"));

  auto spaces = default_spaces();
  REQUIRE(spaces.size() == 4);
  CHECK(spaces[0].p == 1.0);
  CHECK(spaces[2].weight.describe() == "power:0.5");
}

TEST_CASE("weight parsing round-trips the describe format") {
  CHECK(parse_weight("const:2.5").describe() == "const:2.5");
  CHECK(parse_weight("power:0.5").describe() == "power:0.5");
  CHECK(parse_weight("const").describe() == "const:1");  // param defaults to 1
  CHECK_THROWS(parse_weight("fancy:1"));
}

TEST_CASE("constant table") {
  CHECK(c1_constant(2.0, 1.0) == doctest::Approx(18.0));
  CHECK(c1_constant(1.0, 1.0) == doctest::Approx(54.0));
  CHECK(c2_jackson(1) == doctest::Approx(1.0));
  CHECK(c2_marchaud(1) == doctest::Approx(36.0));
  CHECK(c2_jackson(2) == doctest::Approx(4.0 * (4.0 + 34.0 * 34.0)));
  CHECK(c2_jackson(2) == doctest::Approx(c2_marchaud(2)));
}

TEST_CASE("registry lists every check once") {
  const auto& ids = check_registry();
  CHECK(ids.size() == 17);
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j) CHECK(ids[i] != ids[j]);
}

TEST_CASE("report pass rule and margin") {
  InequalityReport ok = InequalityReport::make("x", 2, "const:1", 1, 0, 0.5,
                                               1.0, 2.0, 2.0, "c");
  CHECK(ok.pass);
  CHECK(ok.margin == doctest::Approx(1.0));
  InequalityReport bad = InequalityReport::make("x", 2, "const:1", 1, 0, 0.5,
                                                2.0 + 1e-3, 2.0, 2.0, "c");
  CHECK_FALSE(bad.pass);
  // quadrature slack: tiny overshoots within tolerance still pass
  InequalityReport slack = InequalityReport::make(
      "x", 2, "const:1", 1, 0, 0.5, 2.0 + 1e-10, 2.0, 2.0, "c");
  CHECK(slack.pass);
}

TEST_CASE("report serialization") {
  std::vector<InequalityReport> reps{InequalityReport::make(
      "demo/f", 2, "const:1", 1, 0, 0.25, 0.5, 1.5, 3.0, "3")};
  const std::string csv = to_csv(reps);
  CHECK(csv.rfind("check_id,p,weight,r,k,param,lhs,rhs,constant,margin,pass",
                  0) == 0);
  CHECK(csv.find("demo/f") != std::string::npos);
  CHECK(csv.find("true") != std::string::npos);
  const std::string js = to_json(reps);
  CHECK(js.find("\"check_id\"") != std::string::npos);
}

TEST_CASE("report ordering is deterministic") {
  std::vector<InequalityReport> reps;
  for (double param : {0.5, 0.25}) {
    InequalityReport r;
    r.check_id = "b";
    r.param = param;
    reps.push_back(r);
  }
  InequalityReport a;
  a.check_id = "a";
  reps.push_back(a);
  sort_reports(reps);
  CHECK(reps[0].check_id == "a");
  CHECK(reps[1].param == doctest::Approx(0.25));
}

TEST_CASE("spaces outside the Muckenhoupt class yield flagged reports") {
  std::vector<WeightedSpaceParams> bad{{2.0, Weight::power(-2.0)}};
  Harness h(default_corpus(), bad);
  auto reps = h.run_check("duality");
  REQUIRE_FALSE(reps.empty());
  for (const auto& r : reps) {
    CHECK_FALSE(r.pass);
    CHECK(r.notes == "NotInAp");
  }
}

TEST_CASE("unknown check ids are rejected") {
  Harness h(default_corpus(), default_spaces());
  CHECK_THROWS(h.run_check("nonesuch"));
}

TEST_CASE("duality check passes over the default grid") {
  Harness h(default_corpus(), default_spaces());
  auto reps = h.run_check("duality");
  CHECK(reps.size() == 20);
  for (const auto& r : reps) CHECK(r.pass);
}

TEST_CASE("cached primitives are consistent across calls") {
  Harness h(default_corpus(), default_spaces());
  const Fixture& fx = h.corpus()[0];
  const WeightedSpaceParams& sp = h.spaces()[1];
  const double n1 = h.norm(fx, sp);
  const double n2 = h.norm(fx, sp);
  CHECK(n1 == n2);
  CHECK(n1 == doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-9));
  CHECK(h.ap_of(sp).constant == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("slowly decaying fixtures are excluded where the norm is infeasible") {
  Harness h(default_corpus(), default_spaces());
  const Fixture& sinc = fixture_by_name("sinc1");
  CHECK_FALSE(h.admissible(sinc, h.spaces()[0]));  // p = 1: 1/x^2 not summable enough
  CHECK(h.admissible(sinc, h.spaces()[1]));
  CHECK(h.admissible(h.corpus()[0], h.spaces()[0]));
}
