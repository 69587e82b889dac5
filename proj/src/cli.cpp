#include "expapprox/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expapprox/bandlimited.hpp"
#include "expapprox/harness.hpp"
#include "expapprox/steklov.hpp"
#include "expapprox/weights.hpp"

namespace expapprox {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct RunConfig {
  std::string command;
  std::optional<std::string> f, weight, out, format, suite, check;
  std::optional<double> p, sigma, delta, tol, L;
  std::optional<int> r, k;
};

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  static const std::set<std::string> known = {
      "command", "f", "p",   "weight", "r",   "k",     "sigma",
      "delta",   "out", "format", "tol",    "L",   "suite", "check"};
  for (const auto& [key, val] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("unknown config key: " + key);
  RunConfig c;
  if (j.contains("command")) c.command = j["command"].get<std::string>();
  auto str = [&](const char* k) -> std::optional<std::string> {
    if (j.contains(k)) return j[k].get<std::string>();
    return std::nullopt;
  };
  auto num = [&](const char* k) -> std::optional<double> {
    if (j.contains(k)) return j[k].get<double>();
    return std::nullopt;
  };
  c.f = str("f");
  c.weight = str("weight");
  c.out = str("out");
  c.format = str("format");
  c.suite = str("suite");
  c.check = str("check");
  c.p = num("p");
  c.sigma = num("sigma");
  c.delta = num("delta");
  c.tol = num("tol");
  c.L = num("L");
  if (j.contains("r")) c.r = j["r"].get<int>();
  if (j.contains("k")) c.k = j["k"].get<int>();
  return c;
}

void merge(RunConfig& base, const RunConfig& over) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.f, over.f);
  take(base.weight, over.weight);
  take(base.out, over.out);
  take(base.format, over.format);
  take(base.suite, over.suite);
  take(base.check, over.check);
  take(base.p, over.p);
  take(base.sigma, over.sigma);
  take(base.delta, over.delta);
  take(base.tol, over.tol);
  take(base.L, over.L);
  take(base.r, over.r);
  take(base.k, over.k);
}

void validate(const RunConfig& c) {
  if (c.p && *c.p < 1.0)
    throw std::invalid_argument("--p must be >= 1");
  if (c.sigma && *c.sigma <= 0.0)
    throw std::invalid_argument("--sigma must be positive");
  if (c.delta && *c.delta <= 0.0)
    throw std::invalid_argument("--delta must be positive");
  if (c.tol && *c.tol <= 0.0)
    throw std::invalid_argument("--tol must be positive");
  if (c.L && *c.L <= 0.0)
    throw std::invalid_argument("--L must be positive");
  if (c.r && (*c.r < 1 || *c.r > 3))
    throw std::invalid_argument("--r must be in 1..3");
  if (c.k && (*c.k < 0 || *c.k > 2))
    throw std::invalid_argument("--k must be in 0..2");
  if (c.format && *c.format != "csv" && *c.format != "json")
    throw std::invalid_argument("--format must be csv or json");
}

QuadratureConfig quad_config(const RunConfig& c) {
  QuadratureConfig qc;
  if (c.tol) {
    qc.rel_tol = *c.tol;
    qc.abs_tol = std::min(qc.abs_tol, *c.tol * 1e-4);
  }
  if (c.L) qc.truncation_radius = *c.L;
  return qc;
}

WeightedSpaceParams space_of(const RunConfig& c) {
  return {c.p.value_or(2.0), parse_weight(c.weight.value_or("const:1"))};
}

Fixture fixture_of(const RunConfig& c) {
  if (!c.f) throw std::invalid_argument("missing --f <fixture>");
  return fixture_by_name(*c.f);
}

int run_verify(const RunConfig& c) {
  Harness h(default_corpus(), default_spaces(), {}, quad_config(c));
  std::vector<InequalityReport> reports;
  if (c.check) {
    reports = h.run_check(*c.check);
  } else {
    const std::string suite = c.suite.value_or("default");
    if (suite != "default")
      throw std::invalid_argument("unknown suite: " + suite);
    reports = h.run_suite();
  }

  const std::string format = c.format.value_or("csv");
  const std::string out = c.out.value_or("report." + format);
  {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write report: " + out);
    os << (format == "csv" ? to_csv(reports) : to_json(reports));
  }

  // aggregate per registry id (prefix of check_id before '/')
  std::map<std::string, std::pair<int, int>> agg;
  int failed = 0;
  for (const auto& r : reports) {
    const std::string base = r.check_id.substr(0, r.check_id.find('/'));
    agg[base].second++;
    if (r.pass) {
      agg[base].first++;
    } else {
      ++failed;
      std::cout << "FAIL " << r.check_id << " p=" << fmt12(r.p)
                << " weight=" << r.weight << " r=" << r.r << " k=" << r.k
                << " param=" << fmt12(r.param) << " lhs=" << fmt12(r.lhs)
                << " rhs=" << fmt12(r.rhs) << " " << r.notes << "\n";
    }
  }
  for (const auto& [base, pt] : agg)
    std::cout << base << ": " << pt.first << "/" << pt.second << " passed\n";
  std::cout << (failed == 0 ? "PASS" : "FAIL") << " ("
            << reports.size() - failed << "/" << reports.size()
            << " checks); report written to " << out << "\n";
  return failed == 0 ? 0 : 1;
}

int dispatch(const RunConfig& c) {
  if (c.command == "verify") return run_verify(c);

  const QuadratureConfig qc = quad_config(c);
  const WeightedSpaceParams sp = space_of(c);

  if (c.command == "apconst") {
    const ApEstimate ap = ap_constant(sp.weight, sp.p);
    std::cout << (ap.finite ? fmt12(ap.constant) : std::string("NotInAp"))
              << "\n";
    return 0;
  }

  const Fixture fx = fixture_of(c);
  if (c.command == "norm") {
    std::cout << fmt12(weighted_norm(fx.f, sp, qc)) << "\n";
    return 0;
  }
  if (c.command == "modulus") {
    if (!c.delta) throw std::invalid_argument("missing --delta");
    std::cout << fmt12(modulus(fx.f, *c.delta, c.r.value_or(1), sp, qc))
              << "\n";
    return 0;
  }
  if (c.command == "vp") {
    if (!c.sigma) throw std::invalid_argument("missing --sigma");
    RealFunction diff =
        linear_combination({1.0, -1.0}, {fx.f, vp_approx(fx.f, *c.sigma, qc)});
    QuadratureConfig nc = qc;
    nc.max_radius = 256.0;
    std::cout << fmt12(weighted_norm(diff, sp, nc)) << "\n";
    return 0;
  }
  if (c.command == "deviation") {
    if (!c.sigma) throw std::invalid_argument("missing --sigma");
    Harness h({fx}, {sp}, {}, qc);
    const DeviationEstimate dev = h.deviation(h.corpus()[0], sp, *c.sigma);
    std::cout << fmt12(dev.upper) << " method=" << dev.method << "\n";
    return 0;
  }
  throw std::invalid_argument("unknown command: " + c.command);
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"approximation by entire functions of exponential type in "
               "weighted Lebesgue spaces"};
  app.require_subcommand(0, 1);

  RunConfig cli;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option_function<std::string>(
        "--f", [&](const std::string& v) { cli.f = v; },
        "fixture: gaussian|bump|indicator|sinc1|sinc2|expabs");
    sub->add_option_function<double>(
        "--p", [&](double v) { cli.p = v; }, "Lebesgue exponent (>= 1)");
    sub->add_option_function<std::string>(
        "--weight", [&](const std::string& v) { cli.weight = v; },
        "weight kind:param, e.g. const:1 or power:0.5");
    sub->add_option_function<int>(
        "--r", [&](int v) { cli.r = v; }, "modulus order");
    sub->add_option_function<int>(
        "--k", [&](int v) { cli.k = v; }, "derivative order");
    sub->add_option_function<double>(
        "--sigma", [&](double v) { cli.sigma = v; }, "exponential type");
    sub->add_option_function<double>(
        "--delta", [&](double v) { cli.delta = v; }, "averaging step");
    sub->add_option_function<double>(
        "--tol", [&](double v) { cli.tol = v; },
        "quadrature relative tolerance");
    sub->add_option_function<double>(
        "--L", [&](double v) { cli.L = v; },
        "initial whole-line truncation radius");
  };

  add_common(&app);
  CLI::App* norm = app.add_subcommand("norm", "weighted L^p norm of a fixture");
  CLI::App* mod =
      app.add_subcommand("modulus", "modulus of smoothness Omega_r(f, delta)");
  CLI::App* vp = app.add_subcommand(
      "vp", "band-limit approximation error ||f - J(f, sigma)||");
  CLI::App* dev = app.add_subcommand(
      "deviation", "upper estimate of the deviation A_sigma(f)");
  CLI::App* apc =
      app.add_subcommand("apconst", "Muckenhoupt constant of a weight");
  CLI::App* ver =
      app.add_subcommand("verify", "run inequality checks and write a report");
  for (CLI::App* sub : {norm, mod, vp, dev, apc, ver}) add_common(sub);
  ver->add_option_function<std::string>(
      "--suite", [&](const std::string& v) { cli.suite = v; },
      "suite name (default)");
  ver->add_option_function<std::string>(
      "--check", [&](const std::string& v) { cli.check = v; },
      "run a single registry check");
  ver->add_option_function<std::string>(
      "--out", [&](const std::string& v) { cli.out = v; }, "report path");
  ver->add_option_function<std::string>(
      "--format", [&](const std::string& v) { cli.format = v; },
      "csv or json");

  std::vector<const char*> argv;
  argv.push_back("expapprox");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig merged;
    if (!config_path.empty()) merged = load_config(config_path);
    merge(merged, cli);
    for (CLI::App* sub : {norm, mod, vp, dev, apc, ver})
      if (sub->parsed()) merged.command = sub->get_name();
    if (merged.command.empty())
      throw std::invalid_argument(
          "missing command: norm|modulus|vp|deviation|apconst|verify");
    validate(merged);
    return dispatch(merged);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "usage: expapprox <norm|modulus|vp|deviation|apconst|verify> "
                 "[--f F] [--p P] [--weight K:V] [--r R] [--k K] "
                 "[--sigma S] [--delta D] [--tol T] [--L L] [--out PATH] "
                 "[--format csv|json] [--config FILE]\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace expapprox
