#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "expapprox/cli.hpp"

using namespace expapprox;

namespace {

struct CaptureStdout {
  std::stringstream buf;
  std::streambuf* old;
  CaptureStdout() : old(std::cout.rdbuf(buf.rdbuf())) {}
  ~CaptureStdout() { std::cout.rdbuf(old); }
  std::string text() const { return buf.str(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("norm command prints the golden value and exits 0") {
  CaptureStdout cap;
  const int rc =
      cli_run({"norm", "--f", "gaussian", "--p", "2", "--weight", "const:1"});
  CHECK(rc == 0);
  // ||e^{-x^2}||_2 = (pi/2)^{1/4}
  CHECK(std::stod(cap.text()) ==
        doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-8));
}

TEST_CASE("apconst prints the flag for excluded weights") {
  CaptureStdout cap;
  const int rc = cli_run({"apconst", "--weight", "power:-2", "--p", "2"});
  CHECK(rc == 0);
  CHECK(cap.text() == "NotInAp\n");
}

TEST_CASE("usage errors exit with code 2") {
  CaptureStdout cap;
  CHECK(cli_run({"frobnicate"}) == 2);
  CHECK(cli_run({"norm", "--f", "gaussian", "--p", "0.5"}) == 2);
  CHECK(cli_run({"modulus", "--f", "gaussian"}) == 2);  // missing --delta
  CHECK(cli_run({"verify", "--format", "xml"}) == 2);
  CHECK(cli_run({}) == 2);
}

TEST_CASE("help exits 0") {
  CaptureStdout cap;
  CHECK(cli_run({"--help"}) == 0);
}

TEST_CASE("config file drives a run; flags override it") {
  const std::string cfg = "/tmp/expapprox_test_cfg.json";
  write_file(cfg, R"({"command":"norm","f":"gaussian","p":2.0,)"
                  R"("weight":"const:1"})");
  {
    CaptureStdout cap;
    CHECK(cli_run({"norm", "--config", cfg}) == 0);
    CHECK(std::stod(cap.text()) ==
          doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-8));
  }
  {
    CaptureStdout cap;
    CHECK(cli_run({"norm", "--config", cfg, "--weight", "power:0.5"}) == 0);
    CHECK(cap.text().rfind("0.853602443", 0) == 0);
  }
  std::remove(cfg.c_str());
}

TEST_CASE("unknown config keys are rejected") {
  const std::string cfg = "/tmp/expapprox_test_badcfg.json";
  write_file(cfg, R"({"command":"norm","f":"gaussian","tolerance":0.1})");
  CaptureStdout cap;
  CHECK(cli_run({"norm", "--config", cfg}) == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("verify writes a CSV report with the contract header") {
  const std::string out = "/tmp/expapprox_test_report.csv";
  CaptureStdout cap;
  const int rc = cli_run({"verify", "--check", "duality", "--out", out});
  CHECK(rc == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("check_id,p,weight,r,k,param,lhs,rhs,constant,margin,pass",
                  0) == 0);
  CHECK(csv.find("duality/gaussian") != std::string::npos);
  CHECK(cap.text().find("PASS") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("verify emits JSON when asked") {
  const std::string out = "/tmp/expapprox_test_report.json";
  CaptureStdout cap;
  const int rc = cli_run(
      {"verify", "--check", "duality", "--out", out, "--format", "json"});
  CHECK(rc == 0);
  const std::string js = slurp(out);
  CHECK(js.find("\"check_id\"") != std::string::npos);
  CHECK(js.find("duality/gaussian") != std::string::npos);
  std::remove(out.c_str());
}
