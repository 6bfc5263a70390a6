// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hxmax/experiment.hpp"

using namespace hxmax;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

int count_fields(const std::string& line) {
  int n = 1;
  for (char c : line) n += c == ',';
  return n;
}

}  // namespace

TEST_CASE("config parsing: defaults and overrides") {
  auto c = ExperimentConfig::from_json_text(
      R"({"geometry":"checkerboard","n":3,"template":"b","sweep":[1,2],)"
      R"("tol":1e-6,"maxit":77,"mode":"probe","tau":5,"seed":9,"eta":0.5})");
  CHECK(c.geometry == "checkerboard");
  CHECK(c.n == 3);
  CHECK(c.coeff_template == "b");
  CHECK(c.sweep == std::vector<double>{1.0, 2.0});
  CHECK(c.tol == 1e-6);
  CHECK(c.maxit == 77);
  CHECK(c.mode == "probe");
  CHECK(c.tau == 5.0);
  CHECK(c.seed == 9);
  CHECK(c.eta == 0.5);

  auto d = ExperimentConfig::from_json_text(R"({})" );
  CHECK(d.geometry == "half_cube");
  CHECK(d.n == 4);
  CHECK(d.sweep == std::vector<double>{0.0});

  CHECK_THROWS(ExperimentConfig::from_json_text(R"({"sweep":[]})"));
}

TEST_CASE("coefficient templates") {
  ExperimentConfig c;
  c.coeff_template = "a";
  auto f = make_coefficients(c, 3.0, 2);
  CHECK(f.alpha == std::vector<double>{1.0, 1.0});
  CHECK(f.beta[1] == doctest::Approx(1000.0));

  c.coeff_template = "b";
  f = make_coefficients(c, -2.0, 2);
  CHECK(f.beta == std::vector<double>{1.0, 1.0});
  CHECK(f.alpha[1] == doctest::Approx(0.01));

  c.coeff_template = "checkerboard";
  f = make_coefficients(c, 1e-3, 4);
  CHECK(f.alpha == std::vector<double>{1.0, 1.0, 1e-3, 1e-3});
  CHECK(f.beta == std::vector<double>{1e-3, 1e-3, 1e-3, 1e-3});
  c.eta = 0.25;
  f = make_coefficients(c, 1e-3, 4);
  CHECK(f.beta[0] == doctest::Approx(0.25));

  c.coeff_template = "custom";
  c.alpha = {1.0, 2.0};
  c.beta = {3.0, 4.0};
  f = make_coefficients(c, 0.0, 2);
  CHECK(f.alpha == c.alpha);
  CHECK(f.beta == c.beta);
}

TEST_CASE("analyze emits the stable JSON schema") {
  ExperimentConfig c;
  c.geometry = "checkerboard";
  c.n = 2;
  c.coeff_template = "checkerboard";
  c.sweep = {1e-4};
  std::string text = run_analyze(c);
  auto j = nlohmann::json::parse(text);
  for (const char* key :
       {"geometry", "n", "alpha", "beta", "tau", "gamma_sets",
        "quasi_monotone", "strange_vertices", "ns", "rho_class", "assumptions",
        "classification", "sigma_levels", "ancestor_depths", "exponent_m"})
    CHECK(j.contains(key));
  CHECK(j["ns"] == 1);
  CHECK(j["rho_class"] == "one");
  CHECK(j["exponent_m"] == 3);
  CHECK(j["strange_vertices"].size() == 1);
  CHECK(j["quasi_monotone"]["vertices"] == false);
  CHECK(j["quasi_monotone"]["edges"] == true);
  CHECK(j["gamma_sets"].size() == 4);
  CHECK(text.back() == '\n');
}

TEST_CASE("sweep emits one CSV row per sweep point with a fixed header") {
  ExperimentConfig c;
  c.geometry = "half_cube";
  c.n = 2;
  c.coeff_template = "a";
  c.sweep = {-2.0, 0.0, 2.0};
  std::string csv = run_sweep(c);
  auto lines = split_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "k_or_eps,n,dofs,pcg_iters,lambda_min,lambda_ns_plus_1,lambda_max,"
        "cond,reduced_cond,probe_ratio,constrained_ratio,f_witness,status");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(count_fields(lines[i]) == 13);
    CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "ok");
  }
}

TEST_CASE("sweep output is byte-identical across runs") {
  ExperimentConfig c;
  c.geometry = "checkerboard";
  c.n = 2;
  c.coeff_template = "checkerboard";
  c.sweep = {1e-2, 1e-4};
  c.mode = "dense_spectrum";
  CHECK(run_sweep(c) == run_sweep(c));
  c.mode = "iterations";
  CHECK(run_sweep(c) == run_sweep(c));
  ExperimentConfig a;
  a.geometry = "checkerboard";
  a.n = 2;
  a.coeff_template = "checkerboard";
  a.sweep = {1e-3};
  CHECK(run_analyze(a) == run_analyze(a));
}

TEST_CASE("solve: zero rhs needs no iterations") {
  ExperimentConfig c;
  c.geometry = "half_cube";
  c.n = 2;
  c.coeff_template = "a";
  c.sweep = {0.0};
  auto j = nlohmann::json::parse(run_solve(c, "zero"));
  CHECK(j["iterations"] == 0);
  CHECK(j["converged"] == true);
}

TEST_CASE("solve: manufactured solution is recovered") {
  ExperimentConfig c;
  c.geometry = "half_cube";
  c.n = 4;
  c.coeff_template = "a";
  c.sweep = {2.0};
  c.tol = 1e-10;
  auto j = nlohmann::json::parse(run_solve(c, "manufactured"));
  CHECK(j["converged"] == true);
  CHECK(j["a_norm_error"].get<double>() <= 1e-6);
}

TEST_CASE("spectrum report lists the dense eigenvalues") {
  ExperimentConfig c;
  c.geometry = "single";
  c.n = 2;
  c.coeff_template = "constant";
  c.sweep = {0.0};
  auto j = nlohmann::json::parse(run_spectrum(c));
  REQUIRE(j.contains("eigenvalues"));
  auto ev = j["eigenvalues"].get<std::vector<double>>();
  REQUIRE(!ev.empty());
  CHECK(std::is_sorted(ev.begin(), ev.end()));
  CHECK(ev.front() > 0.0);
  CHECK(j["cond"].get<double>() ==
        doctest::Approx(ev.back() / ev.front()).epsilon(1e-10));
}

TEST_CASE("probe mode fills the probe columns on the checkerboard") {
  ExperimentConfig c;
  c.geometry = "checkerboard";
  c.n = 2;
  c.coeff_template = "checkerboard";
  c.sweep = {1e-4};
  c.mode = "probe";
  auto lines = split_lines(run_sweep(c));
  REQUIRE(lines.size() == 2);
  // probe_ratio, constrained_ratio and f_witness are populated.
  std::vector<std::string> fields;
  std::istringstream in(lines[1]);
  std::string f;
  while (std::getline(in, f, ',')) fields.push_back(f);
  REQUIRE(fields.size() == 13);
  CHECK(!fields[9].empty());
  CHECK(!fields[10].empty());
  CHECK(!fields[11].empty());
  CHECK(std::stod(fields[9]) > std::stod(fields[10]));
}

TEST_CASE("error rows carry a status instead of aborting the sweep") {
  ExperimentConfig c;
  c.geometry = "half_cube";
  c.n = 2;
  c.coeff_template = "checkerboard";  // needs 4 subdomains -> per-row error
  c.sweep = {1e-2};
  auto lines = split_lines(run_sweep(c));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find("error:") != std::string::npos);
}
