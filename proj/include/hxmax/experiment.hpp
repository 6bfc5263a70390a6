// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_EXPERIMENT_HPP
#define HXMAX_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hxmax/geometry.hpp"
#include "hxmax/topology.hpp"

namespace hxmax {

// Driver configuration for the analyze/solve/sweep/spectrum commands.
struct ExperimentConfig {
  std::string geometry = "half_cube";  // single | half_cube | interlock |
                                       // checkerboard | blocks2x2x2 | custom
  int n = 4;
  // Coefficient templates: "a" (alpha=1, beta_2 = 10^k), "b" (beta=1,
  // alpha_2 = 10^k), "checkerboard" (alpha=(1,1,eps,eps),
  // beta=(eta,eta,eps,eps)), "constant", "custom".
  std::string coeff_template = "a";
  std::vector<double> sweep{0.0};  // exponents k or eps values
  double tol = 1e-8;
  int maxit = 1000;
  std::string mode = "iterations";  // iterations | dense_spectrum | probe
  double tau = 10.0;
  std::uint64_t seed = 1;
  double eta = -1.0;  // checkerboard eta; < 0 means eta = eps
  GeometryConfig custom_geometry;        // used when geometry == "custom"
  std::vector<double> alpha, beta;       // used when template == "custom"

  static ExperimentConfig from_json_text(const std::string& text);
};

GeometryConfig make_geometry(const ExperimentConfig& cfg);
CoefficientField make_coefficients(const ExperimentConfig& cfg,
                                   double sweep_value, int count);

// JSON topology report (stable keys: gamma_sets, strange_vertices, ns,
// rho_class, assumptions, sigma_levels, ancestor_depths, exponent_m).
std::string run_analyze(const ExperimentConfig& cfg);

// CSV, one row per sweep point.
std::string run_sweep(const ExperimentConfig& cfg);

// JSON solve summary; rhs_mode is "random", "manufactured" or "zero".
std::string run_solve(const ExperimentConfig& cfg,
                      const std::string& rhs_mode);

// JSON dense spectrum at the first sweep point.
std::string run_spectrum(const ExperimentConfig& cfg);

}  // namespace hxmax

#endif  // HXMAX_EXPERIMENT_HPP
