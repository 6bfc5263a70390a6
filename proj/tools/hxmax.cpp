// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hxmax/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-element Maxwell solver with auxiliary-space "
               "preconditioning and coefficient-topology analysis"};
  app.require_subcommand(1);

  std::string config_path, out_path, mode, rhs = "random";
  double tol = -1.0;
  int maxit = -1;
  long long seed = -1;
  bool full_range = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--mode", mode, "iterations | dense_spectrum | probe");
    cmd->add_option("--tol", tol, "PCG tolerance");
    cmd->add_option("--maxit", maxit, "PCG iteration cap");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_flag("--full-range", full_range,
                  "sweep the full exponent range -8..8");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "topology report (JSON)");
  CLI::App* solve = app.add_subcommand("solve", "single PCG solve");
  CLI::App* sweep = app.add_subcommand("sweep", "coefficient sweep (CSV)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "dense spectrum (JSON)");
  for (CLI::App* cmd : {analyze, solve, sweep, spectrum}) add_common(cmd);
  solve->add_option("--rhs", rhs, "random | manufactured | zero");

  CLI11_PARSE(app, argc, argv);

  try {
    hxmax::ExperimentConfig cfg =
        hxmax::ExperimentConfig::from_json_text(read_file(config_path));
    if (!mode.empty()) cfg.mode = mode;
    if (tol > 0.0) cfg.tol = tol;
    if (maxit > 0) cfg.maxit = maxit;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (full_range) {
      cfg.sweep.clear();
      for (int k = -8; k <= 8; ++k) cfg.sweep.push_back(k);
    }

    std::string out;
    if (app.got_subcommand(analyze))
      out = hxmax::run_analyze(cfg);
    else if (app.got_subcommand(solve))
      out = hxmax::run_solve(cfg, rhs);
    else if (app.got_subcommand(sweep))
      out = hxmax::run_sweep(cfg);
    else
      out = hxmax::run_spectrum(cfg);
    write_output(out_path, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
