// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "hxmax/hx.hpp"
#include "hxmax/kernels.hpp"
#include "hxmax/probe.hpp"

namespace hxmax {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

VecD random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VecD v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

ordered_json point_json(const Mesh& mesh, int v) {
  const Point& p = mesh.vertices[v];
  return ordered_json::array({p[0], p[1], p[2]});
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.geometry = j.value("geometry", c.geometry);
  c.n = j.value("n", c.n);
  c.coeff_template = j.value("template", c.coeff_template);
  if (j.contains("sweep")) c.sweep = j["sweep"].get<std::vector<double>>();
  c.tol = j.value("tol", c.tol);
  c.maxit = j.value("maxit", c.maxit);
  c.mode = j.value("mode", c.mode);
  c.tau = j.value("tau", c.tau);
  c.seed = j.value("seed", c.seed);
  c.eta = j.value("eta", c.eta);
  if (j.contains("custom_geometry"))
    c.custom_geometry =
        GeometryConfig::from_json_text(j["custom_geometry"].dump());
  if (j.contains("alpha")) c.alpha = j["alpha"].get<std::vector<double>>();
  if (j.contains("beta")) c.beta = j["beta"].get<std::vector<double>>();
  if (c.sweep.empty()) throw std::invalid_argument("sweep must be non-empty");
  return c;
}

GeometryConfig make_geometry(const ExperimentConfig& cfg) {
  if (cfg.geometry == "single") return GeometryConfig::single(cfg.n);
  if (cfg.geometry == "half_cube") return GeometryConfig::half_cube(cfg.n);
  if (cfg.geometry == "interlock") return GeometryConfig::interlock(cfg.n);
  if (cfg.geometry == "checkerboard")
    return GeometryConfig::checkerboard(cfg.n);
  if (cfg.geometry == "blocks2x2x2") return GeometryConfig::blocks2x2x2(cfg.n);
  if (cfg.geometry == "custom") {
    GeometryConfig g = cfg.custom_geometry;
    if (g.n == 0) g.n = cfg.n;
    return g;
  }
  throw std::invalid_argument("unknown geometry: " + cfg.geometry);
}

CoefficientField make_coefficients(const ExperimentConfig& cfg,
                                   double sweep_value, int count) {
  CoefficientField c;
  c.tau = cfg.tau;
  c.alpha.assign(count, 1.0);
  c.beta.assign(count, 1.0);
  const std::string& t = cfg.coeff_template;
  if (t == "constant") {
    // nothing to do
  } else if (t == "a" || t == "b") {
    if (count < 2)
      throw std::invalid_argument("template needs two subdomains");
    double jump = std::pow(10.0, sweep_value);
    if (t == "a")
      c.beta[1] = jump;
    else
      c.alpha[1] = jump;
  } else if (t == "checkerboard") {
    if (count != 4)
      throw std::invalid_argument("checkerboard template needs 4 subdomains");
    double eps = sweep_value;
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    double eta = cfg.eta < 0.0 ? eps : cfg.eta;
    c.alpha = {1.0, 1.0, eps, eps};
    c.beta = {eta, eta, eps, eps};
  } else if (t == "custom") {
    if (static_cast<int>(cfg.alpha.size()) != count ||
        static_cast<int>(cfg.beta.size()) != count)
      throw std::invalid_argument("custom coefficients have wrong length");
    c.alpha = cfg.alpha;
    c.beta = cfg.beta;
  } else {
    throw std::invalid_argument("unknown template: " + t);
  }
  c.validate(count);
  return c;
}

std::string run_analyze(const ExperimentConfig& cfg) {
  Mesh mesh = build_structured_cube(cfg.n);
  GeometryConfig geo = make_geometry(cfg);
  SubdomainPartition part = assign_subdomains(mesh, geo);
  TopologyContext ctx = build_topology_context(mesh, part);
  CoefficientField coeffs =
      make_coefficients(cfg, cfg.sweep.front(), part.count);
  TopologyReport rep = analyze_topology(ctx, coeffs);

  ordered_json j;
  j["geometry"] = cfg.geometry;
  j["n"] = cfg.n;
  j["alpha"] = coeffs.alpha;
  j["beta"] = coeffs.beta;
  j["tau"] = coeffs.tau;

  j["gamma_sets"] = ordered_json::array();
  for (const auto& g : rep.gammas) {
    ordered_json gj;
    gj["subdomain"] = part.names[g.k];
    gj["coarse_faces"] = g.faces;
    gj["extra_edge_runs"] = g.extra_edges.size();
    gj["isolated_vertices"] = ordered_json::array();
    for (int v : g.isolated_vertices)
      gj["isolated_vertices"].push_back(point_json(mesh, v));
    gj["connected"] = g.connected;
    gj["lipschitz_face_union"] = g.lipschitz_face_union();
    j["gamma_sets"].push_back(gj);
  }

  j["quasi_monotone"] = {{"vertices", rep.qm.vertices_ok},
                         {"edges", rep.qm.edges_ok},
                         {"generalized", rep.gqm.ok}};

  j["strange_vertices"] = ordered_json::array();
  for (const auto& sv : rep.strange) {
    ordered_json sj;
    sj["position"] = point_json(mesh, sv.vertex);
    sj["boundary"] = sv.boundary;
    sj["im_c"] = ordered_json::array();
    for (int r : sv.im_c) sj["im_c"].push_back(part.names[r]);
    sj["im_star"] = ordered_json::array();
    for (int r : sv.im_star) sj["im_star"].push_back(part.names[r]);
    sj["n_v"] = sv.n_v;
    j["strange_vertices"].push_back(sj);
  }
  j["ns"] = rep.ns;
  j["rho_class"] = rep.rho;

  ordered_json aj;
  aj["a31"] = {{"ok", rep.assumptions.a31_ok},
               {"margin", rep.assumptions.a31_margin}};
  aj["a32"] = {{"ok", rep.assumptions.a32_ok},
               {"ok_all_subdomains", rep.assumptions.a32_ok_all}};
  aj["a33"] = {{"ok", rep.assumptions.a33_ok}};
  auto witnesses = [&part](const std::vector<AssumptionReport::PairWitness>& w) {
    ordered_json out = ordered_json::array();
    for (const auto& x : w) {
      ordered_json e;
      e["subdomain"] = part.names[x.i];
      if (x.j >= 0) e["other"] = part.names[x.j];
      e["reason"] = x.reason;
      out.push_back(e);
    }
    return out;
  };
  aj["a31"]["witnesses"] = witnesses(rep.assumptions.a31_witnesses);
  aj["a32"]["witnesses"] = witnesses(rep.assumptions.a32_witnesses);
  aj["a33"]["witnesses"] = witnesses(rep.assumptions.a33_witnesses);
  j["assumptions"] = aj;

  ordered_json cj;
  auto names = [&part](const std::vector<int>& v) {
    ordered_json out = ordered_json::array();
    for (int k : v) out.push_back(part.names[k]);
    return out;
  };
  cj["imc_s"] = names(rep.cls.imc_s);
  cj["im"] = names(rep.cls.im);
  cj["imc_s1"] = names(rep.cls.imc_s1);
  cj["imc_s2"] = names(rep.cls.imc_s2);
  cj["imc_sa"] = names(rep.cls.imc_sa);
  cj["imc_sb"] = names(rep.cls.imc_sb);
  j["classification"] = cj;

  j["sigma_levels"] = ordered_json::array();
  for (const auto& lev : rep.sigma) j["sigma_levels"].push_back(names(lev));
  j["ancestor_depths"] = rep.ancestors.depth;
  j["exponent_m"] = rep.ancestors.exponent_m;
  return j.dump(2) + "\n";
}

namespace {

struct SweepRow {
  std::string k_or_eps;
  int n = 0;
  int dofs = 0;
  std::string pcg_iters, lambda_min, lambda_ns_plus_1, lambda_max, cond,
      reduced_cond, probe_ratio, constrained_ratio, f_witness;
  std::string status = "ok";
};

std::string csv_of(const std::vector<SweepRow>& rows) {
  std::string out =
      "k_or_eps,n,dofs,pcg_iters,lambda_min,lambda_ns_plus_1,lambda_max,"
      "cond,reduced_cond,probe_ratio,constrained_ratio,f_witness,status\n";
  for (const auto& r : rows) {
    out += r.k_or_eps + "," + std::to_string(r.n) + "," +
           std::to_string(r.dofs) + "," + r.pcg_iters + "," + r.lambda_min +
           "," + r.lambda_ns_plus_1 + "," + r.lambda_max + "," + r.cond +
           "," + r.reduced_cond + "," + r.probe_ratio + "," +
           r.constrained_ratio + "," + r.f_witness + "," + r.status + "\n";
  }
  return out;
}

}  // namespace

std::string run_sweep(const ExperimentConfig& cfg) {
  Mesh mesh = build_structured_cube(cfg.n);
  GeometryConfig geo = make_geometry(cfg);
  SubdomainPartition part = assign_subdomains(mesh, geo);
  TopologyContext ctx = build_topology_context(mesh, part);

  std::vector<SweepRow> rows;
  for (double sval : cfg.sweep) {
    SweepRow row;
    row.k_or_eps = fmt(sval);
    row.n = cfg.n;
    try {
      CoefficientField coeffs = make_coefficients(cfg, sval, part.count);
      std::vector<StrangeVertex> strange =
          detect_strange_vertices(ctx, coeffs);
      int ns = multiplicity_ns(strange);

      HxSystem sys = build_hx_system(mesh, part, coeffs);
      row.dofs = sys.a.rows();
      VecD rhs = random_vector(sys.a.rows(), cfg.seed);
      auto aop = [&sys](const VecD& x) { return sys.a.apply(x); };
      PcgResult sol = pcg(aop, sys.b.op(), rhs, cfg.tol, cfg.maxit);
      row.pcg_iters = std::to_string(sol.iterations);
      if (!sol.converged) row.status = "maxit";

      SpectrumReport spec;
      if (cfg.mode == "iterations") {
        // Harvest the spectrum from a tighter PCG run.
        spec = measure_lanczos(sys.a, sys.b.op(), rhs,
                               std::min(cfg.tol, 1e-12), cfg.maxit);
      } else {
        spec = measure_dense(sys.a, sys.b.op());
      }
      row.lambda_min = fmt(spec.lambda_min);
      row.lambda_max = fmt(spec.lambda_max);
      row.cond = fmt(spec.cond);
      if (ns < static_cast<int>(spec.eigenvalues.size())) {
        row.lambda_ns_plus_1 = fmt(spec.eigenvalues[ns]);
        row.reduced_cond = fmt(reduced_condition(spec, ns));
      }

      if (cfg.mode == "probe") {
        ProbeContext probe(mesh, part, coeffs);
        auto wc = probe.worst_case();
        row.probe_ratio = fmt(wc.ratio);
        // Constrained probe when the single interior two-cube strange
        // vertex is present.
        if (strange.size() == 1 && !strange[0].boundary &&
            strange[0].n_v == 2) {
          ConstraintFunctional f = strange_vertex_functional(ctx, strange[0]);
          VecD fred = f.reduced(probe.edge_map());
          row.f_witness = fmt(std::abs(kernels::dot(
              fred.data(), wc.witness.data(), fred.size())));
          auto cwc = probe.worst_case(&fred);
          row.constrained_ratio = fmt(cwc.ratio);
        }
      }
    } catch (const std::exception& e) {
      row.status = std::string("error:") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return csv_of(rows);
}

std::string run_solve(const ExperimentConfig& cfg,
                      const std::string& rhs_mode) {
  Mesh mesh = build_structured_cube(cfg.n);
  GeometryConfig geo = make_geometry(cfg);
  SubdomainPartition part = assign_subdomains(mesh, geo);
  CoefficientField coeffs =
      make_coefficients(cfg, cfg.sweep.front(), part.count);
  HxSystem sys = build_hx_system(mesh, part, coeffs);
  auto aop = [&sys](const VecD& x) { return sys.a.apply(x); };

  ordered_json j;
  j["geometry"] = cfg.geometry;
  j["n"] = cfg.n;
  j["dofs"] = sys.a.rows();
  j["rhs"] = rhs_mode;

  VecD rhs;
  VecD ustar;
  if (rhs_mode == "random") {
    rhs = random_vector(sys.a.rows(), cfg.seed);
  } else if (rhs_mode == "zero") {
    rhs.assign(sys.a.rows(), 0.0);
  } else if (rhs_mode == "manufactured") {
    // u* = edge interpolation of the smooth field (yz, xz, xy).
    const int nn = mesh.num_vertices();
    VecD w(3 * nn);
    for (int i = 0; i < nn; ++i) {
      const Point& p = mesh.vertices[i];
      w[0 * nn + i] = p[1] * p[2];
      w[1 * nn + i] = p[0] * p[2];
      w[2 * nn + i] = p[0] * p[1];
    }
    SparseMatrix pi_full = nodal_to_edge_interpolation(mesh, false);
    VecD ustar_full = pi_full.apply(w);
    ustar.resize(sys.edges.n_red);
    for (int i = 0; i < sys.edges.n_red; ++i)
      ustar[i] = ustar_full[sys.edges.red_to_full[i]];
    rhs = sys.a.apply(ustar);
  } else {
    throw std::invalid_argument("unknown rhs mode: " + rhs_mode);
  }

  PcgResult sol = pcg(aop, sys.b.op(), rhs, cfg.tol, cfg.maxit);
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["residual"] = sol.residuals.empty() ? 0.0 : sol.residuals.back();
  if (!ustar.empty()) {
    VecD d(sol.x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sol.x[i] - ustar[i];
    VecD ad = sys.a.apply(d);
    VecD au = sys.a.apply(ustar);
    double err = std::sqrt(kernels::dot(d.data(), ad.data(), d.size()));
    double ref = std::sqrt(kernels::dot(ustar.data(), au.data(), d.size()));
    j["a_norm_error"] = ref > 0.0 ? err / ref : 0.0;
  }
  return j.dump(2) + "\n";
}

std::string run_spectrum(const ExperimentConfig& cfg) {
  Mesh mesh = build_structured_cube(cfg.n);
  GeometryConfig geo = make_geometry(cfg);
  SubdomainPartition part = assign_subdomains(mesh, geo);
  TopologyContext ctx = build_topology_context(mesh, part);
  CoefficientField coeffs =
      make_coefficients(cfg, cfg.sweep.front(), part.count);
  int ns = multiplicity_ns(detect_strange_vertices(ctx, coeffs));
  HxSystem sys = build_hx_system(mesh, part, coeffs);
  SpectrumReport spec = measure_dense(sys.a, sys.b.op());

  ordered_json j;
  j["geometry"] = cfg.geometry;
  j["n"] = cfg.n;
  j["dofs"] = sys.a.rows();
  j["ns"] = ns;
  j["lambda_min"] = spec.lambda_min;
  j["lambda_max"] = spec.lambda_max;
  j["cond"] = spec.cond;
  if (ns < static_cast<int>(spec.eigenvalues.size())) {
    j["lambda_ns_plus_1"] = spec.eigenvalues[ns];
    j["reduced_cond"] = reduced_condition(spec, ns);
  }
  j["eigenvalues"] = spec.eigenvalues;
  return j.dump(2) + "\n";
}

}  // namespace hxmax
