// Command-line surface for the spherical Radon transform library: synthesize
// angle-density data, tabulate transforms of a model, fit RBF or harmonic
// models to samples, emit the kernel closed-form tables, and run the
// verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3radon/io.hpp"
#include "s3radon/reconstruction.hpp"
#include "s3radon/verify.hpp"

using namespace s3radon;

namespace {

constexpr double kDegPerRad = 180.0 / kPi;

struct CommonOpts {
  int circle_nodes = 256;
  int sphere_degree = 64;
  int torus_nodes = 128;
  std::uint64_t seed = 1;
  std::string angle_unit = "deg";
};

double to_radians(double v, const CommonOpts& c) {
  return c.angle_unit == "deg" ? v / kDegPerRad : v;
}
double from_radians(double v, const CommonOpts& c) {
  return c.angle_unit == "deg" ? v * kDegPerRad : v;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--circle-nodes", c.circle_nodes, "great/small circle quadrature nodes")
      ->check(CLI::Range(4, 1 << 20));
  cmd->add_option("--sphere-degree", c.sphere_degree, "S2 quadrature exactness degree")
      ->check(CLI::Range(4, 4096));
  cmd->add_option("--torus-nodes", c.torus_nodes, "torus quadrature nodes per factor")
      ->check(CLI::Range(4, 1 << 20));
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--angle-unit", c.angle_unit, "unit of angle-valued arguments and outputs")
      ->check(CLI::IsMember({"deg", "rad"}));
}

std::string canonical_config(const std::string& command, const std::vector<std::string>& kv) {
  std::string s = command;
  for (const auto& e : kv) s += ";" + e;
  return s;
}

struct GridSpec {
  std::size_t n_h = 8, n_r = 8, n_rho = 5;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  if (std::sscanf(text.c_str(), "%zux%zux%zu", &g.n_h, &g.n_r, &g.n_rho) != 3)
    throw CLI::ValidationError("--grid", "expected <n_h>x<n_r>x<n_rho>");
  if (g.n_h < 1 || g.n_r < 1 || g.n_rho < 1)
    throw CLI::ValidationError("--grid", "grid counts must be positive");
  return g;
}

int run_simulate(const std::string& model_path, const std::string& output, const std::string& grid,
                 double sigma, double rho_min_deg, double rho_max_deg, const CommonOpts& c) {
  const OdfModel model = parse_model_file(model_path);
  const GridSpec g = parse_grid(grid);
  const DesignGrid design = DesignGrid::product(g.n_h, g.n_r, g.n_rho, c.seed,
                                                rho_min_deg / kDegPerRad, rho_max_deg / kDegPerRad);
  const auto samples = synthesize_samples(model, design, sigma, c.seed + 1);
  emit_samples_file(samples, output);
  std::cout << "wrote " << samples.size() << " samples to " << output << "\n";
  return 0;
}

int run_transform(const std::string& model_path, const std::string& output,
                  const std::string& which, const std::string& grid, const CommonOpts& c) {
  const OdfModel model = parse_model_file(model_path);
  const GridSpec g = parse_grid(grid);
  const DesignGrid design = DesignGrid::product(g.n_h, g.n_r, g.n_rho, c.seed, 0.0, kPi / 2.0);
  const TransformRules rules = TransformRules::make(c.circle_nodes, c.sphere_degree, c.torus_nodes);
  const OdfEvaluator f = make_evaluator(model, rules.sphere);

  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot open output file: " + output);
  const std::string cfg = canonical_config(
      "transform", {which, grid, std::to_string(c.circle_nodes), std::to_string(c.sphere_degree),
                    std::to_string(c.torus_nodes), std::to_string(c.seed)});
  TableWriter writer(out,
                     {"config: " + cfg, "config_hash: " + config_hash(cfg),
                      "circle_nodes: " + std::to_string(c.circle_nodes),
                      "sphere_degree: " + std::to_string(c.sphere_degree),
                      "torus_nodes: " + std::to_string(c.torus_nodes),
                      "angle_unit: " + c.angle_unit},
                     {"hx", "hy", "hz", "rx", "ry", "rz", "rho", "value"});
  for (std::size_t i = 0; i < design.size(); ++i) {
    const Dir3& h = design.h[i];
    const Dir3& r = design.r[i];
    const double rho = design.rho[i];
    double v;
    if (which == "radon") {
      v = radon(f, fibre_circle(h, r), rules);
    } else if (which == "xray") {
      v = xray(f, h, r, rules);
    } else if (which == "adf") {
      v = angle_density(f, h, r, rho, rules);
    } else if (which == "w") {
      v = forward_w(model, h, r, rho);  // closed form / series per model kind
    } else {
      throw CLI::ValidationError("--which", "expected radon|xray|adf|w");
    }
    writer.row({h.x, h.y, h.z, r.x, r.y, r.z, from_radians(rho, c), v});
  }
  std::cout << "wrote " << design.size() << " rows to " << output << "\n";
  return 0;
}

int run_fit(const std::string& input, const std::string& model_out, const std::string& method,
            int degree, int centers_count, const std::string& kernel_name, double kappa,
            double ridge, bool nonneg, const std::string& report_path,
            const std::string& coeffs_path, const CommonOpts& c) {
  const auto samples = parse_samples_file(input);
  FitReport report;
  OdfModel fitted;
  if (method == "rbf") {
    const KernelSpec spec =
        kernel_name == "abel_poisson" ? abel_poisson(kappa) : de_la_vallee_poussin(kappa);
    const std::vector<Quat> centers = s3_center_grid(centers_count, c.seed);
    fitted = fit_rbf(samples, centers, spec, ridge, nonneg, &report);
  } else if (method == "harmonic") {
    fitted = fit_harmonic(samples, degree, ridge, &report);
  } else {
    throw CLI::ValidationError("--method", "expected rbf|harmonic");
  }
  write_model_file(fitted, model_out);
  if (!coeffs_path.empty()) {
    if (const auto* hm = std::get_if<HarmonicModel>(&fitted)) {
      std::ofstream out(coeffs_path);
      if (!out) throw std::runtime_error("cannot open coefficient file: " + coeffs_path);
      write_coeff_table(hm->table, out);
      std::cout << "wrote coefficient table to " << coeffs_path << "\n";
    } else {
      throw std::runtime_error("--coeffs applies to the harmonic method only");
    }
  }

  std::ostringstream rep;
  rep << "{\n"
      << "  \"samples\": " << samples.size() << ",\n"
      << "  \"method\": \"" << method << "\",\n"
      << "  \"loss\": \"least squares" << (ridge > 0 ? " + ridge" : "")
      << (nonneg ? ", nonnegative weights" : "") << "\",\n"
      << "  \"ridge\": " << format_double(ridge) << ",\n"
      << "  \"residual_norm\": " << format_double(report.residual_norm) << ",\n"
      << "  \"rms_residual\": " << format_double(report.rms_residual) << ",\n"
      << "  \"condition\": " << format_double(report.condition) << ",\n"
      << "  \"scale\": " << format_double(report.scale) << ",\n"
      << "  \"active_set_iterations\": " << report.iterations << "\n"
      << "}\n";
  if (report_path.empty()) {
    std::cout << rep.str();
  } else {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open report file: " + report_path);
    out << rep.str();
    std::cout << "wrote fit report to " << report_path << "\n";
  }
  std::cout << "wrote fitted model to " << model_out << "\n";
  return 0;
}

int run_kernels(const std::string& output_prefix, const std::string& kernel_name, double kappa,
                int lmax, int angle_steps, const CommonOpts& c) {
  const KernelSpec spec =
      kernel_name == "abel_poisson" ? abel_poisson(kappa) : de_la_vallee_poussin(kappa);
  {
    std::ofstream out(output_prefix + "_coeffs.csv");
    if (!out) throw std::runtime_error("cannot open " + output_prefix + "_coeffs.csv");
    const std::string cfg = canonical_config("kernels-coeffs", {kernel_name,
                                                                format_double(kappa),
                                                                std::to_string(lmax)});
    TableWriter writer(out, {"config_hash: " + config_hash(cfg)}, {"kappa", "l", "a_l"});
    for (int l = 0; l <= lmax; ++l) writer.row({kappa, double(l), kernel_coeff(spec, l)});
  }
  {
    std::ofstream out(output_prefix + "_profiles.csv");
    if (!out) throw std::runtime_error("cannot open " + output_prefix + "_profiles.csv");
    const std::string cfg = canonical_config(
        "kernels-profiles", {kernel_name, format_double(kappa), std::to_string(angle_steps)});
    TableWriter writer(out, {"config_hash: " + config_hash(cfg), "angle_unit: " + c.angle_unit},
                       {"kappa", "angle", "value", "radon", "double_radon_diag"});
    for (int i = 0; i <= angle_steps; ++i) {
      const double eta = kPi * i / angle_steps;
      writer.row({kappa, from_radians(eta, c), kernel_value(spec, eta), kernel_radon(spec, eta),
                  kernel_double_radon(spec, eta, eta)});
    }
  }
  std::cout << "wrote " << output_prefix << "_coeffs.csv and " << output_prefix
            << "_profiles.csv\n";
  return 0;
}

int run_verify(double tol_identity, const std::string& report_path, const CommonOpts& c) {
  VerifyOptions opts;
  opts.seed = c.seed;
  opts.tol_identity = tol_identity;
  const auto results = run_verification(opts);
  std::ostringstream rep;
  int failed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    rep << format_check_line(r) << "\n";
    failed += r.pass() ? 0 : 1;
    total += r.seconds;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu checks, %d failed, %.1fs total\n", results.size(), failed,
                total);
  rep << buf;
  std::cout << rep.str();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open report file: " + report_path);
    out << rep.str();
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical Radon transforms on S3 and ODF reconstruction"};
  app.require_subcommand(1);

  CommonOpts c_sim, c_tr, c_fit, c_ker, c_ver;

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample the W transform of a model into a CSV");
  std::string sim_model, sim_out, sim_grid = "8x8x5";
  double sim_sigma = 0.0, sim_rho_min = 5.0, sim_rho_max = 175.0;
  sim->add_option("--model", sim_model, "model JSON path")->required();
  sim->add_option("--output", sim_out, "samples CSV path")->required();
  sim->add_option("--grid", sim_grid, "design grid <n_h>x<n_r>x<n_rho>");
  sim->add_option("--sigma", sim_sigma, "additive Gaussian noise level");
  sim->add_option("--rho-min", sim_rho_min, "smallest rho (degrees)");
  sim->add_option("--rho-max", sim_rho_max, "largest rho (degrees)");
  add_common(sim, c_sim);

  // transform
  auto* tr = app.add_subcommand("transform", "tabulate a transform of a model over a grid");
  std::string tr_model, tr_out, tr_which = "w", tr_grid = "8x8x5";
  tr->add_option("--model", tr_model, "model JSON path")->required();
  tr->add_option("--output", tr_out, "output CSV path")->required();
  tr->add_option("--which", tr_which, "radon|xray|adf|w");
  tr->add_option("--grid", tr_grid, "design grid <n_h>x<n_r>x<n_rho>");
  add_common(tr, c_tr);

  // fit
  auto* fit = app.add_subcommand("fit", "fit an RBF or harmonic model to samples");
  std::string fit_in, fit_out, fit_method = "rbf", fit_kernel = "dlvp", fit_report, fit_coeffs;
  int fit_degree = 8, fit_centers = 60;
  double fit_kappa = 20.0, fit_ridge = 0.0;
  bool fit_nonneg = false;
  fit->add_option("--input", fit_in, "samples CSV path")->required();
  fit->add_option("--output", fit_out, "fitted model JSON path")->required();
  fit->add_option("--method", fit_method, "rbf|harmonic");
  fit->add_option("--degree", fit_degree, "harmonic degree cap L (even)");
  fit->add_option("--centers", fit_centers, "RBF dictionary size");
  fit->add_option("--kernel", fit_kernel, "dlvp|abel_poisson");
  fit->add_option("--kappa", fit_kappa, "kernel shape parameter");
  fit->add_option("--ridge", fit_ridge, "Tikhonov regularization weight");
  fit->add_flag("--nonneg", fit_nonneg, "constrain weights to be nonnegative");
  fit->add_option("--report", fit_report, "write the residual report JSON here");
  fit->add_option("--coeffs", fit_coeffs, "also write the fitted harmonic table as l,m,n,value CSV");
  add_common(fit, c_fit);

  // kernels
  auto* ker = app.add_subcommand("kernels", "emit kernel coefficient and profile tables");
  std::string ker_prefix = "kernel", ker_kernel = "dlvp";
  double ker_kappa = 4.0;
  int ker_lmax = 16, ker_steps = 90;
  ker->add_option("--output-prefix", ker_prefix, "output path prefix");
  ker->add_option("--kernel", ker_kernel, "dlvp|abel_poisson");
  ker->add_option("--kappa", ker_kappa, "kernel shape parameter");
  ker->add_option("--lmax", ker_lmax, "largest coefficient degree");
  ker->add_option("--steps", ker_steps, "angle grid steps");
  add_common(ker, c_ker);

  // verify
  auto* ver = app.add_subcommand("verify", "run the identity/invariant suite and report");
  double ver_tol = 0.0;
  std::string ver_report;
  ver->add_option("--tol-identity", ver_tol,
                  "override tolerance of the quadrature-identity checks");
  ver->add_option("--report", ver_report, "also write the report to this path");
  add_common(ver, c_ver);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return run_simulate(sim_model, sim_out, sim_grid, sim_sigma, sim_rho_min, sim_rho_max, c_sim);
    if (tr->parsed()) return run_transform(tr_model, tr_out, tr_which, tr_grid, c_tr);
    if (fit->parsed())
      return run_fit(fit_in, fit_out, fit_method, fit_degree, fit_centers, fit_kernel, fit_kappa,
                     fit_ridge, fit_nonneg, fit_report, fit_coeffs, c_fit);
    if (ker->parsed()) return run_kernels(ker_prefix, ker_kernel, ker_kappa, ker_lmax, ker_steps, c_ker);
    if (ver->parsed()) return run_verify(ver_tol, ver_report, c_ver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
