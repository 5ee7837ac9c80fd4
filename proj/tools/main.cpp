// Command-line front end: every computation of the core library exposed as
// a subcommand with a reproducible, machine-readable output. Exit codes:
// 0 success, 1 invariant/cross-validation failure, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sternlab/clt.hpp"
#include "sternlab/constants.hpp"
#include "sternlab/dynamics.hpp"
#include "sternlab/minkowski.hpp"
#include "sternlab/parallel.hpp"
#include "sternlab/reference.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

namespace {

using nlohmann::json;
constexpr int kSchemaVersion = 1;

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

void emit_json(const std::string& path, json j) {
  j["schema_version"] = kSchemaVersion;
  std::ofstream file;
  open_sink(path, file) << j.dump(2) << "\n";
}

void csv_header(std::ostream& out, const json& config) {
  out << "# schema_version=" << kSchemaVersion;
  for (const auto& [k, v] : config.items()) out << " " << k << "=" << v;
  out << "\n";
}

/// "a:b" or "a:b:step" over doubles.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() < 2 || parts.size() > 3)
    throw CLI::ValidationError("grid", "expected a:b or a:b:step");
  const double a = parts[0], b = parts[1];
  const double step = parts.size() == 3 ? parts[2] : 1.0;
  if (step <= 0 || b < a)
    throw CLI::ValidationError("grid", "need a <= b and step > 0");
  std::vector<double> grid;
  for (double x = a; x <= b + step / 2; x += step) grid.push_back(x);
  return grid;
}

std::vector<unsigned> parse_levels(const std::string& s) {
  std::vector<unsigned> out;
  for (const double x : parse_grid(s)) out.push_back(static_cast<unsigned>(x));
  return out;
}

std::string fraction(const sternlab::BigNat& num, const sternlab::BigNat& den) {
  return num.get_str() + "/" + den.get_str();
}

// ---- stern ----------------------------------------------------------------

void run_stern_eval(const std::string& n_str) {
  std::cout << sternlab::stern(sternlab::BigNat(n_str)).get_str() << "\n";
}

void run_stern_row(unsigned N, const std::string& output) {
  const auto row = sternlab::row_values(N);
  std::ofstream file;
  std::ostream& out = open_sink(output, file);
  csv_header(out, {{"cmd", "stern row"}, {"N", N}});
  out << "n,s,log_s\n";
  const std::uint64_t base = 1ull << N;
  for (std::size_t i = 0; i < row.size(); ++i)
    out << base + i << "," << row[i] << ","
        << std::log(static_cast<double>(row[i])) << "\n";
}

void run_stern_tree(const std::string& kind, unsigned depth,
                    const std::string& output) {
  if (depth > 16) throw std::runtime_error("stern tree: depth <= 16");
  std::ofstream file;
  std::ostream& out = open_sink(output, file);
  if (kind == "stern-brocot") {
    // row N: the mediant construction, fractions s(m)/s(m+2^N), m = 0..2^N
    for (unsigned N = 0; N <= depth; ++N) {
      const sternlab::BigNat top = sternlab::pow2(N);
      for (sternlab::BigNat m = 0; m <= top; ++m)
        out << (m > 0 ? " " : "")
            << fraction(sternlab::stern(m), sternlab::stern(m + top));
      out << "\n";
    }
  } else {  // calkin-wilf: row N holds s(n+1)/s(n) for n in I_N
    for (unsigned N = 0; N <= depth; ++N) {
      const auto row = sternlab::row_values(N);
      for (std::size_t i = 0; i < row.size(); ++i) {
        const std::uint64_t next =
            (i + 1 < row.size()) ? row[i + 1] : 1;  // s(2^{N+1}) = 1
        out << (i > 0 ? " " : "") << next << "/" << row[i];
      }
      out << "\n";
    }
  }
}

// ---- constants ------------------------------------------------------------

void run_constants_alpha(unsigned depth, const sternlab::McConfig& mc,
                         double perturb, const std::string& output) {
  const auto rule = sternlab::build_quadrature(depth);
  const auto rep = sternlab::alpha_all_routes(rule, mc, perturb);
  emit_json(output,
            {{"cmd", "constants alpha"},
             {"config",
              {{"depth", depth},
               {"walks", mc.walks},
               {"walk_length", mc.walk_length},
               {"seed", mc.seed},
               {"perturb", perturb}}},
             {"alpha_logx", rep.alpha_logx},
             {"alpha_log1px", rep.alpha_log1px},
             {"alpha_bacher", rep.alpha_bacher},
             {"alpha_entropy", rep.alpha_entropy},
             {"alpha_furstenberg", rep.alpha_furstenberg},
             {"alpha_spectral", rep.alpha_spectral},
             {"alpha_lyapunov", rep.alpha_lyapunov},
             {"alpha_lyapunov_stderr", rep.alpha_lyapunov_stderr},
             {"spread", rep.spread}});
}

void run_constants_sigma2(unsigned outer, unsigned inner, double perturb,
                          const std::string& output) {
  const auto rep = sternlab::sigma2_all_routes(outer, inner, perturb);
  emit_json(output, {{"cmd", "constants sigma2"},
                     {"config",
                      {{"outer_depth", outer},
                       {"inner_depth", inner},
                       {"perturb", perturb}}},
                     {"sigma2_quadrature", rep.sigma2_quadrature},
                     {"sigma2_alt", rep.sigma2_alt},
                     {"sigma2_spectral", rep.sigma2_spectral},
                     {"spread", rep.spread}});
}

// ---- spectrum -------------------------------------------------------------

void run_spectrum_eig(double tau, double z, unsigned degree,
                      const std::string& output) {
  const auto A = sternlab::build_operator({tau, 0.0}, {z, 0.0}, degree);
  const auto sd = sternlab::dominant_eig(A);
  emit_json(output, {{"cmd", "spectrum eig"},
                     {"config", {{"tau", tau}, {"z", z}, {"degree", degree}}},
                     {"lambda_re", sd.lambda.real()},
                     {"lambda_im", sd.lambda.imag()},
                     {"gap", sd.gap},
                     {"residual", sd.residual},
                     {"n_max", A.n_max},
                     {"tail_bound", A.tail_bound}});
}

void run_spectrum_rho(const std::string& grid_spec, unsigned degree,
                      const std::string& output) {
  const std::vector<double> grid = parse_grid(grid_spec);
  std::ofstream file;
  std::ostream& out = open_sink(output, file);
  csv_header(out, {{"cmd", "spectrum rho"},
                   {"tau_grid", grid_spec},
                   {"degree", degree}});
  out << "tau,re_rho,im_rho,U\n";
  for (const double tau : grid) {
    const auto rp = sternlab::solve_rho({tau, 0.0}, degree);
    out << tau << "," << rp.rho.real() << "," << rp.rho.imag() << ","
        << -std::log(2.0 * rp.rho.real()) << "\n";
  }
}

// ---- clt ------------------------------------------------------------------

void run_clt_dist(unsigned N, bool enumerate, std::size_t samples,
                  std::uint64_t seed, unsigned bins,
                  const std::string& output) {
  const sternlab::EmpiricalDist d =
      enumerate ? sternlab::empirical_dist_enumerated(N, bins)
                : sternlab::empirical_dist_sampled(N, samples, seed, bins);
  std::ofstream file;
  std::ostream& out = open_sink(output, file);
  csv_header(out, {{"cmd", "clt dist"},
                   {"N", N},
                   {"mode", enumerate ? "enumerated" : "sampled"},
                   {"count", d.count},
                   {"seed", seed},
                   {"mean", d.mean},
                   {"variance", d.variance},
                   {"ks", d.ks}});
  out << "bin_left,bin_right,count,normal_pdf_ref\n";
  const double width = (d.hist_hi - d.hist_lo) / d.histogram.size();
  for (std::size_t b = 0; b < d.histogram.size(); ++b) {
    const double lo = d.hist_lo + b * width;
    const double mid = lo + width / 2;
    out << lo << "," << lo + width << "," << d.histogram[b] << ","
        << std::exp(-mid * mid / 2) / std::sqrt(2 * M_PI) << "\n";
  }
}

void run_clt_quasipowers(double tau, const std::string& levels_spec,
                         const std::string& output) {
  const auto fit = sternlab::quasi_powers_fit(tau, parse_levels(levels_spec));
  emit_json(output, {{"cmd", "clt quasipowers"},
                     {"config", {{"tau", tau}, {"levels", levels_spec}}},
                     {"U_emp", fit.U_emp},
                     {"V_emp", fit.V_emp},
                     {"U_spectral", fit.U_spectral},
                     {"diff", std::abs(fit.U_emp - fit.U_spectral)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sternlab: Stern sequence / Minkowski measure / transfer "
               "operator laboratory"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker thread cap (0 = auto / STERN_SPECTRAL_THREADS)");

  std::string output;
  app.add_option("--output", output, "output file (default: stdout)");

  // stern
  auto* stern_cmd = app.add_subcommand("stern", "Stern sequence computations");
  stern_cmd->require_subcommand(1);
  std::string eval_n;
  auto* eval_cmd = stern_cmd->add_subcommand("eval", "print s(n)");
  eval_cmd->add_option("n", eval_n, "index")->required();
  unsigned row_N = 0;
  auto* row_cmd = stern_cmd->add_subcommand("row", "dump row N as CSV");
  row_cmd->add_option("N", row_N, "level")->required();
  std::string tree_kind = "stern-brocot";
  unsigned tree_depth = 3;
  auto* tree_cmd = stern_cmd->add_subcommand("tree", "print tree rows");
  tree_cmd->add_option("--kind", tree_kind)
      ->check(CLI::IsMember({"stern-brocot", "calkin-wilf"}));
  tree_cmd->add_option("--depth", tree_depth);

  // constants
  auto* const_cmd = app.add_subcommand("constants", "alpha and sigma^2 routes");
  const_cmd->require_subcommand(1);
  unsigned alpha_depth = 20;
  sternlab::McConfig mc;
  double perturb = 0.0;
  auto* alpha_cmd = const_cmd->add_subcommand("alpha", "all alpha routes");
  alpha_cmd->add_option("--depth", alpha_depth);
  alpha_cmd->add_option("--walks", mc.walks);
  alpha_cmd->add_option("--walk-length", mc.walk_length);
  alpha_cmd->add_option("--seed", mc.seed);
  alpha_cmd->add_option("--perturb", perturb,
                        "failure injection: shift one route");
  bool all_routes = true;
  alpha_cmd->add_flag("--all-routes", all_routes,
                      "compute all routes (always on)");
  unsigned outer_depth = 17, inner_depth = 13;
  double perturb_s = 0.0;
  std::string routes_sel = "quad,alt,spectral";
  auto* sigma_cmd = const_cmd->add_subcommand("sigma2", "all sigma^2 routes");
  sigma_cmd->add_option("--outer-depth", outer_depth);
  sigma_cmd->add_option("--inner-depth", inner_depth);
  sigma_cmd->add_option("--perturb", perturb_s);
  sigma_cmd->add_option("--routes", routes_sel,
                        "route selection (all routes always computed)");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "transfer-operator spectrum");
  spec_cmd->require_subcommand(1);
  double eig_tau = 0.0, eig_z = 0.5;
  unsigned degree = 32;
  auto* eig_cmd = spec_cmd->add_subcommand("eig", "dominant eigenvalue");
  eig_cmd->add_option("--tau", eig_tau);
  eig_cmd->add_option("--z", eig_z);
  eig_cmd->add_option("--degree", degree);
  std::string tau_grid = "-0.1:0.1:0.01";
  auto* rho_cmd = spec_cmd->add_subcommand("rho", "rho(tau) curve as CSV");
  rho_cmd->add_option("--tau-grid", tau_grid, "a:b:step");
  rho_cmd->add_option("--degree", degree);

  // clt
  auto* clt_cmd = app.add_subcommand("clt", "empirical CLT harness");
  clt_cmd->require_subcommand(1);
  unsigned dist_N = 20, bins = 40;
  bool enumerate = false;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  auto* dist_cmd = clt_cmd->add_subcommand("dist", "log-Stern distribution");
  dist_cmd->add_option("--N", dist_N)->required();
  dist_cmd->add_flag("--enumerate", enumerate);
  dist_cmd->add_option("--samples", samples);
  dist_cmd->add_option("--seed", seed);
  dist_cmd->add_option("--bins", bins);
  double qp_tau = 0.05;
  std::string qp_levels = "12:24";
  auto* qp_cmd = clt_cmd->add_subcommand("quasipowers", "moment-slope fit");
  qp_cmd->add_option("--tau", qp_tau);
  qp_cmd->add_option("--N", qp_levels, "level range a:b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) sternlab::set_thread_count(threads);

  try {
    if (eval_cmd->parsed()) run_stern_eval(eval_n);
    else if (row_cmd->parsed()) run_stern_row(row_N, output);
    else if (tree_cmd->parsed()) run_stern_tree(tree_kind, tree_depth, output);
    else if (alpha_cmd->parsed())
      run_constants_alpha(alpha_depth, mc, perturb, output);
    else if (sigma_cmd->parsed())
      run_constants_sigma2(outer_depth, inner_depth, perturb_s, output);
    else if (eig_cmd->parsed()) run_spectrum_eig(eig_tau, eig_z, degree, output);
    else if (rho_cmd->parsed()) run_spectrum_rho(tau_grid, degree, output);
    else if (dist_cmd->parsed())
      run_clt_dist(dist_N, enumerate, samples, seed, bins, output);
    else if (qp_cmd->parsed()) run_clt_quasipowers(qp_tau, qp_levels, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
