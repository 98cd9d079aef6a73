// Command-line laboratory for eigenvalue laws of random commuting matrix
// tuples: chain samplers, energy minimizers, closed-form density tables, and
// the oracle verification suite. Exit codes: 0 success, 1 failed verification
// check, 2 configuration error, 3 sampler or convergence failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rct/charts.hpp"
#include "rct/density.hpp"
#include "rct/equilibrium.hpp"
#include "rct/io.hpp"
#include "rct/mcmc.hpp"
#include "rct/quadrature.hpp"
#include "rct/rng.hpp"
#include "rct/tuple_ops.hpp"
#include "rct/verify.hpp"

namespace {

using nlohmann::json;
using rct::cplx;

struct RunConfig {
  int n = 2;
  int d = 1;
  double gamma = 0.5;
  std::uint64_t seed = 1;
  long length = 20000;
  long burn_in = 2000;
  long thin = 10;
  double sigma = 0.5;
  int max_iter = 5000;
  double tol = 1e-8;
  int grid = 80;
  bool mcmc = false;
  bool reconstruct = false;
  std::string out;
  std::string format = "csv";
  std::string json_path;
  std::vector<std::string> only;
};

std::string sibling_path(const std::string& out, const std::string& tag) {
  auto dot = out.find_last_of('.');
  auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + "_" + tag;
  return out.substr(0, dot) + "_" + tag + out.substr(dot);
}

void write_table(const RunConfig& cfg, const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& meta,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, const json& checks) {
  if (cfg.format == "csv") {
    rct::io::CsvTable t;
    t.metadata = meta;
    for (auto& [k, v] : checks.items())
      t.metadata.emplace_back("check_" + k, v.is_number() ? rct::io::format_double(v.get<double>())
                                                          : v.dump());
    t.header = columns;
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (double v : row) cells.push_back(rct::io::format_double(v));
      t.rows.push_back(std::move(cells));
    }
    rct::io::write_csv(path, t);
  } else {
    json doc;
    json config = json::object();
    for (const auto& [k, v] : meta) {
      // Numeric metadata stays numeric in JSON.
      char* end = nullptr;
      double num = std::strtod(v.c_str(), &end);
      if (end && *end == '\0' && !v.empty())
        config[k] = num;
      else
        config[k] = v;
    }
    doc["config"] = config;
    doc["data"]["columns"] = columns;
    doc["data"]["rows"] = rows;
    doc["checks"] = checks;
    rct::io::atomic_write_text(path, doc.dump(2) + "\n");
  }
}

std::vector<std::pair<std::string, std::string>> base_meta(const RunConfig& cfg,
                                                           const std::string& command) {
  using rct::io::format_double;
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("command", command);
  m.emplace_back("n", std::to_string(cfg.n));
  m.emplace_back("d", std::to_string(cfg.d));
  m.emplace_back("gamma", format_double(cfg.gamma));
  m.emplace_back("seed", std::to_string(cfg.seed));
  return m;
}

// ---- sample-hermitian --------------------------------------------------

int cmd_sample_hermitian(const RunConfig& cfg) {
  rct::ExternalField Q(cfg.gamma);
  auto rng = rct::rng_stream(cfg.seed, 0);
  std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0 * cfg.gamma));
  rct::EigenConfig init;
  init.points.resize(cfg.n, cfg.d);
  init.real_valued = true;
  for (int p = 0; p < cfg.n; ++p)
    for (int r = 0; r < cfg.d; ++r) init.points(p, r) = cplx(g(rng), 0.0);

  rct::ChainConfig chain;
  chain.seed = cfg.seed;
  chain.length = cfg.length;
  chain.burn_in = cfg.burn_in;
  chain.thin = cfg.thin;
  chain.proposal_sigma = cfg.sigma;
  auto res = rct::sample_chain(
      [&](const rct::EigenConfig& y) { return rct::log_scaled_density(y, Q).log_value; }, init,
      chain);

  std::vector<std::string> columns;
  for (int p = 0; p < cfg.n; ++p)
    for (int r = 0; r < cfg.d; ++r) columns.push_back("y" + std::to_string(p) + "_" + std::to_string(r));
  std::vector<std::vector<double>> rows;
  rows.reserve(res.samples.size());
  std::vector<double> pooled;
  for (const auto& s : res.samples) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(cfg.n) * cfg.d);
    for (int p = 0; p < cfg.n; ++p)
      for (int r = 0; r < cfg.d; ++r) row.push_back(s.points(p, r).real());
    rows.push_back(std::move(row));
    for (double v : rct::axis_projection(s)) pooled.push_back(v);
  }

  double R = rct::equilibrium_radius(cfg.d, cfg.gamma);
  rct::CdfTable table([&](double x) { return rct::projected_density(cfg.d, cfg.gamma, x); }, -R, R,
                      20000);
  double ks = rct::ks_distance_1d(pooled, [&](double x) { return table.cdf(x); });

  auto meta = base_meta(cfg, "sample-hermitian");
  meta.emplace_back("length", std::to_string(cfg.length));
  meta.emplace_back("burn_in", std::to_string(cfg.burn_in));
  meta.emplace_back("thin", std::to_string(cfg.thin));
  meta.emplace_back("proposal_sigma", rct::io::format_double(cfg.sigma));
  meta.emplace_back("acceptance_rate", rct::io::format_double(res.acceptance_rate));
  meta.emplace_back("final_sigma", rct::io::format_double(res.final_sigma));
  json checks;
  checks["projection_ks"] = ks;
  checks["rows"] = rows.size();
  write_table(cfg, cfg.out, meta, columns, rows, checks);
  std::printf("wrote %zu configurations (n=%d, d=%d) to %s\n", rows.size(), cfg.n, cfg.d,
              cfg.out.c_str());
  std::printf("pooled axis projection vs closed-form law: KS = %.4f over %zu points\n", ks,
              pooled.size());

  if (cfg.reconstruct) {
    // Tuples are built from the rows exactly as written (formatted then
    // re-parsed), so the emitted spectra match the sample file bit for bit.
    std::vector<std::string> tcols;
    for (int r = 0; r < cfg.d; ++r)
      for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j) {
          std::string stem =
              "comp" + std::to_string(r) + "_" + std::to_string(i) + "_" + std::to_string(j);
          tcols.push_back(stem + "_re");
          tcols.push_back(stem + "_im");
        }
    std::vector<std::vector<double>> trows;
    trows.reserve(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
      rct::EigenConfig lam;
      lam.points.resize(cfg.n, cfg.d);
      lam.real_valued = true;
      for (int p = 0; p < cfg.n; ++p)
        for (int r = 0; r < cfg.d; ++r) {
          double as_written =
              std::strtod(rct::io::format_double(rows[s][static_cast<std::size_t>(p) * cfg.d + r]).c_str(),
                          nullptr);
          lam.points(p, r) = cplx(as_written, 0.0);
        }
      auto urng = rct::rng_stream(cfg.seed, 5000 + s);
      Eigen::MatrixXcd U = rct::haar_unitary(cfg.n, urng);
      rct::MatrixTuple X = rct::reconstruct_tuple(lam, U);
      std::vector<double> row;
      row.reserve(tcols.size());
      for (int r = 0; r < cfg.d; ++r)
        for (int i = 0; i < cfg.n; ++i)
          for (int j = 0; j < cfg.n; ++j) {
            row.push_back(X.comps[r](i, j).real());
            row.push_back(X.comps[r](i, j).imag());
          }
      trows.push_back(std::move(row));
    }
    std::string tpath = sibling_path(cfg.out, "tuples");
    auto tmeta = base_meta(cfg, "sample-hermitian-tuples");
    tmeta.emplace_back("source", cfg.out);
    write_table(cfg, tpath, tmeta, tcols, trows, json::object());
    std::printf("wrote %zu reconstructed tuples to %s\n", trows.size(), tpath.c_str());
  }
  return 0;
}

// ---- equilibrium -------------------------------------------------------

int cmd_equilibrium(const RunConfig& cfg) {
  rct::ExternalField Q(cfg.gamma);
  auto report = rct::minimize_energy(cfg.n, cfg.d, Q, cfg.seed, cfg.max_iter, cfg.tol);

  double R = rct::equilibrium_radius(cfg.d, cfg.gamma);
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n; ++i) {
    double r = report.config.points.row(i).norm();
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }

  std::vector<std::string> columns;
  for (int r = 0; r < cfg.d; ++r) columns.push_back("x_" + std::to_string(r));
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < cfg.n; ++i) {
    std::vector<double> row;
    for (int r = 0; r < cfg.d; ++r) row.push_back(report.config.points(i, r).real());
    rows.push_back(std::move(row));
  }

  auto meta = base_meta(cfg, "equilibrium");
  meta.emplace_back("max_iter", std::to_string(cfg.max_iter));
  meta.emplace_back("tol", rct::io::format_double(cfg.tol));
  meta.emplace_back("energy", rct::io::format_double(report.energy));
  meta.emplace_back("gradient_norm", rct::io::format_double(report.gradient_norm));
  meta.emplace_back("converged", report.converged ? "1" : "0");
  meta.emplace_back("iterations", std::to_string(report.iterations));

  json checks;
  checks["law_radius"] = R;
  checks["max_radius"] = rmax;
  checks["min_radius"] = rmin;
  checks["support_ok"] = rmax <= 1.05 * R;
  if (cfg.d >= 4) checks["shell_ok"] = (rmin >= 0.98 * R && rmax <= 1.02 * R);
  write_table(cfg, cfg.out, meta, columns, rows, checks);

  // Closed-form projection density table for plotting, as a sibling file.
  std::vector<std::vector<double>> drows;
  const int gridN = 201;
  for (int i = 0; i < gridN; ++i) {
    double x = -R + 2.0 * R * i / (gridN - 1);
    drows.push_back({x, rct::projected_density(cfg.d, cfg.gamma, x)});
  }
  std::string dpath = sibling_path(cfg.out, "density");
  auto dmeta = base_meta(cfg, "equilibrium-density");
  dmeta.emplace_back("source", cfg.out);
  write_table(cfg, dpath, dmeta, {"x", "f"}, drows, json::object());

  std::printf("minimizer: energy %.8f, gradient %.2e, %s after %d iterations\n", report.energy,
              report.gradient_norm, report.converged ? "converged" : "NOT converged",
              report.iterations);
  std::printf("support: |x| in [%.4f, %.4f], law radius %.4f\n", rmin, rmax, R);
  std::printf("wrote minimizer to %s, density table to %s\n", cfg.out.c_str(), dpath.c_str());
  return report.converged ? 0 : 3;
}

// ---- verify ------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.only.empty()) {
    names = rct::verify_check_names();
  } else {
    auto all = rct::verify_check_names();
    for (const auto& want : cfg.only) {
      bool known = false;
      for (const auto& n : all) known = known || n == want;
      if (!known) throw rct::ConfigError("unknown check name: " + want);
      names.push_back(want);
    }
  }

  std::vector<rct::CheckResult> results;
  bool all_passed = true;
  std::printf("%-26s %-6s %-13s %-13s %s\n", "check", "status", "measured", "threshold", "seconds");
  for (const auto& name : names) {
    auto r = rct::run_verify_check(name, cfg.seed);
    all_passed = all_passed && r.passed;
    std::printf("%-26s %-6s %-13.4g %-13.4g %.2f\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.measured, r.threshold, r.seconds);
    std::fflush(stdout);
    results.push_back(std::move(r));
  }
  for (const auto& r : results)
    if (!r.passed) std::printf("FAIL %s: %s\n", r.name.c_str(), r.detail.c_str());
  std::printf("%zu/%zu checks passed\n",
              static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                     [](const auto& r) { return r.passed; })),
              results.size());

  if (!cfg.json_path.empty()) {
    json doc;
    doc["config"]["seed"] = cfg.seed;
    doc["config"]["only"] = cfg.only;
    doc["config"]["command"] = "verify";
    json arr = json::array();
    for (const auto& r : results) {
      json jr;
      jr["name"] = r.name;
      jr["passed"] = r.passed;
      jr["measured"] = r.measured;
      jr["threshold"] = r.threshold;
      jr["detail"] = r.detail;
      jr["seconds"] = r.seconds;
      arr.push_back(jr);
    }
    doc["data"]["checks"] = arr;
    doc["checks"]["all_passed"] = all_passed;
    rct::io::atomic_write_text(cfg.json_path, doc.dump(2) + "\n");
    std::printf("wrote report to %s\n", cfg.json_path.c_str());
  }
  return all_passed ? 0 : 1;
}

// ---- density-2x2 -------------------------------------------------------

int cmd_density_2x2(const RunConfig& cfg) {
  std::vector<std::string> columns = {"delta", "log_rho", "log_rho_stripped", "finite"};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < cfg.grid; ++i) {
    double t = 0.05 + (4.0 - 0.05) * i / (cfg.grid - 1);
    Eigen::VectorXcd l1 = Eigen::VectorXcd::Zero(cfg.d);
    Eigen::VectorXcd l2 = Eigen::VectorXcd::Zero(cfg.d);
    l1[0] = cplx(-0.5 * t, 0.0);
    l2[0] = cplx(0.5 * t, 0.0);
    auto rep = rct::log_rho_2x2(l1, l2, cfg.d, cfg.gamma);
    double stripped = rep.log_value + cfg.gamma * 0.5 * t * t;
    rows.push_back({t, rep.log_value, stripped, rep.finite_flag ? 1.0 : 0.0});
  }

  json checks;
  checks["grid_points"] = cfg.grid;
  if (cfg.mcmc) {
    rct::ChainConfig chain;
    chain.seed = cfg.seed;
    chain.length = cfg.length;
    chain.burn_in = cfg.burn_in;
    chain.thin = cfg.thin;
    chain.proposal_sigma = cfg.sigma;
    auto res = rct::sample_2x2_joint(cfg.d, cfg.gamma, chain);
    std::vector<double> gaps;
    gaps.reserve(res.samples.size());
    for (const auto& s : res.samples) gaps.push_back((s.lambda2 - s.lambda1).norm());
    auto dens = [&](double t) {
      if (t <= 0.0) return 0.0;
      Eigen::VectorXcd l1 = Eigen::VectorXcd::Zero(cfg.d);
      Eigen::VectorXcd l2 = Eigen::VectorXcd::Zero(cfg.d);
      l1[0] = cplx(-0.5 * t, 0.0);
      l2[0] = cplx(0.5 * t, 0.0);
      auto rep = rct::log_rho_2x2(l1, l2, cfg.d, cfg.gamma);
      return std::pow(t, 2.0 * cfg.d - 1.0) * std::exp(rep.log_value);
    };
    rct::CdfTable table(dens, 0.0, 10.0 / std::sqrt(cfg.gamma));
    double ks = rct::ks_distance_1d(gaps, [&](double x) { return table.cdf(x); });
    checks["mcmc_ks"] = ks;
    checks["mcmc_samples"] = gaps.size();
    checks["mcmc_acceptance"] = res.acceptance_rate;
    std::printf("gap-marginal sampler vs quadrature CDF: KS = %.4f over %zu samples\n", ks,
                gaps.size());
  }

  auto meta = base_meta(cfg, "density-2x2");
  meta.emplace_back("grid", std::to_string(cfg.grid));
  if (cfg.mcmc) {
    meta.emplace_back("length", std::to_string(cfg.length));
    meta.emplace_back("burn_in", std::to_string(cfg.burn_in));
    meta.emplace_back("thin", std::to_string(cfg.thin));
  }
  write_table(cfg, cfg.out, meta, columns, rows, checks);
  std::printf("wrote %d-point gap grid (d=%d, gamma=%g) to %s\n", cfg.grid, cfg.d, cfg.gamma,
              cfg.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for eigenvalue laws of commuting random matrix tuples"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* s_sample = app.add_subcommand("sample-hermitian",
                                      "Metropolis chain over the scaled eigenvalue law; one row "
                                      "per sampled configuration");
  s_sample->add_option("--n", cfg.n, "points per configuration")->check(CLI::PositiveNumber);
  s_sample->add_option("--d", cfg.d, "ambient dimension")->check(CLI::PositiveNumber);
  s_sample->add_option("--gamma", cfg.gamma, "field strength")->check(CLI::PositiveNumber);
  s_sample->add_option("--seed", cfg.seed, "master seed");
  s_sample->add_option("--length", cfg.length, "total chain steps");
  s_sample->add_option("--burn-in", cfg.burn_in, "discarded prefix");
  s_sample->add_option("--thin", cfg.thin, "keep every thin-th state");
  s_sample->add_option("--sigma", cfg.sigma, "initial proposal scale");
  s_sample->add_option("--out", cfg.out, "output path")->required();
  s_sample->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  s_sample->add_flag("--reconstruct", cfg.reconstruct,
                     "also write matrix tuples rebuilt from each row via a Haar unitary");

  auto* s_eq = app.add_subcommand("equilibrium",
                                  "minimize the discrete logarithmic energy; write the minimizer "
                                  "and the closed-form projection density");
  s_eq->add_option("--n", cfg.n, "particle count")->check(CLI::PositiveNumber);
  s_eq->add_option("--d", cfg.d, "ambient dimension")->check(CLI::PositiveNumber);
  s_eq->add_option("--gamma", cfg.gamma, "field strength")->check(CLI::PositiveNumber);
  s_eq->add_option("--seed", cfg.seed, "master seed");
  s_eq->add_option("--max-iter", cfg.max_iter, "iteration cap");
  s_eq->add_option("--tol", cfg.tol, "gradient norm target");
  s_eq->add_option("--out", cfg.out, "output path")->required();
  s_eq->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* s_verify = app.add_subcommand("verify", "run the oracle verification suite");
  s_verify->add_option("--only", cfg.only, "run only the named checks");
  s_verify->add_option("--json", cfg.json_path, "write a machine-readable report");
  s_verify->add_option("--seed", cfg.seed, "master seed");

  auto* s_density = app.add_subcommand("density-2x2",
                                       "gap grid of the two-point eigenvalue density, optionally "
                                       "with a sampler cross-check");
  s_density->add_option("--d", cfg.d, "tuple length")->check(CLI::PositiveNumber);
  s_density->add_option("--gamma", cfg.gamma, "field strength")->check(CLI::PositiveNumber);
  s_density->add_option("--grid", cfg.grid, "grid points")->check(CLI::Range(2, 100000));
  s_density->add_option("--seed", cfg.seed, "master seed");
  s_density->add_option("--length", cfg.length, "sampler steps (with --mcmc)");
  s_density->add_option("--burn-in", cfg.burn_in, "sampler burn-in (with --mcmc)");
  s_density->add_option("--thin", cfg.thin, "sampler thinning (with --mcmc)");
  s_density->add_option("--sigma", cfg.sigma, "sampler proposal scale (with --mcmc)");
  s_density->add_flag("--mcmc", cfg.mcmc, "cross-check the grid against the joint sampler");
  s_density->add_option("--out", cfg.out, "output path")->required();
  s_density->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (s_sample->parsed()) return cmd_sample_hermitian(cfg);
    if (s_eq->parsed()) return cmd_equilibrium(cfg);
    if (s_verify->parsed()) return cmd_verify(cfg);
    if (s_density->parsed()) return cmd_density_2x2(cfg);
  } catch (const rct::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const rct::UnsupportedAlpha& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  }
  return 0;
}
