// Command-line interface: model catalog, grid evaluation, SPAR/limit-set
// export, rank transform of samples, and the verification suite.
//
// Exit codes: 0 ok, 1 check failure, 2 usage/config error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spar/ardensity/engine.hpp"
#include "spar/io/config.hpp"
#include "spar/io/csv.hpp"
#include "spar/numerics/parallel.hpp"
#include "spar/spar/catalog.hpp"
#include "spar/spar/model.hpp"
#include "spar/verify/acceptance.hpp"
#include "spar/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spar;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = num::default_threads();
  std::uint64_t seed = 1;
};

void write_sidecar(const CommonOpts& opts, const std::string& command, const io::Config* cfg) {
  json meta;
  meta["command"] = command;
  meta["version"] = spar::version;
  meta["seed"] = opts.seed;
  meta["threads"] = opts.threads;
  if (cfg) meta["config"] = cfg->raw();
  std::ofstream out(fs::path(opts.out_dir) / (command + "_meta.json"), std::ios::binary);
  out << meta.dump(2) << '\n';
}

int cmd_catalog(const std::string& filter) {
  json out = json::array();
  auto add = [&](const std::string& name, const std::string& params,
                 const std::string& lambda_catalog, const std::string& margins,
                 const std::string& profile_notes = "") {
    if (!filter.empty() && name.find(filter) == std::string::npos) return;
    json j;
    j["family"] = name;
    j["parameters"] = params;
    j["lambda_catalog"] = lambda_catalog;
    j["margins"] = margins;
    if (!profile_notes.empty()) j["profile"] = profile_notes;
    out.push_back(j);
  };
  add("independence", "d >= 2", "closed form (lambda = 1)", "laplace|sgp|gp|pareto|exponential|normal|student_t");
  add("frank", "alpha != 0", "closed form (lambda = 1)", "laplace|sgp|gp|pareto");
  add("joe", "alpha >= 1", "closed form", "laplace|sgp|gp|pareto");
  add("gaussian", "rho in (-1,1)", "closed form (beta != 0, not asymptotically exact)",
      "laplace|sgp|gp|pareto|normal");
  add("student_t", "rho in (-1,1), nu > 0", "closed form (asymptotically exact)",
      "laplace|sgp|gp|pareto|student_t");
  add("ev_logistic", "alpha >= 1", "closed form", "laplace|sgp|gp|pareto");
  add("ev_asym_logistic", "alpha >= 1, gamma1, gamma2 in [0,1]", "closed form",
      "laplace|sgp|gp|pareto");
  add("husler_reiss", "alpha > 0", "closed form", "laplace|sgp|gp|pareto", "gaussian_type");
  add("clayton", "alpha in [-1,inf) \\ {0}", "numeric only", "laplace|sgp|gp (exact short tail at xi_m = alpha)");
  add("nelsen_4215", "alpha >= 1", "numeric only", "laplace|sgp|gp (exact short tail at xi_m = -1/alpha)");
  add("biv_exponential", "alpha in [0,1]", "closed form", "laplace|sgp", "mu_dependent");
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_eval(const CommonOpts& opts) {
  auto cfg = io::Config::parse_file(opts.config_path);
  auto engine = io::make_engine(cfg);
  const int nq = cfg.get_int("grid.angles", 360);
  const double rmin = cfg.get_double("grid.r_min", 0.1);
  const double rmax = cfg.get_double("grid.r_max", 15.0);
  const int nr = cfg.get_int("grid.r_count", 60);
  const int nxy = cfg.get_int("grid.xy_count", 101);
  cfg.reject_unknown();
  fs::create_directories(opts.out_dir);

  const bool theta = engine.angle_convention() == ardensity::AngleConvention::EuclideanTheta;
  auto angle_of = [&](int k) {
    const double q = -2.0 + 4.0 * (k + 1.0) / nq;
    return theta ? q * num::pi / 2.0 : q;
  };

  // angular density table (q, f_Q, flag)
  std::vector<ardensity::AngularDensity> fq(nq);
  num::parallel_for(nq, opts.threads, [&](std::size_t k) {
    fq[k] = engine.angular_density(angle_of(static_cast<int>(k)));
  });
  {
    io::CsvWriter w(fs::path(opts.out_dir) / "eval_q.csv", {"q", "f_q", "flags"});
    for (int k = 0; k < nq; ++k)
      w.row({angle_of(k), fq[k].value}, fq[k].divergent ? "divergent" : "ok");
  }

  // joint angular-radial table (q, r, f_RQ)
  {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(nq) * nr);
    num::parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
      const int k = static_cast<int>(i) / nr;
      const int j = static_cast<int>(i) % nr;
      const double a = angle_of(k);
      const double r = rmin + (rmax - rmin) * j / (nr - 1.0);
      const auto d = engine.joint_polar_density(r, a);
      rows[i] = {a, r, d.value};
    });
    io::CsvWriter w(fs::path(opts.out_dir) / "eval_rq.csv", {"q", "r", "f_rq"});
    for (auto& row : rows) w.row(row);
  }

  // Cartesian table (x, y, f_XY)
  {
    const auto& m = engine.margin();
    const auto& c = engine.copula();
    const double lo = std::max(m.lower(), -rmax), hi = std::min(m.upper(), rmax);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(nxy) * nxy);
    num::parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
      const int a = static_cast<int>(i) / nxy;
      const int b = static_cast<int>(i) % nxy;
      const double x = lo + (hi - lo) * a / (nxy - 1.0);
      const double y = lo + (hi - lo) * b / (nxy - 1.0);
      double f = 0.0;
      if (m.in_support(x) && m.in_support(y)) {
        std::vector<ProbExt> pe{m.prob_ext(x), m.prob_ext(y)};
        f = std::exp(m.log_pdf(x) + m.log_pdf(y) + c.log_density_ext(pe));
      }
      rows[i] = {x, y, f};
    });
    io::CsvWriter w(fs::path(opts.out_dir) / "eval_xy.csv", {"x", "y", "f_xy"});
    for (auto& row : rows) w.row(row);
  }
  write_sidecar(opts, "eval", &cfg);
  return 0;
}

int cmd_spar(const CommonOpts& opts) {
  auto cfg = io::Config::parse_file(opts.config_path);
  auto engine = io::make_engine(cfg);
  const double zeta = cfg.get_double("spar.zeta", 0.05);
  const int nq = cfg.get_int("grid.angles", 720);
  const std::string source = cfg.get_string("spar.source", "catalog");
  const std::string variant = cfg.get_string("spar.variant", "auto");
  const bool want_limit_set = cfg.get_string("spar.limit_set", "auto") != "off";
  cfg.reject_unknown();
  fs::create_directories(opts.out_dir);

  model::BuildOptions bo;
  bo.n_angles = nq;
  bo.threads = opts.threads;
  if (variant == "gp") bo.variant = model::SparVariant::GPTail;
  else if (variant == "gamma") bo.variant = model::SparVariant::GammaTailLaplace;
  else if (variant == "pareto") bo.variant = model::SparVariant::ParetoTail;
  else if (variant != "auto") throw std::runtime_error("spar.variant: gp|gamma|pareto|auto");

  const auto prov = source == "numeric" ? model::Provenance::NumericFit
                                        : model::Provenance::Catalog;
  auto m = model::build_spar(engine, zeta, prov, bo);
  {
    io::CsvWriter w(fs::path(opts.out_dir) / "spar_model.csv",
                    {"q", "mu", "zeta", "xi", "sigma", "f_W", "flags"});
    for (const auto& rec : m.records) {
      std::string flags = rec.valid ? "ok" : "invalid";
      if (rec.degenerate) flags += ";degenerate";
      if (rec.profile == model::LambdaProfile::GaussianType) flags += ";gaussian_type";
      if (rec.profile == model::LambdaProfile::MuDependent) flags += ";mu_dependent";
      w.row({rec.q, rec.mu, rec.zeta, rec.xi, rec.sigma, rec.f_w}, flags);
    }
  }
  const bool laplace =
      m.margin_family == margins::MarginFamily::SGP && m.margin_shape == 0.0;
  if (want_limit_set) {
    if (!laplace) {
      if (cfg.raw().count("spar.limit_set"))
        throw std::runtime_error("spar.limit_set: requires Laplace margins");
    } else {
      auto ls = m.limit_set();
      io::CsvWriter w(fs::path(opts.out_dir) / "limit_set.csv", {"q", "x", "y", "flags"});
      for (std::size_t i = 0; i < ls.points.size(); ++i)
        w.row({m.records[i].q, ls.points[i][0], ls.points[i][1]},
              ls.degenerate[i] ? "degenerate" : "ok");
    }
  }
  write_sidecar(opts, "spar", &cfg);
  return 0;
}

int cmd_transform(const CommonOpts& opts, const std::string& input) {
  auto tab = io::read_numeric_csv(input, 2);
  const std::size_t n = tab.rows.size();
  if (n < 10) throw std::runtime_error("transform: need at least 10 rows, got " +
                                       std::to_string(n));
  fs::create_directories(opts.out_dir);
  auto lap = margins::Margin::laplace();
  const auto l1 = geometry::StarBoundary::lp(1.0);

  std::vector<std::vector<double>> lx(2, std::vector<double>(n));
  for (int col = 0; col < 2; ++col) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return tab.rows[a][col] < tab.rows[b][col];
    });
    if (tab.rows[idx.front()][col] == tab.rows[idx.back()][col])
      throw std::runtime_error("transform: column " + std::to_string(col + 1) +
                               " is constant; ranks are degenerate");
    for (std::size_t rank = 0; rank < n; ++rank) {
      const double u = (rank + 0.5) / static_cast<double>(n);
      lx[col][idx[rank]] = lap.quantile(u);
    }
  }
  io::CsvWriter w(fs::path(opts.out_dir) / "transformed.csv", {"x_L", "y_L", "r", "q"});
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lx[0][i], y = lx[1][i];
    w.row({x, y, std::abs(x) + std::abs(y), l1.pseudo_angle(x, y)});
  }
  write_sidecar(opts, "transform", nullptr);
  return 0;
}

int cmd_verify(const std::string& suite, unsigned threads) {
  const auto suites = verify::acceptance_suites();
  if (suite != "all" &&
      std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    std::fprintf(stderr, "unknown suite '%s'; available:", suite.c_str());
    for (const auto& s : suites) std::fprintf(stderr, " %s", s.c_str());
    std::fprintf(stderr, " all\n");
    return 2;
  }
  const auto results = verify::run_acceptance(suite, threads);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-70s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu checks run, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-parametric angular-radial (SPAR) models for multivariate extremes"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOpts opts;
  app.add_option("--threads", opts.threads, "worker pool size");
  app.add_option("--seed", opts.seed, "random seed");

  std::string filter;
  auto* sc_catalog = app.add_subcommand("catalog", "machine-readable model catalog");
  sc_catalog->add_option("--filter", filter, "substring filter on family names");

  auto* sc_eval = app.add_subcommand("eval", "evaluate density grids to CSV");
  sc_eval->add_option("--config", opts.config_path, "run configuration")->required();
  sc_eval->add_option("--out", opts.out_dir, "output directory");

  auto* sc_spar = app.add_subcommand("spar", "fit/export a SPAR model and limit set");
  sc_spar->add_option("--config", opts.config_path, "run configuration")->required();
  sc_spar->add_option("--out", opts.out_dir, "output directory");

  std::string input;
  auto* sc_tr = app.add_subcommand("transform", "rank-transform a 2-column sample to Laplace polars");
  sc_tr->add_option("--input", input, "input CSV with two numeric columns")->required();
  sc_tr->add_option("--out", opts.out_dir, "output directory");

  std::string suite = "all";
  auto* sc_ver = app.add_subcommand("verify", "run verification suites");
  sc_ver->add_option("suite", suite, "suite name (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_catalog->parsed()) return cmd_catalog(filter);
    if (sc_eval->parsed()) return cmd_eval(opts);
    if (sc_spar->parsed()) return cmd_spar(opts);
    if (sc_tr->parsed()) return cmd_transform(opts, input);
    if (sc_ver->parsed()) return cmd_verify(suite, opts.threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
