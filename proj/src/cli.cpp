#include "stablefit/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablefit/bench.hpp"
#include "stablefit/core.hpp"
#include "stablefit/estimate_multi.hpp"
#include "stablefit/estimate_uni.hpp"
#include "stablefit/io.hpp"
#include "stablefit/simulate.hpp"

namespace stablefit {

namespace {

using nlohmann::json;

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& path,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot write file: " + path);
  f << text;
}

json params_json(const StableParams& p) {
  return json{{"alpha", p.alpha},
              {"beta", p.beta},
              {"sigma", p.sigma},
              {"delta", p.delta},
              {"param", p.param == Param::Zero ? "zero" : "one"}};
}

json report_json(const UniFitReport& rep, bool hybrid) {
  json j;
  j["initial"] = params_json(rep.initial);
  j["final"] = params_json(rep.final);
  if (hybrid) {
    j["stage"] = json{{"alpha1", rep.stage.alpha1},
                      {"sigma1", rep.stage.sigma1},
                      {"delta1", rep.stage.delta1}};
    j["k_used"] = rep.k_used;
    j["t_grid"] = rep.t_grid;
  }
  return j;
}

SpectralModel model_from_json(const json& j) {
  SpectralModel m;
  m.alpha = j.at("alpha").get<double>();
  const int d = j.at("d").get<int>();
  const Eigen::Index L = j.at("L").get<Eigen::Index>();
  m.points = make_grid(d, L).points;  // grid points derive from (d, L)
  m.weights = j.at("weights").get<std::vector<double>>();
  m.shift = Eigen::VectorXd::Zero(d);
  if (j.contains("shift")) {
    const auto shift = j.at("shift").get<std::vector<double>>();
    if (static_cast<int>(shift.size()) != d)
      throw Error(Errc::dimension_mismatch, "model shift length != d");
    for (int i = 0; i < d; ++i) m.shift[i] = shift[static_cast<std::size_t>(i)];
  }
  validate(m);
  return m;
}

SpectralModel load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::io_error, "cannot open model file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("model file: ") + e.what());
  }
  return model_from_json(j);
}

struct CommonOpts {
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed) {
  cmd->add_option("--format", o.format, "output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
  if (with_seed)
    cmd->add_option("--seed", o.seed, "random seed")->envname("STABLEFIT_SEED");
}

// ---- simulate ----

std::string render_uni_sample(const Sample& x, const StableParams& p,
                              std::uint64_t seed, const std::string& format) {
  if (format == "json") {
    json j;
    j["params"] = params_json(p);
    j["seed"] = seed;
    j["n"] = x.size();
    j["sample"] = x;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == "csv") out << "value\n";
  for (double v : x) out << fmt_full(v) << '\n';
  return out.str();
}

std::string render_mv_sample(const MultiSample& x, std::uint64_t seed,
                             const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (Eigen::Index i = 0; i < x.n(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < x.dim(); ++j) row.push_back(x.data(i, j));
      rows.push_back(std::move(row));
    }
    json j;
    j["seed"] = seed;
    j["n"] = x.n();
    j["d"] = x.dim();
    j["sample"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == "csv") {
    for (Eigen::Index j = 0; j < x.dim(); ++j)
      out << (j ? "," : "") << 'x' << (j + 1);
    out << '\n';
  }
  for (Eigen::Index i = 0; i < x.n(); ++i) {
    for (Eigen::Index j = 0; j < x.dim(); ++j)
      out << (j ? "," : "") << fmt_full(x.data(i, j));
    out << '\n';
  }
  return out.str();
}

// ---- fit / gof rendering ----

std::string render_fit(const UniFitReport& rep, bool hybrid,
                       const std::string& format) {
  if (format == "json") return report_json(rep, hybrid).dump(2) + "\n";
  if (format == "csv") {
    std::ostringstream out;
    out << "alpha,beta,sigma,delta\n"
        << fmt_full(rep.final.alpha) << ',' << fmt_full(rep.final.beta) << ','
        << fmt_full(rep.final.sigma) << ',' << fmt_full(rep.final.delta) << '\n';
    return out.str();
  }
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "alpha  %.6f\nbeta   %.6f\nsigma  %.6g\ndelta  %.6g\n",
                rep.final.alpha, rep.final.beta, rep.final.sigma, rep.final.delta);
  out << line;
  if (hybrid) {
    std::snprintf(line, sizeof line,
                  "initial (KW): alpha %.6f beta %.6f sigma %.6g delta %.6g\n",
                  rep.initial.alpha, rep.initial.beta, rep.initial.sigma,
                  rep.initial.delta);
    out << line << "K used: " << rep.k_used << "\n";
  }
  return out.str();
}

std::string render_spectral(const SpectralFit& fit, const std::string& format) {
  if (format == "json") {
    json j;
    j["alpha"] = fit.alpha_hat;
    j["method"] = method_name(fit.method);
    j["d"] = fit.grid.d;
    j["L"] = fit.grid.L;
    json gamma = json::array();
    for (Eigen::Index l = 0; l < fit.gamma_hat.size(); ++l)
      gamma.push_back(fit.gamma_hat[l]);
    j["gamma"] = std::move(gamma);
    json delta = json::array();
    for (Eigen::Index i = 0; i < fit.delta_hat.size(); ++i)
      delta.push_back(fit.delta_hat[i]);
    j["delta"] = std::move(delta);
    json points = json::array();
    for (Eigen::Index l = 0; l < fit.grid.points.rows(); ++l) {
      json row = json::array();
      for (Eigen::Index c = 0; c < fit.grid.points.cols(); ++c)
        row.push_back(fit.grid.points(l, c));
      points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == "csv") {
    out << "parameter,value\n";
    out << "alpha," << fmt_full(fit.alpha_hat) << '\n';
    for (Eigen::Index l = 0; l < fit.gamma_hat.size(); ++l)
      out << "gamma" << (l + 1) << ',' << fmt_full(fit.gamma_hat[l]) << '\n';
    for (Eigen::Index i = 0; i < fit.delta_hat.size(); ++i)
      out << "delta" << (i + 1) << ',' << fmt_full(fit.delta_hat[i]) << '\n';
    return out.str();
  }
  char line[128];
  std::snprintf(line, sizeof line, "alpha  %.6f   (%s)\n", fit.alpha_hat,
                method_name(fit.method));
  out << line;
  for (Eigen::Index l = 0; l < fit.gamma_hat.size(); ++l) {
    std::snprintf(line, sizeof line, "gamma%-2lld %.6f\n",
                  static_cast<long long>(l + 1), fit.gamma_hat[l]);
    out << line;
  }
  for (Eigen::Index i = 0; i < fit.delta_hat.size(); ++i) {
    std::snprintf(line, sizeof line, "delta%-2lld %.6g\n",
                  static_cast<long long>(i + 1), fit.delta_hat[i]);
    out << line;
  }
  return out.str();
}

std::string render_gof(const GofReport& rep, bool hybrid,
                       const std::string& format) {
  if (format == "json") {
    json j;
    j["n"] = rep.n;
    j["estimates"] = params_json(rep.fit.final);
    j["initial"] = params_json(rep.fit.initial);
    j["d"] = rep.d_stat;
    j["p_value"] = rep.p_value;
    (void)hybrid;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "d,p_value,alpha,beta,sigma,delta\n"
        << fmt_full(rep.d_stat) << ',' << fmt_full(rep.p_value) << ','
        << fmt_full(rep.fit.final.alpha) << ',' << fmt_full(rep.fit.final.beta)
        << ',' << fmt_full(rep.fit.final.sigma) << ','
        << fmt_full(rep.fit.final.delta) << '\n';
    return out.str();
  }
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line,
                "n %zu\nalpha %.6f  beta %.6f  sigma %.6g  delta %.6g\n"
                "K-S D %.6f   p-value %.4f\n",
                rep.n, rep.fit.final.alpha, rep.fit.final.beta,
                rep.fit.final.sigma, rep.fit.final.delta, rep.d_stat,
                rep.p_value);
  out << line;
  return out.str();
}

// ---- bench config ----

McConfig config_from_json(const json& j, std::uint64_t default_seed,
                          int threads) {
  McConfig cfg;
  cfg.estimator = estimator_from_name(j.value("estimator", std::string("hybrid")));
  cfg.n = j.at("n").get<std::size_t>();
  cfg.replicates = j.at("replicates").get<std::size_t>();
  cfg.seed = RngSeed{j.value("seed", default_seed)};
  cfg.threads = threads;
  cfg.label = j.value("label", std::string());
  if (cfg.estimator == Estimator::SpectralECF) {
    cfg.mv_truth = model_from_json(j.at("model"));
  } else {
    cfg.uni_truth.alpha = j.value("alpha", 2.0);
    cfg.uni_truth.beta = j.value("beta", 0.0);
    cfg.uni_truth.sigma = j.value("sigma", 1.0);
    cfg.uni_truth.delta = j.value("delta", 0.0);
    cfg.uni_truth.param =
        j.value("param", std::string("zero")) == "one" ? Param::One : Param::Zero;
  }
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"stable-law parameter estimation, simulation and benchmarks"};
  app.require_subcommand(1);

  // simulate
  CommonOpts sim_o;
  StableParams sim_p;
  int sim_param = 0;
  std::size_t sim_n = 1000;
  std::string sim_model_path;
  auto* sim = app.add_subcommand("simulate", "draw stable variates");
  sim->add_option("--alpha", sim_p.alpha, "index of stability");
  sim->add_option("--beta", sim_p.beta, "skewness");
  sim->add_option("--sigma", sim_p.sigma, "scale");
  sim->add_option("--delta", sim_p.delta, "shift");
  sim->add_option("--param", sim_param, "parametrization: 0 or 1")
      ->check(CLI::IsMember({0, 1}));
  sim->add_option("--n", sim_n, "number of draws");
  sim->add_option("--spectral", sim_model_path,
                  "spectral model JSON file (multivariate sampling)");
  add_common(sim, sim_o, true);

  // fit
  CommonOpts fit_o;
  std::string fit_input, fit_column, fit_estimator = "hybrid";
  bool fit_no_header = false;
  auto* fit = app.add_subcommand("fit", "fit a univariate stable law to a CSV column");
  fit->add_option("--input", fit_input, "CSV file of observations")->required();
  fit->add_option("--column", fit_column, "column name or 0-based index");
  fit->add_flag("--no-header", fit_no_header, "input has no header row");
  fit->add_option("--estimator", fit_estimator, "hybrid or kw")
      ->check(CLI::IsMember({"hybrid", "kw"}));
  add_common(fit, fit_o, false);

  // fit-mv
  CommonOpts fmv_o;
  std::string fmv_input;
  bool fmv_no_header = false;
  Eigen::Index fmv_L = 4;
  auto* fmv = app.add_subcommand("fit-mv",
                                 "fit a discrete spectral measure to multivariate CSV data");
  fmv->add_option("--input", fmv_input, "CSV file, one coordinate per column")->required();
  fmv->add_flag("--no-header", fmv_no_header, "input has no header row");
  fmv->add_option("--L", fmv_L, "number of spectral grid points")->required();
  add_common(fmv, fmv_o, false);

  // bench
  CommonOpts bench_o;
  std::string bench_config, bench_estimator = "hybrid", bench_model_path;
  StableParams bench_p;
  std::size_t bench_n = 1500, bench_reps = 100;
  int bench_threads = 0;
  auto* bench = app.add_subcommand("bench", "Monte-Carlo benchmark of the estimators");
  bench->add_option("--config", bench_config, "JSON config (object or array)");
  bench->add_option("--estimator", bench_estimator, "hybrid, kw or spectral-ecf");
  bench->add_option("--alpha", bench_p.alpha, "true alpha");
  bench->add_option("--beta", bench_p.beta, "true beta");
  bench->add_option("--sigma", bench_p.sigma, "true sigma");
  bench->add_option("--delta", bench_p.delta, "true delta");
  bench->add_option("--spectral", bench_model_path, "spectral model JSON file");
  bench->add_option("--n", bench_n, "sample size per replicate");
  bench->add_option("--reps", bench_reps, "number of replicates");
  bench->add_option("--threads", bench_threads, "worker threads (0 = all cores)");
  add_common(bench, bench_o, true);

  // gof
  CommonOpts gof_o;
  std::string gof_input, gof_column, gof_estimator = "hybrid", gof_returns = "log";
  bool gof_no_header = false;
  auto* gofc = app.add_subcommand("gof",
                                  "K-S goodness of fit of a stable law to price data");
  gofc->add_option("--input", gof_input, "CSV file of prices")->required();
  gofc->add_option("--column", gof_column, "column name or 0-based index");
  gofc->add_flag("--no-header", gof_no_header, "input has no header row");
  gofc->add_option("--returns", gof_returns, "transform: log or simple")
      ->check(CLI::IsMember({"log", "simple"}));
  gofc->add_option("--estimator", gof_estimator, "hybrid or kw")
      ->check(CLI::IsMember({"hybrid", "kw"}));
  add_common(gofc, gof_o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (sim->parsed()) {
      if (!sim_model_path.empty()) {
        const SpectralModel model = load_model(sim_model_path);
        const MultiSample x = sample_mv(model, sim_n, RngSeed{sim_o.seed});
        write_output(render_mv_sample(x, sim_o.seed, sim_o.format), sim_o.out_path, out);
      } else {
        sim_p.param = sim_param == 1 ? Param::One : Param::Zero;
        const Sample x = sample_uni(sim_p, sim_n, RngSeed{sim_o.seed});
        write_output(render_uni_sample(x, sim_p, sim_o.seed, sim_o.format),
                     sim_o.out_path, out);
      }
    } else if (fit->parsed()) {
      const auto data = load_csv(fit_input, fit_column, !fit_no_header);
      UniFitReport rep;
      const bool hybrid = fit_estimator == "hybrid";
      if (hybrid) {
        rep = hybrid_fit(data);
      } else {
        rep.initial = kw_initial(data);
        rep.final = rep.initial;
      }
      write_output(render_fit(rep, hybrid, fit_o.format), fit_o.out_path, out);
    } else if (fmv->parsed()) {
      MultiSample data;
      data.data = load_csv_matrix(fmv_input, !fmv_no_header);
      const SpectralFit sf = fit_spectral(data, fmv_L);
      write_output(render_spectral(sf, fmv_o.format), fmv_o.out_path, out);
    } else if (bench->parsed()) {
      std::vector<McConfig> configs;
      if (!bench_config.empty()) {
        std::ifstream f(bench_config);
        if (!f) throw Error(Errc::io_error, "cannot open config: " + bench_config);
        json j;
        try {
          f >> j;
        } catch (const json::exception& e) {
          throw Error(Errc::parse_error, std::string("config: ") + e.what());
        }
        if (j.is_array())
          for (const auto& item : j)
            configs.push_back(config_from_json(item, bench_o.seed, bench_threads));
        else
          configs.push_back(config_from_json(j, bench_o.seed, bench_threads));
      } else {
        McConfig cfg;
        cfg.estimator = estimator_from_name(bench_estimator);
        if (cfg.estimator == Estimator::SpectralECF) {
          if (bench_model_path.empty())
            throw Error(Errc::invalid_argument,
                        "spectral bench needs --spectral model file");
          cfg.mv_truth = load_model(bench_model_path);
        } else {
          cfg.uni_truth = bench_p;
        }
        cfg.n = bench_n;
        cfg.replicates = bench_reps;
        cfg.seed = RngSeed{bench_o.seed};
        cfg.threads = bench_threads;
        configs.push_back(cfg);
      }
      std::vector<McMetrics> metrics;
      double total_wall = 0.0;
      for (const auto& cfg : configs) {
        metrics.push_back(run_mc(cfg));
        total_wall += metrics.back().wall_seconds;
      }
      write_output(emit_table(metrics, format_from_name(bench_o.format)),
                   bench_o.out_path, out);
      err << "# bench finished in " << total_wall << " s\n";
    } else if (gofc->parsed()) {
      const auto prices = load_csv(gof_input, gof_column, !gof_no_header);
      const auto returns = gof_returns == "simple" ? to_simple_returns(prices)
                                                   : to_log_returns(prices);
      if (returns.size() < 21)
        throw Error(Errc::insufficient_points,
                    "need at least 21 returns after differencing");
      const bool hybrid = gof_estimator == "hybrid";
      const GofReport rep = gof(returns, hybrid ? Estimator::Hybrid : Estimator::KW);
      write_output(render_gof(rep, hybrid, gof_o.format), gof_o.out_path, out);
    }
  } catch (const Error& e) {
    err << "error:" << e.category() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace stablefit
