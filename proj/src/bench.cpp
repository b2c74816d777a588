#include "stablefit/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "stablefit/estimate_multi.hpp"
#include "stablefit/estimate_uni.hpp"
#include "stablefit/simulate.hpp"

namespace stablefit {

namespace {

// compensated (Kahan) accumulator
struct Accum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::Hybrid: return "hybrid";
    case Estimator::KW: return "kw";
    case Estimator::SpectralECF: return "spectral-ecf";
  }
  return "unknown";
}

Estimator estimator_from_name(const std::string& name) {
  if (name == "hybrid") return Estimator::Hybrid;
  if (name == "kw") return Estimator::KW;
  if (name == "spectral-ecf" || name == "spectral") return Estimator::SpectralECF;
  throw Error(Errc::invalid_argument, "unknown estimator: " + name);
}

TableFormat format_from_name(const std::string& name) {
  if (name == "text") return TableFormat::Text;
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw Error(Errc::invalid_argument, "unknown format: " + name);
}

McMetrics run_replicates(const std::vector<std::string>& names,
                         const std::vector<double>& truths,
                         std::size_t replicates, RngSeed seed, int threads,
                         const ReplicateFn& fn) {
  if (replicates < 1)
    throw Error(Errc::invalid_argument, "need at least one replicate");
  if (names.size() != truths.size())
    throw Error(Errc::dimension_mismatch, "names/truths length mismatch");

  const auto t_start = std::chrono::steady_clock::now();
  std::vector<std::optional<std::vector<double>>> results(replicates);

  unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads)
                                  : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(replicates));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> fatal{false};
  std::exception_ptr fatal_error;
  std::mutex fatal_mutex;

  auto worker = [&] {
    while (!fatal.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= replicates) break;
      try {
        results[i] = fn(split(seed, i));
      } catch (const Error&) {
        results[i] = std::nullopt;  // counted and excluded
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mutex);
        if (!fatal.exchange(true)) fatal_error = std::current_exception();
      }
    }
  };

  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (fatal) std::rethrow_exception(fatal_error);

  McMetrics m;
  m.replicates = replicates;
  m.seed = seed.value;
  std::size_t successes = 0;
  for (const auto& r : results)
    if (r) {
      ++successes;
      if (r->size() != names.size())
        throw Error(Errc::dimension_mismatch, "replicate returned wrong arity");
    } else {
      ++m.failures;
    }
  m.valid = 10 * m.failures <= replicates;

  for (std::size_t p = 0; p < names.size(); ++p) {
    ParamStat st;
    st.name = names[p];
    st.truth = truths[p];
    if (successes > 0) {
      Accum sum, sq_err;
      for (const auto& r : results)
        if (r) {
          sum.add((*r)[p]);
          const double e = (*r)[p] - st.truth;
          sq_err.add(e * e);
        }
      st.mean = sum.sum / static_cast<double>(successes);
      st.mse = sq_err.sum / static_cast<double>(successes);
      st.rmse = std::sqrt(st.mse);
      if (successes > 1) {
        Accum sq_dev;
        for (const auto& r : results)
          if (r) {
            const double d = (*r)[p] - st.mean;
            sq_dev.add(d * d);
          }
        st.sd = std::sqrt(sq_dev.sum / static_cast<double>(successes - 1));
      }
    }
    m.stats.push_back(std::move(st));
  }

  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return m;
}

McMetrics run_mc(const McConfig& config) {
  if (config.n < 20)
    throw Error(Errc::invalid_argument, "run_mc: n must be at least 20");
  std::vector<std::string> names;
  std::vector<double> truths;
  ReplicateFn fn;

  switch (config.estimator) {
    case Estimator::Hybrid:
    case Estimator::KW: {
      validate(config.uni_truth);
      names = {"alpha", "beta", "sigma", "delta"};
      truths = {config.uni_truth.alpha, config.uni_truth.beta,
                config.uni_truth.sigma, config.uni_truth.delta};
      const StableParams truth = config.uni_truth;
      const std::size_t n = config.n;
      const bool full = config.estimator == Estimator::Hybrid;
      fn = [truth, n, full](RngSeed s) {
        const Sample x = sample_uni(truth, n, s);
        const StableParams est = full ? hybrid_fit(x).final : kw_initial(x);
        return std::vector<double>{est.alpha, est.beta, est.sigma, est.delta};
      };
      break;
    }
    case Estimator::SpectralECF: {
      validate(config.mv_truth);
      names = {"alpha"};
      truths = {config.mv_truth.alpha};
      for (Eigen::Index l = 0; l < config.mv_truth.L(); ++l) {
        names.push_back("gamma" + std::to_string(l + 1));
        truths.push_back(config.mv_truth.weights[static_cast<std::size_t>(l)]);
      }
      for (Eigen::Index j = 0; j < config.mv_truth.dim(); ++j) {
        names.push_back("delta" + std::to_string(j + 1));
        truths.push_back(config.mv_truth.shift[j]);
      }
      const SpectralModel truth = config.mv_truth;
      const std::size_t n = config.n;
      fn = [truth, n](RngSeed s) {
        const MultiSample x = sample_mv(truth, n, s);
        const SpectralFit fit = fit_spectral(x, truth.L());
        std::vector<double> out;
        out.push_back(fit.alpha_hat);
        for (Eigen::Index l = 0; l < fit.gamma_hat.size(); ++l)
          out.push_back(fit.gamma_hat[l]);
        for (Eigen::Index j = 0; j < fit.delta_hat.size(); ++j)
          out.push_back(fit.delta_hat[j]);
        return out;
      };
      break;
    }
  }

  McMetrics m = run_replicates(names, truths, config.replicates, config.seed,
                               config.threads, fn);
  m.label = config.label;
  m.estimator = estimator_name(config.estimator);
  m.n = config.n;
  return m;
}

std::string emit_table(const std::vector<McMetrics>& metrics,
                       TableFormat format) {
  if (metrics.empty())
    throw Error(Errc::empty_input, "emit_table: no metrics");

  if (format == TableFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : metrics) {
      nlohmann::json row;
      row["label"] = m.label;
      row["estimator"] = m.estimator;
      row["n"] = m.n;
      row["replicates"] = m.replicates;
      row["seed"] = m.seed;
      row["failures"] = m.failures;
      row["valid"] = m.valid;
      nlohmann::json stats = nlohmann::json::array();
      for (const auto& st : m.stats) {
        nlohmann::json s;
        s["parameter"] = st.name;
        s["truth"] = st.truth;
        s["mean"] = st.mean;
        s["sd"] = st.sd;
        s["mse"] = st.mse;
        s["rmse"] = st.rmse;
        stats.push_back(std::move(s));
      }
      row["stats"] = std::move(stats);
      arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "label,estimator,n,replicates,seed,failures,parameter,truth,mean,sd,mse,rmse\n";
    for (const auto& m : metrics)
      for (const auto& st : m.stats)
        out << csv_quote(m.label) << ',' << m.estimator << ',' << m.n << ','
            << m.replicates << ',' << m.seed << ',' << m.failures << ','
            << csv_quote(st.name) << ',' << fmt_double(st.truth) << ','
            << fmt_double(st.mean) << ',' << fmt_double(st.sd) << ','
            << fmt_double(st.mse) << ',' << fmt_double(st.rmse) << '\n';
    return out.str();
  }

  for (const auto& m : metrics) {
    out << "# " << (m.label.empty() ? std::string("run") : m.label) << "  ["
        << m.estimator << ", n=" << m.n << ", replicates=" << m.replicates
        << ", seed=" << m.seed << ", failures=" << m.failures
        << (m.valid ? "" : ", INVALID") << "]\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %12s %12s %12s %12s %12s\n",
                  "parameter", "truth", "mean", "sd", "mse", "rmse");
    out << line;
    for (const auto& st : m.stats) {
      std::snprintf(line, sizeof line, "%-10s %12.6f %12.6f %12.6f %12.6f %12.6f\n",
                    st.name.c_str(), st.truth, st.mean, st.sd, st.mse, st.rmse);
      out << line;
    }
  }
  return out.str();
}

}  // namespace stablefit
