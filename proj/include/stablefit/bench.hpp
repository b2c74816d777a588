#ifndef STABLEFIT_BENCH_HPP_
#define STABLEFIT_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stablefit/rng.hpp"
#include "stablefit/types.hpp"

namespace stablefit {

enum class Estimator { Hybrid, KW, SpectralECF };

const char* estimator_name(Estimator e);
Estimator estimator_from_name(const std::string& name);

struct McConfig {
  Estimator estimator = Estimator::Hybrid;
  StableParams uni_truth;   // Hybrid / KW runs
  SpectralModel mv_truth;   // SpectralECF runs
  std::size_t n = 0;
  std::size_t replicates = 0;
  RngSeed seed;
  int threads = 0;  // 0 = all hardware threads
  std::string label;
};

struct ParamStat {
  std::string name;
  double truth = 0.0;
  double mean = 0.0;
  double sd = 0.0;   // sample standard deviation, 0 when fewer than 2 fits
  double mse = 0.0;  // against the true parameter
  double rmse = 0.0;
};

struct McMetrics {
  std::vector<ParamStat> stats;
  std::size_t replicates = 0;
  std::size_t failures = 0;  // excluded fits; successes + failures = replicates
  bool valid = true;         // false when more than 10% of fits failed
  double wall_seconds = 0.0;  // informational only, never emitted
  // config echo
  std::string label;
  std::string estimator;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// One replicate: given its split seed, produce the fitted parameter vector or
// throw Error to be counted as a failure.
using ReplicateFn = std::function<std::vector<double>(RngSeed)>;

// Runs `replicates` independent fits on a worker pool. Replicate i always
// draws from split(seed, i) and results are aggregated in replicate order
// with compensated summation, so the metrics are bit-identical for any
// thread count.
McMetrics run_replicates(const std::vector<std::string>& names,
                         const std::vector<double>& truths,
                         std::size_t replicates, RngSeed seed, int threads,
                         const ReplicateFn& fn);

McMetrics run_mc(const McConfig& config);

enum class TableFormat { Text, Csv, Json };

TableFormat format_from_name(const std::string& name);

// Renders metrics with the fixed column order
// (parameter, truth, mean, sd, mse, rmse). The JSON form round-trips
// losslessly through parse/dump.
std::string emit_table(const std::vector<McMetrics>& metrics,
                       TableFormat format);

}  // namespace stablefit

#endif  // STABLEFIT_BENCH_HPP_
