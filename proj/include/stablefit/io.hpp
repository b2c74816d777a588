#ifndef STABLEFIT_IO_HPP_
#define STABLEFIT_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "stablefit/bench.hpp"
#include "stablefit/estimate_uni.hpp"
#include "stablefit/types.hpp"

namespace stablefit {

// Parsed CSV contents: rows of string cells, RFC-4180 tolerant (quoted
// fields, doubled quotes, CRLF line ends).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// One numeric column from a CSV file. `column` is a header name when
// has_header is true, otherwise (or when no header matches) a 0-based index;
// empty selects the first column. Non-numeric cells are rejected with their
// row and column in the message.
std::vector<double> load_csv(const std::string& path, const std::string& column,
                             bool has_header);

// Every column of a CSV file as an n x d matrix.
Eigen::MatrixXd load_csv_matrix(const std::string& path, bool has_header);

// r_t = ln(p_t / p_{t-1}); prices must be positive, output length n-1.
std::vector<double> to_log_returns(const std::vector<double>& prices);

// r_t = p_t / p_{t-1} - 1.
std::vector<double> to_simple_returns(const std::vector<double>& prices);

struct GofReport {
  UniFitReport fit;
  double d_stat = 0.0;
  double p_value = 0.0;
  std::size_t n = 0;
};

// Fits the series (hybrid or KW), then Kolmogorov-Smirnov against the fitted
// stable CDF.
GofReport gof(const Sample& returns, Estimator estimator);

}  // namespace stablefit

#endif  // STABLEFIT_IO_HPP_
