#include "stablefit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stablefit/numerics.hpp"

namespace stablefit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const std::string t = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw Error(Errc::parse_error, "row " + std::to_string(row + 1) + " column " +
                                       std::to_string(col + 1) +
                                       ": not a number: '" + cell + "'");
  return value;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open file: " + path);
  auto rows = parse_csv(in);
  if (rows.empty()) throw Error(Errc::empty_input, "empty input: " + path);
  return rows;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;
  char c;
  auto end_cell = [&] {
    row.push_back(cell);
    cell.clear();
    cell_started = false;
  };
  auto end_row = [&] {
    end_cell();
    // skip blank lines
    if (!(row.size() == 1 && trim(row[0]).empty())) rows.push_back(row);
    row.clear();
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!cell_started && trim(cell).empty()) {
          quoted = true;
          cell.clear();
          cell_started = true;
        } else {
          cell += c;
        }
        break;
      case ',': end_cell(); break;
      case '\r': break;
      case '\n': end_row(); break;
      default:
        cell += c;
        cell_started = true;
    }
  }
  if (cell_started || !cell.empty() || !row.empty()) end_row();
  return rows;
}

std::vector<double> load_csv(const std::string& path, const std::string& column,
                             bool has_header) {
  const auto rows = read_rows(path);

  std::size_t col = 0;
  std::size_t first_data = has_header ? 1 : 0;
  if (has_header) {
    const auto& header = rows[0];
    bool found = false;
    for (std::size_t j = 0; j < header.size(); ++j)
      if (trim(header[j]) == trim(column)) {
        col = j;
        found = true;
        break;
      }
    if (!found) {
      if (column.empty()) {
        col = 0;
        found = true;
      } else {
        // fall back to a numeric index
        std::size_t idx = 0;
        const std::string t = trim(column);
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
        if (ec == std::errc{} && ptr == t.data() + t.size()) {
          col = idx;
          found = true;
        }
      }
    }
    if (!found)
      throw Error(Errc::missing_column, "no column named '" + column + "' in " + path);
  } else if (!column.empty()) {
    std::size_t idx = 0;
    const std::string t = trim(column);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      throw Error(Errc::missing_column,
                  "headerless input needs a numeric column index, got '" + column + "'");
    col = idx;
  }

  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t i = first_data; i < rows.size(); ++i) {
    if (col >= rows[i].size())
      throw Error(Errc::missing_column, "row " + std::to_string(i + 1) +
                                            " has no column " + std::to_string(col + 1));
    out.push_back(parse_cell(rows[i][col], i, col));
  }
  if (out.empty()) throw Error(Errc::empty_input, "no data rows in " + path);
  return out;
}

Eigen::MatrixXd load_csv_matrix(const std::string& path, bool has_header) {
  const auto rows = read_rows(path);
  const std::size_t first_data = has_header ? 1 : 0;
  if (rows.size() <= first_data)
    throw Error(Errc::empty_input, "no data rows in " + path);
  const std::size_t d = rows[first_data].size();
  Eigen::MatrixXd m(rows.size() - first_data, d);
  for (std::size_t i = first_data; i < rows.size(); ++i) {
    if (rows[i].size() != d)
      throw Error(Errc::parse_error, "row " + std::to_string(i + 1) +
                                         ": expected " + std::to_string(d) + " columns");
    for (std::size_t j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(i - first_data), static_cast<Eigen::Index>(j)) =
          parse_cell(rows[i][j], i, j);
  }
  return m;
}

std::vector<double> to_log_returns(const std::vector<double>& prices) {
  if (prices.size() < 2)
    throw Error(Errc::insufficient_points, "need at least two prices");
  std::vector<double> out(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (!(prices[i] > 0.0) || !(prices[i + 1] > 0.0))
      throw Error(Errc::invalid_argument,
                  "non-positive price at row " + std::to_string(i + (prices[i] > 0.0 ? 2 : 1)));
    out[i] = std::log(prices[i + 1] / prices[i]);
  }
  return out;
}

std::vector<double> to_simple_returns(const std::vector<double>& prices) {
  if (prices.size() < 2)
    throw Error(Errc::insufficient_points, "need at least two prices");
  std::vector<double> out(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (prices[i] == 0.0)
      throw Error(Errc::invalid_argument, "zero price at row " + std::to_string(i + 1));
    out[i] = prices[i + 1] / prices[i] - 1.0;
  }
  return out;
}

GofReport gof(const Sample& returns, Estimator estimator) {
  GofReport rep;
  rep.n = returns.size();
  if (estimator == Estimator::KW) {
    const StableParams initial = kw_initial(returns);
    rep.fit.initial = initial;
    rep.fit.final = initial;
  } else {
    rep.fit = hybrid_fit(returns);
  }
  const StableParams model = rep.fit.final;
  rep.d_stat = ks_statistic(returns, [&](double x) { return stable_cdf(model, x); });
  rep.p_value = ks_pvalue(rep.d_stat, rep.n);
  return rep;
}

}  // namespace stablefit
