#ifndef STABLEFIT_TYPES_HPP_
#define STABLEFIT_TYPES_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stablefit {

// Error categories surfaced by the library. The CLI prints them as
// single-line "error:<category>: ..." messages.
enum class Errc {
  degenerate_sample,
  insufficient_points,
  degenerate_weights,
  singular_system,
  ecf_vanishes,
  unsupported_alpha,
  non_convergence,
  accuracy_not_met,
  collinear_input,
  dimension_mismatch,
  invalid_argument,
  empty_input,
  missing_column,
  parse_error,
  io_error,
};

const char* category_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }
  const char* category() const noexcept { return category_name(code_); }

 private:
  Errc code_;
};

// Characteristic-function parametrization. Zero is the continuous form
// (jointly continuous in all parameters, recommended for numerics), One the
// classical form used for theory. They differ in how the shift enters.
enum class Param { Zero, One };

struct StableParams {
  double alpha = 2.0;  // index of stability, (0, 2]
  double beta = 0.0;   // skewness, [-1, 1]
  double sigma = 1.0;  // scale, > 0
  double delta = 0.0;  // shift
  Param param = Param::Zero;
};

// Throws Error(invalid_argument) when a field is out of range.
void validate(const StableParams& p);

using Sample = std::vector<double>;

// n observations of a d-dimensional vector, one per row.
struct MultiSample {
  Eigen::MatrixXd data;
  Eigen::Index n() const { return data.rows(); }
  Eigen::Index dim() const { return data.cols(); }
};

// Discrete spectral measure: weights gamma_l at unit vectors s_l, plus a
// shift vector. Together with alpha this pins down a d-dimensional stable law.
struct SpectralModel {
  double alpha = 2.0;
  Eigen::MatrixXd points;        // L x d, unit rows
  std::vector<double> weights;   // length L, nonnegative
  Eigen::VectorXd shift;         // length d
  Eigen::Index L() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

void validate(const SpectralModel& m);

// Which psi kernel to use: the complex Standard/Continuous forms, the real
// two-point form for d=1, or |u|^alpha for d=3.
enum class PsiVariant { Standard, Continuous, RealD1, RealD3 };

// alpha == 1 selects different formulas everywhere; a strict gate keeps the
// switch sane in floating point.
inline bool alpha_is_one(double alpha) { return std::fabs(alpha - 1.0) < 1e-9; }

}  // namespace stablefit

#endif  // STABLEFIT_TYPES_HPP_
