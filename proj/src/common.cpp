#include "biopars/common.hpp"

#include <cmath>

namespace biopars {

std::string shape_str(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

std::string shape_str(const Mat& m) { return shape_str(m.rows(), m.cols()); }

bool all_finite(const Mat& m) { return m.allFinite(); }

void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": non-finite value produced");
  }
}

double Rng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the argument of log strictly positive.
  double u1 = 1.0 - next_double();
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Mat Rng::uniform(Index rows, Index cols, double lo, double hi) {
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = lo + (hi - lo) * next_double();
    }
  }
  return m;
}

Mat Rng::normal(Index rows, Index cols, double mean, double stddev) {
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = mean + stddev * next_normal();
    }
  }
  return m;
}

}  // namespace biopars
