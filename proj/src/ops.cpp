#include "biopars/ops.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace biopars {

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner extents disagree, " + shape_str(a) +
                         " * " + shape_str(b));
  }
  return a * b;
}

Mat softmax_rows(const Mat& a) {
  const Index rows = a.rows(), cols = a.cols();
  Mat out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    double m = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < cols; ++j) m = std::max(m, a(i, j));
    double sum = 0.0;
    for (Index j = 0; j < cols; ++j) {
      double e = std::exp(a(i, j) - m);  // exp(-inf) == 0 handles masking
      out(i, j) = e;
      sum += e;
    }
    for (Index j = 0; j < cols; ++j) out(i, j) /= sum;
  }
  return out;
}

Mat l2_normalize_rows(const Mat& a, double eps) {
  Mat out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    double sq = 0.0;
    for (Index j = 0; j < a.cols(); ++j) sq += a(i, j) * a(i, j);
    double denom = std::max(std::sqrt(sq), eps);
    out.row(i) = a.row(i) / denom;
  }
  return out;
}

Mat sigmoid(const Mat& a) {
  return a.unaryExpr([](double x) { return sigmoid(x); });
}

Mat swish(const Mat& a) {
  return a.unaryExpr([](double x) { return x * sigmoid(x); });
}

bool bits_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace biopars
