#pragma once

#include "biopars/common.hpp"

namespace biopars {

// Checked matrix product. Summation order is the library kernel's fixed
// deterministic schedule for a given shape, so repeated calls are
// bit-identical.
Mat matmul(const Mat& a, const Mat& b);

// Row-wise softmax with per-row max subtraction. -inf entries are treated as
// masked and receive exactly zero weight; each row must keep at least one
// finite entry.
Mat softmax_rows(const Mat& a);

// Divides each row by max(||row||_2, eps). Rows with norm below eps are
// scaled by 1/eps instead of being renormalized.
Mat l2_normalize_rows(const Mat& a, double eps = 1e-8);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Mat sigmoid(const Mat& a);

// swish(x) = x * sigmoid(x)
Mat swish(const Mat& a);

bool bits_equal(const Mat& a, const Mat& b);

}  // namespace biopars
