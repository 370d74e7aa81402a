#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace biopars {

using Mat = Eigen::MatrixXd;
using Arr = Eigen::ArrayXXd;
using Vec = Eigen::VectorXd;
using Eigen::Index;

// Operand shapes violate an operation contract.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// A parameter left its documented domain.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Carried state is inconsistent with the requested computation.
struct StateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Malformed or unusable input data.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Invalid run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// An iterative solver exhausted its budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string shape_str(Index rows, Index cols);
std::string shape_str(const Mat& m);

bool all_finite(const Mat& m);
void require_finite(const Mat& m, const char* what);

// SplitMix64 with Box-Muller normals on top. The integer and uniform streams
// are exact on every platform; normals additionally depend on libm rounding.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_normal();

  // Fill order is row-major so the stream layout is documented.
  Mat uniform(Index rows, Index cols, double lo = 0.0, double hi = 1.0);
  Mat normal(Index rows, Index cols, double mean = 0.0, double stddev = 1.0);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace biopars
