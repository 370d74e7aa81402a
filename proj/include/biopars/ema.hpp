#pragma once

#include "biopars/common.hpp"

#include <cstdint>
#include <vector>

namespace biopars::ema {

// Parameters of the real damped moving-average path. All fields are d x h:
// beta lifts each scalar feature into the h-wide lane space, alpha/delta
// control the decay, eta projects the lanes back to scalar width.
struct EmaParams {
  Arr beta;
  Arr alpha;  // componentwise in (0,1]
  Arr delta;  // componentwise in (0,1]
  Arr eta;

  Index dim() const { return beta.rows(); }
  Index expansion() const { return beta.cols(); }
  void validate() const;
};

// Complex-coefficient variant: the decay is rotated by theta on the unit
// circle and the output projection eta is complex.
struct CemaParams {
  Arr beta;
  Arr alpha;
  Arr delta;
  Arr theta;  // rotation angle per lane, radians
  Arr eta_re;
  Arr eta_im;

  Index dim() const { return beta.rows(); }
  Index expansion() const { return beta.cols(); }
  void validate() const;
};

// Recurrent hidden state. The imaginary part stays identically zero on the
// real path; storing it anyway gives chunk handoff a single wire format.
struct EmaState {
  Arr re;
  Arr im;

  static EmaState zero(Index d, Index h);
  Index dim() const { return re.rows(); }
  Index expansion() const { return re.cols(); }
};

struct ScanResult {
  Mat y;
  EmaState state;
};

// y_t = eta^T h_t with h_t = alpha.u_t + (1 - alpha.delta).h_{t-1},
// u_t = beta.x_t. x is n x d; the result keeps that shape.
ScanResult ema_apply(const Mat& x, const EmaParams& p, const EmaState& s0);

// Complex recurrence: the rotation multiplies both the input term and the
// carried state; the output takes the real part after the eta projection.
ScanResult cema_apply(const Mat& x, const CemaParams& p, const EmaState& s0);

// Impulse response K (d x length):
//   K[j,tau] = Re( sum_k eta * (alpha e^{i theta}) * ((1-alpha delta) e^{i theta})^tau * beta ).
// Convolving x causally with K reproduces cema_apply from zero state.
Mat cema_kernel(const CemaParams& p, Index length);

// Per-lane geometric magnitude bound of the impulse response, non-increasing
// in tau by construction: sum_k |eta||alpha||beta| * |1-alpha delta|^tau.
Mat cema_envelope(const CemaParams& p, Index length);

// Per-dimension causal convolution of x (n x d) with kernel (d x L).
Mat convolve_causal(const Mat& x, const Mat& kernel);

// Splits the sequence into ceil(n/chunk) pieces and threads the state
// between them; bit-identical to the unchunked scan.
ScanResult cema_chunked(const Mat& x, const CemaParams& p, const EmaState& s0,
                        Index chunk);

// Boundary wire format: 2*d*h little-endian doubles, the real block followed
// by the imaginary block, each row-major.
std::vector<std::uint8_t> serialize(const EmaState& s);
EmaState deserialize_ema_state(const std::uint8_t* data, std::size_t size,
                               Index d, Index h);

// Default trainable initialization: theta_k = 2 pi k / h covers the unit
// circle; beta and eta draw from N(0, 1/sqrt(h)); alpha and delta are meant
// to be produced by a sigmoid when trained.
CemaParams cema_init(Index d, Index h, Rng& rng);

}  // namespace biopars::ema
