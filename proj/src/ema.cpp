#include "biopars/ema.hpp"

#include <bit>
#include <cmath>
#include <cstring>

namespace biopars::ema {

namespace {

void check_decay(const Arr& alpha, const Arr& delta) {
  if (alpha.rows() != delta.rows() || alpha.cols() != delta.cols()) {
    throw ParameterError("ema params: alpha and delta shapes differ");
  }
  if ((alpha <= 0.0).any() || (alpha > 1.0).any()) {
    throw ParameterError("ema params: alpha outside (0,1]");
  }
  if ((delta <= 0.0).any() || (delta > 1.0).any()) {
    throw ParameterError("ema params: delta outside (0,1]");
  }
}

void check_same_shape(const Arr& a, const Arr& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterError(std::string("ema params: ") + what +
                         " shape inconsistent");
  }
}

void check_state(const EmaState& s, Index d, Index h) {
  if (s.re.rows() != d || s.re.cols() != h || s.im.rows() != d ||
      s.im.cols() != h) {
    throw StateError("ema state: expected " + shape_str(d, h) + ", got re " +
                     shape_str(s.re.rows(), s.re.cols()));
  }
}

void check_input(const Mat& x, Index d) {
  if (x.cols() != d) {
    throw DimensionError("ema: input width " + std::to_string(x.cols()) +
                         " does not match parameter dimension " +
                         std::to_string(d));
  }
}

void put_le_double(std::vector<std::uint8_t>& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

double get_le_double(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

void EmaParams::validate() const {
  check_decay(alpha, delta);
  check_same_shape(beta, alpha, "beta/alpha");
  check_same_shape(beta, eta, "beta/eta");
}

void CemaParams::validate() const {
  check_decay(alpha, delta);
  check_same_shape(beta, alpha, "beta/alpha");
  check_same_shape(beta, theta, "beta/theta");
  check_same_shape(beta, eta_re, "beta/eta_re");
  check_same_shape(beta, eta_im, "beta/eta_im");
  if (!theta.isFinite().all()) {
    throw ParameterError("ema params: theta must be finite");
  }
}

EmaState EmaState::zero(Index d, Index h) {
  return {Arr::Zero(d, h), Arr::Zero(d, h)};
}

ScanResult ema_apply(const Mat& x, const EmaParams& p, const EmaState& s0) {
  p.validate();
  const Index d = p.dim(), h = p.expansion(), n = x.rows();
  check_input(x, d);
  check_state(s0, d, h);
  if ((s0.im != 0.0).any()) {
    throw StateError("ema_apply: carry-in state has nonzero imaginary part");
  }

  const Arr omega = 1.0 - p.alpha * p.delta;
  Arr hidden = s0.re;
  Mat y(n, d);
  for (Index t = 0; t < n; ++t) {
    Eigen::ArrayXd xt = x.row(t).transpose().array();
    Arr u = p.beta.colwise() * xt;
    hidden = p.alpha * u + omega * hidden;
    y.row(t) = (p.eta * hidden).rowwise().sum().matrix().transpose();
  }
  require_finite(y, "ema_apply");
  return {std::move(y), {hidden, Arr::Zero(d, h)}};
}

ScanResult cema_apply(const Mat& x, const CemaParams& p, const EmaState& s0) {
  p.validate();
  const Index d = p.dim(), h = p.expansion(), n = x.rows();
  check_input(x, d);
  check_state(s0, d, h);

  const Arr cos_t = p.theta.cos();
  const Arr sin_t = p.theta.sin();
  const Arr phi_re = p.alpha * cos_t;
  const Arr phi_im = p.alpha * sin_t;
  const Arr omega = 1.0 - p.alpha * p.delta;
  const Arr psi_re = omega * cos_t;
  const Arr psi_im = omega * sin_t;

  Arr hre = s0.re;
  Arr him = s0.im;
  Mat y(n, d);
  for (Index t = 0; t < n; ++t) {
    Eigen::ArrayXd xt = x.row(t).transpose().array();
    Arr u = p.beta.colwise() * xt;
    Arr hre_next = p.alpha * u * cos_t + (psi_re * hre - psi_im * him);
    Arr him_next = p.alpha * u * sin_t + (psi_re * him + psi_im * hre);
    hre = std::move(hre_next);
    him = std::move(him_next);
    y.row(t) =
        (p.eta_re * hre - p.eta_im * him).rowwise().sum().matrix().transpose();
  }
  require_finite(y, "cema_apply");
  return {std::move(y), {std::move(hre), std::move(him)}};
}

Mat cema_kernel(const CemaParams& p, Index length) {
  p.validate();
  if (length < 1) throw ParameterError("cema_kernel: length must be >= 1");
  const Index d = p.dim();

  const Arr cos_t = p.theta.cos();
  const Arr sin_t = p.theta.sin();
  const Arr omega = 1.0 - p.alpha * p.delta;
  const Arr psi_re = omega * cos_t;
  const Arr psi_im = omega * sin_t;

  // z = beta * alpha e^{i theta}: the tap-0 response before eta.
  Arr z_re = p.beta * p.alpha * cos_t;
  Arr z_im = p.beta * p.alpha * sin_t;

  Mat kernel(d, length);
  for (Index tau = 0; tau < length; ++tau) {
    kernel.col(tau) =
        (p.eta_re * z_re - p.eta_im * z_im).rowwise().sum().matrix();
    Arr nre = z_re * psi_re - z_im * psi_im;
    Arr nim = z_re * psi_im + z_im * psi_re;
    z_re = std::move(nre);
    z_im = std::move(nim);
  }
  return kernel;
}

Mat cema_envelope(const CemaParams& p, Index length) {
  p.validate();
  if (length < 1) throw ParameterError("cema_envelope: length must be >= 1");
  const Index d = p.dim();

  const Arr ratio = (1.0 - p.alpha * p.delta).abs();
  Arr mag = (p.eta_re.square() + p.eta_im.square()).sqrt() * p.alpha *
            p.beta.abs();

  Mat env(d, length);
  for (Index tau = 0; tau < length; ++tau) {
    env.col(tau) = mag.rowwise().sum().matrix();
    mag *= ratio;
  }
  return env;
}

Mat convolve_causal(const Mat& x, const Mat& kernel) {
  const Index n = x.rows(), d = x.cols(), len = kernel.cols();
  if (kernel.rows() != d) {
    throw DimensionError("convolve_causal: kernel rows " +
                         std::to_string(kernel.rows()) +
                         " do not match input width " + std::to_string(d));
  }
  Mat y = Mat::Zero(n, d);
  for (Index t = 0; t < n; ++t) {
    const Index taus = std::min(t + 1, len);
    for (Index j = 0; j < d; ++j) {
      double acc = 0.0;
      for (Index tau = 0; tau < taus; ++tau) {
        acc += kernel(j, tau) * x(t - tau, j);
      }
      y(t, j) = acc;
    }
  }
  return y;
}

ScanResult cema_chunked(const Mat& x, const CemaParams& p, const EmaState& s0,
                        Index chunk) {
  if (chunk < 1) throw ParameterError("cema_chunked: chunk must be >= 1");
  const Index n = x.rows();
  Mat y(n, x.cols());
  EmaState state = s0;
  for (Index start = 0; start < n; start += chunk) {
    const Index len = std::min(chunk, n - start);
    ScanResult r = cema_apply(x.middleRows(start, len), p, state);
    y.middleRows(start, len) = r.y;
    state = std::move(r.state);
  }
  if (n == 0) {
    cema_apply(x, p, s0);  // still validate params/state on empty input
  }
  return {std::move(y), std::move(state)};
}

std::vector<std::uint8_t> serialize(const EmaState& s) {
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(2 * s.re.size()) * 8);
  for (Index i = 0; i < s.re.rows(); ++i) {
    for (Index j = 0; j < s.re.cols(); ++j) put_le_double(out, s.re(i, j));
  }
  for (Index i = 0; i < s.im.rows(); ++i) {
    for (Index j = 0; j < s.im.cols(); ++j) put_le_double(out, s.im(i, j));
  }
  return out;
}

EmaState deserialize_ema_state(const std::uint8_t* data, std::size_t size,
                               Index d, Index h) {
  const std::size_t expect = static_cast<std::size_t>(2 * d * h) * 8;
  if (size != expect) {
    throw InputError("ema state: expected " + std::to_string(expect) +
                     " bytes, got " + std::to_string(size));
  }
  EmaState s = EmaState::zero(d, h);
  const std::uint8_t* p = data;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < h; ++j, p += 8) s.re(i, j) = get_le_double(p);
  }
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < h; ++j, p += 8) s.im(i, j) = get_le_double(p);
  }
  return s;
}

CemaParams cema_init(Index d, Index h, Rng& rng) {
  CemaParams p;
  const double std_h = 1.0 / std::sqrt(static_cast<double>(h));
  p.beta = rng.normal(d, h, 0.0, std_h).array();
  p.alpha = Arr::Zero(d, h);
  p.delta = Arr::Zero(d, h);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < h; ++j) {
      p.alpha(i, j) = 1.0 / (1.0 + std::exp(-rng.next_normal()));
      p.delta(i, j) = 1.0 / (1.0 + std::exp(-rng.next_normal()));
    }
  }
  p.theta = Arr::Zero(d, h);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < h; ++j) {
      p.theta(i, j) = 2.0 * M_PI * static_cast<double>(j) /
                      static_cast<double>(h);
    }
  }
  p.eta_re = rng.normal(d, h, 0.0, std_h).array();
  p.eta_im = rng.normal(d, h, 0.0, std_h).array();
  return p;
}

}  // namespace biopars::ema
