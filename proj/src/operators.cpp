#include "gaussdense/operators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft_detail.hpp"
#include "gaussdense/error.hpp"

namespace gaussdense {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kFftThreshold = 1024;

double gaussian_kernel(double alpha, double eta) { return std::sqrt(alpha) * std::exp(-kPi * alpha * eta * eta); }

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "alpha must be finite and positive");
}

void require_size(const Grid& grid, const std::vector<cplx>& x) {
  if (x.size() != grid.count()) fail(ErrorCode::GridMismatch, "sample count does not match grid");
}

}  // namespace

double MollifierKernel::mass() const {
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc * grid.step();
}

MollifierKernel make_mollifier_kernel(double alpha, const Grid& grid) {
  require_alpha(alpha);
  MollifierKernel k{alpha, grid, std::vector<double>(grid.count())};
  for (std::size_t i = 0; i < grid.count(); ++i) k.samples[i] = gaussian_kernel(alpha, grid.point(i));
  return k;
}

std::vector<cplx> shift_values(const Grid& grid, const std::vector<cplx>& x, double eta) {
  require_size(grid, x);
  const double steps = std::round(eta / grid.step());
  if (!std::isfinite(eta) || std::abs(eta - steps * grid.step()) > 1e-12)
    fail(ErrorCode::OffGridShift, "shift " + std::to_string(eta) + " is not a multiple of the grid step");
  const auto n = static_cast<long long>(x.size());
  const auto m = static_cast<long long>(steps);
  std::vector<cplx> out(x.size(), cplx(0.0));
  for (long long k = 0; k < n; ++k) {
    const long long src = k - m;
    if (src >= 0 && src < n) out[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(src)];
  }
  return out;
}

std::vector<cplx> mollify_values(const Grid& grid, const std::vector<cplx>& x, double alpha, ConvolutionPath path) {
  require_alpha(alpha);
  require_size(grid, x);
  const std::size_t n = x.size();
  const double h = grid.step();
  // ker[d + n - 1] = G_alpha(d h), d = -(n-1) .. n-1
  std::vector<cplx> ker(2 * n - 1);
  for (std::size_t i = 0; i < ker.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(n - 1);
    ker[i] = gaussian_kernel(alpha, d * h);
  }
  if (path == ConvolutionPath::Auto) path = n >= kFftThreshold ? ConvolutionPath::Fft : ConvolutionPath::Direct;

  std::vector<cplx> out(n);
  if (path == ConvolutionPath::Direct) {
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += ker[k + n - 1 - i] * x[i];
      out[k] = acc * h;
    }
  } else {
    const std::vector<cplx> full = detail::fft_linear_convolve(x, ker);
    for (std::size_t k = 0; k < n; ++k) out[k] = full[k + n - 1] * h;
  }
  return out;
}

std::vector<cplx> gauss_multiply_values(const Grid& grid, const std::vector<cplx>& x, double alpha) {
  require_alpha(alpha);
  require_size(grid, x);
  std::vector<cplx> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xi = grid.point(k);
    out[k] = std::exp(-kPi / alpha * xi * xi) * x[k];
  }
  return out;
}

std::vector<cplx> composite_values(const Grid& grid, const std::vector<cplx>& x, double alpha, CompositeOrder order) {
  if (order == CompositeOrder::IM) return mollify_values(grid, gauss_multiply_values(grid, x, alpha), alpha);
  return gauss_multiply_values(grid, mollify_values(grid, x, alpha), alpha);
}

double composite_identity_error(const Grid& grid, const std::vector<cplx>& x, double alpha,
                                const std::vector<double>& weight, CompositeOrder order) {
  std::vector<cplx> diff = composite_values(grid, x, alpha, order);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= x[k];
  return weighted_l2_norm(grid, diff, weight);
}

OperatorNormCert mollifier_certificate(const Grid& grid, double alpha, const WeightSpec& weight) {
  require_alpha(alpha);
  const WeightSpec w = weight.kind == WeightKind::Table ? weight : with_domain(weight, grid.halfwidth());
  const double h = grid.step();
  // Beyond this radius G_alpha underflows.
  const double radius = std::min(2.0 * grid.halfwidth(), std::sqrt(720.0 / (kPi * alpha)));
  const MmcCurve curve = estimate_mmc_dense(w, h, radius);
  const RegularityEnvelope env = fit_envelope(curve);

  OperatorNormCert cert;
  cert.alpha = alpha;
  double env_sum = 0.0;
  for (std::size_t j = 0; j < curve.deltas.size(); ++j) {
    const double g = gaussian_kernel(alpha, curve.deltas[j]) * (j == 0 ? 1.0 : 2.0);
    cert.bound += g * std::sqrt(curve.values[j]);
    if (env.regular) env_sum += g * std::exp(env.mu_w * curve.deltas[j] / 2.0);
  }
  cert.bound *= h;
  cert.envelope_bound = env.regular ? std::sqrt(env.c_w) * env_sum * h : std::numeric_limits<double>::infinity();
  return cert;
}

}  // namespace gaussdense
