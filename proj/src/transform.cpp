#include "gaussdense/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "gaussdense/error.hpp"
#include "fft_detail.hpp"

namespace gaussdense {
namespace {

// FFTW's planner is not reentrant; execution with a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

// Unnormalized DFT in place; sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
void dft_in_place(std::vector<cplx>& data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int n = static_cast<int>(data.size());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
}

// Samples map through  out_m = scale * phase * (-1)^m * DFT_sign[(-1)^k in_k]_m.
//
// With t_k = -L + k h and w_m = -W + m dw, where W = 1/(2h) and dw = 1/(N h):
//   w_m t_k = W L - k/2 - m/2 + m k / N,
// so e^{sign 2 pi i w_m t_k} = e^{sign 2 pi i W L} (-1)^{k+m} e^{sign 2 pi i m k / N}.
std::vector<cplx> centered_transform(const std::vector<cplx>& in, const Grid& from, int sign) {
  const std::size_t n = in.size();
  if (n != from.count()) fail(ErrorCode::GridMismatch, "sample count does not match grid");
  if (n < 4 || (n & (n - 1)) != 0) fail(ErrorCode::NonPowerOfTwo, "transform length must be a power of two >= 4");
  std::vector<cplx> work(n);
  for (std::size_t k = 0; k < n; ++k) work[k] = (k & 1U) ? -in[k] : in[k];
  dft_in_place(work, sign);
  // W L = N/4 exactly, so the constant phase is a quarter-turn power.
  const double turns = std::fmod(static_cast<double>(n) / 4.0, 1.0);
  const cplx phase = std::polar(1.0, static_cast<double>(sign) * 2.0 * std::numbers::pi * turns);
  const cplx scale = from.step() * phase;
  for (std::size_t m = 0; m < n; ++m) work[m] *= (m & 1U) ? -scale : scale;
  return work;
}

void require_finite(const std::vector<cplx>& v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorCode::InvalidArgument, "non-finite sample");
}

}  // namespace

Spectrum forward_ft(const Signal& x) {
  require_finite(x.values);
  return Spectrum(x.grid.dual(), centered_transform(x.values, x.grid, FFTW_FORWARD));
}

Signal inverse_ft(const Spectrum& y) {
  require_finite(y.values);
  return Signal(y.grid.dual(), centered_transform(y.values, y.grid, FFTW_BACKWARD));
}

double parseval_gap(const Signal& x) {
  const double time_sq = std::pow(weighted_l2_norm(x.grid, x.values), 2);
  if (!(time_sq > 0.0)) fail(ErrorCode::ZeroSignal, "Parseval gap of a zero signal is undefined");
  const Spectrum y = forward_ft(x);
  const double freq_sq = std::pow(weighted_l2_norm(y.grid, y.values), 2);
  return std::abs(time_sq - freq_sq) / time_sq;
}

}  // namespace gaussdense

namespace gaussdense::detail {

std::vector<cplx> fft_linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  std::vector<cplx> fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  dft_in_place(fa, FFTW_FORWARD);
  dft_in_place(fb, FFTW_FORWARD);
  for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
  dft_in_place(fa, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(n);
  fa.resize(out_len);
  for (auto& z : fa) z *= inv;
  return fa;
}

}  // namespace gaussdense::detail
