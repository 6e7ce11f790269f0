#include "gaussdense/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gaussdense/error.hpp"
#include "gaussdense/transform.hpp"

namespace gaussdense {
namespace {

constexpr double kPi = std::numbers::pi;

// Upper bound for M_{1+w}(|eta|) from the tabulated curve, extended by the envelope.
double mmc_bound(const WeightAnalysis& a, double eta) {
  return a.one_plus_curve.bound_at(eta, a.one_plus_envelope.c_w, a.one_plus_envelope.mu_w);
}

struct Probe {
  double full = 0.0;
  double half = 0.0;
};

bool finite_probe(const Probe& p) {
  return std::isfinite(p.full) && p.full < kFiniteThreshold && p.full <= 2.0 * p.half;
}

// Sum (or sup) over grid samples of |v(x_k)| * factor(|x_k| / alpha), on the full grid and on its
// central half.
template <class Factor>
Probe probe(const Grid& grid, const std::vector<cplx>& v, double alpha, bool sup, Factor&& factor) {
  Probe p;
  const double half_width = grid.halfwidth() / 2.0;
  const double dx = grid.step() / alpha;
  for (std::size_t k = 0; k < grid.count(); ++k) {
    const double x = grid.point(k);
    const double mag = std::abs(v[k]);
    if (mag == 0.0) continue;
    const double term = mag * factor(std::abs(x) / alpha);
    if (sup) {
      p.full = std::max(p.full, term);
      if (std::abs(x) <= half_width) p.half = std::max(p.half, term);
    } else {
      p.full += term * dx;
      if (std::abs(x) <= half_width) p.half += term * dx;
    }
  }
  return p;
}

}  // namespace

double atom_outside_mass(const GaussianAtom& a, double halfwidth) {
  const double s = std::sqrt(kPi * a.alpha);
  return 0.5 * std::erfc(s * (halfwidth - a.tau)) + 0.5 * std::erfc(s * (halfwidth + a.tau));
}

void validate_atom(const GaussianAtom& a, const Grid& grid) {
  if (!(a.alpha > 0.0) || !std::isfinite(a.alpha))
    fail(ErrorCode::AtomOutOfDomain, "atom alpha must be finite and positive");
  if (!std::isfinite(a.tau) || std::abs(a.tau) > grid.halfwidth())
    fail(ErrorCode::AtomOutOfDomain, "atom center tau = " + std::to_string(a.tau) + " outside the grid");
  if (atom_outside_mass(a, grid.halfwidth()) > 1e-10)
    fail(ErrorCode::AtomOutOfDomain, "atom (" + std::to_string(a.alpha) + ", " + std::to_string(a.tau) +
                                         ") leaks more than 1e-10 of its mass outside the grid");
}

Signal atom_signal(const GaussianAtom& a, const Grid& grid) {
  validate_atom(a, grid);
  const double amp = std::sqrt(a.alpha);
  return sample<TimeDomain>(grid, [&](double t) {
    const double u = t - a.tau;
    return cplx(amp * std::exp(-kPi * a.alpha * u * u), 0.0);
  });
}

Spectrum atom_spectrum(const GaussianAtom& a, const Grid& grid) {
  validate_atom(a, grid);
  return sample<FrequencyDomain>(grid.dual(), [&](double w) {
    return std::polar(std::exp(-kPi / a.alpha * w * w), -2.0 * kPi * a.tau * w);
  });
}

HVector atom_hvector(const GaussianAtom& a, const Grid& grid) {
  return HVector{atom_signal(a, grid), atom_spectrum(a, grid)};
}

std::vector<GaussianAtom> default_embedding_family() {
  std::vector<GaussianAtom> out;
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double tau : {-2.0, -1.0, 0.0, 1.0, 2.0}) out.push_back({alpha, tau});
  return out;
}

WindowSpec make_window(const Signal& g) {
  double abs_mass = 0.0;
  cplx mass = 0.0;
  for (const auto& z : g.values) {
    mass += z;
    abs_mass += std::abs(z);
  }
  if (!std::isfinite(abs_mass)) fail(ErrorCode::InvalidArgument, "window is not absolutely integrable on the grid");
  return WindowSpec{g, forward_ft(g), mass * g.grid.step()};
}

std::string_view window_condition_name(WindowCondition c) noexcept {
  switch (c) {
    case WindowCondition::UnitMass: return "unit-mass";
    case WindowCondition::TimeTail: return "time-tail";
    case WindowCondition::FrequencyTail: return "frequency-tail";
    case WindowCondition::TimeKernelIntegral: return "time-kernel-integral";
    case WindowCondition::TimeKernelSup: return "time-kernel-sup";
    case WindowCondition::FrequencyKernelIntegral: return "frequency-kernel-integral";
    case WindowCondition::FrequencyKernelSup: return "frequency-kernel-sup";
  }
  return "?";
}

bool WindowReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const ConditionResult& r) { return r.passed; });
}

WindowReport check_window(const WindowSpec& window, const SpacePair& sp, const std::vector<double>& alphas,
                          double delta) {
  if (alphas.empty()) fail(ErrorCode::InvalidArgument, "check_window needs at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (!(alphas[i] > 0.0) || (i > 0 && alphas[i] < alphas[i - 1]))
      fail(ErrorCode::InvalidArgument, "alphas must be positive and ascending");
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  const WeightAnalysis& at = sp.time_analysis();
  const WeightAnalysis& ao = sp.frequency_analysis();
  if (at.one_plus_curve.deltas.empty() || ao.one_plus_curve.deltas.empty())
    fail(ErrorCode::MissingMmc, "moduli of continuity for 1+w_T and 1+w_Omega are not available");
  if (!window.g.grid.same_as(sp.grid())) fail(ErrorCode::GridMismatch, "window grid does not match the space grid");

  const Grid& tg = window.g.grid;
  const Grid& fg = window.g_hat.grid;
  WindowReport rep;
  rep.alphas = alphas;

  auto set = [&](WindowCondition c, bool ok, double margin) {
    rep.results[static_cast<std::size_t>(c)] = ConditionResult{ok, margin};
  };

  const double mass_err = std::abs(window.unit_mass - 1.0);
  set(WindowCondition::UnitMass, mass_err < 1e-8, mass_err);

  // Tails  \int_{|eta|>delta} alpha |g(alpha eta)| sqrt(M(|eta|)) d eta  with eta_k = t_k / alpha.
  auto tail = [&](const WeightAnalysis& a, double alpha) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tg.count(); ++k) {
      const double t = tg.point(k);
      if (std::abs(t) <= alpha * delta) continue;
      const double mag = std::abs(window.g.values[k]);
      if (mag == 0.0) continue;
      acc += tg.step() * mag * std::sqrt(mmc_bound(a, std::abs(t) / alpha));
    }
    return acc;
  };
  auto tails_ok = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] <= v[i - 1])) return false;
    return std::isfinite(v.back()) && v.back() < 1e-6;
  };
  for (double alpha : alphas) {
    rep.tail_t.push_back(tail(at, alpha));
    rep.tail_omega.push_back(tail(ao, alpha));
  }
  set(WindowCondition::TimeTail, tails_ok(rep.tail_t), rep.tail_t.back());
  set(WindowCondition::FrequencyTail, tails_ok(rep.tail_omega), rep.tail_omega.back());

  auto finiteness = [&](WindowCondition c, const Grid& grid, const std::vector<cplx>& v, const WeightAnalysis& a,
                        bool sup) {
    bool ok = true;
    double worst = 0.0;
    for (double alpha : alphas) {
      const Probe p = probe(grid, v, alpha, sup, [&](double eta) { return mmc_bound(a, eta); });
      ok = ok && finite_probe(p);
      worst = std::max(worst, std::isnan(p.full) ? std::numeric_limits<double>::infinity() : p.full);
    }
    set(c, ok, worst);
  };
  finiteness(WindowCondition::TimeKernelIntegral, tg, window.g.values, at, false);
  finiteness(WindowCondition::TimeKernelSup, fg, window.g_hat.values, at, true);
  finiteness(WindowCondition::FrequencyKernelIntegral, fg, window.g_hat.values, ao, false);
  finiteness(WindowCondition::FrequencyKernelSup, fg, window.g_hat.values, ao, true);
  return rep;
}

SchurKernel make_schur_kernel(const Grid& rows, const Grid& cols, const std::function<double(double, double)>& kernel) {
  SchurKernel k{rows, cols, std::vector<double>(rows.count() * cols.count()), 0.0, 0.0};
  std::vector<double> col_sums(cols.count(), 0.0);
  for (std::size_t i = 0; i < rows.count(); ++i) {
    double row_sum = 0.0;
    const double t = rows.point(i);
    for (std::size_t j = 0; j < cols.count(); ++j) {
      const double v = std::abs(kernel(t, cols.point(j)));
      k.samples[i * cols.count() + j] = v;
      row_sum += v;
      col_sums[j] += v;
    }
    k.n_inf = std::max(k.n_inf, row_sum * cols.step());
  }
  for (double s : col_sums) k.n1 = std::max(k.n1, s * rows.step());
  return k;
}

double schur_bound(const SchurKernel& k) {
  constexpr double kOverflow = 1e300;
  if (!(k.n1 <= kOverflow) || !(k.n_inf <= kOverflow))
    fail(ErrorCode::InfiniteBound, "kernel row/column integrals overflow");
  return std::sqrt(k.n1 * k.n_inf);
}

double schur_bilinear(const SchurKernel& k, const std::vector<cplx>& f, const std::vector<cplx>& g) {
  if (f.size() != k.rows.count() || g.size() != k.cols.count())
    fail(ErrorCode::GridMismatch, "probe vectors do not match the kernel grids");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) row += k.at(i, j) * std::conj(g[j]);
    acc += f[i] * row;
  }
  return std::abs(acc) * k.rows.step() * k.cols.step();
}

double kernel_time(double c, double mu, double alpha, double t, double tau) {
  const double u = t - tau;
  return c * std::sqrt(alpha) * std::exp(-kPi * alpha * u * u + mu * std::abs(u)) *
         std::exp(-kPi / alpha * tau * tau + mu * std::abs(tau));
}

double kernel_frequency(double c, double mu, double alpha, double omega, double tau) {
  return c * std::exp(-kPi / alpha * omega * omega + mu * std::abs(omega)) * std::exp(-kPi / alpha * tau * tau);
}

double schur_i(double c, double mu, double alpha) {
  return c * std::exp(mu * mu * alpha / (4.0 * kPi) + mu * mu / (4.0 * kPi * alpha)) *
         (1.0 + std::erf(mu / (2.0 * std::sqrt(kPi * alpha))));
}

double schur_i1(double c, double mu, double alpha) {
  return c * std::sqrt(alpha) * std::exp(mu * mu * alpha / (4.0 * kPi)) *
         (1.0 + std::erf(mu * std::sqrt(alpha) / (2.0 * std::sqrt(kPi))));
}

double schur_iinf(double c, double mu, double alpha) {
  return c * std::exp(mu * mu * alpha / (4.0 * kPi)) * std::sqrt(alpha);
}

}  // namespace gaussdense
