#include "gaussdense/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <tuple>

#include "gaussdense/error.hpp"
#include "gaussdense/operators.hpp"
#include "gaussdense/transform.hpp"

namespace gaussdense {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;

// Stacks [sqrt(h w_T) x ; sqrt(dw w_Omega) x^] so that <x, y>_H = b_y^H b_x.
VectorXcd weighted_column(const HVector& x, const SpacePair& sp) {
  const std::size_t n = sp.grid().count();
  if (x.time.values.size() != n || x.freq.values.size() != n || !x.time.grid.same_as(sp.grid()))
    fail(ErrorCode::GridMismatch, "vector is not sampled on the space grid");
  const double ht = sp.grid().step();
  const double hw = sp.frequency_grid().step();
  VectorXcd col(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    col[k] = std::sqrt(ht * sp.time_weight()[k]) * x.time.values[k];
    col[n + k] = std::sqrt(hw * sp.frequency_weight()[k]) * x.freq.values[k];
  }
  return col;
}

MatrixXcd weighted_matrix(const std::vector<HVector>& elems, const SpacePair& sp) {
  MatrixXcd a(2 * sp.grid().count(), static_cast<Eigen::Index>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = weighted_column(elems[i], sp);
  return a;
}

VectorXcd target_column(const Signal& f, const SpacePair& sp) {
  if (!f.grid.same_as(sp.grid())) fail(ErrorCode::GridMismatch, "target is not sampled on the space grid");
  VectorXcd b = weighted_column(lift(f), sp);
  if (!b.allFinite()) fail(ErrorCode::NotInSpace, "target has infinite H norm");
  return b;
}

struct Eigenrange {
  double min = 0.0;
  double max = 0.0;
};

Eigenrange eigenrange(const MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

// QR solve of min ||a c - b||^2 + ridge ||c||^2.
VectorXcd solve_ridge(const MatrixXcd& a, const VectorXcd& b, double ridge) {
  const Eigen::Index n = a.cols();
  if (ridge == 0.0) return a.colPivHouseholderQr().solve(b);
  MatrixXcd aug(a.rows() + n, n);
  aug.topRows(a.rows()) = a;
  aug.bottomRows(n) = MatrixXcd::Identity(n, n) * std::sqrt(ridge);
  VectorXcd rhs = VectorXcd::Zero(a.rows() + n);
  rhs.head(a.rows()) = b;
  return aug.colPivHouseholderQr().solve(rhs);
}

// Explicit reconstruction f - sum c_i g_i, measured in H.
double residual_norm(const Signal& f, const std::vector<HVector>& elems, const std::vector<std::size_t>& idx,
                     const VectorXcd& c, const SpacePair& sp) {
  HVector r = lift(f);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const HVector& g = elems[idx[j]];
    const cplx cj = c[static_cast<Eigen::Index>(j)];
    for (std::size_t k = 0; k < r.time.values.size(); ++k) {
      r.time.values[k] -= cj * g.time.values[k];
      r.freq.values[k] -= cj * g.freq.values[k];
    }
  }
  return std::sqrt(std::max(0.0, h_norm_sq(r, sp)));
}

void require_nonempty(const std::vector<GaussianAtom>& atoms) {
  if (atoms.empty()) fail(ErrorCode::EmptyFamily, "dictionary is empty");
}

cplx interpolate(const Signal& g, double xi) {
  const Grid& grid = g.grid;
  const double pos = (xi + grid.halfwidth()) / grid.step();
  const double last = static_cast<double>(grid.count() - 1);
  if (!(pos >= 0.0) || pos > last) return 0.0;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= grid.count()) return g.values[k];
  const double frac = pos - static_cast<double>(k);
  return (1.0 - frac) * g.values[k] + frac * g.values[k + 1];
}

bool tie_less(const GaussianAtom& a, const GaussianAtom& b) {
  return std::make_tuple(std::abs(a.tau), a.tau, a.alpha) < std::make_tuple(std::abs(b.tau), b.tau, b.alpha);
}

}  // namespace

Dictionary Dictionary::gaussians(std::vector<GaussianAtom> atoms, SpacePair sp) {
  require_nonempty(atoms);
  std::vector<HVector> elems;
  elems.reserve(atoms.size());
  for (const GaussianAtom& a : atoms) {
    elems.push_back(atom_hvector(a, sp.grid()));
    if (!std::isfinite(h_norm_sq(elems.back(), sp)))
      fail(ErrorCode::NotInSpace, "atom (" + std::to_string(a.alpha) + ", " + std::to_string(a.tau) + ") has infinite H norm");
  }
  return Dictionary(std::move(atoms), std::move(elems), std::move(sp));
}

Dictionary Dictionary::from_window(const WindowSpec& window, std::vector<GaussianAtom> params, SpacePair sp) {
  require_nonempty(params);
  if (!window.g.grid.same_as(sp.grid())) fail(ErrorCode::GridMismatch, "window is not sampled on the space grid");
  std::vector<HVector> elems;
  elems.reserve(params.size());
  for (const GaussianAtom& p : params) {
    if (!(p.alpha > 0.0)) fail(ErrorCode::AtomOutOfDomain, "window scale must be positive");
    Signal s = sample<TimeDomain>(sp.grid(), [&](double t) { return interpolate(window.g, p.alpha * (t - p.tau)); });
    Spectrum fs = forward_ft(s);
    elems.push_back(HVector{std::move(s), std::move(fs)});
    if (!std::isfinite(h_norm_sq(elems.back(), sp))) fail(ErrorCode::NotInSpace, "window element has infinite H norm");
  }
  return Dictionary(std::move(params), std::move(elems), std::move(sp));
}

GramReport gram_matrix(const Dictionary& d) {
  const MatrixXcd a = weighted_matrix(d.elements(), d.space());
  GramReport r;
  // (i, j) = <g_i, g_j>_H = b_j^H b_i
  r.matrix = (a.adjoint() * a).transpose();
  const Eigenrange ev = eigenrange(r.matrix);
  r.min_eigenvalue = ev.min;
  r.max_eigenvalue = ev.max;
  r.singular = ev.min < 1e-10 || ev.min < 1e-12 * ev.max;
  return r;
}

double default_ridge(const GramReport& gram) {
  const auto n = static_cast<double>(gram.matrix.rows());
  return n > 0 ? 1e-10 * gram.matrix.trace().real() / n : 0.0;
}

ApproxReport least_squares_fit(const Signal& f, const Dictionary& d, std::optional<double> ridge) {
  const VectorXcd b = target_column(f, d.space());
  const MatrixXcd a = weighted_matrix(d.elements(), d.space());
  const GramReport gram = gram_matrix(d);
  const double lambda = ridge ? *ridge : default_ridge(gram);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail(ErrorCode::InvalidArgument, "ridge must be finite and non-negative");
  if (lambda == 0.0 && gram.min_eigenvalue < 1e-12 * gram.max_eigenvalue)
    fail(ErrorCode::SingularGram, "Gram matrix is numerically singular (min eigenvalue " +
                                      std::to_string(gram.min_eigenvalue) + ")");

  const VectorXcd c = solve_ridge(a, b, lambda);
  std::vector<std::size_t> idx(d.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  ApproxReport rep;
  rep.atoms = d.atoms();
  rep.coefficients.assign(c.data(), c.data() + c.size());
  rep.target_h_norm = b.norm();
  rep.residual_h_norm = residual_norm(f, d.elements(), idx, c, d.space());
  rep.residual_trace = {rep.residual_h_norm};
  const double lo = std::max(gram.min_eigenvalue, 0.0) + lambda;
  rep.gram_condition = lo > 0.0 ? (gram.max_eigenvalue + lambda) / lo : std::numeric_limits<double>::infinity();
  rep.ridge = lambda;
  return rep;
}

ApproxReport greedy_pursuit(const Signal& f, const SpacePair& sp, const std::vector<double>& alpha_grid,
                            const std::vector<double>& tau_grid, std::size_t n_atoms, unsigned threads) {
  if (alpha_grid.empty() || tau_grid.empty()) fail(ErrorCode::EmptyFamily, "candidate grids must be nonempty");
  if (n_atoms == 0) fail(ErrorCode::InvalidArgument, "n_atoms must be at least 1");

  std::vector<GaussianAtom> cands;
  for (double a : alpha_grid)
    for (double t : tau_grid) {
      validate_atom({a, t}, sp.grid());
      cands.push_back({a, t});
    }
  std::vector<HVector> elems;
  elems.reserve(cands.size());
  for (const GaussianAtom& a : cands) elems.push_back(atom_hvector(a, sp.grid()));
  const MatrixXcd a = weighted_matrix(elems, sp);
  const Eigen::VectorXd norms = a.colwise().norm().transpose();
  const VectorXcd b = target_column(f, sp);
  const double f_norm = b.norm();

  ApproxReport rep;
  rep.target_h_norm = f_norm;
  rep.ridge = 0.0;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(cands.size(), false);
  VectorXcd r = b;
  VectorXcd c;
  double prev = f_norm;
  const std::size_t nc = cands.size();
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nc)));
  std::vector<double> score(nc);

  while (chosen.size() < n_atoms && prev > 1e-12 * f_norm) {
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        score[i] = used[i] || norms[col] == 0.0 ? -1.0 : std::abs(a.col(col).dot(r)) / norms[col];
      }
    };
    if (nt == 1) {
      work(0, nc);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, nc * t / nt, nc * (t + 1) / nt);
    }
    const double best = *std::max_element(score.begin(), score.end());
    if (!(best > 0.0)) fail(ErrorCode::StagnatedPursuit, "no candidate correlates with the residual");
    std::size_t pick = nc;
    for (std::size_t i = 0; i < nc; ++i) {
      if (score[i] < best * (1.0 - 1e-12)) continue;
      if (pick == nc || tie_less(cands[i], cands[pick])) pick = i;
    }

    chosen.push_back(pick);
    used[pick] = true;
    MatrixXcd sub(a.rows(), static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t j = 0; j < chosen.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(chosen[j]));
    c = solve_ridge(sub, b, 0.0);
    r = b - sub * c;
    const double now = residual_norm(f, elems, chosen, c, sp);
    if (prev - now < 1e-14 * prev) {
      fail(ErrorCode::StagnatedPursuit, "atom (" + std::to_string(cands[pick].alpha) + ", " +
                                            std::to_string(cands[pick].tau) + ") did not reduce the residual");
    }
    rep.residual_trace.push_back(now);
    prev = now;
  }

  for (std::size_t j : chosen) rep.atoms.push_back(cands[j]);
  rep.coefficients.assign(c.data(), c.data() + c.size());
  rep.residual_h_norm = rep.residual_trace.empty() ? f_norm : rep.residual_trace.back();
  if (!chosen.empty()) {
    MatrixXcd sub(a.rows(), static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t j = 0; j < chosen.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(chosen[j]));
    const Eigenrange ev = eigenrange(sub.adjoint() * sub);
    rep.gram_condition = ev.min > 0.0 ? ev.max / ev.min : std::numeric_limits<double>::infinity();
  }
  return rep;
}

WitnessCurves completeness_witness(const Signal& f, const SpacePair& sp, const std::vector<double>& alphas) {
  if (!f.grid.same_as(sp.grid())) fail(ErrorCode::GridMismatch, "target is not sampled on the space grid");
  if (!std::is_sorted(alphas.begin(), alphas.end())) fail(ErrorCode::InvalidArgument, "alphas must be ascending");
  if (!std::isfinite(h_norm_sq(f, sp))) fail(ErrorCode::NotInSpace, "target has infinite H norm");

  const Spectrum fh = forward_ft(f);
  const Grid& tg = sp.grid();
  const Grid& wg = sp.frequency_grid();
  WitnessCurves w;
  w.alphas = alphas;
  w.target1 = weighted_l2_inner(tg, f.values, f.values, sp.time_weight()).real();
  w.target2 = weighted_l2_inner(wg, fh.values, fh.values, sp.frequency_weight()).real();
  for (double alpha : alphas) {
    w.term1.push_back(weighted_l2_inner(tg, f.values, composite_values(tg, f.values, alpha, CompositeOrder::IM), sp.time_weight()));
    w.term2.push_back(weighted_l2_inner(wg, fh.values, composite_values(wg, fh.values, alpha, CompositeOrder::MI), sp.frequency_weight()));
    w.i_alpha.push_back(schur_i(sp.c_t(), sp.mu_t(), alpha));
    w.i1_alpha.push_back(schur_i1(sp.c_omega(), sp.mu_omega(), alpha));
    w.iinf_alpha.push_back(schur_iinf(sp.c_omega(), sp.mu_omega(), alpha));
  }
  return w;
}

FubiniCheck fubini_check(const Signal& f, const SpacePair& sp, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "alpha must be finite and positive");
  const WitnessCurves op = completeness_witness(f, sp, {alpha});
  const Spectrum fh = forward_ft(f);
  const Grid& tg = sp.grid();
  const Grid& wg = sp.frequency_grid();
  const std::size_t n = tg.count();
  const double h = tg.step();
  const double dw = wg.step();
  const std::vector<double>& wt = sp.time_weight();
  const std::vector<double>& wo = sp.frequency_weight();

  std::vector<double> g(2 * n - 1);  // G_alpha((d - n + 1) h)
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = (static_cast<double>(i) - static_cast<double>(n - 1)) * h;
    g[i] = std::sqrt(alpha) * std::exp(-kPi * alpha * d * d);
  }
  std::vector<double> gt(n), gw(n);
  std::vector<cplx> fc(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = tg.point(k);
    const double om = wg.point(k);
    gt[k] = std::exp(-kPi / alpha * t * t);
    gw[k] = std::exp(-kPi / alpha * om * om);
    fc[k] = std::conj(f.values[k]);
  }
  // exp(2 pi i tau_j w_m) = e^{2 pi i N/4} (-1)^{j+m} e^{2 pi i jm/N}
  std::vector<cplx> roots(n);
  for (std::size_t k = 0; k < n; ++k) roots[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  const cplx phase = std::polar(1.0, 2.0 * kPi * std::fmod(static_cast<double>(n) / 4.0, 1.0));
  auto twiddle = [&](std::size_t j, std::size_t m) {
    const cplx z = phase * roots[(j * m) % n];
    return ((j + m) % 2 == 0) ? z : -z;
  };
  auto kern = [&](std::size_t k, std::size_t j) { return g[k + n - 1 - j]; };

  // Outer integral over tau, inner over t (resp. w).
  cplx s1 = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx in1 = 0.0, in2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      in1 += f.values[k] * kern(k, j) * wt[k];
      in2 += fh.values[k] * gw[k] * twiddle(j, k) * wo[k];
    }
    s1 += in1 * gt[j] * fc[j];
    s2 += in2 * gt[j] * fc[j];
  }
  // Outer over t (resp. w), inner over tau.
  cplx u1 = 0.0, u2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx in1 = 0.0, in2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      in1 += kern(k, j) * gt[j] * fc[j];
      in2 += gt[j] * twiddle(j, k) * fc[j];
    }
    u1 += f.values[k] * in1 * wt[k];
    u2 += fh.values[k] * gw[k] * in2 * wo[k];
  }

  FubiniCheck fc_out;
  fc_out.alpha = alpha;
  fc_out.operator_form = op.term1[0] + op.term2[0];
  fc_out.time_first = s1 * h * h + s2 * dw * h;
  fc_out.tau_first = u1 * h * h + u2 * dw * h;
  const double scale = std::max({std::abs(fc_out.operator_form), op.target1 + op.target2, 1e-300});
  fc_out.max_relative_gap = std::max({std::abs(fc_out.time_first - fc_out.operator_form),
                                      std::abs(fc_out.tau_first - fc_out.operator_form),
                                      std::abs(fc_out.time_first - fc_out.tau_first)}) / scale;
  if (op.target1 + op.target2 == 0.0 && std::abs(fc_out.operator_form) == 0.0) fc_out.max_relative_gap = 0.0;
  return fc_out;
}

}  // namespace gaussdense
