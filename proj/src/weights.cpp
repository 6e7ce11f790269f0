#include "gaussdense/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "gaussdense/error.hpp"

namespace gaussdense {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogMax = std::log(std::numeric_limits<double>::max());

double first_param(const WeightSpec& spec, double fallback) {
  return spec.params.empty() ? fallback : spec.params.front();
}

void check_domain(const WeightSpec& spec, double xi) {
  if (!std::isfinite(xi) || std::abs(xi) > spec.domain_halfwidth * (1.0 + 1e-12))
    fail(ErrorCode::OutOfDomain, "xi = " + std::to_string(xi) + " outside [-L, L] with L = " +
                                     std::to_string(spec.domain_halfwidth));
}

double table_lookup(const WeightSpec& spec, double xi) {
  const double pos = (xi - spec.table_origin) / spec.table_spacing;
  const auto last = static_cast<double>(spec.table_values.size() - 1);
  const auto k = static_cast<std::size_t>(std::clamp(std::round(pos), 0.0, last));
  return spec.table_values[k];
}

double base_value(const WeightSpec& spec, double xi) {
  switch (spec.kind) {
    case WeightKind::Constant: return first_param(spec, 1.0);
    case WeightKind::Power: {
      const double p = first_param(spec, 2.0);
      return p == 0.0 ? 1.0 : std::pow(std::abs(xi), p);
    }
    case WeightKind::ExpAbs: return std::exp(first_param(spec, 1.0) * std::abs(xi));
    case WeightKind::GaussSquare: return std::exp(first_param(spec, 1.0) * xi * xi);
    case WeightKind::SobolevOmega: {
      const int n = static_cast<int>(first_param(spec, 1.0));
      return n == 0 ? 1.0 : std::pow(2.0 * std::numbers::pi * xi, 2 * n);
    }
    case WeightKind::Table: return table_lookup(spec, xi);
  }
  return 0.0;
}

double base_log(const WeightSpec& spec, double xi) {
  switch (spec.kind) {
    case WeightKind::Constant: return std::log(first_param(spec, 1.0));
    case WeightKind::Power: {
      const double p = first_param(spec, 2.0);
      return p == 0.0 ? 0.0 : p * std::log(std::abs(xi));
    }
    case WeightKind::ExpAbs: return first_param(spec, 1.0) * std::abs(xi);
    case WeightKind::GaussSquare: return first_param(spec, 1.0) * xi * xi;
    case WeightKind::SobolevOmega: {
      const int n = static_cast<int>(first_param(spec, 1.0));
      return n == 0 ? 0.0 : 2.0 * n * std::log(std::abs(2.0 * std::numbers::pi * xi));
    }
    case WeightKind::Table: return std::log(table_lookup(spec, xi));
  }
  return -kInf;
}

// log(a + b) from log a, log b.
double log_add(double la, double lb) {
  if (la == -kInf) return lb;
  if (lb == -kInf) return la;
  const double hi = std::max(la, lb);
  return hi + std::log1p(std::exp(-std::abs(la - lb)));
}

std::size_t steps_for(double delta, double h) {
  return static_cast<std::size_t>(std::floor(delta / h + 1e-9));
}

std::vector<double> scan_logs(const WeightSpec& spec, double h) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "scan step must be positive");
  const double L = spec.domain_halfwidth;
  const std::size_t m = steps_for(2.0 * L, h) + 1;
  std::vector<double> logs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = std::min(-L + static_cast<double>(i) * h, L);
    const double l = log_weight(spec, xi);
    if (std::isnan(l)) fail(ErrorCode::NegativeWeight, "weight is negative at xi = " + std::to_string(xi));
    if (l == -kInf || l == kInf)
      fail(ErrorCode::ZeroWeightSample,
           "weight sample at xi = " + std::to_string(xi) + " is zero; the modulus of continuity is undefined");
    logs[i] = l;
  }
  return logs;
}

// Range-max over log samples, O(1) per query.
class SparseMax {
 public:
  explicit SparseMax(const std::vector<double>& v) {
    levels_.push_back(v);
    for (std::size_t span = 1; 2 * span <= v.size(); span *= 2) {
      const auto& prev = levels_.back();
      std::vector<double> next(prev.size() - span);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(prev[i], prev[i + span]);
      levels_.push_back(std::move(next));
    }
  }

  double max(std::size_t lo, std::size_t hi) const {  // inclusive
    const std::size_t len = hi - lo + 1;
    const std::size_t level = std::bit_width(len) - 1;
    return std::max(levels_[level][lo], levels_[level][hi + 1 - (std::size_t{1} << level)]);
  }

 private:
  std::vector<std::vector<double>> levels_;
};

void set_point(MmcCurve& curve, std::size_t j, double log_value) {
  curve.log_values[j] = log_value;
  const bool inf = !(log_value <= kLogMax);
  curve.infinite[j] = inf;
  curve.values[j] = inf ? kInf : std::exp(log_value);
}

}  // namespace

std::string_view weight_kind_name(WeightKind kind) noexcept {
  switch (kind) {
    case WeightKind::Constant: return "constant";
    case WeightKind::Power: return "power";
    case WeightKind::ExpAbs: return "exp-abs";
    case WeightKind::GaussSquare: return "gauss-square";
    case WeightKind::SobolevOmega: return "sobolev-omega";
    case WeightKind::Table: return "table";
  }
  return "unknown";
}

WeightKind parse_weight_kind(std::string_view name) {
  for (auto k : {WeightKind::Constant, WeightKind::Power, WeightKind::ExpAbs, WeightKind::GaussSquare,
                 WeightKind::SobolevOmega, WeightKind::Table})
    if (weight_kind_name(k) == name) return k;
  fail(ErrorCode::InvalidArgument, "unknown weight kind '" + std::string(name) + "'");
}

WeightSpec WeightSpec::preset(WeightKind kind, std::vector<double> params, double halfwidth) {
  if (kind == WeightKind::Table) fail(ErrorCode::InvalidArgument, "table weights are built from samples");
  if (!(halfwidth > 0.0)) fail(ErrorCode::InvalidArgument, "weight domain halfwidth must be positive");
  for (double p : params)
    if (!std::isfinite(p)) fail(ErrorCode::InvalidArgument, "weight parameters must be finite");
  WeightSpec spec;
  spec.kind = kind;
  spec.params = std::move(params);
  spec.domain_halfwidth = halfwidth;
  if (kind == WeightKind::Constant && first_param(spec, 1.0) < 0.0)
    fail(ErrorCode::NegativeWeight, "constant weight must be >= 0");
  if (kind == WeightKind::SobolevOmega) {
    const double n = first_param(spec, 1.0);
    if (n < 0.0 || n != std::floor(n)) fail(ErrorCode::InvalidArgument, "Sobolev order must be a non-negative integer");
  }
  return spec;
}

WeightSpec WeightSpec::constant(double c, double halfwidth) { return preset(WeightKind::Constant, {c}, halfwidth); }
WeightSpec WeightSpec::power(double p, double halfwidth) { return preset(WeightKind::Power, {p}, halfwidth); }
WeightSpec WeightSpec::exp_abs(double mu, double halfwidth) { return preset(WeightKind::ExpAbs, {mu}, halfwidth); }
WeightSpec WeightSpec::gauss_square(double a, double halfwidth) {
  return preset(WeightKind::GaussSquare, {a}, halfwidth);
}
WeightSpec WeightSpec::sobolev_omega(int n, double halfwidth) {
  return preset(WeightKind::SobolevOmega, {static_cast<double>(n)}, halfwidth);
}

WeightSpec WeightSpec::table(const std::vector<double>& xi, const std::vector<double>& w) {
  if (xi.size() != w.size() || xi.size() < 2)
    fail(ErrorCode::InvalidArgument, "weight table needs at least two (xi, w) rows of equal length");
  const double spacing = (xi.back() - xi.front()) / static_cast<double>(xi.size() - 1);
  if (!(spacing > 0.0)) fail(ErrorCode::InvalidArgument, "weight table xi must be strictly increasing");
  for (std::size_t k = 0; k < xi.size(); ++k) {
    if (!std::isfinite(xi[k])) fail(ErrorCode::InvalidArgument, "weight table xi must be finite");
    if (k > 0) {
      const double d = xi[k] - xi[k - 1];
      if (!(d > 0.0)) fail(ErrorCode::InvalidArgument, "weight table xi must be strictly increasing");
      if (std::abs(d - spacing) > 1e-9 * spacing)
        fail(ErrorCode::InvalidArgument, "weight table xi is not uniformly spaced");
    }
    if (!std::isfinite(w[k])) fail(ErrorCode::NonFiniteWeight, "weight table entry is not finite");
    if (w[k] < 0.0) fail(ErrorCode::NegativeWeight, "weight table entry " + std::to_string(k) + " is negative");
  }
  WeightSpec spec;
  spec.kind = WeightKind::Table;
  spec.params.clear();
  spec.table_origin = xi.front();
  spec.table_spacing = spacing;
  spec.table_values = w;
  spec.domain_halfwidth = std::max(std::abs(xi.front()), std::abs(xi.back()));
  return spec;
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  if (reciprocal) os << "1/(";
  if (offset != 0.0) os << offset << " + ";
  os << weight_kind_name(kind);
  if (!params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
    os << ')';
  }
  if (reciprocal) os << ')';
  return os.str();
}

WeightSpec one_plus(WeightSpec spec) {
  if (spec.reciprocal) fail(ErrorCode::InvalidArgument, "one_plus of a reciprocal weight is not supported");
  spec.offset += 1.0;
  return spec;
}

WeightSpec reciprocal_of(WeightSpec spec) {
  spec.reciprocal = !spec.reciprocal;
  return spec;
}

WeightSpec with_domain(WeightSpec spec, double halfwidth) {
  if (!(halfwidth > 0.0)) fail(ErrorCode::InvalidArgument, "weight domain halfwidth must be positive");
  spec.domain_halfwidth = halfwidth;
  return spec;
}

double eval_weight(const WeightSpec& spec, double xi) {
  check_domain(spec, xi);
  double v = spec.offset + base_value(spec, xi);
  if (spec.reciprocal) v = 1.0 / v;
  if (std::isnan(v) || v < 0.0) fail(ErrorCode::NegativeWeight, "weight is negative at xi = " + std::to_string(xi));
  if (!std::isfinite(v)) fail(ErrorCode::NonFiniteWeight, "weight overflows at xi = " + std::to_string(xi));
  return v;
}

double log_weight(const WeightSpec& spec, double xi) {
  check_domain(spec, xi);
  double l = base_log(spec, xi);
  if (spec.offset != 0.0) l = log_add(std::log(spec.offset), l);
  return spec.reciprocal ? -l : l;
}

std::vector<double> sample_weight(const WeightSpec& spec, const Grid& grid) {
  std::vector<double> out(grid.count());
  for (std::size_t k = 0; k < grid.count(); ++k) out[k] = eval_weight(spec, grid.point(k));
  return out;
}

double MmcCurve::bound_at(double eta, double c_w, double mu_w) const {
  eta = std::abs(eta);
  const auto it = std::lower_bound(deltas.begin(), deltas.end(), eta - 1e-12);
  if (it != deltas.end()) return values[static_cast<std::size_t>(it - deltas.begin())];
  return c_w * std::exp(mu_w * eta);
}

MmcCurve estimate_mmc(const WeightSpec& spec, const std::vector<double>& deltas, double h, unsigned threads) {
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] >= 0.0) || !std::isfinite(deltas[j]))
      fail(ErrorCode::InvalidArgument, "deltas must be finite and >= 0");
    if (j > 0 && deltas[j] < deltas[j - 1]) fail(ErrorCode::InvalidArgument, "deltas must be ascending");
  }
  const std::vector<double> logs = scan_logs(spec, h);
  const SparseMax range(logs);
  const std::size_t m = logs.size();

  MmcCurve curve;
  curve.deltas = deltas;
  curve.values.assign(deltas.size(), 1.0);
  curve.log_values.assign(deltas.size(), 0.0);
  curve.infinite.assign(deltas.size(), false);
  curve.grid_step = h;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const std::size_t k = std::min(steps_for(deltas[j], h), m - 1);
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i >= k ? i - k : 0;
        const std::size_t hi = std::min(m - 1, i + k);
        best = std::max(best, range.max(lo, hi) - logs[i]);
      }
      set_point(curve, j, best);
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(deltas.size())));
  if (threads == 1) {
    work(0, deltas.size());
  } else {
    // Each delta is independent and written to its own slot.
    std::vector<std::jthread> pool;
    const std::size_t chunk = (deltas.size() + threads - 1) / threads;
    for (std::size_t b = 0; b < deltas.size(); b += chunk) pool.emplace_back(work, b, std::min(deltas.size(), b + chunk));
  }
  return curve;
}

MmcCurve estimate_mmc_dense(const WeightSpec& spec, double h, double max_delta) {
  const std::vector<double> logs = scan_logs(spec, h);
  const std::size_t m = logs.size();
  const std::size_t kmax = std::min(steps_for(max_delta, h), m - 1);

  MmcCurve curve;
  curve.grid_step = h;
  curve.deltas.resize(kmax + 1);
  curve.values.resize(kmax + 1);
  curve.log_values.resize(kmax + 1);
  curve.infinite.resize(kmax + 1);
  double running = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    double exact = 0.0;
    for (std::size_t i = 0; i + k < m; ++i) exact = std::max(exact, std::abs(logs[i + k] - logs[i]));
    running = std::max(running, exact);
    curve.deltas[k] = static_cast<double>(k) * h;
    set_point(curve, k, running);
  }
  return curve;
}

std::vector<double> default_deltas(double halfwidth) {
  std::vector<double> out;
  for (std::size_t j = 0; static_cast<double>(j) * 0.25 <= halfwidth + 1e-12; ++j) out.push_back(0.25 * static_cast<double>(j));
  return out;
}

RegularityEnvelope fit_envelope(const MmcCurve& curve, double blowup_threshold) {
  std::vector<std::size_t> positive;
  for (std::size_t j = 0; j < curve.deltas.size(); ++j)
    if (curve.deltas[j] > 0.0) positive.push_back(j);
  if (positive.empty()) fail(ErrorCode::EmptyCurve, "no delta > 0 tabulated");

  RegularityEnvelope env;
  env.valid_up_to = curve.deltas.back();
  for (std::size_t j = 0; j < curve.deltas.size(); ++j) {
    if (curve.infinite[j] || !(curve.values[j] <= blowup_threshold)) {
      env.regular = false;
      env.c_w = kInf;
      env.mu_w = kInf;
      return env;
    }
  }

  // Least-squares slope of log M against delta over the positive deltas.
  double mean_d = 0.0, mean_l = 0.0;
  for (auto j : positive) {
    mean_d += curve.deltas[j];
    mean_l += curve.log_values[j];
  }
  mean_d /= static_cast<double>(positive.size());
  mean_l /= static_cast<double>(positive.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto j : positive) {
    sxx += (curve.deltas[j] - mean_d) * (curve.deltas[j] - mean_d);
    sxy += (curve.deltas[j] - mean_d) * (curve.log_values[j] - mean_l);
  }
  const double mu = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;

  // Tighten: C e^{mu delta} must dominate M on each (delta_{j-1}, delta_j], M being monotone.
  double log_c = 0.0;
  for (std::size_t j = 0; j < curve.deltas.size(); ++j) {
    const double left = j == 0 ? curve.deltas[0] : curve.deltas[j - 1];
    log_c = std::max(log_c, curve.log_values[j] - mu * left);
  }
  env.c_w = std::exp(log_c);
  env.mu_w = mu;
  env.regular = true;
  return env;
}

NonDegeneracyReport check_nondegeneracy(const WeightSpec& spec, double epsilon, double h) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "scan step must be positive");
  const double L = spec.domain_halfwidth;
  const double log_eps = std::log(epsilon);
  const auto n = static_cast<std::size_t>(std::round(2.0 * L / h));
  std::size_t below = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (log_weight(spec, -L + static_cast<double>(k) * h) < log_eps) ++below;

  NonDegeneracyReport rep;
  rep.epsilon = epsilon;
  rep.window = 2.0 * L;
  rep.sublevel_measure = std::min(h * static_cast<double>(below), rep.window);
  // On a truncated window, "finite measure" means the sublevel set does not reach the window edge.
  const bool edges_clear = log_weight(spec, -L) >= log_eps && log_weight(spec, L) >= log_eps;
  rep.passes = edges_clear && rep.sublevel_measure < rep.window;
  return rep;
}

WeightAnalysis analyze_weight(const WeightSpec& spec, double epsilon, double h, unsigned threads) {
  WeightAnalysis a;
  a.nondegeneracy = check_nondegeneracy(spec, epsilon, h);
  const WeightSpec shifted = one_plus(spec);
  a.one_plus_curve = estimate_mmc(shifted, default_deltas(spec.domain_halfwidth), h, threads);
  a.one_plus_envelope = fit_envelope(a.one_plus_curve);
  a.w_at_zero = std::exp(log_weight(spec, 0.0));
  return a;
}

}  // namespace gaussdense
