#include "gaussdense/wspace.hpp"

#include <cmath>

#include "gaussdense/error.hpp"
#include "gaussdense/transform.hpp"

namespace gaussdense {
namespace {

WeightSpec fit_domain(const WeightSpec& spec, double halfwidth) {
  return spec.kind == WeightKind::Table ? spec : with_domain(spec, halfwidth);
}

void require_grid(const Grid& expected, const Grid& actual) {
  if (!expected.same_as(actual)) fail(ErrorCode::GridMismatch, "signal grid does not match the space grid");
}

void record(std::vector<std::string>& failures, const std::string& label, const WeightAnalysis& a) {
  if (!a.nondegeneracy.passes)
    failures.push_back("non-degeneracy failed for " + label + " (sublevel measure " +
                       std::to_string(a.nondegeneracy.sublevel_measure) + " at epsilon " +
                       std::to_string(a.nondegeneracy.epsilon) + ")");
  if (!a.one_plus_envelope.regular)
    failures.push_back("regularity failed for 1+" + label + " (multiplicative modulus of continuity blows up)");
}

}  // namespace

SpacePair SpacePair::make(const WeightSpec& w_t, const WeightSpec& w_omega, const Grid& grid,
                          const SpaceOptions& options) {
  SpacePair sp(grid);
  sp.options_ = options;
  sp.w_t_ = fit_domain(w_t, grid.halfwidth());
  sp.w_omega_ = fit_domain(w_omega, sp.frequency_grid_.halfwidth());

  sp.time_analysis_ = analyze_weight(sp.w_t_, options.epsilon_t, options.scan_step, options.threads);
  sp.frequency_analysis_ = analyze_weight(sp.w_omega_, options.epsilon_omega, options.scan_step, options.threads);
  record(sp.failures_, "w_T", sp.time_analysis_);
  record(sp.failures_, "w_Omega", sp.frequency_analysis_);

  if (!sp.failures_.empty() && !options.force) {
    std::string msg;
    for (const auto& f : sp.failures_) msg += (msg.empty() ? "" : "; ") + f;
    fail(ErrorCode::ValidationError, msg);
  }
  // Forced pairs with overflowing weights keep the overflow as +inf samples.
  auto sample = [&](const WeightSpec& w, const Grid& g) {
    std::vector<double> out(g.count());
    for (std::size_t k = 0; k < g.count(); ++k) out[k] = std::exp(log_weight(w, g.point(k)));
    return out;
  };
  sp.time_weight_ = sample(sp.w_t_, sp.grid_);
  sp.frequency_weight_ = sample(sp.w_omega_, sp.frequency_grid_);
  return sp;
}

double SpacePair::c_t() const {
  return (1.0 + time_analysis_.w_at_zero) * time_analysis_.one_plus_envelope.c_w;
}
double SpacePair::mu_t() const { return time_analysis_.one_plus_envelope.mu_w; }
double SpacePair::c_omega() const {
  return (1.0 + frequency_analysis_.w_at_zero) * frequency_analysis_.one_plus_envelope.c_w;
}
double SpacePair::mu_omega() const { return frequency_analysis_.one_plus_envelope.mu_w; }

HVector lift(const Signal& x) { return HVector{x, forward_ft(x)}; }

double h_norm_sq(const Signal& x, const SpacePair& sp) { return h_norm_sq(lift(x), sp); }

double h_norm_sq(const HVector& x, const SpacePair& sp) { return h_inner(x, x, sp).real(); }

cplx h_inner(const Signal& x1, const Signal& x2, const SpacePair& sp) { return h_inner(lift(x1), lift(x2), sp); }

cplx h_inner(const HVector& x1, const HVector& x2, const SpacePair& sp) {
  require_grid(sp.grid(), x1.time.grid);
  require_grid(sp.grid(), x2.time.grid);
  return weighted_l2_inner(sp.grid(), x1.time.values, x2.time.values, sp.time_weight()) +
         weighted_l2_inner(sp.frequency_grid(), x1.freq.values, x2.freq.values, sp.frequency_weight());
}

EmbeddingEstimate embedding_estimate(const SpacePair& sp, const std::vector<Signal>& family) {
  if (family.empty()) fail(ErrorCode::EmptyFamily, "embedding estimate needs at least one signal");
  EmbeddingEstimate est;
  est.family_size = family.size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    require_grid(sp.grid(), family[i].grid);
    const double h = h_norm_sq(family[i], sp);
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "family member has zero H-norm");
    const double l2 = std::pow(weighted_l2_norm(family[i].grid, family[i].values), 2);
    const double ratio = l2 / h;
    if (i == 0 || ratio > est.b_hat) {
      est.b_hat = ratio;
      est.argmax = i;
    }
  }
  return est;
}

}  // namespace gaussdense
