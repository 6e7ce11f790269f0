#ifndef GAUSSDENSE_WEIGHTS_HPP
#define GAUSSDENSE_WEIGHTS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gaussdense/grid.hpp"

namespace gaussdense {

enum class WeightKind { Constant, Power, ExpAbs, GaussSquare, SobolevOmega, Table };

std::string_view weight_kind_name(WeightKind kind) noexcept;
WeightKind parse_weight_kind(std::string_view name);

/// A weight function on [-L, L].
///
/// Presets (first parameter in parentheses):
///   constant      c                      (c)
///   power         |xi|^p                 (p)
///   exp-abs       exp(mu |xi|)           (mu)
///   gauss-square  exp(a xi^2)            (a)
///   sobolev-omega (2 pi xi)^(2n)         (n)
///   table         nearest-sample lookup in a uniform (xi, w) table
///
/// `offset` and `reciprocal` derive 1 + w and 1/w without resampling, so the analysed
/// weight is `reciprocal ? 1/(offset + base) : offset + base`.
struct WeightSpec {
  WeightKind kind = WeightKind::Constant;
  std::vector<double> params{1.0};
  double domain_halfwidth = 16.0;
  double offset = 0.0;
  bool reciprocal = false;

  double table_origin = 0.0;
  double table_spacing = 0.0;
  std::vector<double> table_values;

  static WeightSpec constant(double c, double halfwidth = 16.0);
  static WeightSpec power(double p, double halfwidth = 16.0);
  static WeightSpec exp_abs(double mu, double halfwidth = 16.0);
  static WeightSpec gauss_square(double a, double halfwidth = 16.0);
  static WeightSpec sobolev_omega(int n, double halfwidth = 16.0);
  /// xi strictly increasing with uniform spacing (1e-9 relative), w finite and >= 0.
  static WeightSpec table(const std::vector<double>& xi, const std::vector<double>& w);
  static WeightSpec preset(WeightKind kind, std::vector<double> params, double halfwidth);

  std::string describe() const;
};

WeightSpec one_plus(WeightSpec spec);
WeightSpec reciprocal_of(WeightSpec spec);
WeightSpec with_domain(WeightSpec spec, double halfwidth);

double eval_weight(const WeightSpec& spec, double xi);

/// log w(xi); -inf where w vanishes. Never overflows for the analytic presets.
double log_weight(const WeightSpec& spec, double xi);

/// eval_weight at every grid point.
std::vector<double> sample_weight(const WeightSpec& spec, const Grid& grid);

inline constexpr double kDefaultWeightStep = 1.0 / 256.0;
inline constexpr double kDefaultBlowupThreshold = 1e12;

struct MmcCurve {
  std::vector<double> deltas;
  std::vector<double> values;      // M(delta), +inf when infinite
  std::vector<double> log_values;  // log M(delta)
  std::vector<bool> infinite;
  double grid_step = 0.0;

  /// Upper bound for M at an arbitrary |eta|: the value at the next tabulated delta, or
  /// `extrapolate(|eta|)` past the last one.
  double bound_at(double eta, double c_w, double mu_w) const;
};

struct RegularityEnvelope {
  double c_w = 1.0;
  double mu_w = 0.0;
  bool regular = false;
  double valid_up_to = 0.0;  // C e^{mu delta} dominates the curve on [0, valid_up_to]
};

struct NonDegeneracyReport {
  double epsilon = 0.0;
  double sublevel_measure = 0.0;
  double window = 0.0;  // 2L
  bool passes = false;
};

/// Multiplicative modulus of continuity: for each delta the grid sup of w(a)/w(b) over |a-b| <= delta,
/// scanned on -L + k*h, k = 0..floor(2L/h).
MmcCurve estimate_mmc(const WeightSpec& spec, const std::vector<double>& deltas, double h = kDefaultWeightStep,
                      unsigned threads = 1);

/// Every multiple of h from 0 to max_delta.
MmcCurve estimate_mmc_dense(const WeightSpec& spec, double h, double max_delta);

/// 0, 1/4, 1/2, ..., up to the domain halfwidth.
std::vector<double> default_deltas(double halfwidth);

RegularityEnvelope fit_envelope(const MmcCurve& curve, double blowup_threshold = kDefaultBlowupThreshold);

NonDegeneracyReport check_nondegeneracy(const WeightSpec& spec, double epsilon, double h = kDefaultWeightStep);

/// Everything a SpacePair needs to know about one weight.
struct WeightAnalysis {
  NonDegeneracyReport nondegeneracy;
  MmcCurve one_plus_curve;
  RegularityEnvelope one_plus_envelope;
  double w_at_zero = 0.0;
};

WeightAnalysis analyze_weight(const WeightSpec& spec, double epsilon, double h = kDefaultWeightStep,
                              unsigned threads = 1);

}  // namespace gaussdense

#endif  // GAUSSDENSE_WEIGHTS_HPP
