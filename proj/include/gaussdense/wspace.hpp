#ifndef GAUSSDENSE_WSPACE_HPP
#define GAUSSDENSE_WSPACE_HPP

#include <string>
#include <vector>

#include "gaussdense/grid.hpp"
#include "gaussdense/weights.hpp"

namespace gaussdense {

struct SpaceOptions {
  double epsilon_t = 0.5;
  double epsilon_omega = 0.5;
  double scan_step = kDefaultWeightStep;
  unsigned threads = 1;
  /// Build the pair even when a hypothesis fails; `failures()` still lists what failed.
  bool force = false;
};

/// The space H_{w_T, w_Omega} discretized on a time grid and its dual frequency grid.
///
/// Construction checks both completeness hypotheses: each weight is non-degenerate, and
/// 1 + w is regular. Analytic presets are re-domained to the grid they are sampled on
/// (w_T to [-L, L], w_Omega to [-1/(2h), 1/(2h)]).
class SpacePair {
 public:
  static SpacePair make(const WeightSpec& w_t, const WeightSpec& w_omega, const Grid& grid,
                        const SpaceOptions& options = {});

  const Grid& grid() const noexcept { return grid_; }
  const Grid& frequency_grid() const noexcept { return frequency_grid_; }
  const WeightSpec& w_t() const noexcept { return w_t_; }
  const WeightSpec& w_omega() const noexcept { return w_omega_; }
  const std::vector<double>& time_weight() const noexcept { return time_weight_; }
  const std::vector<double>& frequency_weight() const noexcept { return frequency_weight_; }
  const WeightAnalysis& time_analysis() const noexcept { return time_analysis_; }
  const WeightAnalysis& frequency_analysis() const noexcept { return frequency_analysis_; }
  const SpaceOptions& options() const noexcept { return options_; }

  bool hypotheses_hold() const noexcept { return failures_.empty(); }
  const std::vector<std::string>& failures() const noexcept { return failures_; }

  /// Constants of  w_T(t) <= C_T e^{mu_T |t|}  (and the frequency analogue), from the envelope of 1 + w.
  double c_t() const;
  double mu_t() const;
  double c_omega() const;
  double mu_omega() const;

 private:
  SpacePair(const Grid& grid) : grid_(grid), frequency_grid_(grid.dual()) {}

  Grid grid_;
  Grid frequency_grid_;
  WeightSpec w_t_;
  WeightSpec w_omega_;
  std::vector<double> time_weight_;
  std::vector<double> frequency_weight_;
  WeightAnalysis time_analysis_;
  WeightAnalysis frequency_analysis_;
  SpaceOptions options_;
  std::vector<std::string> failures_;
};

/// A signal together with its spectrum, so H inner products need no further transforms.
struct HVector {
  Signal time;
  Spectrum freq;
};

HVector lift(const Signal& x);

double h_norm_sq(const Signal& x, const SpacePair& sp);
double h_norm_sq(const HVector& x, const SpacePair& sp);
cplx h_inner(const Signal& x1, const Signal& x2, const SpacePair& sp);
cplx h_inner(const HVector& x1, const HVector& x2, const SpacePair& sp);

struct EmbeddingEstimate {
  double b_hat = 0.0;
  std::size_t family_size = 0;
  std::size_t argmax = 0;
};

/// max over the family of ||x||^2_{L^2(dt)} / ||x||^2_H, an empirical lower bound for the
/// embedding constant.
EmbeddingEstimate embedding_estimate(const SpacePair& sp, const std::vector<Signal>& family);

}  // namespace gaussdense

#endif  // GAUSSDENSE_WSPACE_HPP
