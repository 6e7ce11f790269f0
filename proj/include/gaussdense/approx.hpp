#ifndef GAUSSDENSE_APPROX_HPP
#define GAUSSDENSE_APPROX_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gaussdense/atoms.hpp"
#include "gaussdense/wspace.hpp"

namespace gaussdense {

/// Atoms g_{alpha,tau}, or g(alpha (t - tau)) for a sampled window, with their samples cached.
class Dictionary {
 public:
  static Dictionary gaussians(std::vector<GaussianAtom> atoms, SpacePair sp);
  /// Elements g(alpha (t - tau)) by linear interpolation of the window samples.
  static Dictionary from_window(const WindowSpec& window, std::vector<GaussianAtom> params, SpacePair sp);

  const std::vector<GaussianAtom>& atoms() const noexcept { return atoms_; }
  const std::vector<HVector>& elements() const noexcept { return elements_; }
  const SpacePair& space() const noexcept { return sp_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  Dictionary(std::vector<GaussianAtom> atoms, std::vector<HVector> elements, SpacePair sp)
      : atoms_(std::move(atoms)), elements_(std::move(elements)), sp_(std::move(sp)) {}

  std::vector<GaussianAtom> atoms_;
  std::vector<HVector> elements_;
  SpacePair sp_;
};

struct GramReport {
  Eigen::MatrixXcd matrix;  // (i, j) = <g_i, g_j>_H
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool singular = false;    // min eigenvalue below 1e-10 (absolute) or 1e-12 * max
};

GramReport gram_matrix(const Dictionary& d);

/// 1e-10 * trace(Gram) / n.
double default_ridge(const GramReport& gram);

struct ApproxReport {
  std::vector<GaussianAtom> atoms;
  std::vector<cplx> coefficients;
  double residual_h_norm = 0.0;
  double target_h_norm = 0.0;
  std::vector<double> residual_trace;
  double gram_condition = 0.0;
  double ridge = 0.0;
};

/// argmin_c ||f - sum c_i g_i||_H^2 + ridge ||c||^2, solved by QR on the weighted sample matrix.
/// Without a ridge argument the default ridge is used.
ApproxReport least_squares_fit(const Signal& f, const Dictionary& d, std::optional<double> ridge = std::nullopt);

/// Orthogonal matching pursuit over alpha_grid x tau_grid in the H inner product.
ApproxReport greedy_pursuit(const Signal& f, const SpacePair& sp, const std::vector<double>& alpha_grid,
                            const std::vector<double>& tau_grid, std::size_t n_atoms, unsigned threads = 1);

struct WitnessCurves {
  std::vector<double> alphas;
  std::vector<cplx> term1;  // <f, I_a M_a f>_{L^2(w_T)}
  std::vector<cplx> term2;  // <f^, M_a I_a f^>_{L^2(w_Omega)}
  double target1 = 0.0;     // <f, f>_{L^2(w_T)}
  double target2 = 0.0;     // <f^, f^>_{L^2(w_Omega)}
  std::vector<double> i_alpha;
  std::vector<double> i1_alpha;
  std::vector<double> iinf_alpha;
};

WitnessCurves completeness_witness(const Signal& f, const SpacePair& sp, const std::vector<double>& alphas);

/// Direct double-sum evaluation of the two bilinear forms, in both summation orders.
struct FubiniCheck {
  double alpha = 0.0;
  cplx operator_form;  // term1 + term2
  cplx time_first;     // inner sums over t and w, outer over tau
  cplx tau_first;      // inner sums over tau, outer over t and w
  double max_relative_gap = 0.0;
};

FubiniCheck fubini_check(const Signal& f, const SpacePair& sp, double alpha);

}  // namespace gaussdense

#endif  // GAUSSDENSE_APPROX_HPP
