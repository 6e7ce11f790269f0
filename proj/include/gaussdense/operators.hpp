#ifndef GAUSSDENSE_OPERATORS_HPP
#define GAUSSDENSE_OPERATORS_HPP

#include <vector>

#include "gaussdense/grid.hpp"
#include "gaussdense/weights.hpp"

namespace gaussdense {

/// G_alpha(eta) = sqrt(alpha) exp(-pi alpha eta^2) sampled on a grid.
struct MollifierKernel {
  double alpha = 1.0;
  Grid grid;
  std::vector<double> samples;

  double mass() const;  // h * sum G
};

MollifierKernel make_mollifier_kernel(double alpha, const Grid& grid);

struct OperatorNormCert {
  double alpha = 0.0;
  double bound = 0.0;           // \int G(eta) sqrt(M_w(|eta|)) d eta
  double envelope_bound = 0.0;  // sqrt(C_w) \int G(eta) exp(mu_w |eta| / 2) d eta
};

enum class ConvolutionPath { Auto, Direct, Fft };
enum class CompositeOrder { IM, MI };

/// (T_eta x)(xi) = x(xi - eta), zero-filled at the inflow edge. eta must be a grid multiple.
std::vector<cplx> shift_values(const Grid& grid, const std::vector<cplx>& x, double eta);

/// (I_alpha x)(xi) = h sum_j G_alpha(xi - xi_j) x(xi_j); Auto uses the FFT path for N >= 1024.
std::vector<cplx> mollify_values(const Grid& grid, const std::vector<cplx>& x, double alpha,
                                 ConvolutionPath path = ConvolutionPath::Auto);

/// exp(-(pi/alpha) xi^2) x(xi).
std::vector<cplx> gauss_multiply_values(const Grid& grid, const std::vector<cplx>& x, double alpha);

std::vector<cplx> composite_values(const Grid& grid, const std::vector<cplx>& x, double alpha, CompositeOrder order);

/// Norm certificate for I_alpha in L^2(w dxi) on the given grid. `weight` is re-domained to the grid.
OperatorNormCert mollifier_certificate(const Grid& grid, double alpha, const WeightSpec& weight);

template <class D>
Sampled<D> shift(const Sampled<D>& x, double eta) {
  return Sampled<D>(x.grid, shift_values(x.grid, x.values, eta));
}

template <class D>
struct Mollified {
  Sampled<D> value;
  OperatorNormCert cert;
};

template <class D>
Mollified<D> mollify(const Sampled<D>& x, double alpha, const WeightSpec& weight) {
  return Mollified<D>{Sampled<D>(x.grid, mollify_values(x.grid, x.values, alpha)),
                      mollifier_certificate(x.grid, alpha, weight)};
}

template <class D>
Sampled<D> gauss_multiply(const Sampled<D>& x, double alpha) {
  return Sampled<D>(x.grid, gauss_multiply_values(x.grid, x.values, alpha));
}

/// ||C_alpha x - x||_{L^2(w dxi)}, C = I M (IM) or M I (MI).
double composite_identity_error(const Grid& grid, const std::vector<cplx>& x, double alpha,
                                const std::vector<double>& weight, CompositeOrder order);

template <class D>
double composite_identity_error(const Sampled<D>& x, double alpha, const WeightSpec& weight, CompositeOrder order) {
  WeightSpec w = weight.kind == WeightKind::Table ? weight : with_domain(weight, x.grid.halfwidth());
  return composite_identity_error(x.grid, x.values, alpha, sample_weight(w, x.grid), order);
}

}  // namespace gaussdense

#endif  // GAUSSDENSE_OPERATORS_HPP
