#ifndef GAUSSDENSE_ATOMS_HPP
#define GAUSSDENSE_ATOMS_HPP

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "gaussdense/grid.hpp"
#include "gaussdense/wspace.hpp"

namespace gaussdense {

/// g_{alpha,tau}(t) = sqrt(alpha) exp(-pi alpha (t - tau)^2).
struct GaussianAtom {
  double alpha = 1.0;
  double tau = 0.0;

  friend bool operator==(const GaussianAtom&, const GaussianAtom&) = default;
};

/// Mass of the atom outside [-L, L].
double atom_outside_mass(const GaussianAtom& a, double halfwidth);

/// Throws AtomOutOfDomain when alpha is not positive, |tau| > L, or more than 1e-10 of the mass
/// falls outside the grid.
void validate_atom(const GaussianAtom& a, const Grid& grid);

Signal atom_signal(const GaussianAtom& a, const Grid& grid);

/// Closed form exp(-(pi/alpha) w^2 - 2 pi i tau w) on the dual of the time grid `grid`.
Spectrum atom_spectrum(const GaussianAtom& a, const Grid& grid);

/// Atom samples with the closed-form spectrum attached.
HVector atom_hvector(const GaussianAtom& a, const Grid& grid);

/// alpha in {1/4, 1/2, 1, 2, 4} x tau in {-2, -1, 0, 1, 2}.
std::vector<GaussianAtom> default_embedding_family();

// ---------------------------------------------------------------------------------------------
// Generalized windows

struct WindowSpec {
  Signal g;
  Spectrum g_hat;
  cplx unit_mass;
};

WindowSpec make_window(const Signal& g);

enum class WindowCondition {
  UnitMass,
  TimeTail,
  FrequencyTail,
  TimeKernelIntegral,       // g against w_T
  TimeKernelSup,            // g-hat against w_T
  FrequencyKernelIntegral,  // g-hat against w_Omega
  FrequencyKernelSup,
};
inline constexpr std::size_t kWindowConditionCount = 7;
std::string_view window_condition_name(WindowCondition c) noexcept;

struct ConditionResult {
  bool passed = false;
  double margin = 0.0;
};

/// One entry per WindowCondition, in declaration order.
///
/// Margins: UnitMass is |int g - 1|; the tails report the tail integral at the largest alpha; the kernel
/// conditions report the largest weighted integral or sup over alphas (compared against 1e12).
struct WindowReport {
  std::array<ConditionResult, kWindowConditionCount> results{};
  std::vector<double> alphas;
  std::vector<double> tail_t;
  std::vector<double> tail_omega;

  const ConditionResult& operator[](WindowCondition c) const { return results[static_cast<std::size_t>(c)]; }
  bool all_passed() const;
};

inline constexpr double kFiniteThreshold = 1e12;

WindowReport check_window(const WindowSpec& window, const SpacePair& sp, const std::vector<double>& alphas = {1, 4, 16, 64},
                          double delta = 0.5);

// ---------------------------------------------------------------------------------------------
// Schur test

/// |K(t_k, tau_m)| sampled with t on `rows` and tau on `cols`, row-major.
struct SchurKernel {
  Grid rows;
  Grid cols;
  std::vector<double> samples;
  double n1 = 0.0;     // sup_tau \int |K| dt
  double n_inf = 0.0;  // sup_t \int |K| dtau

  double at(std::size_t k, std::size_t m) const { return samples[k * cols.count() + m]; }
};

SchurKernel make_schur_kernel(const Grid& rows, const Grid& cols, const std::function<double(double, double)>& kernel);

/// sqrt(N1 * N_inf).
double schur_bound(const SchurKernel& k);

/// | h_t h_tau sum_k sum_m f_k K_km conj(g_m) |.
double schur_bilinear(const SchurKernel& k, const std::vector<cplx>& f, const std::vector<cplx>& g);

/// C sqrt(alpha) exp(-pi alpha (t-tau)^2 + mu |t-tau|) exp(-(pi/alpha) tau^2 + mu |tau|)
double kernel_time(double c, double mu, double alpha, double t, double tau);
/// C exp(-(pi/alpha) w^2 + mu |w|) exp(-(pi/alpha) tau^2)
double kernel_frequency(double c, double mu, double alpha, double omega, double tau);

/// Closed-form row/column bounds for the two kernels above.
double schur_i(double c, double mu, double alpha);
double schur_i1(double c, double mu, double alpha);
double schur_iinf(double c, double mu, double alpha);

}  // namespace gaussdense

#endif  // GAUSSDENSE_ATOMS_HPP
