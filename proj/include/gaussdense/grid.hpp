#ifndef GAUSSDENSE_GRID_HPP
#define GAUSSDENSE_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace gaussdense {

using cplx = std::complex<double>;

/// Uniform centered grid on [-L, L): samples at -L + k*h, k = 0..N-1, with N = 2L/h a power of two.
///
/// The frequency grid reciprocal to a time grid is `dual()`: halfwidth 1/(2h) and step 1/(N h).
/// Dualizing twice returns the original grid.
class Grid {
 public:
  static Grid make(double halfwidth, double step);
  static Grid with_count(double halfwidth, std::size_t count);

  double halfwidth() const noexcept { return halfwidth_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }

  double point(std::size_t k) const noexcept { return -halfwidth_ + static_cast<double>(k) * step_; }
  std::vector<double> points() const;

  Grid dual() const noexcept;

  bool same_as(const Grid& other) const noexcept;

 private:
  Grid(double halfwidth, double step, std::size_t count) noexcept
      : halfwidth_(halfwidth), step_(step), count_(count) {}

  double halfwidth_;
  double step_;
  std::size_t count_;
};

struct TimeDomain {};
struct FrequencyDomain {};

/// Complex samples of a function on a Grid. The tag keeps time signals and spectra apart.
template <class Domain>
struct Sampled {
  Grid grid;
  std::vector<cplx> values;

  Sampled(Grid g, std::vector<cplx> v);
  explicit Sampled(Grid g) : grid(g), values(g.count()) {}

  std::size_t size() const noexcept { return values.size(); }
};

using Signal = Sampled<TimeDomain>;
using Spectrum = Sampled<FrequencyDomain>;

extern template struct Sampled<TimeDomain>;
extern template struct Sampled<FrequencyDomain>;

/// Samples `fn(x)` on every grid point.
template <class Domain, class Fn>
Sampled<Domain> sample(const Grid& grid, Fn&& fn) {
  Sampled<Domain> out(grid);
  for (std::size_t k = 0; k < grid.count(); ++k) out.values[k] = fn(grid.point(k));
  return out;
}

/// sqrt(h * sum |x_k|^2 w_k); an empty weight span means w == 1.
double weighted_l2_norm(const Grid& grid, const std::vector<cplx>& values, const std::vector<double>& weight = {});
cplx weighted_l2_inner(const Grid& grid, const std::vector<cplx>& a, const std::vector<cplx>& b,
                       const std::vector<double>& weight = {});

}  // namespace gaussdense

#endif  // GAUSSDENSE_GRID_HPP
