#include "gaussdense/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gaussdense/error.hpp"

namespace gaussdense {

Grid Grid::make(double halfwidth, double step) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth)) fail(ErrorCode::InvalidArgument, "grid halfwidth must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorCode::InvalidArgument, "grid step must be positive");
  const double ratio = 2.0 * halfwidth / step;
  const double rounded = std::round(ratio);
  if (rounded < 4.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
    fail(ErrorCode::NonPowerOfTwo, "2L/h = " + std::to_string(ratio) + " is not an integer >= 4");
  const auto count = static_cast<std::size_t>(rounded);
  if (!std::has_single_bit(count))
    fail(ErrorCode::NonPowerOfTwo, "grid count " + std::to_string(count) + " is not a power of two");
  return Grid(halfwidth, 2.0 * halfwidth / static_cast<double>(count), count);
}

Grid Grid::with_count(double halfwidth, std::size_t count) {
  if (count == 0) fail(ErrorCode::NonPowerOfTwo, "grid count is zero");
  return make(halfwidth, 2.0 * halfwidth / static_cast<double>(count));
}

std::vector<double> Grid::points() const {
  std::vector<double> out(count_);
  for (std::size_t k = 0; k < count_; ++k) out[k] = point(k);
  return out;
}

Grid Grid::dual() const noexcept {
  const double n = static_cast<double>(count_);
  return Grid(0.5 / step_, 1.0 / (n * step_), count_);
}

bool Grid::same_as(const Grid& other) const noexcept {
  return count_ == other.count_ && std::abs(step_ - other.step_) <= 1e-12 * step_ &&
         std::abs(halfwidth_ - other.halfwidth_) <= 1e-12 * halfwidth_;
}

template <class Domain>
Sampled<Domain>::Sampled(Grid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.count())
    fail(ErrorCode::GridMismatch,
         "sample count " + std::to_string(values.size()) + " != grid count " + std::to_string(grid.count()));
}

template struct Sampled<TimeDomain>;
template struct Sampled<FrequencyDomain>;

double weighted_l2_norm(const Grid& grid, const std::vector<cplx>& values, const std::vector<double>& weight) {
  return std::sqrt(std::max(0.0, weighted_l2_inner(grid, values, values, weight).real()));
}

cplx weighted_l2_inner(const Grid& grid, const std::vector<cplx>& a, const std::vector<cplx>& b,
                       const std::vector<double>& weight) {
  if (a.size() != grid.count() || b.size() != grid.count() || (!weight.empty() && weight.size() != grid.count()))
    fail(ErrorCode::GridMismatch, "inner product operands do not match the grid");
  cplx acc = 0.0;
  if (weight.empty()) {
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
  } else {
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]) * weight[k];
  }
  return acc * grid.step();
}

}  // namespace gaussdense
