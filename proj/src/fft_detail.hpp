#ifndef GAUSSDENSE_SRC_FFT_DETAIL_HPP
#define GAUSSDENSE_SRC_FFT_DETAIL_HPP

#include <vector>

#include "gaussdense/grid.hpp"

namespace gaussdense::detail {

/// Full linear convolution (length a.size() + b.size() - 1) via zero-padded FFT.
std::vector<cplx> fft_linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace gaussdense::detail

#endif
