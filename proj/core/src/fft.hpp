#pragma once

#include <complex>
#include <span>

namespace rriqa::detail {

// In-place 2-D DFT of a row-major height x width complex array. The inverse is
// normalized so inverse(forward(x)) == x.
void fft2d_forward(std::span<std::complex<double>> data, int width, int height);
void fft2d_inverse(std::span<std::complex<double>> data, int width, int height);

}  // namespace rriqa::detail
