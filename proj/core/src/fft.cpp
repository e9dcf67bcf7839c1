#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "rriqa/error.hpp"

namespace rriqa::detail {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// FFTW planning is not thread-safe; execution of an existing plan on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int width, int height) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  const auto key = std::make_pair(width, height);
  if (auto it = cache.find(key); it != cache.end()) {
    return it->second;
  }
  const std::size_t n = static_cast<std::size_t>(width) * height;
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_2d(height, width, scratch, scratch, FFTW_FORWARD, flags),
             fftw_plan_dft_2d(height, width, scratch, scratch, FFTW_BACKWARD, flags)};
  fftw_free(scratch);
  if (p.forward == nullptr || p.inverse == nullptr) {
    throw Error(Errc::InvalidArgument, "FFTW could not plan the transform");
  }
  return cache.emplace(key, p).first->second;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void fft2d_forward(std::span<std::complex<double>> data, int width, int height) {
  fftw_execute_dft(plans_for(width, height).forward, as_fftw(data), as_fftw(data));
}

void fft2d_inverse(std::span<std::complex<double>> data, int width, int height) {
  fftw_execute_dft(plans_for(width, height).inverse, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace rriqa::detail
