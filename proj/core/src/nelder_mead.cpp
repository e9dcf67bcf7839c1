#include "rriqa/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

// Non-finite objective values rank as worst.
double guarded(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : HUGE_VAL;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "nelder_mead needs at least one parameter");

  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    double& xi = simplex[i + 1][i];
    xi = xi != 0.0 ? xi * (1.0 + options.step_fraction) : options.zero_step;
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = guarded(f, simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  NelderMeadResult result;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (fv[worst] - fv[best] <= options.f_tolerance) {
      result.converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto along = [&](double t, std::vector<double>& out) {
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      }
      return guarded(f, out);
    };
    const double fr = along(-options.reflection, trial);
    if (fr < fv[best]) {
      const double fe = along(-options.reflection * options.expansion, trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        fv[worst] = fe;
      } else {
        simplex[worst] = trial;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = trial;
      fv[worst] = fr;
      continue;
    }
    if (fr < fv[worst]) {
      const double fc = along(-options.reflection * options.contraction, trial2);
      if (fc <= fr) {
        simplex[worst] = trial2;
        fv[worst] = fc;
        continue;
      }
    } else {
      const double fc = along(options.contraction, trial2);
      if (fc < fv[worst]) {
        simplex[worst] = trial2;
        fv[worst] = fc;
        continue;
      }
    }
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<double>& v = simplex[order[k]];
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = simplex[best][i] + options.shrink * (v[i] - simplex[best][i]);
      }
      fv[order[k]] = guarded(f, v);
    }
  }
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  result.x = simplex[best];
  result.value = fv[best];
  result.iterations = it;
  return result;
}

}  // namespace rriqa
