#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rriqa {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // Stop when max f - min f over the simplex falls below this.
  double f_tolerance = 1e-10;
  int max_iterations = 5000;
  // Initial simplex edge: step_fraction * |x_i|, or zero_step when x_i == 0.
  double step_fraction = 0.05;
  double zero_step = 0.00025;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Derivative-free simplex minimisation.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace rriqa
