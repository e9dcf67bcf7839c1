#pragma once

#include <span>

#include "rriqa/image.hpp"

namespace rriqa {

struct Knot {
  int x;
  int y;
  double value;
};

struct ThinPlateOptions {
  // Stop when the residual norm falls below tolerance times the right-hand side norm,
  // or after max_iterations conjugate-gradient steps.
  double tolerance = 1e-6;
  int max_iterations = 30;
  // Solve on a grid coarsened by this factor and upsample bilinearly. Knots falling in
  // the same coarse cell are averaged, so knots are matched only approximately.
  int grid_step = 1;
};

// Surface of minimum discrete bending energy
//   sum u_xx^2 + 2 u_xy^2 + u_yy^2
// over a width x height grid that takes the knot values at the knot pixels. This is the
// grid form of thin-plate spline interpolation: affine data is reproduced exactly.
// Solved by multigrid-preconditioned conjugate gradients. Needs at least one knot;
// duplicate knot pixels keep the last value.
ImagePlane thin_plate_surface(int width, int height, std::span<const Knot> knots,
                              const ThinPlateOptions& options = {});

}  // namespace rriqa
