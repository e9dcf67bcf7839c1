#include "rriqa/thin_plate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

constexpr int kCoarsestSide = 8;

struct Grid {
  int w = 0;
  int h = 0;
  std::vector<std::uint8_t> fixed;
  std::vector<double> value;

  std::size_t size() const { return static_cast<std::size_t>(w) * h; }
};

// out = A p, with A the Hessian of the discrete bending energy (halved).
void apply_bending(const std::vector<double>& p, std::vector<double>& out, int w, int h) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 1; x + 1 < w; ++x) {
      const std::size_t i = row + x;
      const double s = p[i - 1] - 2.0 * p[i] + p[i + 1];
      out[i - 1] += s;
      out[i] -= 2.0 * s;
      out[i + 1] += s;
    }
  }
  const std::size_t ws = static_cast<std::size_t>(w);
  for (int y = 1; y + 1 < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const std::size_t i = row + x;
      const double s = p[i - ws] - 2.0 * p[i] + p[i + ws];
      out[i - ws] += s;
      out[i] -= 2.0 * s;
      out[i + ws] += s;
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x + 1 < w; ++x) {
      const std::size_t i = row + x;
      const double m = 2.0 * (p[i] - p[i + 1] - p[i + ws] + p[i + ws + 1]);
      out[i] += m;
      out[i + 1] -= m;
      out[i + ws] -= m;
      out[i + ws + 1] += m;
    }
  }
}

// Row i of the bending Hessian applied to u at pixel (x, y); also returns A_ii.
struct RowResult {
  double value;
  double diagonal;
};

RowResult apply_row(const std::vector<double>& u, int x, int y, int w, int h) {
  const std::size_t ws = static_cast<std::size_t>(w);
  const std::size_t i = static_cast<std::size_t>(y) * ws + x;
  if (x >= 2 && y >= 2 && x + 2 < w && y + 2 < h) {
    const double v = 20.0 * u[i] - 8.0 * (u[i - 1] + u[i + 1] + u[i - ws] + u[i + ws]) +
                     2.0 * (u[i - ws - 1] + u[i - ws + 1] + u[i + ws - 1] + u[i + ws + 1]) +
                     (u[i - 2] + u[i + 2] + u[i - 2 * ws] + u[i + 2 * ws]);
    return {v, 20.0};
  }
  double value = 0.0;
  double diag = 0.0;
  constexpr double kSecond[3] = {1.0, -2.0, 1.0};
  const auto at = [&](int xx, int yy) { return u[static_cast<std::size_t>(yy) * ws + xx]; };
  for (int c = x - 1; c <= x + 1; ++c) {
    if (c < 1 || c + 1 >= w) continue;
    const double ci = kSecond[x - c + 1];
    const double s = at(c - 1, y) - 2.0 * at(c, y) + at(c + 1, y);
    value += ci * s;
    diag += ci * ci;
  }
  for (int c = y - 1; c <= y + 1; ++c) {
    if (c < 1 || c + 1 >= h) continue;
    const double ci = kSecond[y - c + 1];
    const double s = at(x, c - 1) - 2.0 * at(x, c) + at(x, c + 1);
    value += ci * s;
    diag += ci * ci;
  }
  for (int cy = y - 1; cy <= y; ++cy) {
    if (cy < 0 || cy + 1 >= h) continue;
    for (int cx = x - 1; cx <= x; ++cx) {
      if (cx < 0 || cx + 1 >= w) continue;
      const double ci = ((x == cx) == (y == cy)) ? 1.0 : -1.0;
      const double m = at(cx, cy) - at(cx + 1, cy) - at(cx, cy + 1) + at(cx + 1, cy + 1);
      value += 2.0 * ci * m;
      diag += 2.0;
    }
  }
  return {value, diag};
}

struct Level {
  int w = 0;
  int h = 0;
  // Coarse operators are the rediscretized energy scaled to match P^T A P.
  double scale = 1.0;
  std::vector<std::uint8_t> fixed;

  std::size_t size() const { return static_cast<std::size_t>(w) * h; }
};

void gauss_seidel(const Level& lv, std::vector<double>& u, const std::vector<double>& b,
                  bool forward) {
  const int n = static_cast<int>(lv.size());
  for (int k = 0; k < n; ++k) {
    const int i = forward ? k : n - 1 - k;
    if (lv.fixed[static_cast<std::size_t>(i)]) continue;
    const int x = i % lv.w;
    const int y = i / lv.w;
    const RowResult row = apply_row(u, x, y, lv.w, lv.h);
    if (row.diagonal == 0.0) continue;
    u[static_cast<std::size_t>(i)] += (b[static_cast<std::size_t>(i)] - lv.scale * row.value) /
                                      (lv.scale * row.diagonal);
  }
}

void residual(const Level& lv, const std::vector<double>& u, const std::vector<double>& b,
              std::vector<double>& r) {
  apply_bending(u, r, lv.w, lv.h);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = lv.fixed[i] ? 0.0 : b[i] - lv.scale * r[i];
  }
}

double norm2_free(const std::vector<double>& r, const std::vector<std::uint8_t>& fixed) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!fixed[i]) s += r[i] * r[i];
  }
  return s;
}

// Plain CG on the free pixels of the coarsest level (u is zero on fixed pixels).
void coarse_solve(const Level& lv, std::vector<double>& u, const std::vector<double>& b) {
  const std::size_t n = lv.size();
  std::vector<double> r(n), p(n), ap(n);
  residual(lv, u, b, r);
  p = r;
  double rr = norm2_free(r, lv.fixed);
  const double stop = rr * 1e-24;
  const int max_iterations = 4 * static_cast<int>(n) + 50;
  for (int it = 0; it < max_iterations && rr > stop && rr > 0.0; ++it) {
    apply_bending(p, ap, lv.w, lv.h);
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!lv.fixed[i]) pap += p[i] * lv.scale * ap[i];
    }
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      if (lv.fixed[i]) continue;
      u[i] += alpha * p[i];
      r[i] -= alpha * lv.scale * ap[i];
    }
    const double rr_next = norm2_free(r, lv.fixed);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = lv.fixed[i] ? 0.0 : r[i] + beta * p[i];
  }
}

// Cell-centred bilinear prolongation weights: fine index f sits at coarse coordinate
// (f - 0.5) / 2.
struct Tap {
  int lo;
  int hi;
  double w_lo;
};

Tap tap(int f, int coarse_n) {
  const double c = std::clamp((f - 0.5) / 2.0, 0.0, static_cast<double>(coarse_n - 1));
  const int lo = static_cast<int>(c);
  const int hi = std::min(lo + 1, coarse_n - 1);
  return {lo, hi, 1.0 - (c - lo)};
}

std::vector<double> prolong(const std::vector<double>& coarse, int cw, int ch, int w, int h) {
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const Tap ty = tap(y, ch);
    for (int x = 0; x < w; ++x) {
      const Tap tx = tap(x, cw);
      const auto c = [&](int xx, int yy) { return coarse[static_cast<std::size_t>(yy) * cw + xx]; };
      out[static_cast<std::size_t>(y) * w + x] =
          ty.w_lo * (tx.w_lo * c(tx.lo, ty.lo) + (1 - tx.w_lo) * c(tx.hi, ty.lo)) +
          (1 - ty.w_lo) * (tx.w_lo * c(tx.lo, ty.hi) + (1 - tx.w_lo) * c(tx.hi, ty.hi));
    }
  }
  return out;
}

// Transpose of prolong.
std::vector<double> restrict_sum(const std::vector<double>& fine, int w, int h, int cw, int ch) {
  std::vector<double> out(static_cast<std::size_t>(cw) * ch, 0.0);
  for (int y = 0; y < h; ++y) {
    const Tap ty = tap(y, ch);
    for (int x = 0; x < w; ++x) {
      const Tap tx = tap(x, cw);
      const double v = fine[static_cast<std::size_t>(y) * w + x];
      if (v == 0.0) continue;
      const auto add = [&](int xx, int yy, double wt) {
        out[static_cast<std::size_t>(yy) * cw + xx] += wt * v;
      };
      add(tx.lo, ty.lo, ty.w_lo * tx.w_lo);
      add(tx.hi, ty.lo, ty.w_lo * (1 - tx.w_lo));
      add(tx.lo, ty.hi, (1 - ty.w_lo) * tx.w_lo);
      add(tx.hi, ty.hi, (1 - ty.w_lo) * (1 - tx.w_lo));
    }
  }
  return out;
}

constexpr int kSmoothingSweeps = 2;

void v_cycle(const std::vector<Level>& levels, std::size_t l, std::vector<double>& u,
             const std::vector<double>& b) {
  const Level& lv = levels[l];
  if (l + 1 == levels.size()) {
    coarse_solve(lv, u, b);
    return;
  }
  for (int s = 0; s < kSmoothingSweeps; ++s) gauss_seidel(lv, u, b, true);
  std::vector<double> r(lv.size());
  residual(lv, u, b, r);
  const Level& cl = levels[l + 1];
  std::vector<double> bc = restrict_sum(r, lv.w, lv.h, cl.w, cl.h);
  for (std::size_t i = 0; i < bc.size(); ++i) {
    if (cl.fixed[i]) bc[i] = 0.0;
  }
  std::vector<double> ec(cl.size(), 0.0);
  v_cycle(levels, l + 1, ec, bc);
  const std::vector<double> e = prolong(ec, cl.w, cl.h, lv.w, lv.h);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!lv.fixed[i]) u[i] += e[i];
  }
  for (int s = 0; s < kSmoothingSweeps; ++s) gauss_seidel(lv, u, b, false);
}

std::vector<Level> build_hierarchy(const Grid& g) {
  std::vector<Level> levels;
  levels.push_back({g.w, g.h, 1.0, g.fixed});
  while (std::min(levels.back().w, levels.back().h) > kCoarsestSide) {
    const Level& f = levels.back();
    Level c{(f.w + 1) / 2, (f.h + 1) / 2, f.scale / 4.0, {}};
    c.fixed.assign(c.size(), 0);
    for (int y = 0; y < f.h; ++y) {
      for (int x = 0; x < f.w; ++x) {
        if (f.fixed[static_cast<std::size_t>(y) * f.w + x]) {
          c.fixed[static_cast<std::size_t>(y / 2) * c.w + x / 2] = 1;
        }
      }
    }
    std::size_t fixed_count = 0;
    for (auto v : c.fixed) fixed_count += v;
    if (fixed_count < 3) break;
    levels.push_back(std::move(c));
  }
  return levels;
}

Grid coarsen(const Grid& fine) {
  Grid c;
  c.w = (fine.w + 1) / 2;
  c.h = (fine.h + 1) / 2;
  c.fixed.assign(c.size(), 0);
  c.value.assign(c.size(), 0.0);
  std::vector<int> count(c.size(), 0);
  for (int y = 0; y < fine.h; ++y) {
    for (int x = 0; x < fine.w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * fine.w + x;
      if (!fine.fixed[i]) continue;
      const std::size_t j = static_cast<std::size_t>(y / 2) * c.w + x / 2;
      c.value[j] += fine.value[i];
      ++count[j];
    }
  }
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (count[j] > 0) {
      c.fixed[j] = 1;
      c.value[j] /= count[j];
    }
  }
  return c;
}

// Conjugate gradients on the free pixels, preconditioned by one symmetric V-cycle.
void solve_grid(const Grid& g, std::vector<double>& u, const ThinPlateOptions& options) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (g.fixed[i]) u[i] = g.value[i];
  }
  const std::vector<Level> levels = build_hierarchy(g);
  const Level& top = levels.front();
  std::vector<double> knots_only(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.fixed[i]) knots_only[i] = g.value[i];
  }
  const std::vector<double> zero(n, 0.0);
  std::vector<double> r(n), z(n), ap(n);
  residual(top, knots_only, zero, r);
  double rhs = norm2_free(r, g.fixed);
  if (rhs == 0.0) rhs = 1.0;
  const double stop = options.tolerance * options.tolerance * rhs;

  residual(top, u, zero, r);
  if (norm2_free(r, g.fixed) <= stop) return;
  const auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    v_cycle(levels, 0, out, in);
  };
  precondition(r, z);
  std::vector<double> p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
  for (int it = 0; it < options.max_iterations; ++it) {
    apply_bending(p, ap, g.w, g.h);
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.fixed[i]) pap += p[i] * ap[i];
    }
    if (!(pap > 0.0) || !(rz > 0.0)) break;
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      if (g.fixed[i]) continue;
      u[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    if (norm2_free(r, g.fixed) <= stop) break;
    precondition(r, z);
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.fixed[i]) rz_next += r[i] * z[i];
    }
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = g.fixed[i] ? 0.0 : z[i] + beta * p[i];
  }
}

// Nested iteration: solve a knot-averaged coarse problem first and use it as the
// starting guess one level up.
std::vector<double> solve_nested(const Grid& g, const ThinPlateOptions& options) {
  std::vector<double> u;
  if (std::min(g.w, g.h) <= kCoarsestSide) {
    double mean = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.fixed[i]) {
        mean += g.value[i];
        ++count;
      }
    }
    u.assign(g.size(), count > 0 ? mean / count : 0.0);
  } else {
    const Grid c = coarsen(g);
    u = prolong(solve_nested(c, options), c.w, c.h, g.w, g.h);
  }
  solve_grid(g, u, options);
  return u;
}

// Bilinear upsampling from cell centres of a grid with the given step.
std::vector<double> upsample(const std::vector<double>& coarse, int cw, int ch, int w, int h,
                             int step) {
  const auto axis = [step](int f, int n) {
    const double c = std::clamp((f + 0.5) / step - 0.5, 0.0, static_cast<double>(n - 1));
    const int lo = static_cast<int>(c);
    return Tap{lo, std::min(lo + 1, n - 1), 1.0 - (c - lo)};
  };
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const Tap ty = axis(y, ch);
    for (int x = 0; x < w; ++x) {
      const Tap tx = axis(x, cw);
      const auto c = [&](int xx, int yy) { return coarse[static_cast<std::size_t>(yy) * cw + xx]; };
      out[static_cast<std::size_t>(y) * w + x] =
          ty.w_lo * (tx.w_lo * c(tx.lo, ty.lo) + (1 - tx.w_lo) * c(tx.hi, ty.lo)) +
          (1 - ty.w_lo) * (tx.w_lo * c(tx.lo, ty.hi) + (1 - tx.w_lo) * c(tx.hi, ty.hi));
    }
  }
  return out;
}

}  // namespace

ImagePlane thin_plate_surface(int width, int height, std::span<const Knot> knots,
                              const ThinPlateOptions& options) {
  if (width < 1 || height < 1) {
    throw Error(Errc::InvalidArgument, "thin-plate grid must be non-empty");
  }
  if (knots.empty()) {
    throw Error(Errc::InvalidArgument, "thin-plate interpolation needs at least one knot");
  }
  if (options.grid_step < 1) {
    throw Error(Errc::InvalidArgument, "thin-plate grid step must be positive");
  }
  const int step = options.grid_step;
  Grid g;
  g.w = (width + step - 1) / step;
  g.h = (height + step - 1) / step;
  g.fixed.assign(g.size(), 0);
  g.value.assign(g.size(), 0.0);
  std::vector<int> count(g.size(), 0);
  double mean = 0.0;
  for (const Knot& k : knots) {
    if (k.x < 0 || k.y < 0 || k.x >= width || k.y >= height || !std::isfinite(k.value)) {
      throw Error(Errc::InvalidArgument, "thin-plate knot outside the grid or not finite");
    }
    const std::size_t i = static_cast<std::size_t>(k.y / step) * g.w + k.x / step;
    if (step == 1) {
      g.value[i] = k.value;
      count[i] = 1;
    } else {
      g.value[i] += k.value;
      ++count[i];
    }
    g.fixed[i] = 1;
    mean += k.value;
  }
  std::size_t fixed_count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (count[i] > 1) g.value[i] /= count[i];
    fixed_count += g.fixed[i];
  }
  std::vector<double> u;
  // Fewer than three knots leave the affine part undetermined: fall back to the mean.
  if (fixed_count < 3) {
    u.assign(g.size(), mean / static_cast<double>(knots.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.fixed[i]) u[i] = g.value[i];
    }
  } else {
    u = solve_nested(g, options);
  }
  for (double v : u) {
    if (!std::isfinite(v)) {
      throw Error(Errc::SiftingDiverged, "thin-plate solve produced non-finite values");
    }
  }
  if (step == 1) return ImagePlane(width, height, std::move(u));
  return ImagePlane(width, height, upsample(u, g.w, g.h, width, height, step));
}

}  // namespace rriqa
