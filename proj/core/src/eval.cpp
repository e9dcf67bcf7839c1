#include "rriqa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rriqa/error.hpp"
#include "rriqa/nelder_mead.hpp"

namespace rriqa {

namespace {

constexpr std::size_t kMinFitPoints = 10;

void require_pairs(std::span<const double> x, std::span<const double> y, std::size_t minimum) {
  if (x.size() != y.size()) {
    throw Error(Errc::InvalidArgument, "length mismatch: " + std::to_string(x.size()) + " vs " +
                                           std::to_string(y.size()));
  }
  if (x.size() < minimum) {
    throw Error(Errc::InvalidArgument, "need at least " + std::to_string(minimum) + " pairs");
  }
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sse(const LogisticParams& p, std::span<const double> d, std::span<const double> mos) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = p(d[i]) - mos[i];
    s += r * r;
  }
  return s;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double logistic(double tau, double d) noexcept {
  const double t = tau * d;
  if (t > 700.0) return 0.5;
  if (t < -700.0) return -0.5;
  return 0.5 - 1.0 / (1.0 + std::exp(t));
}

double LogisticParams::operator()(double d) const noexcept {
  return beta[0] * logistic(beta[1], d - beta[2]) + beta[3] * d + beta[4];
}

LogisticFit fit_logistic(std::span<const double> scores, std::span<const double> mos) {
  if (scores.size() != mos.size()) {
    throw Error(Errc::InvalidArgument, "scores and MOS differ in length");
  }
  if (scores.size() < kMinFitPoints) {
    throw Error(Errc::TooFewSamples, "logistic fit needs at least " +
                                         std::to_string(kMinFitPoints) + " points");
  }
  const double md = mean_of(scores);
  const double mm = mean_of(mos);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    sxx += (scores[i] - md) * (scores[i] - md);
    sxy += (scores[i] - md) * (mos[i] - mm);
  }
  const double std_d = std::sqrt(sxx / static_cast<double>(scores.size()));
  if (!(std_d > 0.0) || !std::isfinite(std_d)) {
    throw Error(Errc::DegenerateScores, "objective scores have zero variance");
  }
  const double slope = sxy / sxx;
  const double intercept = mm - slope * md;
  const auto [mos_lo, mos_hi] = std::minmax_element(mos.begin(), mos.end());
  const auto [d_lo, d_hi] = std::minmax_element(scores.begin(), scores.end());
  const double range = *mos_hi - *mos_lo;
  const double tau = 1.0 / std_d;
  const double mid = median_of({scores.begin(), scores.end()});

  const std::array<LogisticParams, 5> starts{{
      {{range, tau, mid, slope, intercept}},
      {{range, -tau, mid, slope, intercept}},
      {{range, tau, *d_lo, slope, intercept}},
      {{range, tau, *d_hi, slope, intercept}},
      {{0.0, tau, mid, slope, intercept}},
  }};

  const Objective objective = [&](std::span<const double> b) {
    LogisticParams p;
    std::copy(b.begin(), b.end(), p.beta.begin());
    return sse(p, scores, mos);
  };

  LogisticFit best;
  best.sse = HUGE_VAL;
  for (const LogisticParams& s : starts) {
    const double v = sse(s, scores, mos);
    if (v < best.sse) {
      best.params = s;
      best.sse = v;
    }
  }
  const double baseline = best.sse;
  best.improved = false;
  const auto consider = [&](const NelderMeadResult& r) {
    if (r.value < best.sse) {
      std::copy(r.x.begin(), r.x.end(), best.params.beta.begin());
      best.sse = r.value;
    }
  };
  for (const LogisticParams& s : starts) {
    consider(nelder_mead(objective, {s.beta.begin(), s.beta.end()}));
  }
  // One restart from the winner re-inflates a collapsed simplex.
  consider(nelder_mead(objective, {best.params.beta.begin(), best.params.beta.end()}));
  best.improved = best.sse < baseline;
  return best;
}

double plcc(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y, 3);
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(Errc::DegenerateInput, "correlation of a constant vector");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double srcc(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y, 3);
  const std::vector<double> rx = fractional_ranks(x);
  const std::vector<double> ry = fractional_ranks(y);
  return plcc(rx, ry);
}

CorrelationReport correlate(std::span<const double> scores, std::span<const double> mos) {
  CorrelationReport r;
  r.n = scores.size();
  r.fit = fit_logistic(scores, mos);
  std::vector<double> mapped(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) mapped[i] = r.fit.params(scores[i]);
  r.plcc = plcc(mapped, mos);
  r.srcc = srcc(mapped, mos);
  r.srcc_raw = srcc(scores, mos);
  return r;
}

std::string_view to_string(ImprovementLevel level) noexcept {
  switch (level) {
    case ImprovementLevel::Negligible:
      return "negligible";
    case ImprovementLevel::Medium:
      return "medium";
    case ImprovementLevel::High:
      return "high";
  }
  return "unknown";
}

std::string_view to_string(ImprovementDirection direction) noexcept {
  switch (direction) {
    case ImprovementDirection::ColorBetter:
      return "color_better";
    case ImprovementDirection::GrayBetter:
      return "gray_better";
    case ImprovementDirection::Tie:
      return "tie";
  }
  return "unknown";
}

ImprovementClass improvement_class(double cc_gray, double cc_color) {
  if (cc_gray == 0.0) {
    throw Error(Errc::DivisionByZero, "grayscale correlation is zero");
  }
  ImprovementClass c;
  c.per = (cc_gray - cc_color) / cc_gray * 100.0;
  const double magnitude = std::abs(c.per);
  c.level = magnitude < 5.0    ? ImprovementLevel::Negligible
            : magnitude <= 10.0 ? ImprovementLevel::Medium
                                : ImprovementLevel::High;
  c.direction = cc_color > cc_gray   ? ImprovementDirection::ColorBetter
                : cc_color < cc_gray ? ImprovementDirection::GrayBetter
                                     : ImprovementDirection::Tie;
  return c;
}

}  // namespace rriqa
