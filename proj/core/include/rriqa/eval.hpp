#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rriqa {

// 1/2 - 1/(1 + exp(tau d)), saturating to +-1/2 when the exponential overflows.
double logistic(double tau, double d) noexcept;

// beta1 logistic(beta2, D - beta3) + beta4 D + beta5.
struct LogisticParams {
  std::array<double, 5> beta{0.0, 0.0, 0.0, 0.0, 0.0};

  double operator()(double d) const noexcept;
};

struct LogisticFit {
  LogisticParams params;
  double sse = 0.0;
  // False when no simplex run beat the best starting point; params are then that start.
  bool improved = true;
};

// Least-squares fit of the five-parameter logistic by multi-start Nelder-Mead. Throws
// TooFewSamples below 10 points, InvalidArgument on length mismatch and
// DegenerateScores for constant scores.
LogisticFit fit_logistic(std::span<const double> scores, std::span<const double> mos);

// Throws InvalidArgument on length mismatch or fewer than 3 pairs and DegenerateInput
// when either vector is constant.
double plcc(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average ranks.
double srcc(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties get the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

struct CorrelationReport {
  // Pearson and Spearman between logistic-mapped scores and MOS.
  double plcc = 0.0;
  double srcc = 0.0;
  // Spearman between the raw scores and MOS, sign included.
  double srcc_raw = 0.0;
  std::size_t n = 0;
  LogisticFit fit;
};

CorrelationReport correlate(std::span<const double> scores, std::span<const double> mos);

enum class ImprovementLevel { Negligible, Medium, High };
enum class ImprovementDirection { ColorBetter, GrayBetter, Tie };

std::string_view to_string(ImprovementLevel level) noexcept;
std::string_view to_string(ImprovementDirection direction) noexcept;

struct ImprovementClass {
  // (cc_gray - cc_color) / cc_gray * 100; negative when colour does better.
  double per = 0.0;
  ImprovementLevel level = ImprovementLevel::Negligible;
  ImprovementDirection direction = ImprovementDirection::Tie;
};

// |per| < 5 is negligible, 5..10 medium, above 10 high. Throws DivisionByZero when
// cc_gray is zero.
ImprovementClass improvement_class(double cc_gray, double cc_color);

}  // namespace rriqa
