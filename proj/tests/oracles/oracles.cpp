#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace rriqa::oracle {

double ggd_log_density(double x, const GgdParams& p) {
  return std::log(p.beta / (2.0 * p.alpha)) - std::lgamma(1.0 / p.beta) -
         std::pow(std::abs(x) / p.alpha, p.beta);
}

double ggd_tail_bound(const GgdParams& p, double tail_mass) {
  // P(|X| > b) = Q(1/beta, (b/alpha)^beta).
  return p.alpha * std::pow(boost::math::gamma_q_inv(1.0 / p.beta, tail_mass), 1.0 / p.beta);
}

Quadrature kld_numeric(const std::function<double(double)>& log_p,
                       const std::function<double(double)>& log_q, double bound,
                       double tolerance) {
  const auto integrand = [&](double x) {
    const double lp = log_p(x);
    const double v = std::exp(lp) * (lp - log_q(x));
    if (!std::isfinite(v)) throw std::domain_error("KLD integrand is not finite");
    return v;
  };
  // Symmetric densities: twice the half line, split geometrically so the mass near zero
  // and the tails both get resolved.
  Quadrature out;
  double lo = 0.0;
  double hi = std::min(bound, 1e-3 * bound + 1e-6);
  while (lo < bound) {
    double err = 0.0;
    out.value += 2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                           integrand, lo, hi, 15, tolerance, &err);
    out.error += 2.0 * err;
    lo = hi;
    hi = std::min(bound, hi * 4.0);
  }
  return out;
}

Quadrature kld_ggd_numeric(const GgdParams& p, const GgdParams& q, double tolerance) {
  const double bound = std::max(ggd_tail_bound(p, 1e-16), ggd_tail_bound(q, 1e-16));
  return kld_numeric([&](double x) { return ggd_log_density(x, p); },
                     [&](double x) { return ggd_log_density(x, q); }, bound, tolerance);
}

std::vector<double> sample_ggd(double alpha, double beta, std::size_t n, std::uint64_t seed) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("GGD parameters must be > 0");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0 / beta, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> out(n);
  for (double& x : out) {
    const double g = std::pow(gamma(rng), 1.0 / beta);
    x = (sign(rng) ? 1.0 : -1.0) * alpha * g;
  }
  return out;
}

double naive_mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double naive_variance(std::span<const double> x) {
  const double m = naive_mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

double naive_pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = naive_mean(x);
  const double my = naive_mean(y);
  double num = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    dx += (x[i] - mx) * (x[i] - mx);
    dy += (y[i] - my) * (y[i] - my);
  }
  return num / (std::sqrt(dx) * std::sqrt(dy));
}

std::vector<double> naive_ranks(std::span<const double> x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0.0;
    double equal = 0.0;
    for (double v : x) {
      if (v < x[i]) less += 1.0;
      if (v == x[i]) equal += 1.0;
    }
    r[i] = 1.0 + less + (equal - 1.0) / 2.0;
  }
  return r;
}

double naive_spearman(std::span<const double> x, std::span<const double> y) {
  const std::vector<double> rx = naive_ranks(x);
  const std::vector<double> ry = naive_ranks(y);
  return naive_pearson(rx, ry);
}

double spearman_rank_difference(std::span<const double> x, std::span<const double> y) {
  const std::vector<double> rx = naive_ranks(x);
  const std::vector<double> ry = naive_ranks(y);
  double d2 = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double n = static_cast<double>(x.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace rriqa::oracle
