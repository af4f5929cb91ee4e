#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cybergraph/errors.hpp"

namespace cybergraph {

/// Histogram of node degrees: counts[d-1] nodes have degree d, d = 1..max_degree.
class DegreeCountVector {
 public:
  DegreeCountVector() = default;

  /// Trailing zero counts are trimmed; throws InputError if nothing remains.
  explicit DegreeCountVector(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    if (counts_.empty()) throw InputError("degree count vector has no nodes");
  }

  std::size_t max_degree() const { return counts_.size(); }
  std::size_t count(std::size_t degree) const { return counts_.at(degree - 1); }
  const std::vector<std::size_t>& counts() const { return counts_; }

  std::size_t node_count() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

  std::size_t degree_sum() const {
    std::size_t s = 0;
    for (std::size_t d = 1; d <= counts_.size(); ++d) s += d * counts_[d - 1];
    return s;
  }

  /// Normalized frequency vector.
  std::vector<double> frequencies() const {
    const auto total = static_cast<double>(node_count());
    std::vector<double> f(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) f[i] = static_cast<double>(counts_[i]) / total;
    return f;
  }

 private:
  std::vector<std::size_t> counts_;
};

enum class Family { lognormal, powerlaw, zipf };

inline constexpr std::array<Family, 3> kAllFamilies{Family::lognormal, Family::powerlaw, Family::zipf};

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::lognormal: return "lognormal";
    case Family::powerlaw: return "powerlaw";
    case Family::zipf: return "zipf";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  throw InputError("unknown distribution family '" + std::string(name) + "'");
}

/// A degree law and its parameters.
///
///   lognormal  f(x) = exp(-(log2(x) / alpha)^beta)
///   powerlaw   g(x) = beta * x^-alpha
///   zipf       h(x) = x^-alpha / zeta(alpha)
struct DistributionSpec {
  Family family = Family::lognormal;
  double alpha = 1.0;
  std::optional<double> beta;

  static DistributionSpec lognormal(double alpha, double beta) { return {Family::lognormal, alpha, beta}; }
  static DistributionSpec powerlaw(double alpha, double beta) { return {Family::powerlaw, alpha, beta}; }
  static DistributionSpec zipf(double alpha) { return {Family::zipf, alpha, std::nullopt}; }

  void validate() const {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw InputError("alpha must be a positive real");
    if (family == Family::zipf) {
      if (alpha <= 1.0) throw InputError("zipf needs alpha > 1");
      return;
    }
    if (!beta || !(std::isfinite(*beta) && *beta > 0.0)) {
      throw InputError(std::string(to_string(family)) + " needs a positive beta");
    }
  }
};

/// Riemann zeta for s > 1: direct sum of 10^6 terms (smallest first) plus an
/// Euler-Maclaurin tail. Absolute error below 1e-12 for s >= 1.01.
inline double riemann_zeta(double s) {
  if (!(s > 1.0)) throw InputError("zeta needs s > 1");
  constexpr int kTerms = 1'000'000;
  double sum = 0.0;
  double carry = 0.0;  // Kahan compensation
  for (int k = kTerms; k >= 1; --k) {
    const double y = std::pow(static_cast<double>(k), -s) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  const double n = kTerms;
  const double tail = std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s) +
                      s / 12.0 * std::pow(n, -s - 1.0) -
                      s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(n, -s - 3.0);
  return sum + tail;
}

/// Unnormalized law value at degree d >= 1.
inline double pmf_value(const DistributionSpec& spec, std::size_t d) {
  spec.validate();
  if (d < 1) throw InputError("degree must be >= 1");
  const double x = static_cast<double>(d);
  switch (spec.family) {
    case Family::lognormal: return std::exp(-std::pow(std::log2(x) / spec.alpha, *spec.beta));
    case Family::powerlaw: return *spec.beta * std::pow(x, -spec.alpha);
    case Family::zipf: return std::pow(x, -spec.alpha) / riemann_zeta(spec.alpha);
  }
  return 0.0;
}

namespace detail {

// Law values over 1..d_max up to a positive factor. Constant factors
// (beta for powerlaw, zeta for zipf) are dropped since they cancel.
inline std::vector<double> shape(Family family, double alpha, double beta, std::size_t d_max) {
  std::vector<double> v(d_max);
  for (std::size_t d = 1; d <= d_max; ++d) {
    const double x = static_cast<double>(d);
    v[d - 1] = family == Family::lognormal ? std::exp(-std::pow(std::log2(x) / alpha, beta))
                                           : std::pow(x, -alpha);
  }
  return v;
}

inline bool normalize(std::vector<double>& v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) return false;
  for (double& x : v) x /= total;
  return true;
}

}  // namespace detail

/// [f(1)..f(d_max)] normalized to sum 1. Mass above d_max is ignored.
inline std::vector<double> frequency_of(const DistributionSpec& spec, std::size_t d_max) {
  spec.validate();
  if (d_max < 1) throw InputError("d_max must be >= 1");
  auto v = detail::shape(spec.family, spec.alpha, spec.beta.value_or(1.0), d_max);
  if (!detail::normalize(v)) throw AlgorithmError("law has no mass on 1.." + std::to_string(d_max));
  return v;
}

struct FitResult {
  DistributionSpec spec;
  /// Squared residual norm divided by the reference's maximum degree.
  double mse = 0.0;
  /// ||K_f - K*||_2 over normalized vectors.
  double residual = 0.0;
};

namespace detail {

/// Derivative-free simplex minimizer for small dimension.
template <std::size_t Dim, class F>
std::pair<std::array<double, Dim>, double> nelder_mead(F&& f, std::array<double, Dim> start, double step,
                                                       double f_tol, double x_tol, int max_iter) {
  using Point = std::array<double, Dim>;
  std::array<Point, Dim + 1> simplex;
  std::array<double, Dim + 1> value;
  simplex[0] = start;
  for (std::size_t i = 0; i < Dim; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= Dim; ++i) value[i] = f(simplex[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    Point r;
    for (std::size_t i = 0; i < Dim; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::array<std::size_t, Dim + 1> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    {
      auto s = simplex;
      auto v = value;
      for (std::size_t i = 0; i <= Dim; ++i) {
        simplex[i] = s[order[i]];
        value[i] = v[order[i]];
      }
    }
    double spread = 0.0;
    for (std::size_t i = 1; i <= Dim; ++i) {
      for (std::size_t k = 0; k < Dim; ++k) spread = std::max(spread, std::abs(simplex[i][k] - simplex[0][k]));
    }
    if (value[Dim] - value[0] <= f_tol && spread <= x_tol) break;

    Point centroid{};
    for (std::size_t i = 0; i < Dim; ++i) {
      for (std::size_t k = 0; k < Dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(Dim);
    }
    const Point reflected = combine(centroid, simplex[Dim], -1.0);
    const double fr = f(reflected);
    if (fr < value[0]) {
      const Point expanded = combine(centroid, simplex[Dim], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[Dim] = expanded;
        value[Dim] = fe;
      } else {
        simplex[Dim] = reflected;
        value[Dim] = fr;
      }
      continue;
    }
    if (fr < value[Dim - 1]) {
      simplex[Dim] = reflected;
      value[Dim] = fr;
      continue;
    }
    const bool outside = fr < value[Dim];
    const Point contracted = outside ? combine(centroid, reflected, 0.5) : combine(centroid, simplex[Dim], 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, value[Dim])) {
      simplex[Dim] = contracted;
      value[Dim] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= Dim; ++i) {
      simplex[i] = combine(simplex[0], simplex[i], 0.5);
      value[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  return {simplex[best], value[best]};
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return g;
}

}  // namespace detail

/// Squared l2 distance between the normalized law over 1..max_degree and the
/// normalized reference histogram. +inf outside the parameter domain.
inline double fit_objective(Family family, double alpha, double beta, const std::vector<double>& target) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    return std::numeric_limits<double>::infinity();
  }
  if (family == Family::zipf && alpha <= 1.0) return std::numeric_limits<double>::infinity();
  auto v = detail::shape(family, alpha, beta, target.size());
  if (!detail::normalize(v)) return std::numeric_limits<double>::infinity();
  double sse = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sse += (v[i] - target[i]) * (v[i] - target[i]);
  return std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
}

struct FitOptions {
  std::size_t grid_points = 25;
  double grid_lo = 0.1;
  double grid_hi = 10.0;
  std::size_t refine_starts = 5;
  double tolerance = 1e-10;
};

/// Least-squares fit of one family to a reference histogram.
///
/// A log-spaced grid over [0.1, 10] (both parameters for lognormal, alpha
/// only otherwise) is followed by Nelder-Mead from the best grid points.
/// Powerlaw's beta cancels under normalization; it is reported as the
/// constant that makes beta * x^-alpha sum to one over 1..max_degree.
///
/// Throws AlgorithmError when the reference is degenerate (a single degree)
/// or no refinement improves on its starting grid point.
inline FitResult fit(const DegreeCountVector& reference, Family family, const FitOptions& options = {}) {
  const std::size_t d_max = reference.max_degree();
  if (d_max < 2) {
    throw AlgorithmError("degenerate reference: only degree " + std::to_string(d_max) +
                         " occurs, every law fits it exactly");
  }
  const auto target = reference.frequencies();
  const bool two_params = family == Family::lognormal;
  const double alpha_lo = family == Family::zipf ? std::max(options.grid_lo, 1.0 + 1e-3) : options.grid_lo;

  struct Candidate {
    double alpha;
    double beta;
    double value;
  };
  std::vector<Candidate> grid;
  const auto alphas = detail::log_grid(alpha_lo, options.grid_hi, options.grid_points);
  const auto betas = two_params ? detail::log_grid(options.grid_lo, options.grid_hi, options.grid_points)
                                : std::vector<double>{1.0};
  for (double a : alphas) {
    for (double b : betas) grid.push_back({a, b, fit_objective(family, a, b, target)});
  }
  std::stable_sort(grid.begin(), grid.end(), [](const Candidate& x, const Candidate& y) { return x.value < y.value; });

  Candidate best = grid.front();
  bool improved = false;
  const std::size_t starts = std::min(options.refine_starts, grid.size());
  for (std::size_t i = 0; i < starts; ++i) {
    const Candidate& start = grid[i];
    Candidate refined{};
    if (two_params) {
      auto [x, value] = detail::nelder_mead<2>(
          [&](const std::array<double, 2>& p) { return fit_objective(family, std::exp(p[0]), std::exp(p[1]), target); },
          {std::log(start.alpha), std::log(start.beta)}, 0.1, options.tolerance, 1e-9, 5000);
      refined = {std::exp(x[0]), std::exp(x[1]), value};
    } else {
      auto [x, value] = detail::nelder_mead<1>(
          [&](const std::array<double, 1>& p) { return fit_objective(family, std::exp(p[0]), 1.0, target); },
          {std::log(start.alpha)}, 0.1, options.tolerance, 1e-9, 5000);
      refined = {std::exp(x[0]), 1.0, value};
    }
    if (refined.value < start.value) improved = true;
    if (refined.value < best.value) best = refined;
  }
  if (!improved || !std::isfinite(best.value)) {
    throw AlgorithmError("fit of " + std::string(to_string(family)) + " made no progress from any grid start");
  }

  FitResult result;
  switch (family) {
    case Family::lognormal: result.spec = DistributionSpec::lognormal(best.alpha, best.beta); break;
    case Family::powerlaw: {
      double norm = 0.0;
      for (std::size_t d = 1; d <= d_max; ++d) norm += std::pow(static_cast<double>(d), -best.alpha);
      result.spec = DistributionSpec::powerlaw(best.alpha, 1.0 / norm);
      break;
    }
    case Family::zipf: result.spec = DistributionSpec::zipf(best.alpha); break;
  }
  result.mse = best.value / static_cast<double>(d_max);
  result.residual = std::sqrt(best.value);
  return result;
}

}  // namespace cybergraph
