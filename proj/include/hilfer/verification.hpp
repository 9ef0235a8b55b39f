#pragma once

// Independent checks that the constructed series solve the equation and the
// Cauchy-type problem: a termwise coefficient identity, a quadrature-based
// residual, and limits of the weighted initial data.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hilfer/errors.hpp"
#include "hilfer/fractional_ops.hpp"
#include "hilfer/solver.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

/// Maximum over k = 1..K of |h_k c_k / c_{k-1} - 1|, where h_k is the
/// coefficient of D^{(alpha,beta)mu} y^{ak+b}: the balance of the y^{ak+b-gamma}
/// terms after substituting the series into the equation. The k = 0 term must
/// be annihilated exactly; if it is not, its coefficient magnitude is returned.
inline double residual_coefficient_identity(const SeriesSolution& sol, std::size_t K) {
  if (K > sol.K()) throw input_error("coefficient identity: K exceeds stored terms");
  if (sol.lambda == complex(0.0, 0.0)) return 0.0;  // series is c_0 y^b only
  const OrderTriple& orders = sol.problem.orders;

  double worst = std::abs(hilfer_monomial(orders, sol.b).coef);
  for (std::size_t k = 1; k <= K; ++k) {
    const double delta = sol.a * static_cast<double>(k) + sol.b;
    const double h = hilfer_monomial(orders, delta).coef.real();
    // ratio of consecutive coefficients, formed from c_k and c_{k-1} while both
    // are normal numbers so that a perturbed c_k shows up in two identities;
    // subnormal coefficients have lost digits
    const double c_prev = sol.coeffs[k - 1];
    const double c_cur = sol.coeffs[k];
    const double r = (std::isnormal(c_prev) && std::isnormal(c_cur)) ? c_cur / c_prev
                                                                       : sol.ratios[k - 1];
    worst = std::max(worst, std::abs(h * r - 1.0));
  }
  return worst;
}

inline double residual_coefficient_identity(const DegenerateProblem& problem, int s,
                                            std::size_t K) {
  return residual_coefficient_identity(fundamental_solution(problem, s, K), K);
}

/// Graded grid t_k = y_max (k / intervals)^grading on [0, y_max].
struct GridSpec {
  double y_max = 1.0;
  std::size_t intervals = 2048;
  double grading = 8.0;
};

struct ResidualReport {
  std::vector<double> grid;  // comparison nodes in [y_max/4, y_max]
  std::vector<complex> lhs;  // numeric D^{(alpha,beta)mu} u
  std::vector<complex> rhs;  // lambda y^m u
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::size_t excluded_boundary_points = 0;
  bool series_converged = true;
};

/// Samples u_s on the grid, applies hilfer_numeric and compares with
/// lambda y^m u_s on [y_max/4, y_max]. The last two nodes (one-sided
/// stencils) are excluded. Requires i <= 2.
inline ResidualReport residual_numeric(const SeriesSolution& sol, const GridSpec& grid,
                                       double tol = kDefaultSeriesTol) {
  const OrderTriple& orders = sol.problem.orders;
  if (orders.i > 2) throw unsupported_error("residual_numeric: only i ≤ 2 is supported");

  ResidualReport report;
  SampledFunction u;
  u.nodes = graded_nodes(grid.y_max, grid.intervals, grid.grading);
  u.values.resize(u.nodes.size());
  std::vector<complex> rhs(u.nodes.size());
  // u = c_0 y^b + O(y^{b+a}) at the origin
  u.values[0] = 1.0;
  u.origin_power = sol.b;
  for (std::size_t n = 1; n < u.nodes.size(); ++n) {
    const double y = u.nodes[n];
    const SeriesEvalReport r = evaluate(sol, y, tol);
    report.series_converged = report.series_converged && r.converged;
    u.values[n] = r.value;
    rhs[n] = sol.lambda * std::pow(y, sol.problem.m) * r.value;
  }

  const SampledFunction lhs = hilfer_numeric(u, orders);

  const std::size_t last = u.nodes.size() - 1;
  const std::size_t boundary = 2;
  for (std::size_t n = 1; n <= last; ++n) {
    const double y = u.nodes[n];
    if (y < 0.25 * grid.y_max) continue;
    if (n + boundary > last) {
      ++report.excluded_boundary_points;
      continue;
    }
    report.grid.push_back(y);
    report.lhs.push_back(lhs.values[n]);
    report.rhs.push_back(rhs[n]);
    const double err = std::abs(lhs.values[n] - rhs[n]);
    report.max_abs_error = std::max(report.max_abs_error, err);
    report.max_rel_error =
        std::max(report.max_rel_error, err / std::max(std::abs(rhs[n]), 1e-30));
  }
  return report;
}

inline ResidualReport residual_numeric(const DegenerateProblem& problem, int s,
                                       const GridSpec& grid,
                                       double tol = kDefaultSeriesTol) {
  return residual_numeric(fundamental_solution(problem, s), grid, tol);
}

/// Aitken's delta-squared extrapolation of the last three entries, which is
/// exact for a sequence L + C q^n. Falls back to the last entry when the
/// differences have already reached rounding level.
inline complex extrapolate_last_three(std::span<const complex> v) {
  if (v.empty()) return 0.0;
  if (v.size() < 3) return v.back();
  const complex v0 = v[v.size() - 3];
  const complex v1 = v[v.size() - 2];
  const complex v2 = v[v.size() - 1];
  const complex d1 = v1 - v0;
  const complex d2 = v2 - v1;
  const complex den = d2 - d1;
  const double scale = std::max({std::abs(v0), std::abs(v1), std::abs(v2), 1.0});
  if (std::abs(den) <= 64 * std::numeric_limits<double>::epsilon() * scale) {
    return v2;
  }
  return v2 - d2 * d2 / den;
}

/// d^j/dy^j [ y^{-(1-mu)(i-beta)} u(y) ] for the Cauchy solution, summed
/// termwise: every branch contributes sum_k c_k lambda^k y^{ak+s} and the
/// derivative of each power is taken exactly.
inline complex weighted_derivative(const CauchySolution& sol, int j, double y,
                                   double tol = kDefaultSeriesTol,
                                   std::size_t n_max = kDefaultSeriesMaxTerms) {
  if (!(y > 0.0)) throw domain_error("weighted_derivative: y > 0 required");
  complex total(0.0, 0.0);
  for (std::size_t s = 0; s < sol.branches.size(); ++s) {
    if (sol.weights[s] == complex(0.0, 0.0)) continue;
    const SeriesSolution& br = sol.branches[s];
    const double sd = static_cast<double>(s);
    const complex z = br.lambda * std::pow(y, br.a);
    const double shift = std::pow(y, sd - j);

    SeriesAccumulator acc(tol);
    complex zk = 1.0;  // c_k z^k
    acc.add(falling_product(sd, j) * shift);
    for (std::size_t k = 1; k < n_max; ++k) {
      zk *= z * br.ratio(k);
      const double e = br.a * static_cast<double>(k) + sd;
      if (acc.add(zk * (falling_product(e, j) * shift))) break;
    }
    total += sol.weights[s] * acc.report().value;
  }
  return total;
}

struct InitialConditionReport {
  std::vector<double> y_points;
  std::vector<std::vector<complex>> samples;  // [j][point]
  std::vector<complex> limits;                // extrapolated, per j
  std::vector<double> errors;                 // |limit - phi_j|
  bool monotone = true;  // |sample - phi_j| non-increasing along y_points
};

/// Default evaluation points 10^-2, 10^-4, ..., 10^-200. The slowest tail
/// decays like y^a, and a can be as small as a few tenths.
inline std::vector<double> default_ic_points() {
  std::vector<double> y;
  for (int n = 1; n <= 100; ++n) y.push_back(std::pow(10.0, -2.0 * n));
  return y;
}

/// Weighted initial limits of the Cauchy solution, extrapolated to y = 0
/// from a decreasing sequence of evaluation points. Requires i <= 2.
inline InitialConditionReport initial_condition_check(
    const CauchySolution& sol, std::span<const double> y_points,
    double tol = kDefaultSeriesTol) {
  const int i = sol.problem.orders.i;
  if (i > 2) throw unsupported_error("initial_condition_check: only i ≤ 2 is supported");
  if (y_points.size() < 3) throw input_error("initial_condition_check: need ≥ 3 points");
  for (std::size_t n = 1; n < y_points.size(); ++n) {
    if (!(y_points[n] < y_points[n - 1]) || !(y_points[n] > 0.0)) {
      throw input_error("initial_condition_check: points must decrease toward 0");
    }
  }

  InitialConditionReport report;
  report.y_points.assign(y_points.begin(), y_points.end());
  for (int j = 0; j < i; ++j) {
    std::vector<complex> v;
    v.reserve(y_points.size());
    for (double y : y_points) v.push_back(weighted_derivative(sol, j, y, tol));
    const complex phi = sol.phis[j];
    const complex limit = extrapolate_last_three(v);
    const double scale = std::max(1.0, std::abs(phi));
    for (std::size_t n = 1; n < v.size(); ++n) {
      if (std::abs(v[n] - phi) > std::abs(v[n - 1] - phi) + 1e-13 * scale) {
        report.monotone = false;
      }
    }
    report.samples.push_back(std::move(v));
    report.limits.push_back(limit);
    report.errors.push_back(std::abs(limit - phi));
  }
  return report;
}

inline InitialConditionReport initial_condition_check(
    const DegenerateProblem& problem, std::span<const complex> phis,
    std::span<const double> y_points, double tol = kDefaultSeriesTol) {
  return initial_condition_check(cauchy_solution(problem, phis), y_points, tol);
}

}  // namespace hilfer
