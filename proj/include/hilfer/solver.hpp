#pragma once

// General solution of the degenerate equation
//
//   D^{(alpha,beta)mu} u(y) = lambda y^m u(y),  y > 0,
//
// as the family u_s(y) = y^{b_s} sum_k c_k (lambda y^a)^k, s = 0..i-1,
// together with the solution of the weighted Cauchy-type problem.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hilfer/errors.hpp"
#include "hilfer/fractional_ops.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

inline constexpr std::size_t kDefaultCoefficientCount = 256;

/// Orders, degeneracy exponent m and spectral parameter lambda.
struct DegenerateProblem {
  OrderTriple orders;
  double m = 0.0;
  complex lambda{1.0, 0.0};
};

inline void validate(const DegenerateProblem& problem) {
  validate(problem.orders);
  if (!(problem.m >= 0.0)) {
    throw domain_error("m ≥ 0 violated (m = " + std::to_string(problem.m) + ")");
  }
  const OrderTriple& o = problem.orders;
  if (!(problem.m + o.mu * (o.alpha - o.beta) >= 0.0)) {
    throw domain_error("m + μ(α−β) ≥ 0 violated");
  }
  if (!std::isfinite(problem.lambda.real()) || !std::isfinite(problem.lambda.imag())) {
    throw domain_error("λ must be finite");
  }
}

/// gamma = beta + mu(alpha - beta), a = m + gamma, b_s = s - (1-mu)(i-beta).
struct DerivedParams {
  double gamma = 0.0;
  double a = 0.0;
  std::vector<double> b;
};

inline DerivedParams derive_params(const DegenerateProblem& problem) {
  validate(problem);
  const OrderTriple& o = problem.orders;
  DerivedParams d;
  d.gamma = o.net_order();
  d.a = problem.m + d.gamma;
  const double nu = o.inner_order();
  d.b.reserve(o.i);
  for (int s = 0; s < o.i; ++s) d.b.push_back(s - nu);

  if (!(d.gamma > 0.0) || !(d.a > 0.0)) {
    throw domain_error("derived parameters: γ > 0 and a > 0 violated");
  }
  for (double bs : d.b) {
    if (!(problem.m + bs + 1.0 > 0.0)) {
      throw domain_error("derived parameters: m + b_s + 1 > 0 violated");
    }
  }
  return d;
}

namespace detail {

inline void check_branch(const DegenerateProblem& problem, int s) {
  if (s < 0 || s >= problem.orders.i) {
    throw input_error("branch index s must satisfy 0 ≤ s ≤ i − 1 (s = " +
                      std::to_string(s) + ", i = " + std::to_string(problem.orders.i) +
                      ")");
  }
}

// c_k / c_{k-1} = Gamma(a k + b - gamma + 1) / Gamma(a k + b + 1), k >= 1.
inline double coefficient_ratio(const DerivedParams& d, double b, std::size_t k) {
  const double ak = d.a * static_cast<double>(k) + b;
  const double num = ak - d.gamma + 1.0;
  if (!(num > 0.0)) {
    throw domain_error("a(j+1) + b − γ + 1 > 0 violated at k = " + std::to_string(k));
  }
  return pochhammer(ak + 1.0, -d.gamma);
}

}  // namespace detail

/// c_0..c_K of branch s.
inline std::vector<double> coefficient_sequence(const DegenerateProblem& problem,
                                                int s, std::size_t K) {
  detail::check_branch(problem, s);
  const DerivedParams d = derive_params(problem);
  std::vector<double> c(K + 1);
  c[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    c[k] = c[k - 1] * detail::coefficient_ratio(d, d.b[s], k);
  }
  return c;
}

/// u_s(y) = y^b sum_k c_k (lambda y^a)^k.
///
/// Stores both c_k and the ratios c_k / c_{k-1}; series are summed from the
/// ratios so that coefficients underflowing to zero do not truncate the sum.
struct SeriesSolution {
  DegenerateProblem problem;
  DerivedParams derived;
  int s = 0;
  double b = 0.0;
  double a = 0.0;
  complex lambda{0.0, 0.0};
  std::vector<double> coeffs;  // c_0..c_K
  std::vector<double> ratios;  // ratios[k-1] = c_k / c_{k-1}

  std::size_t K() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  double ratio(std::size_t k) const {
    return k <= ratios.size() ? ratios[k - 1]
                              : detail::coefficient_ratio(derived, b, k);
  }
};

/// Kilbas-Saigo parameters (gamma, a/gamma, (a + b_s)/gamma - 1) of branch s.
inline KilbasSaigoParams kilbas_saigo_params(const DerivedParams& d, int s) {
  return {d.gamma, d.a / d.gamma, (d.a + d.b.at(s)) / d.gamma - 1.0};
}

inline SeriesSolution fundamental_solution(const DegenerateProblem& problem, int s,
                                           std::size_t K = kDefaultCoefficientCount) {
  detail::check_branch(problem, s);
  SeriesSolution sol;
  sol.problem = problem;
  sol.derived = derive_params(problem);
  sol.s = s;
  sol.b = sol.derived.b[s];
  sol.a = sol.derived.a;
  sol.lambda = problem.lambda;
  sol.coeffs.resize(K + 1);
  sol.ratios.resize(K);
  sol.coeffs[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    sol.ratios[k - 1] = detail::coefficient_ratio(sol.derived, sol.b, k);
    sol.coeffs[k] = sol.coeffs[k - 1] * sol.ratios[k - 1];
  }
  return sol;
}

/// Scales c_k by (1 + rel), keeping ratios consistent. Used to build negative
/// controls for the verification checks.
inline void perturb_coefficient(SeriesSolution& sol, std::size_t k, double rel) {
  if (k > sol.K()) throw input_error("perturb_coefficient: k out of range");
  const double f = 1.0 + rel;
  sol.coeffs[k] *= f;
  if (k >= 1) sol.ratios[k - 1] *= f;
  if (k + 1 <= sol.K()) sol.ratios[k] /= f;
}

/// The Kilbas-Saigo sum sum_k c_k z^k of a branch at z = lambda y^a.
inline SeriesEvalReport evaluate_series(const SeriesSolution& sol, complex z,
                                        double tol = kDefaultSeriesTol,
                                        std::size_t n_max = kDefaultSeriesMaxTerms) {
  return sum_ratio_series([&sol](std::size_t k) { return sol.ratio(k); }, z, tol,
                          n_max);
}

/// u_s(y) for y > 0.
inline SeriesEvalReport evaluate(const SeriesSolution& sol, double y,
                                 double tol = kDefaultSeriesTol,
                                 std::size_t n_max = kDefaultSeriesMaxTerms) {
  if (!(y > 0.0)) throw domain_error("evaluate: y > 0 required");
  SeriesEvalReport r = evaluate_series(sol, sol.lambda * std::pow(y, sol.a), tol, n_max);
  r.value *= std::pow(y, sol.b);
  return r;
}

/// sum_k (phi_k / k!) u_k(y): the solution of the problem with
/// lim_{y->0+} d^j/dy^j (y^{-(1-mu)(i-beta)} u(y)) = phi_j, j = 0..i-1.
struct CauchySolution {
  DegenerateProblem problem;
  std::vector<complex> phis;
  std::vector<complex> weights;  // phi_k / k!
  std::vector<SeriesSolution> branches;

  /// Smallest b_k among branches with nonzero weight (0 for the zero function).
  double leading_exponent() const {
    bool any = false;
    double e = 0.0;
    for (std::size_t k = 0; k < branches.size(); ++k) {
      if (weights[k] == complex(0.0, 0.0)) continue;
      if (!any || branches[k].b < e) e = branches[k].b;
      any = true;
    }
    return e;
  }
};

inline CauchySolution cauchy_solution(const DegenerateProblem& problem,
                                      std::span<const complex> phis,
                                      std::size_t K = kDefaultCoefficientCount) {
  validate(problem);
  const int i = problem.orders.i;
  if (phis.size() != static_cast<std::size_t>(i)) {
    throw input_error("initial values: expected " + std::to_string(i) +
                      " values φ_0..φ_{i−1}, got " + std::to_string(phis.size()));
  }
  CauchySolution sol;
  sol.problem = problem;
  sol.phis.assign(phis.begin(), phis.end());
  double factorial = 1.0;
  for (int k = 0; k < i; ++k) {
    if (k > 0) factorial *= k;
    sol.weights.push_back(phis[k] / factorial);
    sol.branches.push_back(fundamental_solution(problem, k, K));
  }
  return sol;
}

inline SeriesEvalReport evaluate(const CauchySolution& sol, double y,
                                 double tol = kDefaultSeriesTol,
                                 std::size_t n_max = kDefaultSeriesMaxTerms) {
  if (!(y > 0.0)) throw domain_error("evaluate: y > 0 required");
  SeriesEvalReport total{complex(0.0, 0.0), 0, 0.0, true};
  for (std::size_t k = 0; k < sol.branches.size(); ++k) {
    if (sol.weights[k] == complex(0.0, 0.0)) continue;
    const SeriesEvalReport r = evaluate(sol.branches[k], y, tol, n_max);
    total.value += sol.weights[k] * r.value;
    total.terms_used = std::max(total.terms_used, r.terms_used);
    total.last_term_magnitude = std::max(total.last_term_magnitude, r.last_term_magnitude);
    total.converged = total.converged && r.converged;
  }
  return total;
}

/// For alpha = beta: E_{alpha, m/alpha + 1, (m + s - (1-mu)(i-alpha))/alpha}
/// per branch s.
inline std::vector<KilbasSaigoParams> hilfer_reduction_params(
    const DegenerateProblem& problem) {
  validate(problem);
  const OrderTriple& o = problem.orders;
  if (o.alpha != o.beta) {
    throw domain_error("hilfer_reduction_params: requires α = β");
  }
  std::vector<KilbasSaigoParams> out;
  for (int s = 0; s < o.i; ++s) {
    out.push_back({o.alpha, problem.m / o.alpha + 1.0,
                   (problem.m + s - (1.0 - o.mu) * (o.i - o.alpha)) / o.alpha});
  }
  return out;
}

}  // namespace hilfer
