#pragma once

// The bi-ordinal Hilfer derivative
//
//   D^{(alpha,beta)mu} = I^{mu(i-alpha)} (d/dy)^i I^{(1-mu)(i-beta)},
//   i - 1 < alpha, beta < i,  0 <= mu <= 1,
//
// applied exactly to power functions and numerically to sampled functions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hilfer/errors.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

/// Operator parameters (alpha, beta, mu, i).
struct OrderTriple {
  double alpha = 0.5;
  double beta = 0.5;
  double mu = 1.0;
  int i = 1;

  /// (1 - mu)(i - beta): order of the inner fractional integral.
  double inner_order() const { return (1.0 - mu) * (i - beta); }
  /// mu (i - alpha): order of the outer fractional integral.
  double outer_order() const { return mu * (i - alpha); }
  /// beta + mu (alpha - beta): net order of the derivative.
  double net_order() const { return beta + mu * (alpha - beta); }
};

inline void validate(const OrderTriple& o) {
  if (o.i < 1) throw domain_error("order index i ≥ 1 violated");
  const double lo = o.i - 1;
  const double hi = o.i;
  if (!(lo < o.alpha && o.alpha < hi)) {
    throw domain_error("i − 1 < α < i violated (α = " + std::to_string(o.alpha) +
                       ", i = " + std::to_string(o.i) + ")");
  }
  if (!(lo < o.beta && o.beta < hi)) {
    throw domain_error("i − 1 < β < i violated (β = " + std::to_string(o.beta) +
                       ", i = " + std::to_string(o.i) + ")");
  }
  if (!(0.0 <= o.mu && o.mu <= 1.0)) {
    throw domain_error("0 ≤ μ ≤ 1 violated (μ = " + std::to_string(o.mu) + ")");
  }
}

/// coef * y^exponent on y > 0.
struct PowerTerm {
  complex coef{0.0, 0.0};
  double exponent = 0.0;
};

/// a (a-1) ... (a-i+1).
inline double falling_product(double a, int i) {
  double p = 1.0;
  for (int k = 0; k < i; ++k) p *= a - k;
  return p;
}

/// I^nu y^delta = Gamma(delta+1) / Gamma(delta+1+nu) y^(delta+nu).
inline PowerTerm rl_integral_monomial(double nu, double delta) {
  if (!(nu > 0.0)) throw domain_error("rl_integral_monomial: ν > 0 violated");
  if (!(delta > -1.0)) {
    throw domain_error("rl_integral_monomial: δ > −1 violated (divergent integral)");
  }
  return {gamma_ratio(delta + 1.0, delta + 1.0 + nu), delta + nu};
}

/// D^{(alpha,beta)mu} y^delta.
///
/// Valid when delta + (1-mu)(i-beta) - i > -1, or when delta + (1-mu)(i-beta)
/// is an integer in [0, i-1]; in the latter case the inner integral is a
/// polynomial of degree < i and the result is the zero term.
inline PowerTerm hilfer_monomial(const OrderTriple& orders, double delta) {
  validate(orders);
  const int i = orders.i;
  const double nu = orders.inner_order();
  const double p = orders.outer_order();
  const double shifted = delta + nu;  // exponent after the inner integral

  // Exponent of the composition, accumulated in the order the operators act.
  const double exponent = (shifted - i) + p;

  const double falling = falling_product(shifted, i);
  if (std::abs(falling) < 1e-12 * std::pow(std::abs(delta) + 1.0, i)) {
    return {0.0, exponent};
  }
  if (!(shifted - i > -1.0)) {
    throw domain_error("hilfer_monomial: δ + (1−μ)(i−β) − i > −1 violated (δ = " +
                       std::to_string(delta) + ")");
  }
  const double lead = shifted + 1.0 - i;
  double coef = falling * (nu > 0.0 ? 1.0 / pochhammer(delta + 1.0, nu) : 1.0);
  if (p > 0.0) coef /= pochhammer(lead, p);
  return {coef, exponent};
}

/// Complex samples on a strictly increasing node set starting at 0.
///
/// A nonzero `origin_power` b declares a leading power at the origin,
/// f(t) = values[0] * t^b + r(t) with r(0) = 0; values[0] then stores the
/// coefficient and values[k], k >= 1, still hold f(t_k). Negative b means f
/// is unbounded at the first node.
struct SampledFunction {
  std::vector<double> nodes;
  std::vector<complex> values;
  double origin_power = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// intervals + 1 equispaced nodes on [0, y_max].
inline std::vector<double> uniform_nodes(double y_max, std::size_t intervals) {
  if (!(y_max > 0.0)) throw input_error("grid: y_max > 0 required");
  if (intervals < 2) throw input_error("grid: at least 3 points required");
  std::vector<double> t(intervals + 1);
  const double n = static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) t[k] = y_max * (k / n);
  t.back() = y_max;
  return t;
}

/// intervals + 1 nodes t_k = y_max (k / intervals)^grading, clustered at 0.
/// grading = 1 is the uniform grid.
inline std::vector<double> graded_nodes(double y_max, std::size_t intervals,
                                        double grading) {
  if (!(grading >= 1.0)) throw input_error("grid: grading ≥ 1 required");
  std::vector<double> t = uniform_nodes(1.0, intervals);
  for (double& x : t) x = y_max * std::pow(x, grading);
  t.back() = y_max;
  return t;
}

template <class F>
SampledFunction sample(std::vector<double> nodes, F&& f) {
  SampledFunction out;
  out.values.reserve(nodes.size());
  for (double t : nodes) out.values.push_back(complex(f(t)));
  out.nodes = std::move(nodes);
  return out;
}

namespace detail {

inline void check_grid(const SampledFunction& f, const char* who) {
  if (f.nodes.size() < 3) {
    throw input_error(std::string(who) + ": grid too short (< 3 points)");
  }
  if (f.values.size() != f.nodes.size()) {
    throw input_error(std::string(who) + ": nodes and values differ in length");
  }
  if (f.nodes.front() != 0.0) {
    throw input_error(std::string(who) + ": grid must start at y = 0");
  }
  for (std::size_t k = 1; k < f.nodes.size(); ++k) {
    if (!(f.nodes[k] > f.nodes[k - 1])) {
      throw input_error(std::string(who) + ": nodes must be strictly increasing");
    }
  }
  for (const complex& v : f.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw input_error(std::string(who) + ": samples must be finite");
    }
  }
}

struct CellMoments {
  double m0;  // int_0^h (w - x)^(nu-1) dx
  double m1;  // int_0^h (w - x)^(nu-1) x dx
};

// Kernel moments over one cell, x measured from the cell's left end, where
// w >= h is the distance from that end to the evaluation point. Short cells
// far from the evaluation point use the binomial series in h / w so the
// moments keep full relative accuracy.
inline CellMoments cell_moments(double w, double h, double nu) {
  const double rho = h / w;
  if (rho < 0.25) {
    const double scale = std::pow(w, nu - 1.0) * h;
    double binom = 1.0;  // binom(nu - 1, k) (-rho)^k
    double s0 = 0.0;
    double s1 = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double t0 = binom / (k + 1);
      s0 += t0;
      s1 += binom / (k + 2);
      if (std::abs(t0) < 1e-17 * std::abs(s0)) break;
      binom *= -rho * (nu - 1.0 - k) / (k + 1);
    }
    return {scale * s0, scale * h * s1};
  }
  const double wb = w - h > 0.0 ? w - h : 0.0;
  const double pa = std::pow(w, nu);
  const double pb = std::pow(wb, nu);
  const double m0 = (pa - pb) / nu;
  return {m0, w * m0 - (pa * w - pb * wb) / (nu + 1.0)};
}

}  // namespace detail

/// Riemann-Liouville integral (1/Gamma(nu)) int_0^y (y-t)^(nu-1) f(t) dt at
/// every node, 0 <= nu < 2 (nu = 0 is the identity).
///
/// Product trapezoidal rule: f is replaced by its piecewise-linear interpolant
/// and the kernel moments on each cell are integrated exactly. With a nonzero
/// origin_power only the remainder r = f - values[0] t^b is interpolated; the
/// power itself is integrated in closed form.
inline SampledFunction rl_integral_numeric(const SampledFunction& f, double nu) {
  detail::check_grid(f, "rl_integral_numeric");
  if (!(nu >= 0.0 && nu < 2.0)) {
    throw domain_error("rl_integral_numeric: 0 ≤ ν < 2 violated");
  }
  if (nu == 0.0) return f;
  const double b = f.origin_power;
  const bool singular = b != 0.0;
  if (singular && !(b > -1.0)) {
    throw domain_error("rl_integral_numeric: origin power > −1 violated");
  }

  const std::vector<double>& t = f.nodes;
  const std::size_t n_nodes = t.size();
  const double inv_gamma = std::exp(-log_gamma(nu));
  const complex lead = singular ? f.values[0] : complex(0.0, 0.0);

  std::vector<complex> r(f.values);
  if (singular) {
    r[0] = 0.0;
    for (std::size_t k = 1; k < n_nodes; ++k) r[k] -= lead * std::pow(t[k], b);
  }

  const double e = b + nu;
  const double lead_gain = singular ? gamma_ratio(b + 1.0, e + 1.0) : 0.0;
  SampledFunction out;
  out.nodes = t;
  out.values.assign(n_nodes, complex(0.0, 0.0));
  for (std::size_t n = 1; n < n_nodes; ++n) {
    const double y = t[n];
    complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double h = t[k + 1] - t[k];
      const detail::CellMoments mom = detail::cell_moments(y - t[k], h, nu);
      const double right = mom.m1 / h;
      acc += r[k] * (mom.m0 - right) + r[k + 1] * right;
    }
    out.values[n] = acc * inv_gamma;
    if (singular) out.values[n] += lead * lead_gain * std::pow(y, e);
  }

  if (singular) {
    out.values[0] = lead * lead_gain;
    if (std::abs(e) >= 1e-12) out.origin_power = e;  // else a constant at 0
  }
  return out;
}

/// Finite-difference weights for the d-th derivative at x0 from arbitrary
/// distinct nodes (Fornberg's recursion).
inline std::vector<double> fd_weights(double x0, std::span<const double> x, int d) {
  const int n = static_cast<int>(x.size());
  if (d < 0 || d >= n) throw input_error("fd_weights: need more nodes than d");
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(d + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, d);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][d];
  return w;
}

/// d-th derivative (d = 1 or 2) at every node: three-point stencils inside,
/// one-sided stencils of matching order at the two ends.
inline SampledFunction differentiate(const SampledFunction& f, int d) {
  detail::check_grid(f, "differentiate");
  if (d != 1 && d != 2) throw unsupported_error("differentiate: order 1 or 2 only");
  if (f.origin_power < 0.0) {
    throw domain_error("differentiate: function unbounded at the origin");
  }
  const std::size_t n_nodes = f.size();
  const std::size_t edge = d == 1 ? 3 : 4;
  if (n_nodes < edge) throw input_error("differentiate: grid too short");

  SampledFunction out;
  out.nodes = f.nodes;
  out.values.resize(n_nodes);
  const std::span<const double> t(f.nodes);
  // with a positive origin power values[0] is a coefficient, f(0) = 0
  const auto value = [&f](std::size_t k) {
    return k == 0 && f.origin_power > 0.0 ? complex(0.0, 0.0) : f.values[k];
  };
  for (std::size_t n = 0; n < n_nodes; ++n) {
    std::size_t lo = 0;
    std::size_t len = 3;
    if (n == 0) {
      len = edge;
    } else if (n + 1 == n_nodes) {
      len = edge;
      lo = n_nodes - edge;
    } else {
      lo = n - 1;
    }
    const std::vector<double> w = fd_weights(t[n], t.subspan(lo, len), d);
    // weights sum to zero; differencing against the centre keeps constant
    // data exact when the weights are huge (tiny graded cells)
    complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < len; ++j) acc += w[j] * (value(lo + j) - value(n));
    out.values[n] = acc;
  }
  return out;
}

/// Numeric D^{(alpha,beta)mu} f by composing the three factors on the grid:
/// inner RL integral, i-th finite-difference derivative, outer RL integral.
/// Supports i in {1, 2}. The first and last two output samples use one-sided
/// stencils and are less accurate than the rest.
inline SampledFunction hilfer_numeric(const SampledFunction& f,
                                      const OrderTriple& orders) {
  validate(orders);
  if (orders.i > 2) {
    throw unsupported_error("hilfer_numeric: only i ∈ {1, 2} is supported");
  }
  detail::check_grid(f, "hilfer_numeric");
  const double nu = orders.inner_order();
  const double p = orders.outer_order();
  SampledFunction inner = nu > 0.0 ? rl_integral_numeric(f, nu) : f;
  if (inner.origin_power < 0.0) {
    throw domain_error(
        "hilfer_numeric: inner integral unbounded at the origin; "
        "δ + (1−μ)(i−β) − i > −1 violated");
  }
  SampledFunction deriv = differentiate(inner, orders.i);
  return p > 0.0 ? rl_integral_numeric(deriv, p) : deriv;
}

}  // namespace hilfer
