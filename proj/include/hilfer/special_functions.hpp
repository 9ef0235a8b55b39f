#pragma once

// Scalar special functions: log-Gamma, Gamma ratios, the Kilbas-Saigo
// function E_{alpha,m,l} and a Mittag-Leffler oracle.

#include <math.h>  // lgamma_r

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "hilfer/errors.hpp"

namespace hilfer {

using complex = std::complex<double>;

inline constexpr double kDefaultSeriesTol = 1e-12;
inline constexpr std::size_t kDefaultSeriesMaxTerms = 10000;

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw domain_error("log_gamma: x > 0 required, got " + std::to_string(x));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace detail {

// Stirling correction ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], x >= 10.
inline double stirling_tail(double x) {
  static constexpr double c[] = {1.0 / 12.0,         -1.0 / 360.0,
                                 1.0 / 1260.0,       -1.0 / 1680.0,
                                 1.0 / 1188.0,       -691.0 / 360360.0,
                                 1.0 / 156.0,        -3617.0 / 122400.0};
  const double z = 1.0 / (x * x);
  double sum = c[7];
  for (int k = 6; k >= 0; --k) sum = sum * z + c[k];
  return sum / x;
}

inline constexpr double kStirlingShift = 10.0;

// ln(Gamma(p) / Gamma(q)) with d = p - q supplied separately. Both arguments
// are shifted above 10 by Gamma(x+1) = x Gamma(x) and the difference of
// Stirling expansions is formed with the leading terms combined analytically.
inline double log_gamma_ratio(double p, double q, double d) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw domain_error("gamma_ratio: arguments must be > 0, got p=" +
                       std::to_string(p) + ", q=" + std::to_string(q));
  }
  if (d == 0.0) return 0.0;

  double log_acc = 0.0;
  double prod = 1.0;
  while (std::min(p, q) < kStirlingShift) {
    prod *= q / p;
    p += 1.0;
    q += 1.0;
    if (prod > 1e250 || prod < 1e-250) {
      log_acc += std::log(prod);
      prod = 1.0;
    }
  }
  log_acc += std::log(prod);

  const double lead = (q - 0.5) * std::log1p(d / q) + d * (std::log(p) - 1.0);
  return log_acc + lead + (stirling_tail(p) - stirling_tail(q));
}

}  // namespace detail

/// ln(Gamma(p) / Gamma(q)) for p, q > 0.
inline double log_gamma_ratio(double p, double q) {
  return detail::log_gamma_ratio(p, q, p - q);
}

/// ln(Gamma(x + d) / Gamma(x)) for x > 0, x + d > 0. The offset enters
/// exactly, so rounding of x + d does not leak into the result.
inline double log_pochhammer(double x, double d) {
  return detail::log_gamma_ratio(x + d, x, d);
}

/// Gamma(x + d) / Gamma(x).
inline double pochhammer(double x, double d) { return std::exp(log_pochhammer(x, d)); }

/// Gamma(p) / Gamma(q) for p, q > 0, finite even where Gamma(p) overflows.
inline double gamma_ratio(double p, double q) {
  return std::exp(log_gamma_ratio(p, q));
}

/// Outcome of a truncated power-series evaluation.
struct SeriesEvalReport {
  complex value{0.0, 0.0};
  std::size_t terms_used = 0;
  double last_term_magnitude = 0.0;
  bool converged = false;
};

/// Stopping rule shared by every power series in the library.
///
/// Stops at the first index N >= 2 where the last three terms were each
/// below tol * max(1, |partial sum|) and |term_N| < |term_{N-1}|.
class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(double tol) : tol_(tol) {
    if (!(tol > 0.0)) throw input_error("series tolerance must be > 0");
  }

  /// Adds term number k (terms must arrive in order). Returns true once the
  /// stopping rule fires; the term passed in that call is included.
  bool add(complex term) {
    sum_ += term;
    const double mag = std::abs(term);
    const std::size_t k = count_++;
    if (mag <= tol_ * std::max(1.0, std::abs(sum_))) {
      ++small_run_;
    } else {
      small_run_ = 0;
    }
    const bool decreasing = mag < prev_mag_ || mag == 0.0;
    prev_mag_ = mag;
    last_mag_ = mag;
    done_ = k >= 2 && small_run_ >= 3 && decreasing;
    return done_;
  }

  SeriesEvalReport report() const {
    return SeriesEvalReport{sum_, count_, last_mag_, done_};
  }

 private:
  double tol_;
  complex sum_{0.0, 0.0};
  std::size_t count_ = 0;
  std::size_t small_run_ = 0;
  double prev_mag_ = 0.0;
  double last_mag_ = 0.0;
  bool done_ = false;
};

/// Sums sum_k c_k z^k given successive coefficient ratios c_k / c_{k-1}
/// (k >= 1) and c_0 = 1. `ratio(k)` is called in increasing k.
template <class RatioFn>
SeriesEvalReport sum_ratio_series(RatioFn&& ratio, complex z, double tol,
                                  std::size_t n_max) {
  if (n_max < 1) throw input_error("n_max must be >= 1");
  if (z == complex(0.0, 0.0)) return SeriesEvalReport{1.0, 1, 1.0, true};
  SeriesAccumulator acc(tol);
  complex term = 1.0;
  acc.add(term);
  for (std::size_t k = 1; k < n_max; ++k) {
    term *= z * ratio(k);
    if (acc.add(term)) break;
  }
  return acc.report();
}

/// Parameter triple (alpha, m, l) of E_{alpha,m,l}.
struct KilbasSaigoParams {
  double alpha = 1.0;
  double m = 1.0;
  double l = 0.0;
};

inline void validate(const KilbasSaigoParams& p) {
  if (!(p.alpha > 0.0)) throw domain_error("Kilbas-Saigo: α > 0 violated");
  if (!(p.m > 0.0)) throw domain_error("Kilbas-Saigo: m > 0 violated");
  if (!(p.alpha * p.l > -1.0)) {
    throw domain_error("Kilbas-Saigo: α·l > −1 violated");
  }
}

/// E_{alpha,m,l}(z) = sum_i c_i z^i, c_0 = 1,
/// c_i = prod_{j<i} Gamma(alpha(jm+l)+1) / Gamma(alpha(jm+l+1)+1).
///
/// Successive ratios c_i / c_{i-1} are cached; evaluation past the cache
/// computes the missing ratios locally, so a const instance can be shared
/// between threads.
class KilbasSaigoFunction {
 public:
  explicit KilbasSaigoFunction(KilbasSaigoParams params,
                               std::size_t cached_terms = 256)
      : params_(params) {
    validate(params_);
    ratios_.reserve(cached_terms);
    for (std::size_t i = 1; i <= cached_terms; ++i) {
      ratios_.push_back(compute_ratio(i));
    }
  }

  const KilbasSaigoParams& params() const { return params_; }

  /// c_i / c_{i-1} for i >= 1.
  double ratio(std::size_t i) const {
    return i - 1 < ratios_.size() ? ratios_[i - 1] : compute_ratio(i);
  }

  /// c_0..c_count-1 as a running product (entries may underflow to zero).
  std::vector<double> coefficients(std::size_t count) const {
    std::vector<double> c;
    c.reserve(count);
    double value = 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) value *= ratio(i);
      c.push_back(value);
    }
    return c;
  }

  SeriesEvalReport operator()(complex z, double tol = kDefaultSeriesTol,
                              std::size_t n_max = kDefaultSeriesMaxTerms) const {
    return sum_ratio_series([this](std::size_t i) { return ratio(i); }, z, tol,
                            n_max);
  }

 private:
  double compute_ratio(std::size_t i) const {
    const double j = static_cast<double>(i - 1);
    const double base = params_.alpha * (j * params_.m + params_.l);
    return std::exp(-log_pochhammer(base + 1.0, params_.alpha));
  }

  KilbasSaigoParams params_;
  std::vector<double> ratios_;
};

inline SeriesEvalReport kilbas_saigo(const KilbasSaigoParams& params, complex z,
                                     double tol = kDefaultSeriesTol,
                                     std::size_t n_max = kDefaultSeriesMaxTerms) {
  validate(params);
  if (!(tol > 0.0)) throw input_error("kilbas_saigo: tol > 0 required");
  if (n_max < 1) throw input_error("kilbas_saigo: n_max >= 1 required");
  return KilbasSaigoFunction(params, 0)(z, tol, n_max);
}

/// Two-parameter Mittag-Leffler function sum_k z^k / Gamma(a k + b) by direct
/// summation, each term formed from ln Gamma. Intended as a cross-check for
/// the m = 1 reductions of the Kilbas-Saigo function.
inline SeriesEvalReport mittag_leffler(double a, double b, complex z,
                                       double tol = kDefaultSeriesTol,
                                       std::size_t n_max = kDefaultSeriesMaxTerms) {
  if (!(a > 0.0)) throw domain_error("mittag_leffler: a > 0 violated");
  if (!(b > 0.0)) throw domain_error("mittag_leffler: b > 0 violated");
  if (n_max < 1) throw input_error("mittag_leffler: n_max >= 1 required");
  SeriesAccumulator acc(tol);
  const double first = std::exp(-log_gamma(b));
  if (z == complex(0.0, 0.0)) return SeriesEvalReport{first, 1, first, true};

  const bool real_axis = z.imag() == 0.0;
  const double log_r = std::log(std::abs(z));
  const double theta = std::arg(z);
  acc.add(first);
  for (std::size_t k = 1; k < n_max; ++k) {
    const double kd = static_cast<double>(k);
    const double mag = std::exp(kd * log_r - log_gamma(a * kd + b));
    complex term;
    if (real_axis) {
      term = (z.real() < 0.0 && (k & 1U)) ? -mag : mag;
    } else {
      term = std::polar(mag, kd * theta);
    }
    if (acc.add(term)) break;
  }
  return acc.report();
}

}  // namespace hilfer
