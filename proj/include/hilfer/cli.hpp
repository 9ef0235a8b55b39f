#pragma once

// Command-line front end. Subcommands:
//
//   eval-ks      E_{alpha,m,l}(z) over a list of z values
//   fundamental  u_s(y) on a uniform grid of (0, y_max]
//   solve        the Cauchy-type solution for phi_0..phi_{i-1}
//   verify       coefficient identity, numeric residual, initial limits
//
// Exit status: 0 success, 1 validation error, 2 verification failure,
// 3 series did not converge.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hilfer/errors.hpp"
#include "hilfer/fractional_ops.hpp"
#include "hilfer/report.hpp"
#include "hilfer/solver.hpp"
#include "hilfer/special_functions.hpp"
#include "hilfer/verification.hpp"

namespace hilfer::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kVerificationFailure = 2,
  kNotConverged = 3,
};

inline constexpr double kCoefficientThreshold = 1e-12;
inline constexpr std::size_t kCoefficientTerms = 200;
inline constexpr double kResidualThreshold = 5e-3;
inline constexpr std::size_t kResidualIntervals = 2048;
inline constexpr double kInitialThreshold = 1e-6;

struct RunConfig {
  double alpha = 0.5;
  double beta = 0.5;
  double mu = 1.0;
  int i = 1;
  double m = 0.0;
  double lambda_re = 1.0;
  double lambda_im = 0.0;
  int s = 0;
  std::vector<double> phis_re;  // empty: all ones
  std::vector<double> phis_im;
  double y_max = 1.0;
  std::size_t points = 512;
  double tol = kDefaultSeriesTol;
  std::string format = "csv";
  std::string out;
  // eval-ks only
  double l = 0.0;
  std::vector<double> z{0.0};
  std::vector<double> z_im;
  // negative control for verify: scale c_k by (1 + perturb_rel)
  long long perturb_coefficient = -1;
  double perturb_rel = 1e-6;

  DegenerateProblem problem() const {
    return {{alpha, beta, mu, i}, m, complex(lambda_re, lambda_im)};
  }

  std::vector<complex> phis() const {
    if (!phis_im.empty() && phis_im.size() != phis_re.size()) {
      throw input_error("--phis-im must have as many entries as --phis");
    }
    std::vector<complex> p;
    if (phis_re.empty()) {
      p.assign(static_cast<std::size_t>(std::max(i, 0)), complex(1.0, 0.0));
      return p;
    }
    for (std::size_t k = 0; k < phis_re.size(); ++k) {
      p.emplace_back(phis_re[k], phis_im.empty() ? 0.0 : phis_im[k]);
    }
    return p;
  }
};

inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["mu"] = c.mu;
  j["i"] = c.i;
  j["m"] = c.m;
  j["lambda_re"] = c.lambda_re;
  j["lambda_im"] = c.lambda_im;
  j["s"] = c.s;
  j["phis_re"] = c.phis_re;
  j["phis_im"] = c.phis_im;
  j["y_max"] = c.y_max;
  j["points"] = c.points;
  j["tol"] = c.tol;
  j["l"] = c.l;
  j["z"] = c.z;
  j["z_im"] = c.z_im;
  if (c.perturb_coefficient >= 0) {
    j["perturb_coefficient"] = c.perturb_coefficient;
    j["perturb_rel"] = c.perturb_rel;
  }
  return j;
}

/// Reads a flat config object, or the "config" member of a report written
/// by this tool. Missing keys keep their defaults.
inline RunConfig config_from_json(const nlohmann::json& doc) {
  const nlohmann::json& j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object()) throw input_error("config: expected a JSON object");
  RunConfig c;
  c.alpha = j.value("alpha", c.alpha);
  c.beta = j.value("beta", c.beta);
  c.mu = j.value("mu", c.mu);
  c.i = j.value("i", c.i);
  c.m = j.value("m", c.m);
  c.lambda_re = j.value("lambda_re", c.lambda_re);
  c.lambda_im = j.value("lambda_im", c.lambda_im);
  c.s = j.value("s", c.s);
  c.phis_re = j.value("phis_re", c.phis_re);
  c.phis_im = j.value("phis_im", c.phis_im);
  c.y_max = j.value("y_max", c.y_max);
  c.points = j.value("points", c.points);
  c.tol = j.value("tol", c.tol);
  c.l = j.value("l", c.l);
  c.z = j.value("z", c.z);
  c.z_im = j.value("z_im", c.z_im);
  c.perturb_coefficient = j.value("perturb_coefficient", c.perturb_coefficient);
  c.perturb_rel = j.value("perturb_rel", c.perturb_rel);
  return c;
}

namespace detail {

inline std::vector<double> output_grid(const RunConfig& c) {
  if (!(c.y_max > 0.0)) throw input_error("y_max > 0 violated");
  if (c.points < 1) throw input_error("points ≥ 1 violated");
  std::vector<double> y(c.points);
  for (std::size_t n = 1; n <= c.points; ++n) {
    y[n - 1] = c.y_max * (static_cast<double>(n) / static_cast<double>(c.points));
  }
  y.back() = c.y_max;
  return y;
}

inline nlohmann::ordered_json ks_json(const KilbasSaigoParams& p) {
  return {{"alpha", p.alpha}, {"m", p.m}, {"l", p.l}};
}

inline nlohmann::ordered_json derived_json(const DerivedParams& d) {
  nlohmann::ordered_json j;
  j["gamma"] = d.gamma;
  j["a"] = d.a;
  j["b"] = d.b;
  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (int s = 0; s < static_cast<int>(d.b.size()); ++s) ks.push_back(ks_json(kilbas_saigo_params(d, s)));
  j["kilbas_saigo"] = std::move(ks);
  return j;
}

struct Outcome {
  Table table;
  int code = kSuccess;
  std::string message;  // diagnostic for a nonzero code
};

inline Outcome eval_ks(const RunConfig& c) {
  const KilbasSaigoParams params{c.alpha, c.m, c.l};
  validate(params);
  if (!c.z_im.empty() && c.z_im.size() != 1 && c.z_im.size() != c.z.size()) {
    throw input_error("--z-im must have one entry or as many as --z");
  }
  const KilbasSaigoFunction ks(params);
  Outcome o;
  o.table.meta = ks_json(params);
  o.table.columns = {"z_re", "z_im", "value_re", "value_im", "terms_used", "converged"};
  for (std::size_t k = 0; k < c.z.size(); ++k) {
    const double zi = c.z_im.empty() ? 0.0 : c.z_im[c.z_im.size() == 1 ? 0 : k];
    const complex z(c.z[k], zi);
    const SeriesEvalReport r = ks(z, c.tol);
    o.table.rows.push_back({z.real(), z.imag(), r.value.real(), r.value.imag(),
                            static_cast<long long>(r.terms_used), r.converged});
    if (!r.converged && o.code == kSuccess) {
      o.code = kNotConverged;
      o.message = "series did not converge at z = " + ::hilfer::detail::format_double(z.real());
    }
  }
  return o;
}

inline Outcome fundamental(const RunConfig& c) {
  const DegenerateProblem problem = c.problem();
  const SeriesSolution sol = fundamental_solution(problem, c.s);
  Outcome o;
  o.table.meta["s"] = c.s;
  o.table.meta["gamma"] = sol.derived.gamma;
  o.table.meta["a"] = sol.a;
  o.table.meta["b_s"] = sol.b;
  const KilbasSaigoParams ks = kilbas_saigo_params(sol.derived, c.s);
  o.table.meta["ks_alpha"] = ks.alpha;
  o.table.meta["ks_m"] = ks.m;
  o.table.meta["ks_l"] = ks.l;
  o.table.columns = {"y", "u_re", "u_im"};
  for (double y : output_grid(c)) {
    const SeriesEvalReport r = evaluate(sol, y, c.tol);
    o.table.rows.push_back({y, r.value.real(), r.value.imag()});
    if (!r.converged && o.code == kSuccess) {
      o.code = kNotConverged;
      o.message = "series did not converge at y = " + ::hilfer::detail::format_double(y);
    }
  }
  return o;
}

inline Outcome solve(const RunConfig& c) {
  const std::vector<complex> phis = c.phis();
  const CauchySolution sol = cauchy_solution(c.problem(), phis);
  Outcome o;
  o.table.meta = derived_json(sol.branches.front().derived);
  o.table.meta["leading_exponent"] = sol.leading_exponent();
  o.table.columns = {"y", "u_re", "u_im"};
  for (double y : output_grid(c)) {
    const SeriesEvalReport r = evaluate(sol, y, c.tol);
    o.table.rows.push_back({y, r.value.real(), r.value.imag()});
    if (!r.converged && o.code == kSuccess) {
      o.code = kNotConverged;
      o.message = "series did not converge at y = " + ::hilfer::detail::format_double(y);
    }
  }
  return o;
}

inline Outcome verify(const RunConfig& c) {
  const DegenerateProblem problem = c.problem();
  const DerivedParams derived = derive_params(problem);
  const std::vector<complex> phis = c.phis();
  const int i = problem.orders.i;
  const double nan = std::nan("");

  Outcome o;
  o.table.meta = derived_json(derived);
  o.table.columns = {"check", "s", "j", "metric", "value", "threshold", "status"};
  std::string failed;
  bool converged = true;
  auto record = [&](const std::string& check, long long s, long long j,
                    const std::string& metric, double value, double threshold,
                    const std::string& status) {
    o.table.rows.push_back({check, s, j, metric, value, threshold, status});
    if (status == "fail" && failed.empty()) {
      std::ostringstream msg;
      msg << check << '.' << metric;
      if (s >= 0) msg << " (s=" << s << ')';
      if (j >= 0) msg << " (j=" << j << ')';
      msg << " = " << ::hilfer::detail::format_double(value) << " > "
          << ::hilfer::detail::format_double(threshold);
      failed = msg.str();
    }
  };

  for (int s = 0; s < i; ++s) {
    SeriesSolution sol =
        fundamental_solution(problem, s, std::max(kCoefficientTerms, kDefaultCoefficientCount));
    if (c.perturb_coefficient >= 0) {
      perturb_coefficient(sol, static_cast<std::size_t>(c.perturb_coefficient), c.perturb_rel);
    }
    const double id = residual_coefficient_identity(sol, kCoefficientTerms);
    record("coefficient_identity", s, -1, "max_rel_error", id, kCoefficientThreshold,
           id <= kCoefficientThreshold ? "pass" : "fail");

    if (i > 2) {
      record("numeric_residual", s, -1, "max_rel_error", nan, kResidualThreshold, "skipped");
      continue;
    }
    const ResidualReport rr =
        residual_numeric(sol, GridSpec{c.y_max, kResidualIntervals, 8.0}, c.tol);
    converged = converged && rr.series_converged;
    // with lambda = 0 the right-hand side vanishes identically
    const bool absolute = problem.lambda == complex(0.0, 0.0);
    const double value = absolute ? rr.max_abs_error : rr.max_rel_error;
    record("numeric_residual", s, -1, absolute ? "max_abs_error" : "max_rel_error", value,
           kResidualThreshold, value <= kResidualThreshold ? "pass" : "fail");
  }

  if (i > 2) {
    for (int j = 0; j < i; ++j) {
      record("initial_condition", -1, j, "abs_error", nan, kInitialThreshold, "skipped");
    }
  } else {
    const InitialConditionReport ic =
        initial_condition_check(problem, phis, default_ic_points(), c.tol);
    for (int j = 0; j < i; ++j) {
      const double e = ic.errors[j];
      record("initial_condition", -1, j, "abs_error", e, kInitialThreshold,
             e <= kInitialThreshold ? "pass" : "fail");
    }
  }

  if (!failed.empty()) {
    o.code = kVerificationFailure;
    o.message = "verification failed: " + failed;
  } else if (!converged) {
    o.code = kNotConverged;
    o.message = "series did not converge on the residual grid";
  }
  return o;
}

inline std::string config_path(int argc, const char* const* argv) {
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--config" && k + 1 < argc) return argv[k + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

inline void add_shared_options(CLI::App* sub, RunConfig& c, std::string& config) {
  sub->add_option("--alpha", c.alpha, "left order α (Kilbas-Saigo α for eval-ks)")
      ->capture_default_str();
  sub->add_option("--beta", c.beta, "right order β")->capture_default_str();
  sub->add_option("--mu", c.mu, "interpolation weight μ")->capture_default_str();
  sub->add_option("--i", c.i, "integer order index i")->capture_default_str();
  sub->add_option("--m", c.m, "degeneracy exponent m (Kilbas-Saigo m for eval-ks)")
      ->capture_default_str();
  sub->add_option("--lambda-re", c.lambda_re, "Re λ")->capture_default_str();
  sub->add_option("--lambda-im", c.lambda_im, "Im λ")->capture_default_str();
  sub->add_option("--s", c.s, "branch index s")->capture_default_str();
  sub->add_option("--phis", c.phis_re, "initial values φ_0..φ_{i−1} (real parts)")
      ->delimiter(',');
  sub->add_option("--phis-im", c.phis_im, "imaginary parts of φ")->delimiter(',');
  sub->add_option("--y-max", c.y_max, "right end of the grid")->capture_default_str();
  sub->add_option("--points", c.points, "grid points on (0, y_max]")->capture_default_str();
  sub->add_option("--tol", c.tol, "series tolerance")->capture_default_str();
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "output file (default: standard output)");
  sub->add_option("--config", config, "JSON config or report to start from");
  sub->add_option("--perturb-coefficient", c.perturb_coefficient)->group("");
  sub->add_option("--perturb-rel", c.perturb_rel)->group("");
}

}  // namespace detail

/// Runs the tool; returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  bool m_from_config = false;
  const std::string path = detail::config_path(argc, argv);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot read config file " << path << '\n';
      return kValidationError;
    }
    try {
      const nlohmann::json doc = nlohmann::json::parse(in);
      cfg = config_from_json(doc);
      const nlohmann::json& j = doc.contains("config") ? doc.at("config") : doc;
      m_from_config = j.contains("m");
    } catch (const std::exception& e) {
      err << "error: config " << path << ": " << e.what() << '\n';
      return kValidationError;
    }
  }

  CLI::App app{"Degenerate bi-ordinal Hilfer equation: series solutions and checks",
               "hilfer-cli"};
  app.require_subcommand(1);
  std::string config;
  CLI::App* ks = app.add_subcommand("eval-ks", "evaluate the Kilbas-Saigo function");
  CLI::App* fund = app.add_subcommand("fundamental", "sample a fundamental solution u_s");
  CLI::App* sol = app.add_subcommand("solve", "sample the Cauchy-type solution");
  CLI::App* ver = app.add_subcommand("verify", "run the verification checks");
  for (CLI::App* sub : {ks, fund, sol, ver}) detail::add_shared_options(sub, cfg, config);
  ks->add_option("--l", cfg.l, "Kilbas-Saigo l")->capture_default_str();
  ks->add_option("--z", cfg.z, "real parts of z (comma separated)")->delimiter(',');
  ks->add_option("--z-im", cfg.z_im, "imaginary parts of z")->delimiter(',');

  std::vector<std::string> args;
  for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  detail::Outcome outcome;
  try {
    if (ks->parsed()) {
      if (ks->get_option("--m")->count() == 0 && !m_from_config) cfg.m = 1.0;
      outcome = detail::eval_ks(cfg);
      outcome.table.command = "eval-ks";
    } else if (fund->parsed()) {
      outcome = detail::fundamental(cfg);
      outcome.table.command = "fundamental";
    } else if (sol->parsed()) {
      outcome = detail::solve(cfg);
      outcome.table.command = "solve";
    } else {
      outcome = detail::verify(cfg);
      outcome.table.command = "verify";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  outcome.table.config = to_json(cfg);

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot write " << cfg.out << '\n';
      return kValidationError;
    }
    os = &file;
  }
  if (cfg.format == "json") {
    write_json(outcome.table, *os);
  } else {
    write_csv(outcome.table, *os);
  }
  if (outcome.code != kSuccess) err << "error: " << outcome.message << '\n';
  return outcome.code;
}

}  // namespace hilfer::cli
