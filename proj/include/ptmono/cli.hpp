#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests drive it in-process with string streams.
//
// Exit codes: 0 success, 1 usage error, 2 computation or input-file error.

#include <ptmono/convex_roof.hpp>
#include <ptmono/io.hpp>
#include <ptmono/majorization.hpp>
#include <ptmono/monotones.hpp>
#include <ptmono/states.hpp>
#include <ptmono/tcm.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ptmono::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;

/// A malformed flag value detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline RealVector parse_real_list(const std::string& flag, const std::string& text) {
  RealVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (item.empty() || end != begin + item.size() || errno == ERANGE || !std::isfinite(v))
      throw UsageError(flag + ": cannot parse \"" + item + "\" as a number");
    out.push_back(v);
  }
  if (out.empty() || (!text.empty() && text.back() == ','))
    throw UsageError(flag + ": expected a comma-separated list of numbers");
  return out;
}

namespace detail {

inline std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_number(v[i]);
  }
  return s;
}

struct Options {
  std::string output;
  std::string input;
  // monotone
  double p = 1.0;
  std::string pt = "B";
  bool json = false;
  // bound
  std::string kind = "concurrence";
  // isotropic
  long long d = 2;
  double f_min = 0.0, f_max = 1.0;
  int steps = 21;
  bool numeric_check = false;
  // tcm
  double nbar = 100.0, g = 1.0, t_max = 50.0;
  long long n_max = 200;
  int tcm_steps = 1000;
  // roof
  std::string objective = "concurrence";
  long long m = 0;
  int restarts = 32, iters = 2000;
  std::uint64_t seed = 0;
  // majorize
  std::string x, y;
  bool weak = false;
};

inline void emit_monotone(const Options& o, std::ostream& out) {
  const DensityMatrix rho = as_density(load_state(o.input));
  const HermitianMatrix target = o.pt == "none" ? rho.hermitian()
                                                : partial_transpose(rho, o.pt == "A" ? Subsystem::A : Subsystem::B);
  const MonotoneReport r = monotone_report(target, MonotoneOrder(o.p));
  if (o.json) {
    nlohmann::json j = {{"p", r.p},
                        {"m_p", r.m_value},
                        {"n_p", r.n_value},
                        {"neg_count", r.neg_count},
                        {"negative_eigenvalues", r.negative_eigenvalues}};
    out << j.dump() << '\n';
    return;
  }
  out << "p,m_p,n_p,neg_count,negative_eigenvalues\n"
      << format_number(r.p) << ',' << format_number(r.m_value) << ',' << format_number(r.n_value) << ','
      << r.neg_count << ',' << join(r.negative_eigenvalues, ';') << '\n';
}

inline void emit_pure(const Options& o, std::ostream& out) {
  const StateData s = load_state(o.input);
  const auto* psi = std::get_if<PureState>(&s);
  if (!psi) throw Error(ErrorCode::InvalidState, o.input + ": `pure` needs a file with \"kind\": \"pure\"");
  out << "schmidt_coefficients,concurrence,tangle\n"
      << join(schmidt_coefficients(*psi), ';') << ',' << format_number(pure_concurrence(*psi)) << ','
      << format_number(pure_tangle(*psi)) << '\n';
}

inline void emit_isotropic(const Options& o, std::ostream& out) {
  if (o.steps < 1) throw UsageError("--steps: must be at least 1");
  if (o.d < 2) throw UsageError("--d: must be at least 2");
  const bool numeric = o.numeric_check && o.d <= 10;
  out << "d,F,lambda,m2pt,n2pt" << (numeric ? ",numeric_m2pt" : "") << '\n';
  for (int k = 0; k < o.steps; ++k) {
    const double f = o.steps == 1 ? o.f_min : o.f_min + (o.f_max - o.f_min) * k / (o.steps - 1);
    const IsotropicParams params(o.d, f);
    out << o.d << ',' << format_number(f) << ',' << format_number(params.mixing()) << ','
        << format_number(isotropic_m2pt(params)) << ',' << format_number(isotropic_n2pt(params));
    if (numeric) out << ',' << format_number(concurrence_lower_bound(isotropic_state(params)));
    out << '\n';
  }
}

inline void emit_tcm(const Options& o, std::ostream& out) {
  if (o.tcm_steps < 1) throw UsageError("--steps: must be at least 1");
  if (!(o.t_max >= 0.0)) throw UsageError("--t-max: must be non-negative");
  TcmConfig cfg;
  cfg.g = o.g;
  cfg.nbar = o.nbar;
  cfg.n_max = static_cast<Index>(o.n_max);
  cfg.times = uniform_times(o.t_max, o.tcm_steps);
  const TcmTrace trace = run_trace(cfg);
  out << "gt,n2pt,rank,purity\n";
  for (const TcmRow& r : trace.rows)
    out << format_number(r.gt) << ',' << format_number(r.n2pt) << ',' << r.rank << ',' << format_number(r.purity)
        << '\n';
}

inline void emit_roof(const Options& o, std::ostream& out) {
  const DensityMatrix rho = as_density(load_state(o.input));
  RoofConfig cfg;
  cfg.objective = o.objective == "tangle" ? RoofObjective::Tangle : RoofObjective::Concurrence;
  cfg.ensemble_size = static_cast<Index>(o.m);
  cfg.restarts = o.restarts;
  cfg.max_iters = o.iters;
  cfg.seed = o.seed;
  const RoofResult r = minimize_roof(rho, cfg);
  out << "value,residual\n" << format_number(r.value) << ',' << format_number(reconstruction_error(r.best, rho)) << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial-transpose entanglement monotones and convex-roof bounds", "ptmono"};
  app.require_subcommand(1);
  detail::Options o;
  app.add_option("-o,--output", o.output, "Write results to this file instead of standard output");

  auto* monotone = app.add_subcommand("monotone", "M_p / N_p of a state file, optionally partially transposed");
  monotone->add_option("--p", o.p, "Order p >= 1")->required();
  monotone->add_option("--input", o.input, "State file (JSON)")->required();
  monotone->add_option("--pt", o.pt, "Transposed subsystem")->check(CLI::IsMember({"A", "B", "none"}));
  monotone->add_flag("--json", o.json, "Emit JSON instead of CSV");

  auto* negativity_cmd = app.add_subcommand("negativity", "Negativity M_1(rho^pt)");
  negativity_cmd->add_option("--input", o.input, "State file (JSON)")->required();

  auto* bound = app.add_subcommand("bound", "Concurrence bound 2 M_2(rho^pt) or tangle bound [2 M_2(rho^pt)]^2");
  bound->add_option("--kind", o.kind, "concurrence or tangle")->check(CLI::IsMember({"concurrence", "tangle"}));
  bound->add_option("--input", o.input, "State file (JSON)")->required();

  auto* pure = app.add_subcommand("pure", "Schmidt coefficients, concurrence and tangle of a pure state");
  pure->add_option("--input", o.input, "Pure state file (JSON)")->required();

  auto* iso = app.add_subcommand("isotropic", "Closed-form bounds on isotropic states as CSV");
  iso->add_option("--d", o.d, "Local dimension")->required();
  iso->add_option("--f-min", o.f_min, "Smallest fidelity")->check(CLI::Range(0.0, 1.0));
  iso->add_option("--f-max", o.f_max, "Largest fidelity")->check(CLI::Range(0.0, 1.0));
  iso->add_option("--steps", o.steps, "Number of grid points");
  iso->add_flag("--numeric-check", o.numeric_check, "Add an eigensolver column (d <= 10)");

  auto* tcm = app.add_subcommand("tcm", "Two-atom Tavis-Cummings tangle bound over time as CSV");
  tcm->add_option("--nbar", o.nbar, "Mean photon number of the coherent field");
  tcm->add_option("--n-max", o.n_max, "Fock truncation");
  tcm->add_option("--g", o.g, "Coupling");
  tcm->add_option("--t-max", o.t_max, "Final time");
  tcm->add_option("--steps", o.tcm_steps, "Number of time points");

  auto* roof = app.add_subcommand("roof", "Numerical convex-roof upper estimate");
  roof->add_option("--objective", o.objective, "concurrence or tangle")
      ->check(CLI::IsMember({"concurrence", "tangle"}));
  roof->add_option("--input", o.input, "State file (JSON)")->required();
  roof->add_option("--m", o.m, "Ensemble size (0: automatic)")->check(CLI::NonNegativeNumber);
  roof->add_option("--restarts", o.restarts, "Random restarts");
  roof->add_option("--iters", o.iters, "Step budget per local-search stage");
  roof->add_option("--seed", o.seed, "Random seed");

  auto* majorize = app.add_subcommand("majorize", "Is x majorized (or weakly submajorized) by y?");
  majorize->add_option("--x", o.x, "Comma-separated list")->required();
  majorize->add_option("--y", o.y, "Comma-separated list")->required();
  majorize->add_flag("--weak", o.weak, "Test weak submajorization");

  std::vector<std::string> argv_store{"ptmono"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  try {
    if (monotone->parsed()) {
      detail::emit_monotone(o, buffer);
    } else if (negativity_cmd->parsed()) {
      buffer << format_number(negativity(as_density(load_state(o.input))), kScalarDigits) << '\n';
    } else if (bound->parsed()) {
      const DensityMatrix rho = as_density(load_state(o.input));
      buffer << format_number(o.kind == "tangle" ? tangle_lower_bound(rho) : concurrence_lower_bound(rho), kScalarDigits) << '\n';
    } else if (pure->parsed()) {
      detail::emit_pure(o, buffer);
    } else if (iso->parsed()) {
      detail::emit_isotropic(o, buffer);
    } else if (tcm->parsed()) {
      detail::emit_tcm(o, buffer);
    } else if (roof->parsed()) {
      detail::emit_roof(o, buffer);
    } else if (majorize->parsed()) {
      const RealVector x = parse_real_list("--x", o.x), y = parse_real_list("--y", o.y);
      const bool result = o.weak ? weakly_submajorizes(y, x) : majorizes(y, x);
      buffer << (result ? "true" : "false") << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LengthMismatch) {
      err << "usage error: --x and --y: " << e.what() << '\n';
      return kExitUsage;
    }
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }

  if (o.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: " << o.output << ": cannot write output\n";
      return kExitComputation;
    }
  }
  return kExitOk;
}

}  // namespace ptmono::cli
