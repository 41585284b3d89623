#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "ufavg/channels.hpp"
#include "ufavg/io.hpp"
#include "ufavg/opbasis.hpp"
#include "ufavg/schur.hpp"
#include "ufavg/sizes.hpp"
#include "ufavg/verify.hpp"

namespace ufavg::cli {

namespace {

struct RunConfig {
  int d = 2;
  int t = 4;
  std::string input = "mixed";
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  QuadratureSpec quadrature;
  std::string convention = "auto";
  std::string output;
  std::string format = "json";
  std::string channel = "compact";
  bool verify = false;
  bool identity_family = false;
  std::string basis_file;
  bool no_runtime_limits = false;
  TolerancePolicy policy;
};

// Raised for problems the user can fix by changing the invocation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised once the primary output is written but a cross-check failed.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes the document to --output, or to `out` when no file is given.
void emit(const RunConfig& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.output.empty()) {
    out << doc;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.output + "'");
  file << doc;
}

// The summary goes to stdout when the document went to a file, else stderr.
std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return cfg.output.empty() ? err : out;
}

void require_json(const RunConfig& cfg, const char* command) {
  if (cfg.format != "json") throw UsageError(std::string(command) + ": only --format json is supported");
}

std::optional<Convention> explicit_convention(const RunConfig& cfg) {
  if (cfg.convention == "auto") return std::nullopt;
  return parse_convention(cfg.convention);
}

ComplexMatrix ket_projector(std::size_t dim, const std::vector<std::pair<std::size_t, Complex>>& amplitudes) {
  ComplexMatrix v(dim, 1);
  for (const auto& [index, amp] : amplitudes) v(index, 0) += amp;
  return outer(v, v);
}

std::optional<ComplexMatrix> preset_state(const std::string& name, int t) {
  const std::size_t n = std::size_t{1} << t;
  const double r = 1.0 / std::sqrt(2.0);
  auto need_four = [&] {
    if (t != 4) throw UsageError("preset '" + name + "' is a 4-qubit state; pass --t 4");
  };
  if (name == "mixed") return ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n));
  if (name == "zero") return ket_projector(n, {{0, 1.0}});
  if (name == "ghz") return ket_projector(n, {{0, r}, {n - 1, r}});
  if (name == "zero4") {
    need_four();
    return ket_projector(n, {{0, 1.0}});
  }
  if (name == "ghz4") {
    need_four();
    return ket_projector(n, {{0, r}, {n - 1, r}});
  }
  if (name == "singlet-pair") {
    need_four();
    // (|01⟩ - |10⟩)/√2 on qubits (1,2) and on qubits (3,4).
    const std::size_t zero_one[] = {0b01, 0b10};
    const double sign[] = {1.0, -1.0};
    std::vector<std::pair<std::size_t, Complex>> amps;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) amps.emplace_back((zero_one[a] << 2) | zero_one[b], 0.5 * sign[a] * sign[b]);
    }
    return ket_projector(n, amps);
  }
  return std::nullopt;
}

DensityMatrix load_state(const RunConfig& cfg) {
  ComplexMatrix m = [&] {
    if (auto preset = preset_state(cfg.input, cfg.t)) return *preset;
    return state_from_json(read_file(cfg.input));
  }();
  DensityMatrix rho(std::move(m));
  const std::size_t expected = std::size_t{1} << cfg.t;
  if (rho.dim() != expected) {
    throw UsageError("state dimension " + std::to_string(rho.dim()) + " does not match d^t = " +
                     std::to_string(expected));
  }
  return rho;
}

AbelianFamily family_for(const RunConfig& cfg) {
  return cfg.identity_family ? identity_family() : sl2c_filter_family();
}

int cmd_schur(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_json(cfg, "schur");
  const SchurBasis basis = build_schur_basis(cfg.d, cfg.t, cfg.policy);
  emit(cfg, schur_basis_to_json(basis), out);
  auto& log = summary_stream(cfg, out, err);
  log << "k  diagram      D_G  D_C\n";
  for (std::size_t k = 0; k < basis.sectors.size(); ++k) {
    const auto& sec = basis.sectors[k];
    std::ostringstream diagram;
    diagram << '[';
    for (std::size_t i = 0; i < sec.diagram.rows.size(); ++i) diagram << (i ? "," : "") << sec.diagram.rows[i];
    diagram << ']';
    log << std::left << std::setw(3) << k + 1 << std::setw(13) << diagram.str() << std::setw(5) << sec.dim_irrep
        << sec.multiplicity << '\n';
  }
  return kExitOk;
}

int cmd_twirl(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_json(cfg, "twirl");
  const SchurOperatorSet s(build_schur_basis(cfg.d, cfg.t, cfg.policy));
  const DensityMatrix rho = load_state(cfg);
  const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
  const std::vector<DensityMatrix> one{rho};

  std::optional<Convention> convention = explicit_convention(cfg);
  std::optional<BetaWeights> beta;
  std::optional<ConventionSelection> selection;
  const AbelianFamily family = family_for(cfg);
  auto noncompact_setup = [&] {
    beta = beta_weights(s, family, cfg.t, cfg.quadrature);
    if (!convention) {
      selection = select_convention(one, s, set, *beta, family, cfg.t, cfg.samples, cfg.seed);
      convention = selection->selected;
    }
  };

  TwirlResult result;
  std::optional<ComplexMatrix> oracle;
  double tolerance = cfg.policy.eq_tol;
  if (cfg.channel == "compact") {
    result = compact_finite_twirl(rho, s, set);
    if (cfg.verify) oracle = haar_projection_twirl(rho, s).state;
  } else if (cfg.channel == "haar") {
    result = haar_projection_twirl(rho, s);
    if (cfg.verify) oracle = compact_finite_twirl(rho, s, set).state;
  } else if (cfg.channel == "mc-haar") {
    result = mc_haar_twirl(rho, cfg.t, cfg.samples, cfg.seed);
    tolerance = mc_tolerance(cfg.samples);
    if (cfg.verify) oracle = haar_projection_twirl(rho, s).state;
  } else if (cfg.channel == "noncompact") {
    noncompact_setup();
    result = noncompact_finite_twirl(rho, s, set, *beta, convention, cfg.policy);
    tolerance = mc_tolerance(cfg.samples);
    if (cfg.verify) oracle = mc_cartan_twirl(rho, cfg.t, family, cfg.samples, cfg.seed).state;
  } else if (cfg.channel == "mc-cartan") {
    result = mc_cartan_twirl(rho, cfg.t, family, cfg.samples, cfg.seed);
    tolerance = mc_tolerance(cfg.samples);
    if (cfg.verify) {
      noncompact_setup();
      oracle = noncompact_finite_twirl(rho, s, set, *beta, convention, cfg.policy).state;
      result.convention = convention;
    }
  } else {
    throw UsageError("unknown channel '" + cfg.channel + "'");
  }

  if (oracle) result.oracle_delta = max_abs_diff(result.state, *oracle);
  emit(cfg, twirl_result_to_json(result), out);

  auto& log = summary_stream(cfg, out, err);
  log << "channel " << result.channel << ", trace " << result.total_trace;
  if (result.convention) log << ", convention " << to_string(*result.convention);
  if (result.oracle_delta) log << ", oracle delta " << *result.oracle_delta << " (tolerance " << tolerance << ")";
  log << '\n';
  if (result.oracle_delta && *result.oracle_delta > tolerance) {
    throw VerificationFailure("oracle delta exceeds tolerance");
  }
  return kExitOk;
}

int cmd_beta(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_json(cfg, "beta");
  const SchurOperatorSet s(build_schur_basis(cfg.d, cfg.t, cfg.policy));
  const AbelianFamily family = family_for(cfg);
  const BetaWeights beta = beta_weights(s, family, cfg.t, cfg.quadrature);
  const std::optional<Convention> convention = explicit_convention(cfg);
  std::optional<ConventionSelection> selection;
  if (!convention) {
    const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
    const auto states = random_states(s.space_dimension(), 4, cfg.seed);
    selection = select_convention(states, s, set, beta, family, cfg.t, cfg.samples, cfg.seed);
  }
  emit(cfg, beta_weights_to_json(beta, family.name, convention, selection), out);

  auto& log = summary_stream(cfg, out, err);
  log << std::setprecision(6);
  for (std::size_t k = 0; k < beta.raw.size(); ++k) {
    log << "k=" << k + 1 << " D=" << beta.sector_dims[k] << " raw " << beta.raw[k] << " normalized "
        << beta.normalized[k] << '\n';
  }
  if (selection) log << "selected convention " << to_string(selection->selected) << '\n';
  return kExitOk;
}

int cmd_sizes(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto rows = emit_table();
  if (cfg.format == "csv") {
    emit(cfg, size_table_csv(rows), out);
  } else if (cfg.format == "json") {
    emit(cfg, size_table_to_json(rows), out);
  } else {
    throw UsageError("unknown format '" + cfg.format + "'");
  }
  return kExitOk;
}

// Pass/fail lines always go to `out`; --output additionally writes a JSON report.
int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg, "verify");
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.samples = cfg.samples;
  vc.quadrature = cfg.quadrature;
  vc.policy = cfg.policy;
  vc.enforce_runtime = !cfg.no_runtime_limits;

  std::vector<CheckResult> checks;
  if (!cfg.basis_file.empty()) {
    checks = check_basis_invariants(schur_basis_from_json(read_file(cfg.basis_file)), vc);
  } else {
    checks = run_acceptance(vc);
    for (auto& c : check_channel_invariants(vc)) checks.push_back(std::move(c));
  }
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.name << " [" << c.detail << "]\n";
    all = all && c.passed;
  }
  if (!cfg.output.empty()) emit(cfg, verify_report_to_json(checks), out);
  if (!all) throw VerificationFailure("one or more invariants failed");
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kToleranceEnv)) {
    try {
      cfg.policy.eq_tol = std::stod(env);
      cfg.policy.validate();
    } catch (const std::exception&) {
      err << "error: " << kToleranceEnv << " must be a positive number\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Finite unitary averaging: Schur bases, twirls, beta weights and set sizes", "ufavg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--d", cfg.d, "local dimension")->capture_default_str();
  app.add_option("--t", cfg.t, "number of tensor factors")->capture_default_str();
  app.add_option("--seed", cfg.seed, "64-bit seed for all randomness")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte-Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--x-max", cfg.quadrature.x_max, "quadrature cut-off")->capture_default_str();
  app.add_option("--nodes", cfg.quadrature.nodes, "Gauss-Legendre nodes")->capture_default_str();
  app.add_option("--convention", cfg.convention, "beta reading")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "raw", "normalized"}));
  app.add_option("--output", cfg.output, "output file (default stdout)");
  app.add_option("--format", cfg.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--identity-family", cfg.identity_family, "replace the filter family by A = I");

  auto* schur = app.add_subcommand("schur", "build and write a Schur basis");
  auto* twirl = app.add_subcommand("twirl", "apply a twirling channel to a state");
  twirl->add_option("--input", cfg.input, "state file or preset (ghz4, zero4, mixed, singlet-pair, ghz, zero)")
      ->capture_default_str();
  twirl->add_option("--channel", cfg.channel, "channel to run")
      ->capture_default_str()
      ->check(CLI::IsMember({"compact", "noncompact", "haar", "mc-haar", "mc-cartan"}));
  twirl->add_flag("--verify", cfg.verify, "cross-check against the matching oracle");
  auto* beta = app.add_subcommand("beta", "compute beta weights for the filter family");
  auto* sizes = app.add_subcommand("sizes", "emit the size comparison table");
  auto* verify = app.add_subcommand("verify", "run the acceptance and invariant suite");
  verify->add_option("--basis", cfg.basis_file, "check the invariants of a basis file instead");
  verify->add_flag("--no-runtime-limits", cfg.no_runtime_limits, "do not fail checks on runtime");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*schur) return cmd_schur(cfg, out, err);
    if (*twirl) return cmd_twirl(cfg, out, err);
    if (*beta) return cmd_beta(cfg, out, err);
    if (*sizes) return cmd_sizes(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out);
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const InvalidStateError& e) {
    err << "error: invalid state, violated invariant '" << e.invariant() << "': " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const LinearDependenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InsufficientSamplesError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConventionError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace ufavg::cli
