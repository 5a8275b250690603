#include "nctherm/cli/dispatch.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nctherm/asymptotics.hpp"
#include "nctherm/cli/config.hpp"
#include "nctherm/domain_gate.hpp"
#include "nctherm/error.hpp"
#include "nctherm/oracles.hpp"
#include "nctherm/sweep.hpp"
#include "nctherm/thermo.hpp"
#include "nctherm/version.hpp"

namespace nctherm::cli {

namespace {

struct StateFlags {
  std::string config_path;
  nlohmann::json overrides = nlohmann::json::object();
};

void add_state_options(CLI::App* sub, StateFlags& f) {
  sub->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  auto num = [&](const char* flag, const char* block, const char* key, const char* help) {
    sub->add_option_function<double>(flag, [&f, block, key](double v) { f.overrides[block][key] = v; }, help);
  };
  num("--q", "statistics", "q", "entropic index");
  num("--beta", "statistics", "beta", "inverse temperature");
  num("--n", "statistics", "n", "particle number");
  num("--B", "fields", "B", "magnetic field");
  num("--omega-c", "fields", "omega_c", "cyclotron frequency (sets B)");
  num("--E1", "fields", "E1", "electric field, x component");
  num("--E2", "fields", "E2", "electric field, y component");
  num("--omega0", "fields", "omega0", "trap frequency");
  num("--theta", "nc", "theta", "noncommutativity parameter");
  num("--theta-scaled", "nc", "theta_scaled", "M omega_c theta / hbar");
  num("--R", "geometry", "R", "radius");
  num("--Lz", "geometry", "Lz", "height");
  num("--hbar", "units", "hbar", "");
  num("--kB", "units", "kB", "");
  num("--mass", "units", "M", "");
  num("--charge", "units", "e", "");
  num("--c", "units", "c", "");
  num("--rel-tol", "tolerances", "rel_tol", "oracle tolerance");
  num("--eps-q", "tolerances", "eps_q", "q = 1 branch half-width");
  sub->add_option_function<std::string>(
      "--mode", [&f](const std::string& m) { f.overrides["prefactor_mode"] = m; }, "Full | Reduced");
}

FullConfig load(const StateFlags& f) {
  std::string text;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) raise(Errc::IoFailure, "cannot read '" + f.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config(text, f.overrides);
}

gate::GateOptions gate_options(const FullConfig& c) {
  gate::GateOptions g;
  g.eps_q = c.tol.eps_q;
  g.eps_theta = c.tol.eps_theta;
  return g;
}

ThermoOptions thermo_options(const FullConfig& c) {
  ThermoOptions t;
  t.mode = c.prefactor_mode;
  t.eps_q = c.tol.eps_q;
  return t;
}

int exit_for(Errc code) {
  switch (code) {
    case Errc::InvalidParameter:
    case Errc::ValidationError:
    case Errc::ParseError:
    case Errc::InvalidSpec:
    case Errc::IoFailure:
      return kUsage;
    case Errc::NonPositiveDeformation:
    case Errc::UnboundedSpectrum:
    case Errc::UndefinedGuidingCenter:
    case Errc::DeformationTooLarge:
    case Errc::GammaPole:
    case Errc::OutsideClosedForm:
    case Errc::DomainRejected:
    case Errc::AllPointsInvalid:
    case Errc::RegimeViolation:
    case Errc::DegenerateDenominator:
      return kDomainRejected;
    default:
      return kCheckFailed;
  }
}

int cmd_validate(const StateFlags& f, std::ostream& out) {
  const FullConfig c = load(f);
  const gate::DomainReport r = gate::classify(c.q, c.params, c.beta, gate_options(c));
  out << nlohmann::json(r).dump(2) << '\n';
  return r.accepted() ? kOk : kDomainRejected;
}

int cmd_eval(const StateFlags& f, std::ostream& out, std::ostream& err) {
  const FullConfig c = load(f);
  const GatedEvaluation g = evaluate_gated(c.q, c.params, c.beta, thermo_options(c), gate_options(c));
  if (!g.result) {
    err << "nctherm: rejected by the domain gate: " << g.report.reason() << '\n';
    out << nlohmann::json{{"domain", g.report}}.dump(2) << '\n';
    return kDomainRejected;
  }
  nlohmann::json j = *g.result;
  j["domain_label"] = std::string(gate::to_string(g.report.domain_label));
  j["regime_label"] = std::string(gate::to_string(g.report.regime_label));
  out << j.dump(2) << '\n';
  return kOk;
}

struct SweepFlags {
  std::string preset;
  std::vector<std::string> axes;
  std::vector<std::string> quantities;
  std::string format = "csv";
  std::string out;
  unsigned parallel = 1;
  bool strict = false;
};

// variable:start:stop:count[:log|linear]
sweep::Axis parse_axis(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.size() < 4 || parts.size() > 5)
    raise(Errc::InvalidSpec, "axis '" + s + "' should be variable:start:stop:count[:log]");
  sweep::Axis a;
  a.variable = parts[0];
  try {
    a.start = std::stod(parts[1]);
    a.stop = std::stod(parts[2]);
    a.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    raise(Errc::InvalidSpec, "axis '" + s + "' has a non-numeric field");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") a.spacing = sweep::Spacing::Log;
    else if (parts[4] != "linear") raise(Errc::InvalidSpec, "axis spacing must be log or linear");
  }
  return a;
}

int cmd_sweep(const StateFlags& f, const SweepFlags& sf, std::ostream& out) {
  const FullConfig c = load(f);
  sweep::SweepSpec spec;
  if (!sf.preset.empty()) {
    if (!sf.axes.empty()) raise(Errc::InvalidSpec, "--preset and --axis are exclusive");
    spec = sweep::preset(sf.preset);
    // physical parameters still come from the config; the preset owns q, beta and the mode
    spec.base = c.params;
  } else {
    if (sf.axes.empty()) raise(Errc::InvalidSpec, "need --preset or at least one --axis");
    for (const auto& a : sf.axes) spec.axes.push_back(parse_axis(a));
    spec.base = c.params;
    spec.q = c.q;
    spec.beta = c.beta;
    spec.prefactor_mode = c.prefactor_mode;
    spec.quantities = {"logZ"};
  }
  if (!sf.quantities.empty()) spec.quantities = sf.quantities;
  if (sf.quantities.size() == 1 && sf.quantities[0] == "none") spec.quantities.clear();
  spec.tol = c.tol;
  spec.skip_invalid = !sf.strict;
  spec.workers = sf.parallel;

  const sweep::Format fmt = sweep::format_from_string(sf.format);
  const sweep::SweepTable t = sweep::run(spec);
  if (sf.out.empty()) sweep::emit(t, fmt, out);
  else sweep::emit(t, fmt, sf.out);
  return kOk;
}

int cmd_oracle(const StateFlags& f, std::ostream& out, std::ostream& err) {
  const FullConfig c = load(f);
  oracle::TolProfile prof;
  prof.tol = c.tol;
  prof.thermo = thermo_options(c);
  prof.gate = gate_options(c);
  const oracle::CheckReport r = oracle::cross_check(StatState(c.q, c.beta, c.params), prof);
  out << nlohmann::json(r).dump(2) << '\n';
  if (r.refused) {
    err << "nctherm: " << r.refusal_reason << '\n';
    return kDomainRejected;
  }
  if (!r.passed()) {
    for (const auto& p : r.pairs)
      if (p.status == oracle::PairStatus::Fail) err << "nctherm: oracle pair failed: " << p.id << '\n';
    return kCheckFailed;
  }
  return kOk;
}

int cmd_asympt(const StateFlags& f, int points, const std::string& law_mode, std::ostream& out,
               std::ostream& err) {
  const FullConfig c = load(f);
  asym::LawOptions opt;
  opt.points = points;
  opt.mode = prefactor_mode_from_string(law_mode);
  const auto laws = asym::run_power_laws(c.params, opt);
  bool ok = true;
  for (const auto& l : laws) {
    if (l.informational || l.pass) continue;
    ok = false;
    err << "nctherm: " << l.regime << " " << l.quantity << " exponent " << l.exponent << ", expected "
        << l.expected << " +- " << l.tolerance << '\n';
  }
  nlohmann::json j{{"fits", laws}, {"all_pass", ok}};

  // the closed forms at the configured state, when it sits in either regime
  const StatState st(c.q, c.beta, c.params);
  asym::AsymOptions aopt;
  aopt.eps_q = c.tol.eps_q;
  try {
    if (st.x() <= aopt.x_hi) j["state"] = asym::high_T(st, aopt);
    else if (st.x() >= aopt.x_lo) j["state"] = asym::low_T(st, aopt);
  } catch (const Error& e) {
    j["state_error"] = e.what();
  }
  out << j.dump(2) << '\n';
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsallis thermodynamics of a 2D electron gas on a noncommutative plane", "nctherm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  StateFlags flags;
  auto* validate = app.add_subcommand("validate", "print the domain report for one state");
  auto* eval = app.add_subcommand("eval", "evaluate logZ, U, C, F, M, chi at one state");
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate over a grid and emit CSV or JSON");
  auto* oracle_cmd = app.add_subcommand("oracle", "cross-check independent routes at one state");
  auto* asympt = app.add_subcommand("asympt", "fit the high/low temperature power laws");
  for (auto* s : {validate, eval, sweep_cmd, oracle_cmd, asympt}) add_state_options(s, flags);

  SweepFlags sf;
  sweep_cmd->add_option("--preset", sf.preset, "fig1..fig6");
  sweep_cmd->add_option("--axis", sf.axes, "variable:start:stop:count[:log] (repeatable, first is slowest)");
  sweep_cmd->add_option("--quantities", sf.quantities, "logZ,Z,U,C,F,M,chi or none")->delimiter(',');
  sweep_cmd->add_option("--format", sf.format, "csv | json")->capture_default_str();
  sweep_cmd->add_option("--out", sf.out, "output path (default stdout)");
  sweep_cmd->add_option("--parallel", sf.parallel, "worker threads, 0 = all cores")->capture_default_str();
  sweep_cmd->add_flag("--strict", sf.strict, "fail on the first rejected point");

  int points = 21;
  std::string law_mode = "Full";
  asympt->add_option("--points", points, "samples per fit window")->check(CLI::Range(5, 10000))->capture_default_str();
  asympt->add_option("--law-mode", law_mode, "prefactor mode for the fits")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "nctherm: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(flags, out);
    if (*eval) return cmd_eval(flags, out, err);
    if (*sweep_cmd) return cmd_sweep(flags, sf, out);
    if (*oracle_cmd) return cmd_oracle(flags, out, err);
    if (*asympt) return cmd_asympt(flags, points, law_mode, out, err);
  } catch (const Error& e) {
    err << "nctherm: " << e.what() << '\n';
    return exit_for(e.code());
  }
  return kUsage;
}

}  // namespace nctherm::cli
