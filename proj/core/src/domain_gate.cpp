#include "nctherm/domain_gate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nctherm/error.hpp"

namespace nctherm {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::QGreater: return "QGreater";
    case Branch::QLess: return "QLess";
    case Branch::QUnity: return "QUnity";
  }
  return "?";
}

std::string_view to_string(PrefactorMode m) {
  return m == PrefactorMode::Full ? "Full" : "Reduced";
}

PrefactorMode prefactor_mode_from_string(std::string_view s) {
  if (s == "full" || s == "Full") return PrefactorMode::Full;
  if (s == "reduced" || s == "Reduced") return PrefactorMode::Reduced;
  raise(Errc::InvalidParameter, "prefactor mode must be full or reduced, got '" + std::string(s) + "'");
}

StatState::StatState(double q, double beta, const PhysicalParams& params)
    : q_(q), beta_(beta), params_(params) {
  if (!(std::isfinite(q) && q > 0)) raise(Errc::InvalidParameter, "q must be > 0");
  if (!(std::isfinite(beta) && beta > 0)) raise(Errc::InvalidParameter, "beta must be > 0");
  freqs_ = derive_frequencies(params_);
}

namespace gate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

DomainCheck strict_below(std::string id, double actual, double bound) {
  DomainCheck c{std::move(id), bound, actual, CheckStatus::Fail, {}};
  if (actual < bound) c.status = CheckStatus::Pass;
  return c;
}

DomainCheck not_applicable(std::string id, std::string note) {
  return {std::move(id), kNaN, kNaN, CheckStatus::NotApplicable, std::move(note)};
}

DomainCheck unformable(std::string id) {
  return {std::move(id), kNaN, kNaN, CheckStatus::Fail, "needs Omega_tilde^2 > 0"};
}

}  // namespace

std::string_view to_string(DomainLabel d) {
  switch (d) {
    case DomainLabel::Main: return "Main";
    case DomainLabel::Restricted: return "Restricted";
    case DomainLabel::Critical: return "Critical";
    case DomainLabel::Invalid: return "Invalid";
  }
  return "?";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Standard: return "Standard";
    case Regime::PureNonextensive: return "PureNonextensive";
    case Regime::PureNoncommutative: return "PureNoncommutative";
    case Regime::Coupled: return "Coupled";
    case Regime::CriticalBoundary: return "CriticalBoundary";
    case Regime::SuperExtensive: return "SuperExtensive";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::PassVacuous: return "pass-vacuous";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

const DomainCheck* DomainReport::find(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string DomainReport::reason() const {
  for (const auto& c : checks) {
    if (!c.failed()) continue;
    std::ostringstream os;
    os.precision(17);
    os << c.id << " failed (actual " << c.actual << ", bound " << c.bound << ")";
    if (!c.note.empty()) os << ": " << c.note;
    return os.str();
  }
  return {};
}

Regime regime_label(double q, double theta, double eps_q, double eps_theta) {
  if (std::fabs(q - 1.5) <= eps_q) return Regime::CriticalBoundary;
  if (q < 1.0 - eps_q) return Regime::SuperExtensive;
  const bool commutative = theta <= eps_theta;
  if (std::fabs(q - 1.0) <= eps_q) return commutative ? Regime::Standard : Regime::PureNoncommutative;
  return commutative ? Regime::PureNonextensive : Regime::Coupled;
}

double max_nonextensivity(double theta, double beta, const PhysicalParams& params) {
  if (!(beta > 0)) raise(Errc::InvalidParameter, "beta must be > 0");
  PhysicalParams p = params;
  p.theta = theta;
  const double g = p.theta_scaled();
  if (!(g < 2.0)) raise(Errc::DeformationTooLarge, "M omega_c theta / hbar must be < 2");
  const double wc = p.omega_c();
  const double Om = std::sqrt(wc * wc + 4.0 * p.omega0 * p.omega0);
  return 1.0 + 2.0 / (beta * p.hbar * Om * (2.0 - g));
}

std::optional<double> max_field(double q, double theta, const PhysicalParams& params,
                                const GateOptions& opt) {
  if (!(theta > 0)) return std::nullopt;
  double bmax = 2.0 * params.hbar * params.light_speed / (params.charge * theta);
  if (opt.delta && q > 1.0 + opt.eps_q) bmax /= 1.0 + opt.delta(q) / (q - 1.0);
  if (!(std::isfinite(bmax) && bmax > 0)) return std::nullopt;
  return bmax;
}

DomainReport classify(double q, const PhysicalParams& p, double beta, const GateOptions& opt) {
  p.validate();
  if (!(beta > 0)) raise(Errc::InvalidParameter, "beta must be > 0");

  DomainReport rep;
  rep.regime_label = regime_label(q, p.theta, opt.eps_q, opt.eps_theta);
  const Branch br = branch_of(q, opt.eps_q);
  const double g = p.theta_scaled();

  // (a) validity-table row
  DomainLabel row = DomainLabel::Invalid;
  {
    DomainCheck c;
    if (!(q > 0)) {
      c = {"table1-row", kNaN, g, CheckStatus::Fail, "q must be > 0"};
    } else if (std::fabs(q - 1.5) <= opt.eps_q) {
      c = {"table1-row", kNaN, g, CheckStatus::Fail, "q = 3/2 is excluded (critical boundary)"};
    } else if (br == Branch::QUnity) {
      c = strict_below("table1-row", g, 2.0);
      c.note = "q = 1 uses the Main-row deformation bound";
      row = DomainLabel::Main;
    } else if (br == Branch::QGreater && q < 1.5) {
      c = strict_below("table1-row", g, 2.0);
      row = DomainLabel::Main;
    } else if (br == Branch::QGreater) {
      c = strict_below("table1-row", g, 1.0 + 2.0 / (q - 1.0));
      row = g < 2.0 ? DomainLabel::Main : DomainLabel::Restricted;
    } else {
      c = strict_below("table1-row", g, 1.0 - 1.0 / (2.0 * (1.0 - q)));
      if (c.bound <= 0) c.note = "bound is non-positive for q > 1/2 (row applied as printed)";
      row = DomainLabel::Critical;
    }
    rep.checks.push_back(c);
  }

  // (b) Omega_tilde^2 > 0
  std::optional<NCFrequencies> f;
  {
    const double wc = p.omega_c();
    const double Om2 = wc * wc + 4.0 * p.omega0 * p.omega0;
    const double s = deformation_factor(p);
    DomainCheck c{"omega-positivity", 0.0, Om2 * s, CheckStatus::Fail, {}};
    if (Om2 * s > 0) {
      try {
        f = derive_frequencies(p);
        c.status = CheckStatus::Pass;
      } catch (const Error& e) {
        c.note = e.what();
      }
    }
    rep.checks.push_back(c);
  }

  const double hb = p.hbar;
  const double eEX = f ? p.charge * (p.E1 * f->x0 + p.E2 * f->y0) : kNaN;

  // (c) thermodynamic stability, q > 1
  if (br != Branch::QGreater) {
    rep.checks.push_back(not_applicable("stability", "only constrains q > 1"));
  } else if (!f) {
    rep.checks.push_back(unformable("stability"));
  } else {
    rep.checks.push_back(strict_below(
        "stability", (q - 1.0) * beta * hb * (f->Omega_tilde + f->omega_c_tilde), 2.0));
  }

  // (d) ground-state bracket
  if (br == Branch::QUnity) {
    rep.checks.push_back(not_applicable("ground-state", "q = 1"));
  } else if (!f) {
    rep.checks.push_back(unformable("ground-state"));
  } else {
    DomainCheck c = strict_below("ground-state", (q - 1.0) * beta * f->E0, 1.0);
    if (br == Branch::QGreater && f->E0 < 0) {
      c.status = CheckStatus::PassVacuous;
      c.note = "E0 < 0";
    }
    rep.checks.push_back(c);
  }

  // (e) full constraint with the electric-field shift, taken as printed (natural-unit form)
  if (br == Branch::QUnity) {
    rep.checks.push_back(not_applicable("full-electric", "q = 1"));
  } else if (!f) {
    rep.checks.push_back(unformable("full-electric"));
  } else {
    const double Ot = f->Omega_tilde;
    const double bracket = 0.5 - eEX / (2.0 * hb * hb * Ot * Ot);
    DomainCheck c = strict_below("full-electric", (q - 1.0) * beta * hb * Ot * bracket, 1.0);
    if (br == Branch::QGreater && bracket < 0) {
      c.status = CheckStatus::PassVacuous;
      c.note = "field-shifted bracket < 0";
    }
    rep.checks.push_back(c);
  }

  // (f) q < 1 regularization bound
  if (br != Branch::QLess) {
    rep.checks.push_back(not_applicable("q-lt-1-regularization", "only constrains q < 1"));
  } else {
    const double wc = p.omega_c();
    const double Om = std::sqrt(wc * wc + 4.0 * p.omega0 * p.omega0);
    rep.checks.push_back(strict_below("q-lt-1-regularization", g,
                                      1.0 - 1.0 / (2.0 * (1.0 - q) * beta * hb * Om)));
  }

  bool any_fail = false;
  for (const auto& c : rep.checks) any_fail = any_fail || c.failed();
  rep.domain_label = any_fail ? DomainLabel::Invalid : row;

  if (g < 2.0) rep.q_max = max_nonextensivity(p.theta, beta, p);
  rep.B_max = max_field(q, p.theta, p, opt);
  return rep;
}

namespace {
nlohmann::json num_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}
}  // namespace

void to_json(nlohmann::json& j, const DomainCheck& c) {
  j = nlohmann::json{{"id", c.id},
                     {"bound", num_or_null(c.bound)},
                     {"actual", num_or_null(c.actual)},
                     {"status", std::string(to_string(c.status))}};
  if (!c.note.empty()) j["note"] = c.note;
}

void to_json(nlohmann::json& j, const DomainReport& r) {
  j = nlohmann::json{{"domain_label", std::string(to_string(r.domain_label))},
                     {"regime_label", std::string(to_string(r.regime_label))},
                     {"accepted", r.accepted()},
                     {"checks", r.checks},
                     {"q_max", r.q_max ? nlohmann::json(*r.q_max) : nlohmann::json(nullptr)},
                     {"B_max", r.B_max ? nlohmann::json(*r.B_max) : nlohmann::json(nullptr)}};
}

}  // namespace gate
}  // namespace nctherm
