#pragma once

#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "nctherm/domain_gate.hpp"
#include "nctherm/jet.hpp"
#include "nctherm/options.hpp"

namespace nctherm {

struct ThermoOptions {
  PrefactorMode mode = PrefactorMode::Reduced;
  double eps_q = 1e-6;
};

struct AuxExponentSet {
  double expA = 0, expB = 0, expC = 0;
  // complete chain rule through omega_c, Omega, s, Omega_tilde, omega_c_tilde
  double dA_dB = 0, dB_dB = 0, dC_dB = 0;
  // the truncated partials in their printed form, kept for comparison only
  double dA_dB_printed = 0, dB_dB_printed = 0, dC_dB_printed = 0;
  double F_occ = 0, G_occ = 0;
  double gamma_plus = 0, gamma_minus = 0;
  double frak_a = 0, frak_b = 0;
};

struct ThermoSet {
  double q = 1, beta = 1, theta = 0, B = 1;
  double logZ = 0;
  double Z = 0;
  bool Z_overflow = false;
  double U = 0;
  double C_heat = 0;
  double F = 0;
  double Mag = 0;
  double Chi = 0;
  Branch branch = Branch::QUnity;
  PrefactorMode prefactor_mode = PrefactorMode::Reduced;
};

// The functions below assume a gate-accepted state; they do not re-run the gate.
// Use evaluate_gated() for the checked path.

AuxExponentSet aux_exponents(const StatState& st, const ThermoOptions& opt = {});

// log of the q-dependent Gamma-ratio factor (0 on the q = 1 branch).
double log_gamma_factor(double q, double eps_q = 1e-6);

// log Z as a jet in B.
Jet log_partition_jet(const StatState& st, const ThermoOptions& opt = {});

double log_partition(const StatState& st, const ThermoOptions& opt = {});
double partition(const StatState& st, const ThermoOptions& opt = {});
double internal_energy(const StatState& st, const ThermoOptions& opt = {});
double heat_capacity(const StatState& st, const ThermoOptions& opt = {});
// F, M and chi scale with the particle count params().n; U and C are per gas.
double free_energy(const StatState& st, const ThermoOptions& opt = {});
double magnetization(const StatState& st, const ThermoOptions& opt = {});
double susceptibility(const StatState& st, const ThermoOptions& opt = {});

ThermoSet evaluate(const StatState& st, const ThermoOptions& opt = {});

struct GatedEvaluation {
  gate::DomainReport report;
  std::optional<ThermoSet> result;  // empty when the gate rejects
};

GatedEvaluation evaluate_gated(double q, const PhysicalParams& params, double beta,
                               const ThermoOptions& opt = {}, const gate::GateOptions& gopt = {});

void to_json(nlohmann::json& j, const ThermoSet& t);
void to_json(nlohmann::json& j, const AuxExponentSet& a);

}  // namespace nctherm
