#pragma once

#include <nlohmann/json_fwd.hpp>

#include "nctherm/jet.hpp"

namespace nctherm {

// Natural units by default: hbar = k_B = M = e = c = 1.
struct PhysicalParams {
  double mass = 1.0;
  double charge = 1.0;
  double light_speed = 1.0;
  double hbar = 1.0;
  double k_B = 1.0;
  double omega0 = 0.5;
  double B = 1.0;
  double E1 = 0.0;
  double E2 = 0.0;
  double theta = 0.0;
  double R = 1.0;
  double Lz = 1.0;
  double n = 1.0;

  double omega_c() const { return charge * B / (mass * light_speed); }
  double volume() const;
  // M*omega_c*theta/hbar, the dimensionless combination the validity table bounds.
  double theta_scaled() const { return mass * omega_c() * theta / hbar; }

  // Throws InvalidParameter / UndefinedGuidingCenter.
  void validate() const;
};

PhysicalParams with_theta_scaled(PhysicalParams p, double g);
PhysicalParams with_omega_c(PhysicalParams p, double omega_c);

struct NCFrequencies {
  double hbar = 1.0;
  double omega_c = 0.0;
  double Omega = 0.0;
  double s = 1.0;
  double Omega_tilde = 0.0;
  double omega_c_tilde = 0.0;
  double Omega_plus = 0.0;
  double Omega_minus = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double E0 = 0.0;

  // omega0 = 0 leaves one helicity index with zero spacing.
  bool degenerate() const { return Omega_minus == 0.0 || Omega_plus == 0.0; }
};

// Same quantities carried as jets in B (first and second derivative).
struct FrequencyJets {
  Jet omega_c, Omega, s, Omega_tilde, omega_c_tilde, Omega_plus, Omega_minus, E0;
  double x0 = 0.0, y0 = 0.0;
};

// Deformation factor evaluated directly from its defining polynomial in theta.
double deformation_factor(const PhysicalParams& p);
// Same factor through (omega_c_tilde^2 + 4 omega0^2) / Omega^2.
double deformation_factor_factored(const PhysicalParams& p);

FrequencyJets frequency_jets(const PhysicalParams& p);
NCFrequencies derive_frequencies(const PhysicalParams& p);

double energy_level(const NCFrequencies& f, long long n_plus, long long n_minus);
double ground_energy(const NCFrequencies& f);

void to_json(nlohmann::json& j, const PhysicalParams& p);
void to_json(nlohmann::json& j, const NCFrequencies& f);

}  // namespace nctherm
