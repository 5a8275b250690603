#include "nctherm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "nctherm/error.hpp"

namespace nctherm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) raise(Errc::InvalidParameter, what);
}

bool finite_all(const PhysicalParams& p) {
  for (double v : {p.mass, p.charge, p.light_speed, p.hbar, p.k_B, p.omega0, p.B, p.E1,
                   p.E2, p.theta, p.R, p.Lz, p.n})
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

double PhysicalParams::volume() const { return 2.0 * std::numbers::pi * R * R * Lz; }

void PhysicalParams::validate() const {
  require(finite_all(*this), "all parameters must be finite");
  require(mass > 0 && charge > 0 && light_speed > 0 && hbar > 0 && k_B > 0,
          "unit constants M, e, c, hbar, k_B must be > 0");
  require(B > 0, "B must be > 0");
  require(theta >= 0, "theta must be >= 0");
  require(omega0 >= 0, "omega0 must be >= 0");
  require(E1 >= 0 && E2 >= 0, "E1, E2 must be >= 0");
  require(R > 0 && Lz > 0, "R and Lz must be > 0");
  require(n >= 1, "particle count n must be >= 1");
  if ((E1 != 0 || E2 != 0) && omega0 == 0)
    raise(Errc::UndefinedGuidingCenter, "electric field requires omega0 > 0");
}

PhysicalParams with_theta_scaled(PhysicalParams p, double g) {
  p.theta = g * p.hbar / (p.mass * p.omega_c());
  return p;
}

PhysicalParams with_omega_c(PhysicalParams p, double omega_c) {
  p.B = omega_c * p.mass * p.light_speed / p.charge;
  return p;
}

double deformation_factor(const PhysicalParams& p) {
  const double wc = p.omega_c();
  // 1 - g/2 + (M Omega theta / 4 hbar)^2 regrouped; the expanded form cancels near g = 4
  const double a = 1.0 - 0.25 * p.mass * wc * p.theta / p.hbar;
  const double b = 0.5 * p.mass * p.omega0 * p.theta / p.hbar;
  return a * a + b * b;
}

double deformation_factor_factored(const PhysicalParams& p) {
  const double wc = p.omega_c();
  const double w02 = p.omega0 * p.omega0;
  const double wct = wc - p.mass * p.theta * (0.25 * wc * wc + w02) / p.hbar;
  return (wct * wct + 4.0 * w02) / (wc * wc + 4.0 * w02);
}

FrequencyJets frequency_jets(const PhysicalParams& p) {
  p.validate();
  FrequencyJets j;
  const double w02 = p.omega0 * p.omega0;
  const double mt = p.mass * p.theta / p.hbar;

  j.omega_c = Jet(p.omega_c(), p.charge / (p.mass * p.light_speed), 0.0);
  const Jet Om2 = j.omega_c * j.omega_c + Jet(4.0 * w02);
  j.Omega = sqrt(Om2);
  const Jet a = Jet(1.0) - (0.25 * mt) * j.omega_c;
  j.s = a * a + Jet(0.25 * mt * mt * w02);
  if (!(j.s.v > 0))
    raise(Errc::NonPositiveDeformation,
          "deformation factor s = " + std::to_string(j.s.v) + " must be > 0");
  j.Omega_tilde = j.Omega * sqrt(j.s);
  j.omega_c_tilde = j.omega_c - mt * (0.25 * j.omega_c * j.omega_c + Jet(w02));

  const double Ot = j.Omega_tilde.v, wct = j.omega_c_tilde.v;
  // rounding in both scales with omega_c, not with the (possibly tiny) Omega_tilde
  if (wct - Ot > 8.0 * std::numeric_limits<double>::epsilon() * std::max(Ot, j.omega_c.v))
    raise(Errc::UnboundedSpectrum, "omega_c_tilde exceeds Omega_tilde");

  // Omega_tilde^2 - omega_c_tilde^2 = 4 omega0^2 identically, so the smaller of the two
  // helicity frequencies is taken from the product form instead of a cancelling difference.
  if (wct >= 0) {
    j.Omega_plus = 0.5 * (j.Omega_tilde + j.omega_c_tilde);
    j.Omega_minus = Jet(w02) / j.Omega_plus;
  } else {
    j.Omega_minus = 0.5 * (j.Omega_tilde - j.omega_c_tilde);
    j.Omega_plus = Jet(w02) / j.Omega_minus;
  }

  if (p.omega0 > 0) {
    j.x0 = p.charge * p.E1 / (p.mass * w02);
    j.y0 = p.charge * p.E2 / (p.mass * w02);
  }
  j.E0 = 0.5 * p.hbar * j.Omega_tilde - Jet(0.5 * p.charge * (p.E1 * j.x0 + p.E2 * j.y0));
  return j;
}

NCFrequencies derive_frequencies(const PhysicalParams& p) {
  const FrequencyJets j = frequency_jets(p);
  NCFrequencies f;
  f.hbar = p.hbar;
  f.omega_c = j.omega_c.v;
  f.Omega = j.Omega.v;
  f.s = j.s.v;
  f.Omega_tilde = j.Omega_tilde.v;
  f.omega_c_tilde = j.omega_c_tilde.v;
  f.Omega_plus = j.Omega_plus.v;
  f.Omega_minus = j.Omega_minus.v;
  f.x0 = j.x0;
  f.y0 = j.y0;
  f.E0 = j.E0.v;
  return f;
}

double energy_level(const NCFrequencies& f, long long n_plus, long long n_minus) {
  if (n_plus < 0 || n_minus < 0) raise(Errc::InvalidParameter, "level indices must be >= 0");
  return f.hbar * f.Omega_plus * static_cast<double>(n_plus) +
         f.hbar * f.Omega_minus * static_cast<double>(n_minus) + f.E0;
}

double ground_energy(const NCFrequencies& f) { return energy_level(f, 0, 0); }

void to_json(nlohmann::json& j, const PhysicalParams& p) {
  j = nlohmann::json{{"M", p.mass},    {"e", p.charge},   {"c", p.light_speed},
                     {"hbar", p.hbar}, {"kB", p.k_B},     {"omega0", p.omega0},
                     {"B", p.B},       {"E1", p.E1},      {"E2", p.E2},
                     {"theta", p.theta}, {"R", p.R},      {"Lz", p.Lz},
                     {"n", p.n}};
}

void to_json(nlohmann::json& j, const NCFrequencies& f) {
  j = nlohmann::json{{"omega_c", f.omega_c},
                     {"Omega", f.Omega},
                     {"s", f.s},
                     {"Omega_tilde", f.Omega_tilde},
                     {"omega_c_tilde", f.omega_c_tilde},
                     {"Omega_plus", f.Omega_plus},
                     {"Omega_minus", f.Omega_minus},
                     {"x0", f.x0},
                     {"y0", f.y0},
                     {"E0", f.E0}};
}

}  // namespace nctherm
