#include "nctherm/thermo.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "nctherm/error.hpp"
#include "nctherm/special_functions.hpp"

namespace nctherm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kMaxLog = std::log(std::numeric_limits<double>::max());

struct Pieces {
  Branch branch;
  double k;  // (3 - q)/2
  FrequencyJets fj;
  Jet A, Bq, Cq;
  bool has_B, has_C;  // a helicity factor with zero spacing is carried by the prefactor
};

Pieces pieces(const StatState& st, const ThermoOptions& opt) {
  Pieces p;
  p.branch = branch_of(st.q(), opt.eps_q);
  if (st.q() >= 3.0) raise(Errc::OutsideClosedForm, "closed form needs q < 3");
  p.k = p.branch == Branch::QUnity ? 1.0 : 0.5 * (3.0 - st.q());
  p.fj = frequency_jets(st.params());
  const double kb = p.k * st.beta();
  const double hb = st.params().hbar;
  p.A = kb * p.fj.E0;
  p.Bq = (kb * hb) * p.fj.Omega_minus;
  p.Cq = (kb * hb) * p.fj.Omega_plus;
  p.has_B = p.Bq.v > 0;
  p.has_C = p.Cq.v > 0;
  return p;
}

double occupation(double y) { return 1.0 / std::expm1(y); }

// y^2 e^{-y} / (1 - e^{-y})^2
double fluctuation(double y) {
  const double em = std::expm1(-y);
  return y * y * std::exp(-y) / (em * em);
}

Jet prefactor_jet(const StatState& st, const FrequencyJets& fj) {
  const PhysicalParams& pp = st.params();
  const double hb = pp.hbar, M = pp.mass;
  return Jet(std::log(pp.volume()) + std::log(M / (kTwoPi * hb)) +
             0.5 * std::log(M / (kTwoPi * hb * hb * st.beta()))) +
         log(fj.omega_c);
}

double q_log_weight(double q, double logZ, Branch br) {
  // Z^{1-q}, the factor multiplying the q = 1 forms of F, M and chi
  if (br == Branch::QUnity) return 1.0;
  const double e = (1.0 - q) * logZ;
  if (e > kMaxLog) raise(Errc::Overflow, "Z^(1-q) overflows");
  return std::exp(e);
}

}  // namespace

double log_gamma_factor(double q, double eps_q) {
  const Branch br = branch_of(q, eps_q);
  if (br == Branch::QUnity) return 0.0;
  if (q >= 3.0) raise(Errc::OutsideClosedForm, "closed form needs q < 3");
  if (std::fabs(q - 1.5) <= eps_q) raise(Errc::GammaPole, "q = 3/2 excluded");
  if (br == Branch::QGreater) {
    const double a = 1.0 / (q - 1.0);
    return log_gamma_ratio_scaled(a, 0.5);
  }
  const double a = 1.0 / (1.0 - q);
  const double A = a + 1.5;
  return log_gamma_ratio_scaled(A, 0.5) + 0.5 * std::log1p(-1.5 / A);
}

AuxExponentSet aux_exponents(const StatState& st, const ThermoOptions& opt) {
  const Pieces p = pieces(st, opt);
  const PhysicalParams& pp = st.params();
  const NCFrequencies& f = st.freqs();
  AuxExponentSet a;
  a.expA = p.A.v;
  a.expB = p.Bq.v;
  a.expC = p.Cq.v;
  a.dA_dB = p.A.d;
  a.dB_dB = p.Bq.d;
  a.dC_dB = p.Cq.d;
  a.F_occ = p.has_B ? occupation(p.Bq.v) : 0.0;
  a.G_occ = p.has_C ? occupation(p.Cq.v) : 0.0;
  a.gamma_plus = 2.0 * p.Bq.v;
  a.gamma_minus = 2.0 * p.Cq.v;
  a.frak_a = 2.0 * st.beta() * pp.hbar * f.Omega_minus;
  a.frak_b = 2.0 * st.beta() * pp.hbar * f.Omega_plus;

  // Printed partials: only the explicit theta-dependence of sqrt(s) is differentiated.
  const double hb = pp.hbar, Ot = f.Omega_tilde, wct = f.omega_c_tilde;
  const double D = -pp.charge * f.Omega * pp.theta / (4.0 * hb * pp.light_speed * std::sqrt(f.s));
  const double eEX = pp.charge * (pp.E1 * f.x0 + pp.E2 * f.y0);
  const double kbh = p.k * st.beta() * hb;
  a.dA_dB_printed = kbh * (D * (0.5 - eEX / (2.0 * hb * Ot)) + Ot * eEX / (2.0 * hb * Ot * Ot) * D);
  const double dwct = (pp.charge / (pp.mass * pp.light_speed)) *
                      (1.0 - 2.0 * pp.omega0 * pp.omega0 * pp.mass * pp.theta / (f.omega_c * hb));
  const double ratio = (Ot * dwct - wct * D) / (Ot * Ot);
  a.dB_dB_printed = kbh * (D * (1.0 - wct / Ot) - Ot * ratio);
  a.dC_dB_printed = kbh * (D * (1.0 + wct / Ot) + Ot * ratio);
  return a;
}

Jet log_partition_jet(const StatState& st, const ThermoOptions& opt) {
  const Pieces p = pieces(st, opt);
  Jet L = Jet(log_gamma_factor(st.q(), opt.eps_q)) - p.A;
  if (p.has_B) L = L + neg_log1mexp(p.Bq);
  if (p.has_C) L = L + neg_log1mexp(p.Cq);
  if (opt.mode == PrefactorMode::Full) L = L + prefactor_jet(st, p.fj);
  return L;
}

double log_partition(const StatState& st, const ThermoOptions& opt) {
  return log_partition_jet(st, opt).v;
}

double partition(const StatState& st, const ThermoOptions& opt) {
  const double L = log_partition(st, opt);
  if (L > kMaxLog) raise(Errc::Overflow, "Z exceeds the double range; use logZ");
  return std::exp(L);
}

double internal_energy(const StatState& st, const ThermoOptions& opt) {
  const Pieces p = pieces(st, opt);
  const double hb = st.params().hbar;
  double U = p.k * p.fj.E0.v;
  if (p.has_B) U += p.k * hb * p.fj.Omega_minus.v * occupation(p.Bq.v);
  if (p.has_C) U += p.k * hb * p.fj.Omega_plus.v * occupation(p.Cq.v);
  if (opt.mode == PrefactorMode::Full) U += 0.5 / st.beta();
  return U;
}

double heat_capacity(const StatState& st, const ThermoOptions& opt) {
  // gamma/2 is the exponent B_q (resp. C_q); the bracket of the two printed terms
  // collapses to e^{-y}/(1-e^{-y})^2 with y = gamma/2.
  const Pieces p = pieces(st, opt);
  const double kB = st.params().k_B;
  double C = 0.0;
  if (p.has_B) C += kB * fluctuation(p.Bq.v);
  if (p.has_C) C += kB * fluctuation(p.Cq.v);
  if (opt.mode == PrefactorMode::Full) C += 0.5 * kB;
  return C;
}

double free_energy(const StatState& st, const ThermoOptions& opt) {
  const Branch br = branch_of(st.q(), opt.eps_q);
  const double L = log_partition(st, opt);
  const double nb = st.params().n / st.beta();
  if (br == Branch::QUnity) return -nb * L;
  const double e = (1.0 - st.q()) * L;
  if (e > kMaxLog) raise(Errc::Overflow, "Z^(1-q) overflows");
  return -nb * std::expm1(e) / (1.0 - st.q());
}

double magnetization(const StatState& st, const ThermoOptions& opt) {
  const Branch br = branch_of(st.q(), opt.eps_q);
  const Jet L = log_partition_jet(st, opt);
  return st.params().n / st.beta() * q_log_weight(st.q(), L.v, br) * L.d;
}

double susceptibility(const StatState& st, const ThermoOptions& opt) {
  const Branch br = branch_of(st.q(), opt.eps_q);
  const Jet L = log_partition_jet(st, opt);
  const double w = q_log_weight(st.q(), L.v, br);
  const double oneq = br == Branch::QUnity ? 0.0 : 1.0 - st.q();
  return -st.params().n / st.beta() * w * (oneq * L.d * L.d + L.dd);
}

ThermoSet evaluate(const StatState& st, const ThermoOptions& opt) {
  ThermoSet t;
  t.q = st.q();
  t.beta = st.beta();
  t.theta = st.params().theta;
  t.B = st.params().B;
  t.branch = branch_of(st.q(), opt.eps_q);
  t.prefactor_mode = opt.mode;
  const Jet L = log_partition_jet(st, opt);
  t.logZ = L.v;
  t.Z_overflow = L.v > kMaxLog;
  t.Z = t.Z_overflow ? std::numeric_limits<double>::infinity() : std::exp(L.v);
  t.U = internal_energy(st, opt);
  t.C_heat = heat_capacity(st, opt);
  t.F = free_energy(st, opt);
  const double nb = st.params().n / st.beta();
  const double w = q_log_weight(st.q(), L.v, t.branch);
  const double oneq = t.branch == Branch::QUnity ? 0.0 : 1.0 - st.q();
  t.Mag = nb * w * L.d;
  t.Chi = -nb * w * (oneq * L.d * L.d + L.dd);
  return t;
}

GatedEvaluation evaluate_gated(double q, const PhysicalParams& params, double beta,
                               const ThermoOptions& opt, const gate::GateOptions& gopt) {
  GatedEvaluation g;
  g.report = gate::classify(q, params, beta, gopt);
  if (g.report.accepted()) g.result = evaluate(StatState(q, beta, params), opt);
  return g;
}

void to_json(nlohmann::json& j, const ThermoSet& t) {
  j = nlohmann::json{{"q", t.q},
                     {"beta", t.beta},
                     {"theta", t.theta},
                     {"B", t.B},
                     {"logZ", t.logZ},
                     {"Z", t.Z_overflow ? nlohmann::json(nullptr) : nlohmann::json(t.Z)},
                     {"U", t.U},
                     {"C", t.C_heat},
                     {"F", t.F},
                     {"M", t.Mag},
                     {"chi", t.Chi},
                     {"branch", std::string(to_string(t.branch))},
                     {"prefactor_mode", std::string(to_string(t.prefactor_mode))}};
}

void to_json(nlohmann::json& j, const AuxExponentSet& a) {
  j = nlohmann::json{{"A", a.expA},
                     {"B", a.expB},
                     {"C", a.expC},
                     {"dA_dB", a.dA_dB},
                     {"dB_dB", a.dB_dB},
                     {"dC_dB", a.dC_dB},
                     {"dA_dB_printed", a.dA_dB_printed},
                     {"dB_dB_printed", a.dB_dB_printed},
                     {"dC_dB_printed", a.dC_dB_printed},
                     {"F_occ", a.F_occ},
                     {"G_occ", a.G_occ},
                     {"gamma_plus", a.gamma_plus},
                     {"gamma_minus", a.gamma_minus},
                     {"frak_a", a.frak_a},
                     {"frak_b", a.frak_b}};
}

}  // namespace nctherm
