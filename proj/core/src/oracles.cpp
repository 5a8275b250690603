#include "nctherm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "nctherm/error.hpp"
#include "nctherm/power_sum.hpp"
#include "nctherm/quadrature.hpp"
#include "nctherm/special_functions.hpp"

namespace nctherm::oracle {

namespace {

constexpr long kMaxCutoff = 10'000'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Neumaier {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    c += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

void require_summable(const StatState& st, double eps_q) {
  const auto& f = st.freqs();
  if (st.q() >= 1.4 - eps_q && f.Omega_plus > 0 && f.Omega_minus > 0)
    raise(Errc::NonSummableTail,
          "two-index power-law tail needs q < 1.4 (decay exponent above 2 with margin)");
}

double ground_bracket(const StatState& st) {
  const double A = 1.0 + (st.q() - 1.0) * st.beta() * st.freqs().E0;
  if (!(A > 0))
    raise(Errc::InvalidParameter, "1 + (q-1) beta E0 must be > 0 for the power-law trace");
  return A;
}

OracleResult from_power_sum(const PowerSum& ps, double p) {
  OracleResult r;
  r.log_value = ps.log_value;
  r.value = std::exp(ps.log_value);
  r.abs_err_estimate = r.value * ps.rel_change;
  r.cutoff_plus = ps.outer_cutoff;
  r.cutoff_minus = ps.inner_cutoff;
  r.converged = ps.converged;
  r.degenerate = ps.one_dimensional;
  r.I_q = std::exp(log_gamma(p) + ps.log_value);
  return r;
}

OracleResult power_law_trace(const StatState& st, double p, double rel_tol) {
  const auto& f = st.freqs();
  const double qb = (st.q() - 1.0) * st.beta() * st.params().hbar;
  const PowerSum ps = power_sum(ground_bracket(st), qb * f.Omega_plus, qb * f.Omega_minus, p, rel_tol);
  return from_power_sum(ps, p);
}

long geometric_cutoff(double y, double target) {
  if (y <= 0) return 1;
  long n = 16;
  while (std::exp(-y * static_cast<double>(n)) > target) {
    n *= 2;
    if (n > kMaxCutoff) raise(Errc::CutoffExplosion, "level cutoff exceeds 1e7 per index");
  }
  return n;
}

// sum exp(-beta (E - E0)) over the rectangle, smallest terms first
double excited_sum(const StatState& st, long n_plus, long n_minus) {
  const auto& f = st.freqs();
  const double bh = st.beta() * st.params().hbar;
  if (f.Omega_plus == 0) n_plus = 1;
  if (f.Omega_minus == 0) n_minus = 1;
  Neumaier acc;
  for (long a = n_plus - 1; a >= 0; --a)
    for (long b = n_minus - 1; b >= 0; --b)
      acc.add(std::exp(-bh * (f.Omega_plus * static_cast<double>(a) +
                              f.Omega_minus * static_cast<double>(b))));
  return acc.value();
}

OracleResult boltzmann_trace(const StatState& st, double rel_tol) {
  const auto& f = st.freqs();
  const double bh = st.beta() * st.params().hbar;
  const double yp = bh * f.Omega_plus, ym = bh * f.Omega_minus;
  OracleResult r;
  r.degenerate = f.degenerate();
  r.cutoff_plus = geometric_cutoff(yp, 0.25 * rel_tol);
  r.cutoff_minus = geometric_cutoff(ym, 0.25 * rel_tol);
  const double S = excited_sum(st, r.cutoff_plus, r.cutoff_minus);
  const double tail = 1.0 - (1.0 - (yp > 0 ? std::exp(-yp * r.cutoff_plus) : 0.0)) *
                                (1.0 - (ym > 0 ? std::exp(-ym * r.cutoff_minus) : 0.0));
  r.log_value = -st.beta() * f.E0 + std::log(S);
  r.value = std::exp(r.log_value);
  r.abs_err_estimate = r.value * tail;
  r.converged = tail <= rel_tol;
  r.I_q = r.value;
  return r;
}

OracleResult tsallis_cut_trace(const StatState& st) {
  const auto& f = st.freqs();
  const double oneq = 1.0 - st.q();
  const double cut = 1.0 / (oneq * st.beta());  // states need E < cut
  const double hb = st.params().hbar;
  OracleResult r;
  r.degenerate = f.degenerate();
  if (!(f.E0 < cut)) raise(Errc::InvalidParameter, "no state has a positive q-bracket");
  auto count = [&](double w) -> long {
    if (w <= 0) return 1;
    const double n = std::floor((cut - f.E0) / (hb * w)) + 1.0;
    if (n > static_cast<double>(kMaxCutoff)) raise(Errc::CutoffExplosion, "q < 1 cut-off above 1e7");
    return static_cast<long>(n);
  };
  r.cutoff_plus = count(f.Omega_plus);
  r.cutoff_minus = count(f.Omega_minus);
  const double expo = 1.0 / oneq;
  auto logterm = [&](double E) { return expo * std::log1p(-oneq * st.beta() * E); };
  const double lmax = logterm(f.E0);
  Neumaier acc;
  for (long a = 0; a < r.cutoff_plus; ++a) {
    for (long b = 0; b < r.cutoff_minus; ++b) {
      const double E = energy_level(f, a, b);
      if (!(E < cut)) break;
      acc.add(std::exp(logterm(E) - lmax));
    }
  }
  r.log_value = lmax + std::log(acc.value());
  r.value = std::exp(r.log_value);
  r.converged = true;
  r.I_q = r.value;
  return r;
}

}  // namespace

double spectral_partial_sum(const StatState& st, long n_plus, long n_minus) {
  return std::exp(-st.beta() * st.freqs().E0) * excited_sum(st, n_plus, n_minus);
}

double geometric_trace(const StatState& st) {
  const auto& f = st.freqs();
  const double bh = st.beta() * st.params().hbar;
  double lg = -st.beta() * f.E0;
  if (f.Omega_plus > 0) lg -= std::log(-std::expm1(-bh * f.Omega_plus));
  if (f.Omega_minus > 0) lg -= std::log(-std::expm1(-bh * f.Omega_minus));
  return std::exp(lg);
}

OracleResult spectral_trace(const StatState& st, double rel_tol, double eps_q) {
  switch (branch_of(st.q(), eps_q)) {
    case Branch::QUnity: return boltzmann_trace(st, rel_tol);
    case Branch::QLess: return tsallis_cut_trace(st);
    case Branch::QGreater: break;
  }
  require_summable(st, eps_q);
  return power_law_trace(st, 1.0 / (st.q() - 1.0), rel_tol);
}

OracleResult gamma_weighted_series(const StatState& st, double rel_tol, double eps_q) {
  if (branch_of(st.q(), eps_q) != Branch::QGreater)
    raise(Errc::InvalidParameter, "Gamma-weighted series is defined for q > 1");
  require_summable(st, eps_q);
  return power_law_trace(st, 1.0 / (st.q() - 1.0) - 0.5, rel_tol);
}

OracleResult hilhorst_integral(const StatState& st, double rel_tol, Representation rep,
                               double eps_q) {
  if (branch_of(st.q(), eps_q) != Branch::QGreater)
    raise(Errc::InvalidParameter, "the integral representation needs q > 1");
  require_summable(st, eps_q);
  const auto& f = st.freqs();
  const double p = 1.0 / (st.q() - 1.0) - (rep == Representation::Continuum ? 0.5 : 0.0);
  const double A = ground_bracket(st);
  // nu = t / A pulls the ground bracket out as A^{-p}
  const double qb = (st.q() - 1.0) * st.beta() * st.params().hbar / A;
  const double bp = qb * f.Omega_plus, bm = qb * f.Omega_minus;
  const double lgp = log_gamma(p);

  auto log_integrand = [&](double t) {
    double v = (p - 1.0) * std::log(t) - t - lgp;
    if (bp > 0) v -= std::log(-std::expm1(-t * bp));
    if (bm > 0) v -= std::log(-std::expm1(-t * bm));
    return v;
  };
  const double split = std::max(1.0, p - 2.0);
  QuadOptions qo;
  qo.rel_tol = rel_tol;
  const QuadResult lo = tanh_sinh(
      [&](double t, double) { return t > 0 ? std::exp(log_integrand(t)) : 0.0; },
      0.0, split, qo);
  const QuadResult hi = exp_sinh([&](double x, double) { return std::exp(log_integrand(x)); },
                                 split, qo);
  const double J = lo.value + hi.value;
  if (!lo.converged || !hi.converged)
    raise(Errc::QuadratureStall, "integral did not settle within the refinement limit");

  OracleResult r;
  r.log_value = -p * std::log(A) + std::log(J);
  r.value = std::exp(r.log_value);
  r.abs_err_estimate = r.value * (lo.error + hi.error) / J;
  r.quad_nodes = lo.nodes + hi.nodes;
  r.converged = true;
  r.degenerate = f.degenerate();
  r.I_q = std::exp(lgp + r.log_value);
  return r;
}

FdResult richardson(const std::function<double(double)>& f, double x, int order, double eps_fd) {
  if (order != 1 && order != 2) raise(Errc::InvalidParameter, "order must be 1 or 2");
  if (eps_fd <= 0) eps_fd = order == 1 ? std::cbrt(kEps) : std::pow(kEps, 0.25);
  const double h = std::max(std::fabs(x), 1.0) * eps_fd;
  if (h < 64.0 * kEps * std::fabs(x) || h == 0.0)
    raise(Errc::StepUnderflow, "finite-difference step below 64 ulp of the base point");

  FdResult r;
  r.step = h;
  if (order == 1) {
    const double fp = f(x + h), fm = f(x - h), fp2 = f(x + 0.5 * h), fm2 = f(x - 0.5 * h);
    const double D1 = (fp - fm) / (2.0 * h);
    const double D2 = (fp2 - fm2) / h;
    r.value = (4.0 * D2 - D1) / 3.0;
    const double fmax = std::max({std::fabs(fp), std::fabs(fm), std::fabs(fp2), std::fabs(fm2)});
    r.error = std::fabs(D2 - D1) / 3.0 + 10.0 * (8.0 / 3.0) * kEps * fmax / h;
  } else {
    const double f0 = f(x);
    const double fp = f(x + h), fm = f(x - h), fp2 = f(x + 0.5 * h), fm2 = f(x - 0.5 * h);
    const double D1 = (fp - 2.0 * f0 + fm) / (h * h);
    const double D2 = (fp2 - 2.0 * f0 + fm2) / (0.25 * h * h);
    r.value = (4.0 * D2 - D1) / 3.0;
    const double fmax = std::max({std::fabs(f0), std::fabs(fp), std::fabs(fm), std::fabs(fp2),
                                  std::fabs(fm2)});
    r.error = std::fabs(D2 - D1) / 3.0 + 10.0 * 22.0 * kEps * fmax / (h * h);
  }
  return r;
}

Variable variable_from_string(const std::string& s) {
  if (s == "B") return Variable::B;
  if (s == "beta") return Variable::beta;
  if (s == "q") return Variable::q;
  if (s == "theta") return Variable::theta;
  if (s == "E1") return Variable::E1;
  if (s == "E2") return Variable::E2;
  raise(Errc::InvalidParameter, "unknown derivative variable '" + s + "'");
}

FdResult fd_derivative(const Evaluator& quantity, const StatState& st, Variable wrt, int order,
                       const Tolerances& tol) {
  auto shifted = [&](double v) {
    PhysicalParams p = st.params();
    switch (wrt) {
      case Variable::beta: return st.with_beta(v);
      case Variable::q: return st.with_q(v);
      case Variable::B: p.B = v; break;
      case Variable::theta: p.theta = v; break;
      case Variable::E1: p.E1 = v; break;
      case Variable::E2: p.E2 = v; break;
    }
    return st.with_params(p);
  };
  double x0 = 0.0;
  switch (wrt) {
    case Variable::beta: x0 = st.beta(); break;
    case Variable::q: x0 = st.q(); break;
    case Variable::B: x0 = st.params().B; break;
    case Variable::theta: x0 = st.params().theta; break;
    case Variable::E1: x0 = st.params().E1; break;
    case Variable::E2: x0 = st.params().E2; break;
  }
  return richardson([&](double v) { return quantity(shifted(v)); }, x0, order,
                    order == 1 ? tol.fd_eps1 : tol.fd_eps2);
}

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

CheckPair judged(std::string id, std::string lr, std::string rr, double lhs, double rhs,
                 double tol) {
  CheckPair c{std::move(id), std::move(lr), std::move(rr), lhs, rhs, rel_diff(lhs, rhs), tol,
              PairStatus::Fail, {}};
  if (c.rel_err <= tol) c.status = PairStatus::Pass;
  return c;
}

CheckPair recorded(std::string id, std::string lr, std::string rr, double lhs, double rhs,
                   std::string note) {
  return {std::move(id), std::move(lr), std::move(rr), lhs, rhs, rel_diff(lhs, rhs), 0.0,
          PairStatus::Recorded, std::move(note)};
}

CheckPair skipped(std::string id, std::string note) {
  return {std::move(id), {}, {}, 0.0, 0.0, 0.0, 0.0, PairStatus::Skipped, std::move(note)};
}

std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Pass: return "pass";
    case PairStatus::Fail: return "fail";
    case PairStatus::Recorded: return "recorded";
    case PairStatus::Skipped: return "skipped";
  }
  return "?";
}

}  // namespace

bool CheckReport::passed() const {
  if (refused) return false;
  return std::none_of(pairs.begin(), pairs.end(),
                      [](const CheckPair& p) { return p.status == PairStatus::Fail; });
}

const CheckPair* CheckReport::find(const std::string& id) const {
  for (const auto& p : pairs)
    if (p.id == id) return &p;
  return nullptr;
}

CheckReport cross_check(const StatState& st, const TolProfile& prof) {
  CheckReport rep;
  rep.domain = gate::classify(st.q(), st.params(), st.beta(), prof.gate);
  if (!rep.domain.accepted()) {
    rep.refused = true;
    rep.refusal_reason = rep.domain.reason();
    return rep;
  }

  const double eps_q = prof.thermo.eps_q;
  const double rt = prof.oracle_rel_tol;
  ThermoOptions reduced = prof.thermo;
  reduced.mode = PrefactorMode::Reduced;
  const double logZ_closed = log_partition(st, reduced);

  auto guarded = [&](const std::string& id, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      rep.pairs.push_back(skipped(id, e.what()));
    }
  };

  switch (branch_of(st.q(), eps_q)) {
    case Branch::QUnity: {
      const double Zc = std::exp(logZ_closed);
      const OracleResult tr = spectral_trace(st, rt, eps_q);
      const double geo = geometric_trace(st);
      rep.pairs.push_back(judged("Z:closed-vs-trace", "closed", "spectral_trace", Zc, tr.value, prof.z_rel));
      rep.pairs.push_back(judged("Z:closed-vs-geometric", "closed", "geometric", Zc, geo, prof.z_rel));
      rep.pairs.push_back(judged("Z:trace-vs-geometric", "spectral_trace", "geometric", tr.value, geo, prof.z_rel));
      break;
    }
    case Branch::QGreater: {
      guarded("Z:hilhorst-vs-series", [&] {
        const OracleResult se = gamma_weighted_series(st, rt, eps_q);
        const OracleResult hi = hilhorst_integral(st, rt, Representation::Continuum, eps_q);
        rep.pairs.push_back(judged("Z:hilhorst-vs-series", "hilhorst_integral", "gamma_weighted_series",
                                   hi.value, se.value, prof.z_rel));
        const double logZ_series = log_gamma_factor(st.q(), eps_q) + se.log_value;
        rep.pairs.push_back(recorded("Z:closed-vs-series", "closed", "gamma_weighted_series",
                                     std::exp(logZ_closed), std::exp(logZ_series),
                                     "closed form factorizes the level sum; exact only at q = 1"));
      });
      guarded("Z:trace-vs-hilhorst-bare", [&] {
        const OracleResult tr = spectral_trace(st, rt, eps_q);
        const OracleResult hb = hilhorst_integral(st, rt, Representation::Bare, eps_q);
        rep.pairs.push_back(judged("Z:trace-vs-hilhorst-bare", "spectral_trace", "hilhorst_integral",
                                   tr.value, hb.value, prof.z_rel));
      });
      break;
    }
    case Branch::QLess: {
      guarded("Z:closed-vs-trace", [&] {
        const OracleResult tr = spectral_trace(st, rt, eps_q);
        rep.pairs.push_back(recorded("Z:closed-vs-trace", "closed", "spectral_trace",
                                     std::exp(logZ_closed), tr.value,
                                     "q < 1 closed form is not an exact transform of the cut sum"));
      });
      break;
    }
  }

  const ThermoOptions& to = prof.thermo;
  const double kB = st.params().k_B;
  auto logZ = [&](const StatState& s) { return log_partition(s, to); };
  auto U = [&](const StatState& s) { return internal_energy(s, to); };
  auto F = [&](const StatState& s) { return free_energy(s, to); };
  auto M = [&](const StatState& s) { return magnetization(s, to); };

  guarded("U:analytic-vs-fd", [&] {
    const double fd = -fd_derivative(logZ, st, Variable::beta, 1, prof.tol).value;
    rep.pairs.push_back(judged("U:analytic-vs-fd", "internal_energy", "-d logZ/d beta", U(st), fd, prof.first_rel));
  });
  guarded("C:analytic-vs-fd", [&] {
    const double b = st.beta();
    const double fd = -kB * b * b * fd_derivative(U, st, Variable::beta, 1, prof.tol).value;
    rep.pairs.push_back(judged("C:analytic-vs-fd", "heat_capacity", "-kB beta^2 dU/d beta",
                               heat_capacity(st, to), fd, prof.second_rel));
  });
  guarded("M:analytic-vs-fd", [&] {
    const double fd = -fd_derivative(F, st, Variable::B, 1, prof.tol).value;
    rep.pairs.push_back(judged("M:analytic-vs-fd", "magnetization", "-dF/dB", M(st), fd, prof.first_rel));
  });
  guarded("chi:analytic-vs-fd", [&] {
    const double fd = -fd_derivative(M, st, Variable::B, 1, prof.tol).value;
    rep.pairs.push_back(judged("chi:analytic-vs-fd", "susceptibility", "-dM/dB",
                               susceptibility(st, to), fd, prof.second_rel));
  });

  const AuxExponentSet aux = aux_exponents(st, to);
  rep.pairs.push_back(recorded("dA/dB:chain-vs-printed", "chain rule", "printed partial", aux.dA_dB,
                               aux.dA_dB_printed, "printed partial omits dOmega/dB"));
  rep.pairs.push_back(recorded("dB/dB:chain-vs-printed", "chain rule", "printed partial", aux.dB_dB,
                               aux.dB_dB_printed, "printed partial omits dOmega/dB"));
  rep.pairs.push_back(recorded("dC/dB:chain-vs-printed", "chain rule", "printed partial", aux.dC_dB,
                               aux.dC_dB_printed, "printed partial omits dOmega/dB"));
  return rep;
}

namespace {
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
}  // namespace

void to_json(nlohmann::json& j, const OracleResult& r) {
  j = nlohmann::json{{"value", num(r.value)},
                     {"log_value", num(r.log_value)},
                     {"abs_err_estimate", num(r.abs_err_estimate)},
                     {"cutoff_plus", r.cutoff_plus},
                     {"cutoff_minus", r.cutoff_minus},
                     {"quad_nodes", r.quad_nodes},
                     {"converged", r.converged},
                     {"degenerate", r.degenerate},
                     {"I_q", num(r.I_q)}};
}

void to_json(nlohmann::json& j, const CheckPair& p) {
  j = nlohmann::json{{"id", p.id},
                     {"lhs_route", p.lhs_route},
                     {"rhs_route", p.rhs_route},
                     {"lhs", num(p.lhs)},
                     {"rhs", num(p.rhs)},
                     {"rel_err", num(p.rel_err)},
                     {"tolerance", p.tolerance},
                     {"status", std::string(to_string(p.status))}};
  if (!p.note.empty()) j["note"] = p.note;
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"passed", r.passed()}, {"refused", r.refused}, {"domain", r.domain}};
  if (r.refused) j["reason"] = r.refusal_reason;
  j["pairs"] = r.pairs;
}

}  // namespace nctherm::oracle
