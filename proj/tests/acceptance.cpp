// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nctherm/asymptotics.hpp"
#include "nctherm/domain_gate.hpp"
#include "nctherm/error.hpp"
#include "nctherm/oracles.hpp"
#include "nctherm/sweep.hpp"
#include "nctherm/thermo.hpp"
#include "support/generators.hpp"

using namespace nctherm;

namespace {

// pinned tolerances
constexpr double kTripleRel = 1e-10;
constexpr double kTripleFixture = 3.7604;
constexpr double kTripleFixtureAbs = 5e-5;
constexpr double kTripleSeconds = 1.0;
constexpr double kFubiniRel = 1e-8;
constexpr double kFubiniSeconds = 60.0;
constexpr double kFactorSlope = 1.0, kFactorSlopeTol = 0.15;
constexpr double kFirstRel = 1e-6, kSecondRel = 1e-4;
constexpr int kRandomStates = 100;
constexpr double kDerivSeconds = 30.0;
constexpr double kLowTRel = 1e-6;
constexpr double kProbeRel = 1e-9;
constexpr double kReductionRel = 1e-5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

void report(int n, const char* title, const Outcome& o, int& failures) {
  std::printf("criterion %2d: %s  %s:%s\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class F>
void guarded(Outcome& o, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
}

const ThermoOptions kReduced{PrefactorMode::Reduced, 1e-6};

// 1. Closed form, spectral trace and geometric sum agree at the reference state.
Outcome triple_equality() {
  Outcome o;
  guarded(o, [&] {
    const auto t0 = Clock::now();
    const StatState st(1.0, 1.0, PhysicalParams{});
    const double closed = partition(st, kReduced);
    const double trace = oracle::spectral_trace(st, 1e-12).value;
    const double geo = oracle::geometric_trace(st);
    const double dt = seconds_since(t0);
    const double worst = std::max({rel(closed, trace), rel(closed, geo), rel(trace, geo)});
    o.detail << "Z=" << closed << " max_rel=" << worst << " t=" << dt << "s";
    o.require(worst <= kTripleRel, "pairwise rel > 1e-10");
    o.require(std::fabs(closed - kTripleFixture) <= kTripleFixtureAbs, "fixture 3.7604");
    o.require(dt < kTripleSeconds, "runtime");
  });
  return o;
}

// 2. Hilhorst integral against the Gamma-weighted series.
Outcome fubini() {
  Outcome o;
  guarded(o, [&] {
    const auto t0 = Clock::now();
    PhysicalParams p;
    p.theta = 0.1;
    p.E1 = 0.1;
    double worst = 0;
    for (double q : {1.05, 1.2, 1.35}) {
      o.require(gate::classify(q, p, 1.0).accepted(), "state not gate-accepted");
      const StatState st(q, 1.0, p);
      worst = std::max(worst, rel(oracle::hilhorst_integral(st).value, oracle::gamma_weighted_series(st).value));
    }
    const double dt = seconds_since(t0);
    o.detail << "max_rel=" << worst << " t=" << dt << "s";
    o.require(worst <= kFubiniRel, "rel > 1e-8");
    o.require(dt < kFubiniSeconds, "runtime");
  });
  return o;
}

// 3. |logZ_closed - logZ_exact| is linear in q - 1.
Outcome factorization_slope() {
  Outcome o;
  guarded(o, [&] {
    const PhysicalParams p;
    std::vector<std::pair<double, double>> pts;
    for (double e : {1e-4, 1e-3, 1e-2}) {
      const StatState st(1.0 + e, 1.0, p);
      const double closed = log_partition(st, kReduced);
      const double exact = log_gamma_factor(1.0 + e) + oracle::gamma_weighted_series(st, 1e-13).log_value;
      pts.emplace_back(e, std::fabs(closed - exact));
    }
    const double s1 = std::log(pts[1].second / pts[0].second) / std::log(10.0);
    const double s2 = std::log(pts[2].second / pts[1].second) / std::log(10.0);
    const double slope = std::log(pts[2].second / pts[0].second) / std::log(100.0);
    o.detail << "slope=" << slope << " (pairwise " << s1 << ", " << s2 << ")";
    o.require(std::fabs(slope - kFactorSlope) <= kFactorSlopeTol, "slope outside 1 +- 0.15");
  });
  return o;
}

// 4. Analytic derivatives against Richardson central differences.
Outcome derivatives() {
  Outcome o;
  guarded(o, [&] {
    const auto t0 = Clock::now();
    gen::Gen g(2024);
    double wU = 0, wC = 0, wM = 0, wX = 0;
    for (int i = 0; i < kRandomStates; ++i) {
      const auto d = g.accepted_state();
      oracle::TolProfile prof;
      prof.thermo.mode = i % 2 ? PrefactorMode::Full : PrefactorMode::Reduced;
      const auto rep = oracle::cross_check(StatState(d.q, d.beta, d.p), prof);
      o.require(!rep.refused, "state refused");
      auto r = [&](const char* id) {
        const auto* pr = rep.find(id);
        return pr ? pr->rel_err : INFINITY;
      };
      wU = std::max(wU, r("U:analytic-vs-fd"));
      wC = std::max(wC, r("C:analytic-vs-fd"));
      wM = std::max(wM, r("M:analytic-vs-fd"));
      wX = std::max(wX, r("chi:analytic-vs-fd"));
    }
    const double dt = seconds_since(t0);
    o.detail << "max rel U=" << wU << " M=" << wM << " C=" << wC << " chi=" << wX << " t=" << dt << "s";
    o.require(wU <= kFirstRel && wM <= kFirstRel, "first derivatives");
    o.require(wC <= kSecondRel && wX <= kSecondRel, "second derivatives");
    o.require(dt < kDerivSeconds, "runtime");
  });
  return o;
}

// 5. Power laws at high and low temperature.
Outcome power_laws() {
  Outcome o;
  guarded(o, [&] {
    const auto laws = asym::run_power_laws(PhysicalParams{});
    struct Want {
      const char* regime;
      const char* quantity;
    };
    const Want wanted[] = {{"HighT", "Z"}, {"HighT", "M"}, {"LowT", "M_fluct"}, {"LowT", "chi"}};
    for (const auto& w : wanted) {
      bool found = false;
      for (const auto& l : laws) {
        if (l.regime != w.regime || l.quantity != w.quantity) continue;
        found = true;
        o.detail << " " << w.regime << ":" << w.quantity << "=" << l.exponent << "(want " << l.expected << "+-"
                 << l.tolerance << ")";
        o.require(l.pass, std::string(w.regime) + " " + w.quantity);
      }
      o.require(found, std::string("missing fit ") + w.quantity);
    }
  });
  return o;
}

// 6. Low-temperature free energy, with and without an electric field.
Outcome low_t_free_energy() {
  Outcome o;
  guarded(o, [&] {
    struct Case {
      double E1, E2, theta;
    };
    for (const Case c : {Case{0, 0, 0}, Case{0.4, 0.2, 0}, Case{0.3, 0, 0.1}}) {
      PhysicalParams p;
      p.E1 = c.E1;
      p.E2 = c.E2;
      p.theta = c.theta;
      const auto f = derive_frequencies(p);
      const StatState st(1.0, 100.0 / (p.hbar * f.Omega_tilde), p);
      const double F = free_energy(st, kReduced);
      const double target =
          p.n * (p.hbar * f.Omega_tilde / 2 - p.charge * (p.E1 * f.x0 + p.E2 * f.y0) / 2);
      const double r = std::fabs(F - target) / std::fabs(F);
      o.detail << " E=(" << c.E1 << "," << c.E2 << ") rel=" << r;
      o.require(r <= kLowTRel, "rel > 1e-6");
    }
  });
  return o;
}

// 7. Boundary probes for every validity-table row and constraint.
Outcome gate_conformance() {
  Outcome o;
  const double lo = 1.0 - kProbeRel, hi = 1.0 + kProbeRel;
  int probes = 0;
  auto probe = [&](const char* name, const char* id, const std::function<gate::DomainReport(double)>& at,
                   bool whole_state) {
    guarded(o, [&] {
      const auto below = at(lo), above = at(hi);
      const auto* cb = below.find(id);
      const auto* ca = above.find(id);
      const bool ok = cb && ca && !cb->failed() && ca->failed() && (!whole_state || (below.accepted() && !above.accepted()));
      ++probes;
      if (!ok) o.require(false, name);
    });
  };
  auto g_state = [](double q, double beta, double g, PhysicalParams p = {}) {
    return gate::classify(q, with_theta_scaled(p, g), beta);
  };
  // validity-table rows: the deformation bound on M omega_c theta / hbar
  probe("row Main", "table1-row", [&](double f) { return g_state(1.2, 0.1, 2.0 * f); }, true);
  probe("row Restricted", "table1-row", [&](double f) { return g_state(2.0, 0.05, 3.0 * f); }, true);
  probe("row Critical", "table1-row", [&](double f) { return g_state(0.2, 100.0, 0.375 * f); }, true);

  // (b) Omega_tilde^2 > 0: with omega0 = 0 it is (1 - g/4)^2 Omega^2, touching zero at g = 4
  guarded(o, [&] {
    PhysicalParams p;
    p.omega0 = 0.0;
    const auto below = g_state(1.0, 1.0, 4.0 * lo, p);
    const auto at = g_state(1.0, 1.0, 4.0, p);
    ++probes;
    if (below.find("omega-positivity")->failed() || !at.find("omega-positivity")->failed())
      o.require(false, "omega-positivity");
  });

  // constraints linear in beta: scale beta so the actual value sits at bound(1 -+ 1e-9)
  auto beta_probe = [&](const char* name, const char* id, double q, const PhysicalParams& p) {
    const auto ref = gate::classify(q, p, 1.0);
    const auto* c = ref.find(id);
    const double beta_star = c->bound / c->actual;
    probe(name, id, [&](double f) { return gate::classify(q, p, beta_star * f); }, true);
  };
  beta_probe("stability", "stability", 1.2, PhysicalParams{});
  PhysicalParams trap;
  trap.omega0 = 2.0;
  trap = with_theta_scaled(trap, 1.0);
  beta_probe("ground-state", "ground-state", 1.2, trap);
  PhysicalParams trapE = trap;
  trapE.E1 = 1.0;
  beta_probe("full-electric", "full-electric", 1.2, trapE);

  // (f) q < 1: bound 1 - 1/(2(1-q) beta hbar Omega) on the deformation
  guarded(o, [&] {
    const PhysicalParams p;
    const double bound = 1.0 - 1.0 / (2.0 * 0.8 * 0.5 * std::sqrt(2.0));
    probe("q-lt-1-regularization", "q-lt-1-regularization", [&](double f) { return g_state(0.2, 0.5, bound * f); },
          true);
  });
  o.detail << probes << " probes at bound(1 -+ 1e-9)";
  return o;
}

// 8. Exact reductions.
Outcome reductions() {
  Outcome o;
  guarded(o, [&] {
    gen::Gen g(8);
    for (int i = 0; i < 200; ++i) {
      PhysicalParams p = g.params();
      p.theta = 0.0;
      const auto f = derive_frequencies(p);
      if (f.Omega_tilde != f.Omega || f.omega_c_tilde != f.omega_c) {
        o.require(false, "theta = 0 not exact");
        break;
      }
    }
    // E = 0 removes the A shift: logZ(E) - logZ(0) equals the A difference exactly
    PhysicalParams pe;
    pe.E1 = 0.25;
    PhysicalParams p0;
    for (double q : {1.0, 1.2}) {
      const StatState se(q, 0.8, pe), s0(q, 0.8, p0);
      const double dA = aux_exponents(se).expA - aux_exponents(s0).expA;
      const double dl = log_partition(se) - log_partition(s0);
      o.require(std::fabs(dl + dA) <= 1e-14 * std::fabs(dA) + 1e-15, "E shift not confined to A");
      const auto a0 = aux_exponents(s0);
      o.require(std::fabs(a0.expA - (q == 1.0 ? 1.0 : (3 - q) / 2) * s0.x() / 2) <= 1e-15, "A at E = 0");
    }
    // q -> 1 +- 1e-6 against the q = 1 branch, branch width 0 so both sides use their own closed forms
    const StatState st(1.0, 1.0, PhysicalParams{});
    const ThermoSet one = evaluate(st);
    const ThermoOptions narrow{PrefactorMode::Reduced, 0.0};
    double worst = 0;
    for (double q : {1.0 + 1e-6, 1.0 - 1e-6}) {
      const ThermoSet t = evaluate(st.with_q(q), narrow);
      o.require(t.branch != Branch::QUnity, "branch");
      worst = std::max({worst, rel(t.logZ, one.logZ), rel(t.U, one.U), rel(t.F, one.F)});
    }
    o.detail << "q = 1 +- 1e-6 max rel=" << worst;
    o.require(worst <= kReductionRel, "q -> 1 continuity");
  });
  return o;
}

// 9. Qualitative figure properties.
Outcome figure_properties() {
  Outcome o;
  guarded(o, [&] {
    const auto fig5 = sweep::run(sweep::preset("fig5"));
    const auto fig6 = sweep::run(sweep::preset("fig6"));
    auto series = [](const sweep::SweepTable& t, std::size_t block, std::size_t len) {
      std::vector<double> v;
      for (std::size_t i = 0; i < len; ++i) {
        const auto& c = t.rows[block * len + i][2];
        v.push_back(std::holds_alternative<double>(c) ? std::get<double>(c) : NAN);
      }
      return v;
    };
    for (std::size_t th = 0; th < 3; ++th) {
      const auto m = series(fig5, th, fig5.rows.size() / 3);
      for (std::size_t i = 1; i < m.size(); ++i)
        if (!(m[i] < m[i - 1])) {
          o.require(false, "fig5 M not decreasing in q");
          break;
        }
      const auto x = series(fig6, th, fig6.rows.size() / 3);
      for (std::size_t i = 1; i < x.size(); ++i)
        if (!(std::fabs(x[i]) < std::fabs(x[i - 1]))) {
          o.require(false, "fig6 |chi| not decreasing in B");
          break;
        }
    }
    o.detail << "fig5 " << fig5.rows.size() << " rows, fig6 " << fig6.rows.size() << " rows";
  });
  return o;
}

// 10. Byte-identical CSV across runs and worker counts.
Outcome determinism() {
  Outcome o;
  guarded(o, [&] {
    auto csv = [](unsigned workers) {
      sweep::SweepSpec s = sweep::preset("fig2");
      s.workers = workers;
      std::ostringstream os;
      sweep::emit(sweep::run(s), sweep::Format::Csv, os);
      return os.str();
    };
    const std::string a = csv(1), b = csv(1), c = csv(4);
    o.detail << a.size() << " bytes";
    o.require(a == b, "serial runs differ");
    o.require(a == c, "parallel differs from serial");
  });
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  report(1, "oracle triple equality at q = 1", triple_equality(), failures);
  report(2, "Hilhorst integral vs Gamma-weighted series", fubini(), failures);
  report(3, "closed-form factorization error linear in q - 1", factorization_slope(), failures);
  report(4, "analytic vs finite-difference derivatives", derivatives(), failures);
  report(5, "high/low temperature power laws", power_laws(), failures);
  report(6, "low-temperature free-energy limit", low_t_free_energy(), failures);
  report(7, "domain gate boundary conformance", gate_conformance(), failures);
  report(8, "exact reductions", reductions(), failures);
  report(9, "qualitative figure properties", figure_properties(), failures);
  report(10, "sweep determinism", determinism(), failures);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
