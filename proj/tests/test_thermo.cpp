#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "nctherm/error.hpp"
#include "nctherm/oracles.hpp"
#include "nctherm/thermo.hpp"
#include "support/generators.hpp"

using namespace nctherm;

namespace {

const ThermoOptions kReduced{PrefactorMode::Reduced, 1e-6};
const ThermoOptions kFull{PrefactorMode::Full, 1e-6};

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

TEST(Partition, ReferenceState) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  EXPECT_NEAR(log_partition(st, kReduced), 1.3245156097838796, 1e-14);
  EXPECT_NEAR(partition(st, kReduced), 3.7603634305195374, 1e-13);
  const double geo = std::exp(-std::sqrt(0.5)) /
                     ((1 - std::exp(-(std::sqrt(2.0) - 1) / 2)) * (1 - std::exp(-(std::sqrt(2.0) + 1) / 2)));
  EXPECT_NEAR(partition(st, kReduced), geo, 1e-14 * geo);
}

TEST(Partition, FullIsReducedTimesPrefactor) {
  gen::Gen g(41);
  for (int i = 0; i < 50; ++i) {
    const auto d = g.accepted_state();
    const StatState st(d.q, d.beta, d.p);
    const PhysicalParams& p = st.params();
    const double pref = std::log(p.volume() * p.mass * p.omega_c() / (2 * M_PI * p.hbar)) +
                        0.5 * std::log(p.mass / (2 * M_PI * p.hbar * p.hbar * d.beta));
    EXPECT_NEAR(log_partition(st, kFull) - log_partition(st, kReduced), pref, 1e-12 * (1 + std::fabs(pref)));
    EXPECT_GT(partition(st, kReduced), 0.0);
  }
}

TEST(Partition, ContinuousAtUnity) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  const double l1 = log_partition(st);
  EXPECT_NEAR(log_partition(st.with_q(1.0 + 1e-6), ThermoOptions{PrefactorMode::Reduced, 0.0}), l1, 1e-5);
  EXPECT_NEAR(log_partition(st.with_q(1.0 - 1e-6), ThermoOptions{PrefactorMode::Reduced, 0.0}), l1, 1e-5);
}

TEST(Partition, ElectricFieldOnlyShiftsA) {
  PhysicalParams p;
  p.E1 = 0.3;
  p.E2 = 0.1;
  PhysicalParams p0 = p;
  p0.E1 = p0.E2 = 0.0;
  for (double q : {1.0, 1.2, 0.3}) {
    const double beta = 0.7;
    const StatState s(q, beta, p), s0(q, beta, p0);
    const double k = q == 1.0 ? 1.0 : (3.0 - q) / 2.0;
    const auto f = s.freqs();
    const double expected = k * beta * p.charge * (p.E1 * f.x0 + p.E2 * f.y0) / 2.0;
    EXPECT_NEAR(log_partition(s) - log_partition(s0), expected, 1e-13) << q;
  }
}

TEST(Partition, Errors) {
  const PhysicalParams p;
  try {
    log_partition(StatState(1.5, 1.0, p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GammaPole);
  }
  try {
    log_partition(StatState(3.0, 1.0, p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutsideClosedForm);
  }
  PhysicalParams big;
  big.R = 1e150;
  const StatState huge(1.0, 1e-30, big);
  EXPECT_GT(log_partition(huge, kFull), 709.0);
  try {
    partition(huge, kFull);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Overflow);
  }
  const ThermoSet t = evaluate(huge, kFull);
  EXPECT_TRUE(t.Z_overflow);
  EXPECT_TRUE(nlohmann::json(t).at("Z").is_null());
}

TEST(AuxExponents, ReferenceValues) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  const auto a = aux_exponents(st);
  EXPECT_NEAR(a.expA, st.x() / 2, 1e-15);
  EXPECT_NEAR(a.expB, (std::sqrt(2.0) - 1) / 2, 1e-15);
  EXPECT_NEAR(a.expC, (std::sqrt(2.0) + 1) / 2, 1e-15);
  EXPECT_GE(a.F_occ, 0.0);
  EXPECT_GE(a.G_occ, 0.0);
  EXPECT_NEAR(a.gamma_plus, a.frak_a, 1e-15);
  EXPECT_NEAR(a.gamma_minus, a.frak_b, 1e-15);
}

TEST(AuxExponents, ChainRuleMatchesFiniteDifference) {
  PhysicalParams p;
  for (double th : {0.0, 0.2}) {
    p.theta = th;
    const StatState st(1.1, 0.8, p);
    const auto a = aux_exponents(st);
    auto expB = [&](double B) {
      PhysicalParams q = p;
      q.B = B;
      return aux_exponents(StatState(1.1, 0.8, q)).expB;
    };
    const auto fd = oracle::richardson(expB, p.B, 1);
    EXPECT_LT(rel(a.dB_dB, fd.value), 1e-8) << th;
  }
}

TEST(InternalEnergy, ReferenceAndLimits) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  EXPECT_NEAR(internal_energy(st, kFull), 2.6221473232105234, 1e-13);
  EXPECT_NEAR(internal_energy(st, kReduced), 2.1221473232105234, 1e-13);
  const StatState cold = st.with_beta(200.0);
  EXPECT_NEAR(internal_energy(cold, kReduced), cold.freqs().E0, 1e-12);
  EXPECT_NEAR(internal_energy(cold, kFull), cold.freqs().E0 + 1.0 / 400.0, 1e-12);
}

TEST(InternalEnergy, ContinuousAtUnity) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  const double u1 = internal_energy(st);
  const double slope = std::fabs(internal_energy(st.with_q(1.0 + 1e-4)) - u1) / 1e-4;
  const double slope2 = std::fabs(internal_energy(st.with_q(1.0 + 1e-5)) - u1) / 1e-5;
  EXPECT_LT(slope, 10.0);
  EXPECT_NEAR(slope, slope2, 0.01 * slope2);
}

TEST(HeatCapacity, Limits) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  EXPECT_NEAR(heat_capacity(st.with_beta(500.0), kFull), 0.5, 1e-12);
  EXPECT_NEAR(heat_capacity(st.with_beta(1e-5), kFull), 2.5, 1e-6);
}

TEST(FreeEnergy, ReferenceAndLimits) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  EXPECT_NEAR(free_energy(st, kReduced), -1.3245156097838796, 1e-14);
  const StatState cold = st.with_beta(200.0);
  EXPECT_NEAR(free_energy(cold, kReduced), cold.freqs().E0, 1e-10);
  // ln_q Z -> ln Z with error O(q-1) (ln Z)^2 / 2
  const double lz = log_partition(st);
  for (double e : {1e-3, 1e-4}) {
    const StatState sq = st.with_q(1.0 + e);
    const double lnq = -free_energy(sq) * sq.beta();
    const double lzq = log_partition(sq);
    EXPECT_NEAR(lnq - lzq, -e * lzq * lzq / 2, 2 * e * e * std::pow(lz, 3)) << e;
  }
}

TEST(Magnetization, LowTemperaturePureLandau) {
  PhysicalParams p;
  p.omega0 = 0.0;
  const StatState st(1.0, 60.0, p);
  EXPECT_NEAR(magnetization(st, kReduced), -0.5, 1e-12);
  EXPECT_NEAR(susceptibility(st, kReduced), 0.0, 1e-12);
}

TEST(Magnetization, ContinuousAtUnity) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  const double m1 = magnetization(st);
  EXPECT_LT(rel(magnetization(st.with_q(1.0 + 1e-6), ThermoOptions{PrefactorMode::Reduced, 0.0}), m1), 1e-4);
}

TEST(Derivatives, AnalyticVersusFiniteDifferenceAtReference) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  const auto rep = oracle::cross_check(st);
  for (const char* id : {"U:analytic-vs-fd", "C:analytic-vs-fd", "M:analytic-vs-fd", "chi:analytic-vs-fd"}) {
    const auto* pr = rep.find(id);
    ASSERT_NE(pr, nullptr) << id;
    EXPECT_EQ(pr->status, oracle::PairStatus::Pass) << id << " rel " << pr->rel_err;
  }
  EXPECT_LT(rep.find("U:analytic-vs-fd")->rel_err, 1e-6);
  EXPECT_LT(rep.find("chi:analytic-vs-fd")->rel_err, 1e-5);
}

TEST(Derivatives, RandomStatesBothModes) {
  gen::Gen g(42);
  for (int i = 0; i < 30; ++i) {
    const auto d = g.accepted_state();
    const StatState st(d.q, d.beta, d.p);
    for (const ThermoOptions& o : {kReduced, kFull}) {
      auto F = [&](double B) {
        PhysicalParams q = d.p;
        q.B = B;
        return free_energy(st.with_params(q), o);
      };
      auto M = [&](double B) {
        PhysicalParams q = d.p;
        q.B = B;
        return magnetization(st.with_params(q), o);
      };
      const double m = magnetization(st, o), chi = susceptibility(st, o);
      const auto fdm = oracle::richardson(F, d.p.B, 1);
      const auto fdc = oracle::richardson(M, d.p.B, 1);
      EXPECT_NEAR(m, -fdm.value, 1e-6 * std::fabs(m) + 10 * fdm.error) << i;
      EXPECT_NEAR(chi, -fdc.value, 1e-4 * std::fabs(chi) + 10 * fdc.error) << i;
    }
  }
}

TEST(ParticleCount, ScalesFMChiOnly) {
  PhysicalParams p;
  p.theta = 0.1;
  PhysicalParams p3 = p;
  p3.n = 3.0;
  const ThermoSet a = evaluate(StatState(1.2, 0.9, p)), b = evaluate(StatState(1.2, 0.9, p3));
  EXPECT_NEAR(b.F, 3 * a.F, 1e-14 * std::fabs(a.F) * 3);
  EXPECT_NEAR(b.Mag, 3 * a.Mag, 1e-14 * std::fabs(a.Mag) * 3);
  EXPECT_NEAR(b.Chi, 3 * a.Chi, 1e-14 * std::fabs(a.Chi) * 3);
  EXPECT_DOUBLE_EQ(b.U, a.U);
  EXPECT_DOUBLE_EQ(b.C_heat, a.C_heat);
  EXPECT_DOUBLE_EQ(b.logZ, a.logZ);
}

TEST(BranchContinuity, AcrossUnityWithinTenEps) {
  // branch edges at 1 +- eps_q; both sides evaluated with their own formulas
  const double eps = 1e-6;
  const StatState st(1.0, 1.0, PhysicalParams{});
  const ThermoSet mid = evaluate(st);
  for (double q : {1.0 + 1.0001 * eps, 1.0 - 1.0001 * eps}) {
    const ThermoSet t = evaluate(st.with_q(q));
    EXPECT_LT(rel(t.logZ, mid.logZ), 10 * eps) << q;
    EXPECT_LT(rel(t.U, mid.U), 10 * eps) << q;
    EXPECT_LT(rel(t.C_heat, mid.C_heat), 10 * eps) << q;
    EXPECT_LT(rel(t.F, mid.F), 10 * eps) << q;
  }
}

TEST(Gated, RejectedStatesYieldNoResult) {
  const auto g = evaluate_gated(2.0, with_theta_scaled(PhysicalParams{}, 3.5), 0.05);
  EXPECT_FALSE(g.result.has_value());
  EXPECT_FALSE(g.report.accepted());
  const auto ok = evaluate_gated(1.0, PhysicalParams{}, 1.0);
  ASSERT_TRUE(ok.result.has_value());
  EXPECT_EQ(ok.result->branch, Branch::QUnity);
}

TEST(Serialization, ThermoSetFields) {
  const nlohmann::json j = evaluate(StatState(1.0, 1.0, PhysicalParams{}));
  for (const char* k : {"q", "beta", "theta", "B", "logZ", "U", "C", "F", "M", "chi", "branch", "prefactor_mode"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("branch"), "QUnity");
  EXPECT_EQ(j.at("prefactor_mode"), "Reduced");
}
