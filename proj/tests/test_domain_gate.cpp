#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "nctherm/domain_gate.hpp"
#include "nctherm/error.hpp"
#include "support/generators.hpp"

using namespace nctherm;
using gate::CheckStatus;
using gate::DomainLabel;
using gate::Regime;

namespace {

PhysicalParams scaled(double g) { return with_theta_scaled(PhysicalParams{}, g); }

}  // namespace

TEST(Classify, MainRowAccepts) {
  const auto r = gate::classify(1.2, scaled(1.0), 0.1);
  EXPECT_EQ(r.domain_label, DomainLabel::Main);
  EXPECT_TRUE(r.accepted());
  EXPECT_EQ(r.find("table1-row")->status, CheckStatus::Pass);
}

TEST(Classify, RestrictedRowRejectsAboveBound) {
  const auto r = gate::classify(2.0, scaled(3.5), 0.05);
  EXPECT_EQ(r.domain_label, DomainLabel::Invalid);
  const auto* row = r.find("table1-row");
  ASSERT_NE(row, nullptr);
  EXPECT_EQ(row->status, CheckStatus::Fail);
  EXPECT_DOUBLE_EQ(row->bound, 3.0);
  EXPECT_DOUBLE_EQ(row->actual, 3.5);
}

TEST(Classify, CriticalBoundaryExcluded) {
  for (double g : {0.0, 0.5, 1.0}) {
    const auto r = gate::classify(1.5, scaled(g), 0.1);
    EXPECT_FALSE(r.accepted());
    EXPECT_EQ(r.regime_label, Regime::CriticalBoundary);
  }
}

TEST(Classify, CriticalRowBound) {
  PhysicalParams p = scaled(0.2);
  const auto r = gate::classify(0.2, p, 0.5);
  const auto* row = r.find("table1-row");
  ASSERT_NE(row, nullptr);
  EXPECT_DOUBLE_EQ(row->bound, 0.375);
  EXPECT_EQ(row->status, CheckStatus::Pass);
}

TEST(Classify, CriticalRowNegativeBoundRejectsMostSubextensive) {
  // 1 - 1/(2(1-q)) < 0 for q > 1/2
  const auto r = gate::classify(0.8, scaled(0.0), 0.5);
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(r.find("table1-row")->status, CheckStatus::Fail);
}

TEST(Classify, EveryCheckIsReportedAfterAFailure) {
  const auto r = gate::classify(2.0, scaled(3.5), 5.0);
  ASSERT_EQ(r.checks.size(), 6u);
  const char* ids[] = {"table1-row", "omega-positivity", "stability", "ground-state", "full-electric",
                       "q-lt-1-regularization"};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(r.checks[i].id, ids[i]);
}

TEST(Classify, NegativeGroundEnergyIsVacuous) {
  PhysicalParams p;
  p.omega0 = 1.0;
  p.E1 = 2.0;  // E0 = sqrt(5)/2 - 2 < 0
  const auto r = gate::classify(1.2, p, 1.0);
  EXPECT_EQ(r.find("ground-state")->status, CheckStatus::PassVacuous);
}

TEST(Classify, StandardRegimeNeverInvalid) {
  gen::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    PhysicalParams p;
    p.B = g.log_uniform(1e-3, 1e3);
    p.omega0 = g.uniform(0.0, 3.0);
    const double beta = g.log_uniform(1e-4, 1e4);
    const auto r = gate::classify(1.0, p, beta);
    EXPECT_TRUE(r.accepted()) << r.reason();
    EXPECT_EQ(r.regime_label, Regime::Standard);
  }
}

TEST(Classify, AcceptedMeansMandatoryChecksPass) {
  gen::Gen g(32);
  for (int i = 0; i < 300; ++i) {
    const double q = g.uniform(0.05, 2.5);
    const auto r = gate::classify(q, g.params(2.5), g.log_uniform(0.01, 10.0));
    bool any_fail = false;
    for (const auto& c : r.checks) any_fail |= c.failed();
    EXPECT_EQ(r.accepted(), !any_fail);
  }
}

TEST(RegimeLabel, Classification) {
  EXPECT_EQ(gate::regime_label(1.0, 0.0), Regime::Standard);
  EXPECT_EQ(gate::regime_label(1.3, 0.0), Regime::PureNonextensive);
  EXPECT_EQ(gate::regime_label(1.0, 0.2), Regime::PureNoncommutative);
  EXPECT_EQ(gate::regime_label(1.2, 0.3), Regime::Coupled);
  EXPECT_EQ(gate::regime_label(1.5, 0.3), Regime::CriticalBoundary);
  EXPECT_EQ(gate::regime_label(0.7, 0.0), Regime::SuperExtensive);
  EXPECT_EQ(gate::regime_label(1.0 + 5e-7, 5e-13), Regime::Standard);
}

TEST(MaxNonextensivity, CommutativeBound) {
  PhysicalParams p;
  p.omega0 = 0.0;  // Omega = omega_c = 1
  EXPECT_DOUBLE_EQ(gate::max_nonextensivity(0.0, 1.0, p), 2.0);
  // q_max(theta = 0) = 1 + 1/(beta hbar Omega)
  p.omega0 = 0.5;
  EXPECT_NEAR(gate::max_nonextensivity(0.0, 0.7, p), 1.0 + 1.0 / (0.7 * std::sqrt(2.0)), 1e-15);
}

TEST(MaxNonextensivity, MonotoneAndGuarded) {
  PhysicalParams p;
  double prev = gate::max_nonextensivity(0.0, 1.0, p);
  for (double th = 0.1; th < 2.0; th += 0.1) {
    const double cur = gate::max_nonextensivity(th, 1.0, p);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
  try {
    gate::max_nonextensivity(2.0, 1.0, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DeformationTooLarge);
  }
}

TEST(MaxField, GeometricBoundAndDelta) {
  PhysicalParams p;
  EXPECT_FALSE(gate::max_field(1.2, 0.0, p).has_value());
  EXPECT_DOUBLE_EQ(*gate::max_field(1.2, 0.1, p), 20.0);
  gate::GateOptions o;
  o.delta = [](double) { return 0.2; };
  EXPECT_NEAR(*gate::max_field(1.2, 0.1, p, o), 20.0 / 2.0, 1e-12);
}

TEST(StatState, Invariants) {
  EXPECT_THROW(StatState(0.0, 1.0, PhysicalParams{}), Error);
  EXPECT_THROW(StatState(1.0, -1.0, PhysicalParams{}), Error);
  const StatState st(1.0, 2.0, PhysicalParams{});
  EXPECT_DOUBLE_EQ(st.x(), 2.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(st.with_beta(1.0).x(), std::sqrt(2.0));
}

TEST(Serialization, ReportIds) {
  const nlohmann::json j = gate::classify(1.2, scaled(1.0), 0.1);
  EXPECT_EQ(j.at("domain_label"), "Main");
  EXPECT_EQ(j.at("regime_label"), "Coupled");
  EXPECT_EQ(j.at("checks").size(), 6u);
  EXPECT_EQ(j.at("checks")[5].at("id"), "q-lt-1-regularization");
}
