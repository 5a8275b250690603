#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nctherm/model.hpp"
#include "nctherm/options.hpp"

namespace nctherm {

// (q, beta) bound to a parameter snapshot. Frequencies are derived once at construction.
class StatState {
 public:
  StatState(double q, double beta, const PhysicalParams& params);

  double q() const { return q_; }
  double beta() const { return beta_; }
  const PhysicalParams& params() const { return params_; }
  const NCFrequencies& freqs() const { return freqs_; }
  double x() const { return beta_ * params_.hbar * freqs_.Omega_tilde; }

  StatState with_q(double q) const { return {q, beta_, params_}; }
  StatState with_beta(double beta) const { return {q_, beta, params_}; }
  StatState with_params(const PhysicalParams& p) const { return {q_, beta_, p}; }

 private:
  double q_;
  double beta_;
  PhysicalParams params_;
  NCFrequencies freqs_;
};

namespace gate {

enum class DomainLabel { Main, Restricted, Critical, Invalid };
enum class Regime { Standard, PureNonextensive, PureNoncommutative, Coupled, CriticalBoundary, SuperExtensive };
enum class CheckStatus { Pass, Fail, PassVacuous, NotApplicable };

std::string_view to_string(DomainLabel d);
std::string_view to_string(Regime r);
std::string_view to_string(CheckStatus s);

struct DomainCheck {
  std::string id;
  double bound = 0.0;
  double actual = 0.0;  // NaN when the quantity could not be formed
  CheckStatus status = CheckStatus::NotApplicable;
  std::string note;

  bool failed() const { return status == CheckStatus::Fail; }
};

struct DomainReport {
  DomainLabel domain_label = DomainLabel::Invalid;
  Regime regime_label = Regime::Standard;
  std::vector<DomainCheck> checks;
  std::optional<double> q_max;
  std::optional<double> B_max;

  bool accepted() const { return domain_label != DomainLabel::Invalid; }
  const DomainCheck* find(std::string_view id) const;
  // First failing check, formatted for messages.
  std::string reason() const;
};

struct GateOptions {
  double eps_q = 1e-6;
  double eps_theta = 1e-12;
  // Positive function of q entering the field bound; unspecified physics, so 0 by default.
  std::function<double(double)> delta;
};

DomainReport classify(double q, const PhysicalParams& params, double beta,
                      const GateOptions& opt = {});

Regime regime_label(double q, double theta, double eps_q = 1e-6, double eps_theta = 1e-12);

// 1 + 2 / (beta hbar Omega (2 - M omega_c theta / hbar)).
double max_nonextensivity(double theta, double beta, const PhysicalParams& params);

// 2 hbar c / (e theta) * (1 + delta(q)/(q-1))^{-1}; nullopt when theta = 0.
std::optional<double> max_field(double q, double theta, const PhysicalParams& params,
                                const GateOptions& opt = {});

void to_json(nlohmann::json& j, const DomainCheck& c);
void to_json(nlohmann::json& j, const DomainReport& r);

}  // namespace gate
}  // namespace nctherm
