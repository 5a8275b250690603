#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nctherm/domain_gate.hpp"
#include "nctherm/thermo.hpp"

namespace nctherm::oracle {

struct OracleResult {
  double value = 0.0;
  double log_value = 0.0;
  double abs_err_estimate = 0.0;
  long cutoff_plus = 0;
  long cutoff_minus = 0;
  long quad_nodes = 0;
  bool converged = false;
  bool degenerate = false;  // a zero-spacing index was left out (prefactor convention)
  double I_q = 0.0;         // Gamma(p) * value for the power-law sums
};

// Direct trace over the two helicity indices:
//   q > 1: sum [1 + (q-1) beta E]^{-1/(q-1)}
//   q < 1: the finite sum over states with positive bracket
//   q = 1: sum exp(-beta E), summed term by term
// Refuses q >= 1.4 - eps_q with both spacings positive (NonSummableTail).
OracleResult spectral_trace(const StatState& st, double rel_tol = 1e-10, double eps_q = 1e-6);

// sum [1 + (q-1) beta E]^{-(1/(q-1) - 1/2)}: the level sum left after the continuous
// direction has been integrated out. logZ (reduced) = log_gamma_factor(q) + log_value.
OracleResult gamma_weighted_series(const StatState& st, double rel_tol = 1e-10,
                                   double eps_q = 1e-6);

enum class Representation { Continuum, Bare };

// (1/Gamma(p)) int_0^inf nu^{p-1} e^{-nu} L(nu) dnu, L the geometric level sum of
// exp(-nu (q-1) beta E). Continuum uses p = 1/(q-1) - 1/2 (equal to gamma_weighted_series),
// Bare uses p = 1/(q-1) (equal to spectral_trace). q > 1 only.
OracleResult hilhorst_integral(const StatState& st, double rel_tol = 1e-10,
                               Representation rep = Representation::Continuum,
                               double eps_q = 1e-6);

// q = 1 only: e^{-beta E0} / [(1 - e^{-beta hbar W+})(1 - e^{-beta hbar W-})].
double geometric_trace(const StatState& st);

// q = 1 partial trace over 0 <= n+ < n_plus, 0 <= n- < n_minus.
double spectral_partial_sum(const StatState& st, long n_plus, long n_minus);

struct FdResult {
  double value = 0.0;
  double error = 0.0;
  double step = 0.0;
};

// Central differences at steps h and h/2 combined by Richardson extrapolation.
// h = max(|x|, 1) * eps_fd; eps_fd <= 0 picks eps^{1/3} (order 1) or eps^{1/4} (order 2).
FdResult richardson(const std::function<double(double)>& f, double x, int order,
                    double eps_fd = 0.0);

enum class Variable { B, beta, q, theta, E1, E2 };

Variable variable_from_string(const std::string& s);

using Evaluator = std::function<double(const StatState&)>;

FdResult fd_derivative(const Evaluator& quantity, const StatState& st, Variable wrt, int order,
                       const Tolerances& tol = {});

struct TolProfile {
  double z_rel = 1e-8;
  double first_rel = 1e-6;
  double second_rel = 1e-4;
  double oracle_rel_tol = 1e-12;
  Tolerances tol;
  ThermoOptions thermo;
  gate::GateOptions gate;
};

enum class PairStatus { Pass, Fail, Recorded, Skipped };

struct CheckPair {
  std::string id;
  std::string lhs_route;
  std::string rhs_route;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  PairStatus status = PairStatus::Recorded;
  std::string note;
};

struct CheckReport {
  bool refused = false;
  std::string refusal_reason;
  gate::DomainReport domain;
  std::vector<CheckPair> pairs;

  bool passed() const;
  const CheckPair* find(const std::string& id) const;
};

CheckReport cross_check(const StatState& st, const TolProfile& prof = {});

void to_json(nlohmann::json& j, const OracleResult& r);
void to_json(nlohmann::json& j, const CheckPair& p);
void to_json(nlohmann::json& j, const CheckReport& r);

}  // namespace nctherm::oracle
