#pragma once

#include <cmath>
#include <limits>
#include <string_view>

namespace nctherm {

struct Tolerances {
  double rel_tol = 1e-10;
  double eps_q = 1e-6;
  double eps_theta = 1e-12;
  double fd_eps1 = std::cbrt(std::numeric_limits<double>::epsilon());
  double fd_eps2 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
};

enum class Branch { QGreater, QLess, QUnity };

inline Branch branch_of(double q, double eps_q) {
  if (q > 1.0 + eps_q) return Branch::QGreater;
  if (q < 1.0 - eps_q) return Branch::QLess;
  return Branch::QUnity;
}

std::string_view to_string(Branch b);

enum class PrefactorMode { Full, Reduced };

std::string_view to_string(PrefactorMode m);
PrefactorMode prefactor_mode_from_string(std::string_view s);

}  // namespace nctherm
