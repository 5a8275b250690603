#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nctherm/domain_gate.hpp"
#include "nctherm/model.hpp"

namespace nctherm::gen {

// Small seeded generator for property tests; every run draws the same cases.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  PhysicalParams params(double g_max = 1.5) {
    PhysicalParams p;
    p.omega0 = uniform(0.2, 2.0);
    p.B = uniform(0.3, 3.0);
    if (coin(0.5)) p.E1 = uniform(0.0, 0.5);
    if (coin(0.3)) p.E2 = uniform(0.0, 0.5);
    return with_theta_scaled(p, coin(0.2) ? 0.0 : uniform(0.0, g_max));
  }

  struct Draw {
    double q;
    double beta;
    PhysicalParams p;
  };

  // A state the gate accepts, spread over the three branches.
  Draw accepted_state() {
    for (;;) {
      Draw d;
      const double r = uniform(0.0, 1.0);
      if (r < 0.45) d.q = uniform(1.01, 1.38);
      else if (r < 0.75) d.q = 1.0;
      else d.q = uniform(0.05, 0.45);
      d.beta = log_uniform(0.2, 3.0);
      d.p = params(d.q < 1 ? 0.4 : 1.5);
      if (gate::classify(d.q, d.p, d.beta).accepted()) return d;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nctherm::gen
