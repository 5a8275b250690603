#pragma once

namespace nctherm {

struct PowerSum {
  double log_value = 0.0;
  double rel_change = 0.0;  // between the base and doubled cutoffs
  long outer_cutoff = 0;
  long inner_cutoff = 0;
  bool converged = false;
  bool one_dimensional = false;
};

// sum over n1, n2 >= 0 of (A + b1 n1 + b2 n2)^{-p}, A > 0, b1, b2 >= 0.
// A zero spacing collapses that index (the sum is then taken over the other one only).
// The inner index is summed as a Hurwitz zeta; the outer index directly up to a cutoff,
// then by Euler-Maclaurin using closed forms for the integral and derivatives.
PowerSum power_sum(double A, double b1, double b2, double p, double rel_tol);

}  // namespace nctherm
