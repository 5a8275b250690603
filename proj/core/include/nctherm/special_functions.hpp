#pragma once

namespace nctherm {

// log Gamma(x) for x > 0, Lanczos approximation (g = 671/128, 14 terms).
double log_gamma(double x);

// log[Gamma(a - b) / Gamma(a)] for a - b > 0. Uses a Stirling difference series once
// a - b is large so the two huge log-gammas never get subtracted.
double log_gamma_ratio(double a, double b);

// log[Gamma(a - b) / Gamma(a) * a^b]; tends to 0 as a -> infinity.
double log_gamma_ratio_scaled(double a, double b);

// log1p(t) - t without cancellation for small |t|.
double log1pmx(double t);

// u^s * zeta(s, u) for s > 1, u > 0. Bounded by 1 + u/(s-1) + 1/2, so it neither
// over- nor underflows for the huge exponents the power-sum oracles need.
// w_factor scales the point where Euler-Maclaurin takes over (>= 1 for full accuracy).
double hurwitz_zeta_scaled(double s, double u, double w_factor = 1.0);

// Plain Hurwitz zeta, for tests and small arguments.
double hurwitz_zeta(double s, double u);

}  // namespace nctherm
