#include "nctherm/power_sum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nctherm/error.hpp"
#include "nctherm/special_functions.hpp"

namespace nctherm {

namespace {

constexpr long kMaxCutoff = 10'000'000;

// B_{2j} / (2j)!
constexpr std::array<double, 8> kEM = {1.0 / 12.0,          -1.0 / 720.0,
                                       1.0 / 30240.0,       -1.0 / 1209600.0,
                                       1.0 / 47900160.0,    -691.0 / 1307674368000.0,
                                       1.0 / 74724249600.0, -3617.0 / 10670622842880000.0};

long cutoff_for(double p, double shift, double scale) {
  const double n = std::ceil(scale * 1.1 * (p + 20.0) - shift);
  if (n > static_cast<double>(kMaxCutoff))
    raise(Errc::CutoffExplosion, "cutoff " + std::to_string(n) + " exceeds 1e7 per index");
  return std::max(8L, static_cast<long>(n));
}

// Sum normalized by A^{-p}.
double normalized_sum(double A, double bo, double bi, double p, double scale, long& N, long& K) {
  N = cutoff_for(p, A / bo, scale);
  K = cutoff_for(p, A / bi, scale);

  double rows = 0.0;
  for (long n = N - 1; n >= 0; --n) {
    const double x = bo * static_cast<double>(n) / A;
    const double W = A + bo * static_cast<double>(n);
    rows += std::exp(-p * std::log1p(x)) * hurwitz_zeta_scaled(p, W / bi, scale);
  }

  const double W = A + bo * static_cast<double>(N);
  const double u = W / bi;
  const double wr = std::exp(-p * std::log1p(bo * static_cast<double>(N) / A));
  double tail = W * hurwitz_zeta_scaled(p - 1.0, u, scale) / (bo * (p - 1.0)) +
                0.5 * hurwitz_zeta_scaled(p, u, scale);
  double poch = p;          // (p)_{2j-1}
  double ratio = bo / W;    // (bo/W)^{2j-1}
  for (std::size_t j = 0; j < kEM.size(); ++j) {
    const double m = 2.0 * static_cast<double>(j) + 1.0;
    const double term = kEM[j] * poch * ratio * hurwitz_zeta_scaled(p + m, u, scale);
    tail += term;
    if (std::fabs(term) < 1e-18 * std::fabs(tail)) break;
    poch *= (p + m) * (p + m + 1.0);
    ratio *= (bo / W) * (bo / W);
  }
  return rows + wr * tail;
}

}  // namespace

PowerSum power_sum(double A, double b1, double b2, double p, double rel_tol) {
  if (!(A > 0)) raise(Errc::InvalidParameter, "power sum needs a positive ground bracket");
  if (!(b1 >= 0 && b2 >= 0) || (b1 == 0 && b2 == 0))
    raise(Errc::InvalidParameter, "power sum needs nonnegative spacings, not both zero");

  PowerSum r;
  const double logA = std::log(A);
  if (b1 == 0 || b2 == 0) {
    if (!(p > 1)) raise(Errc::NonSummableTail, "one-index power sum needs exponent > 1");
    const double b = std::max(b1, b2);
    const double v1 = hurwitz_zeta_scaled(p, A / b, 1.0);
    const double v2 = hurwitz_zeta_scaled(p, A / b, 2.0);
    r.one_dimensional = true;
    r.log_value = -p * logA + std::log(v2);
    r.rel_change = std::fabs(v2 - v1) / v2;
    r.outer_cutoff = cutoff_for(p, A / b, 2.0);
    r.converged = r.rel_change <= rel_tol;
    return r;
  }
  if (!(p > 2)) raise(Errc::NonSummableTail, "two-index power sum needs exponent > 2");

  const double bo = std::min(b1, b2), bi = std::max(b1, b2);
  long N1, K1, N2, K2;
  const double v1 = normalized_sum(A, bo, bi, p, 1.0, N1, K1);
  const double v2 = normalized_sum(A, bo, bi, p, 2.0, N2, K2);
  r.log_value = -p * logA + std::log(v2);
  r.rel_change = std::fabs(v2 - v1) / v2;
  r.outer_cutoff = N2;
  r.inner_cutoff = K2;
  r.converged = r.rel_change <= rel_tol;
  return r;
}

}  // namespace nctherm
