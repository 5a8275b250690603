#include "nctherm/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "nctherm/error.hpp"

namespace nctherm {

namespace {

constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,   -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0};

// B_{2j} / (2j)!, j = 1..10
constexpr std::array<double, 10> kEulerMaclaurin = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0};

constexpr double kStirlingMin = 10.0;

// sum_k c_k x^{1-2k}
double stirling_tail(double x) {
  const double inv2 = 1.0 / (x * x);
  double acc = 0.0, pw = 1.0 / x;
  for (double c : kStirling) {
    acc += c * pw;
    pw *= inv2;
  }
  return acc;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0)) raise(Errc::InvalidParameter, "log_gamma needs x > 0");
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double log1pmx(double t) {
  if (std::fabs(t) > 0.25) return std::log1p(t) - t;
  // -t^2/2 + t^3/3 - ...
  double term = -t * t, acc = 0.0;
  for (int k = 2; k < 200; ++k) {
    const double add = term / k;
    acc += add;
    if (std::fabs(add) <= 1e-17 * std::fabs(acc)) break;
    term *= -t;
  }
  return acc;
}

double log_gamma_ratio_scaled(double a, double b) {
  if (!(a - b > 0)) raise(Errc::InvalidParameter, "log_gamma_ratio needs a - b > 0");
  if (a - b < kStirlingMin) return log_gamma(a - b) - log_gamma(a) + b * std::log(a);
  const double t = -b / a;
  return a * log1pmx(t) - (b + 0.5) * std::log1p(t) + (stirling_tail(a - b) - stirling_tail(a));
}

double log_gamma_ratio(double a, double b) {
  if (!(a - b > 0)) raise(Errc::InvalidParameter, "log_gamma_ratio needs a - b > 0");
  if (a - b < kStirlingMin) return log_gamma(a - b) - log_gamma(a);
  return log_gamma_ratio_scaled(a, b) - b * std::log(a);
}

double hurwitz_zeta_scaled(double s, double u, double w_factor) {
  if (!(s > 1) || !(u > 0)) raise(Errc::InvalidParameter, "hurwitz_zeta needs s > 1, u > 0");
  // Switch to Euler-Maclaurin once (s + 2j) / (2 pi w) is small for every retained j.
  const double w_min = w_factor * 1.1 * (s + 20.0);
  const long K = std::max(10L, static_cast<long>(std::ceil(w_min - u)));

  double direct = 0.0;
  for (long k = K - 1; k >= 0; --k)  // small terms first
    direct += std::exp(-s * std::log1p(static_cast<double>(k) / u));

  const double w = u + static_cast<double>(K);
  const double r = std::exp(-s * std::log1p(static_cast<double>(K) / u));
  double tail = w / (s - 1.0) + 0.5;
  double poch = s;  // (s)_{2j-1}
  double wp = 1.0 / w;
  for (std::size_t j = 0; j < kEulerMaclaurin.size(); ++j) {
    const double term = kEulerMaclaurin[j] * poch * wp;
    tail += term;
    if (std::fabs(term) < 1e-18 * tail) break;
    poch *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    wp /= w * w;
  }
  return direct + r * tail;
}

double hurwitz_zeta(double s, double u) {
  return std::exp(-s * std::log(u)) * hurwitz_zeta_scaled(s, u);
}

}  // namespace nctherm
