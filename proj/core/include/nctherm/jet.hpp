#pragma once

#include <cmath>

namespace nctherm {

// Value with first and second derivative along one scalar direction.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}
  constexpr Jet(double value, double d1, double d2) : v(value), d(d1), dd(d2) {}

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
inline Jet operator-(Jet a) { return {-a.v, -a.d, -a.dd}; }
inline Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
inline Jet operator*(double s, Jet a) { return {s * a.v, s * a.d, s * a.dd}; }
inline Jet operator*(Jet a, double s) { return s * a; }

// f(g(x)) with f', f'' supplied at g(x).
inline Jet compose(Jet g, double f, double f1, double f2) {
  return {f, f1 * g.d, f2 * g.d * g.d + f1 * g.dd};
}

inline Jet recip(Jet a) {
  const double r = 1.0 / a.v;
  return compose(a, r, -r * r, 2.0 * r * r * r);
}
inline Jet operator/(Jet a, Jet b) { return a * recip(b); }
inline Jet operator/(Jet a, double s) { return (1.0 / s) * a; }

inline Jet sqrt(Jet a) {
  const double r = std::sqrt(a.v);
  return compose(a, r, 0.5 / r, -0.25 / (r * a.v));
}
inline Jet exp(Jet a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}
inline Jet log(Jet a) { return compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

// -log(1 - exp(-a)) for a > 0, the Bose-like level-sum factor.
inline Jet neg_log1mexp(Jet a) {
  const double em1 = std::expm1(a.v);  // e^a - 1
  const double f = -std::log(-std::expm1(-a.v));
  const double f1 = -1.0 / em1;
  const double f2 = (em1 + 1.0) / (em1 * em1);
  return compose(a, f, f1, f2);
}

}  // namespace nctherm
