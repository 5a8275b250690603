#pragma once

#include <functional>

namespace nctherm {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // difference between the last two refinement levels
  long nodes = 0;
  int levels = 0;
  bool converged = false;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  int max_level = 11;  // step h = 2^-level
};

// Double-exponential rules. The integrand receives x and the distance to the nearest
// finite endpoint (x - a or b - x), so endpoint singularities can be evaluated
// without cancellation.
using EndpointIntegrand = std::function<double(double x, double dist)>;

QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, const QuadOptions& opt = {});
QuadResult exp_sinh(const EndpointIntegrand& f, double a, const QuadOptions& opt = {});

}  // namespace nctherm
