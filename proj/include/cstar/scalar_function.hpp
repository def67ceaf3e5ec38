#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "cstar/errors.hpp"

namespace cstar {

// A real scalar function together with a printable name. This is the f of
// the continuous functional calculus; evaluation checks finiteness so that
// applying f outside its domain fails loudly instead of propagating NaNs.
struct ScalarFunction {
  std::function<double(double)> evaluator;
  std::string descriptor;

  double operator()(double t) const {
    double value = evaluator(t);
    if (!std::isfinite(value))
      throw EvaluatorDomain(descriptor + " is not finite at t = " +
                            std::to_string(t));
    return value;
  }
};

inline ScalarFunction sf_identity() {
  return {[](double t) { return t; }, "id"};
}
inline ScalarFunction sf_square() {
  return {[](double t) { return t * t; }, "sq"};
}
inline ScalarFunction sf_cube() {
  return {[](double t) { return t * t * t; }, "cube"};
}
inline ScalarFunction sf_exp() {
  return {[](double t) { return std::exp(t); }, "exp"};
}
inline ScalarFunction sf_abs() {
  return {[](double t) { return std::abs(t); }, "abs"};
}

}  // namespace cstar
