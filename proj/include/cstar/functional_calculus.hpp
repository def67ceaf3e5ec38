#pragma once

#include <utility>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/scalar_function.hpp"
#include "cstar/state.hpp"

namespace cstar {

// Chebyshev interpolant of a scalar function on [lo, hi]. Coefficients are
// in the Chebyshev basis on that interval: p(t) = c_0 + sum_{k>=1} c_k
// T_k(s) with s the affine map of t onto [-1, 1]. sup_error is measured on
// a 1024-point uniform grid over [lo, hi].
struct PolynomialApproximant {
  std::vector<double> coefficients;
  double lo = -1.0;
  double hi = 1.0;
  double sup_error = 0.0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  // Clenshaw evaluation at a scalar.
  double operator()(double t) const;

  // Clenshaw recurrence on the matrix argument, blockwise; avoids explicit
  // power towers.
  AlgebraElement apply(const AlgebraElement& x) const;
};

// Exact continuous functional calculus for self-adjoint x: blockwise
// U f(Lambda) U* from the eigendecomposition. The result commutes with x
// and its spectrum is f applied pointwise to the spectrum of x. Throws
// NotSelfAdjoint at sa_tol, EvaluatorDomain if f is not finite at a
// spectrum point.
AlgebraElement apply_function(const AlgebraElement& x, const ScalarFunction& f,
                              double sa_tol);
AlgebraElement apply_function(const AlgebraElement& x,
                              const ScalarFunction& f);

// residual(E, x^n, lambda^n) for an accepted eigenstate E of x at lambda:
// eigenstates transport through monomials. Throws NotAnEigenstate when the
// certificate at the default tolerance rejects.
double monomial_transport_check(const State& E, const AlgebraElement& x,
                                double lambda, int n);

// Chebyshev interpolant at degree+1 Chebyshev nodes on [lo, hi].
PolynomialApproximant chebyshev_approximant(const ScalarFunction& f, double lo,
                                            double hi, int degree);

// Interval enclosing the spectrum of self-adjoint x, padded by
// 1e-6 * max(1, ||x||) so clamped witness functions are evaluated strictly
// inside their domain.
std::pair<double, double> spectral_interval(const AlgebraElement& x);

// The uniform-approximation route to functional-calculus transport: for each
// degree d, build the Chebyshev approximant p_d of f on the spectral
// interval of x and return residual(E, p_d(x), f(lambda)). For smooth f the
// sequence decays with the uniform error of p_d. Requires E to be an
// accepted eigenstate of self-adjoint x at lambda.
std::vector<double> transport_via_polynomials(const State& E,
                                              const AlgebraElement& x,
                                              double lambda,
                                              const ScalarFunction& f,
                                              const std::vector<int>& degrees);

// Degree ladder used for convergence reporting when none is given.
inline const std::vector<int> kDefaultDegreeLadder = {2, 4, 8, 16, 32, 64};

std::vector<double> transport_via_polynomials(const State& E,
                                              const AlgebraElement& x,
                                              double lambda,
                                              const ScalarFunction& f);

// Resolves CLI function names: "sq", "cube", "exp", "abs", "id",
// "witness:<l1>:<l2>". Approximant requests ("chebyshev:<degree>:<name>")
// are rejected here; they are resolved against the spectral interval of the
// operand via parse_chebyshev_name + chebyshev_approximant.
ScalarFunction scalar_function_by_name(const std::string& name);

// True if `name` is of the "chebyshev:<degree>:<inner>" form; fills the
// degree and inner function.
bool parse_chebyshev_name(const std::string& name, int& degree,
                          std::string& inner);

}  // namespace cstar
