#include "cstar/functional_calculus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "cstar/eigenstates.hpp"

namespace cstar {

double PolynomialApproximant::operator()(double t) const {
  if (coefficients.empty()) return 0.0;
  double s = (2.0 * t - (lo + hi)) / (hi - lo);
  double b1 = 0.0, b2 = 0.0;
  for (size_t k = coefficients.size() - 1; k >= 1; --k) {
    double next = coefficients[k] + 2.0 * s * b1 - b2;
    b2 = b1;
    b1 = next;
  }
  return coefficients[0] + s * b1 - b2;
}

AlgebraElement PolynomialApproximant::apply(const AlgebraElement& x) const {
  const AlgebraShape& shape = x.shape();
  AlgebraElement one = AlgebraElement::identity(shape);
  if (coefficients.empty()) return AlgebraElement::zero(shape);

  // s(x) = (2x - (lo+hi)) / (hi - lo), the affine map onto [-1, 1].
  AlgebraElement s = scalar_mul(2.0 / (hi - lo), shift(x, 0.5 * (lo + hi)));
  AlgebraElement b1 = AlgebraElement::zero(shape);
  AlgebraElement b2 = AlgebraElement::zero(shape);
  for (size_t k = coefficients.size() - 1; k >= 1; --k) {
    AlgebraElement next =
        add(sub(scalar_mul(2.0, s * b1), b2),
            scalar_mul(coefficients[k], one));
    b2 = std::move(b1);
    b1 = std::move(next);
  }
  return add(sub(s * b1, b2), scalar_mul(coefficients[0], one));
}

AlgebraElement apply_function(const AlgebraElement& x, const ScalarFunction& f,
                              double sa_tol) {
  if (!is_self_adjoint(x, sa_tol))
    throw NotSelfAdjoint("apply_function: element is not self-adjoint");
  AlgebraElement h = hermitize(x);
  AlgebraElement result = AlgebraElement::zero(x.shape());
  for (int k = 0; k < h.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.block(k));
    if (solver.info() != Eigen::Success)
      throw NumericalFailure("apply_function: eigensolver did not converge");
    Eigen::VectorXd mapped(solver.eigenvalues().size());
    for (int i = 0; i < mapped.size(); ++i)
      mapped(i) = f(solver.eigenvalues()(i));
    result.block(k) = solver.eigenvectors() *
                      mapped.cast<Complex>().asDiagonal() *
                      solver.eigenvectors().adjoint();
  }
  return result;
}

AlgebraElement apply_function(const AlgebraElement& x,
                              const ScalarFunction& f) {
  return apply_function(x, f, default_self_adjoint_tol(x));
}

double monomial_transport_check(const State& E, const AlgebraElement& x,
                                double lambda, int n) {
  if (n < 0) throw MalformedInput("monomial_transport_check: n must be >= 0");
  EigenstateCertificate cert = is_eigenstate(E, x, lambda);
  if (!cert.accepted)
    throw NotAnEigenstate("monomial_transport_check: E is not an eigenstate "
                          "of x at the given lambda");

  AlgebraElement power = AlgebraElement::identity(x.shape());
  for (int i = 0; i < n; ++i) power = power * x;
  return residual(E, power, std::pow(Complex(lambda, 0.0), n));
}

PolynomialApproximant chebyshev_approximant(const ScalarFunction& f, double lo,
                                            double hi, int degree) {
  if (degree < 0)
    throw MalformedInput("chebyshev_approximant: degree must be >= 0");
  if (!(lo < hi))
    throw MalformedInput("chebyshev_approximant: need lo < hi");

  const int n = degree + 1;
  std::vector<double> values(static_cast<size_t>(n));
  std::vector<double> angles(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    angles[static_cast<size_t>(j)] =
        std::numbers::pi * (j + 0.5) / static_cast<double>(n);
    double node = std::cos(angles[static_cast<size_t>(j)]);
    double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * node;
    values[static_cast<size_t>(j)] = f(t);
  }

  PolynomialApproximant p;
  p.lo = lo;
  p.hi = hi;
  p.coefficients.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
      sum += values[static_cast<size_t>(j)] *
             std::cos(k * angles[static_cast<size_t>(j)]);
    p.coefficients[static_cast<size_t>(k)] =
        (k == 0 ? 1.0 : 2.0) * sum / static_cast<double>(n);
  }

  constexpr int kGridPoints = 1024;
  double err = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    double t = lo + (hi - lo) * i / static_cast<double>(kGridPoints - 1);
    err = std::max(err, std::abs(p(t) - f(t)));
  }
  p.sup_error = err;
  return p;
}

std::pair<double, double> spectral_interval(const AlgebraElement& x) {
  SpectrumReport report = spectrum(x);
  double lo = report.points.front().value.real();
  double hi = report.points.back().value.real();
  for (const auto& pt : report.points) {
    lo = std::min(lo, pt.value.real());
    hi = std::max(hi, pt.value.real());
  }
  double pad = 1e-6 * std::max(1.0, operator_norm(x));
  return {lo - pad, hi + pad};
}

std::vector<double> transport_via_polynomials(
    const State& E, const AlgebraElement& x, double lambda,
    const ScalarFunction& f, const std::vector<int>& degrees) {
  if (!is_self_adjoint(x, default_self_adjoint_tol(x)))
    throw NotSelfAdjoint("transport_via_polynomials: x is not self-adjoint");
  EigenstateCertificate cert = is_eigenstate(E, x, lambda);
  if (!cert.accepted)
    throw NotAnEigenstate("transport_via_polynomials: E is not an eigenstate "
                          "of x at the given lambda");

  auto [lo, hi] = spectral_interval(x);
  double target = f(lambda);
  std::vector<double> residuals;
  residuals.reserve(degrees.size());
  for (int d : degrees) {
    PolynomialApproximant p = chebyshev_approximant(f, lo, hi, d);
    residuals.push_back(residual(E, p.apply(x), target));
  }
  return residuals;
}

std::vector<double> transport_via_polynomials(const State& E,
                                              const AlgebraElement& x,
                                              double lambda,
                                              const ScalarFunction& f) {
  return transport_via_polynomials(E, x, lambda, f, kDefaultDegreeLadder);
}

bool parse_chebyshev_name(const std::string& name, int& degree,
                          std::string& inner) {
  constexpr const char* kPrefix = "chebyshev:";
  if (name.rfind(kPrefix, 0) != 0) return false;
  std::string rest = name.substr(std::string(kPrefix).size());
  size_t colon = rest.find(':');
  if (colon == std::string::npos)
    throw MalformedInput("chebyshev function needs the form "
                         "chebyshev:<degree>:<name>");
  try {
    degree = std::stoi(rest.substr(0, colon));
  } catch (const std::exception&) {
    throw MalformedInput("invalid chebyshev degree in '" + name + "'");
  }
  inner = rest.substr(colon + 1);
  return true;
}

ScalarFunction scalar_function_by_name(const std::string& name) {
  if (name == "sq") return sf_square();
  if (name == "cube") return sf_cube();
  if (name == "exp") return sf_exp();
  if (name == "abs") return sf_abs();
  if (name == "id") return sf_identity();
  if (name.rfind("witness:", 0) == 0) {
    std::string rest = name.substr(8);
    size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw MalformedInput("witness function needs the form "
                           "witness:<lambda1>:<lambda2>");
    double l1 = 0.0, l2 = 0.0;
    try {
      l1 = std::stod(rest.substr(0, colon));
      l2 = std::stod(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw MalformedInput("invalid witness eigenvalues in '" + name + "'");
    }
    return orthogonality_witness(l1, l2);
  }
  if (name.rfind("chebyshev:", 0) == 0)
    throw MalformedInput("'" + name + "' is an approximant request; it is "
                         "resolved against the spectral interval of the "
                         "operand, not as a standalone function");
  throw MalformedInput("unknown function name '" + name + "'");
}

}  // namespace cstar
