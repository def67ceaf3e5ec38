#include "cstar/state.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace cstar {

State::State(AlgebraShape shape, std::vector<Matrix> rho)
    : shape_(std::move(shape)), rho_(std::move(rho)) {
  if (static_cast<int>(rho_.size()) != shape_.block_count())
    throw MalformedInput("state block count does not match shape");

  double trace = 0.0;
  for (int k = 0; k < shape_.block_count(); ++k) {
    Matrix& r = rho_[static_cast<size_t>(k)];
    if (r.rows() != shape_.block_dim(k) || r.cols() != shape_.block_dim(k))
      throw MalformedInput("state block " + std::to_string(k) +
                           " has wrong dimensions");
    double herm_defect = (r - r.adjoint().eval()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermiticityTol)
      throw MalformedInput("state density block " + std::to_string(k) +
                           " is not hermitian (defect " +
                           std::to_string(herm_defect) + ")");
    r = 0.5 * (r + r.adjoint().eval());
    trace += r.trace().real();
  }

  if (std::abs(trace - 1.0) > kTraceDriftTol)
    throw MalformedInput("state density trace " + std::to_string(trace) +
                         " is too far from 1");
  for (auto& r : rho_) r /= trace;

  for (int k = 0; k < shape_.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_[static_cast<size_t>(k)],
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalFailure("state validation: eigensolver did not converge");
    if (solver.eigenvalues()(0) < -kPositivityTol)
      throw MalformedInput("state density block " + std::to_string(k) +
                           " is not positive semidefinite (min eigenvalue " +
                           std::to_string(solver.eigenvalues()(0)) + ")");
  }
}

Vector State::flatten() const {
  return as_element().flatten();
}

AlgebraElement State::as_element() const {
  return AlgebraElement(shape_, rho_);
}

State State::maximally_mixed(const AlgebraShape& shape) {
  std::vector<Matrix> rho;
  rho.reserve(static_cast<size_t>(shape.block_count()));
  double dim = static_cast<double>(shape.space_dim());
  for (int k = 0; k < shape.block_count(); ++k)
    rho.push_back(Matrix::Identity(shape.block_dim(k), shape.block_dim(k)) /
                  dim);
  return State(shape, std::move(rho));
}

Complex evaluate(const State& E, const AlgebraElement& x) {
  require_same_shape(E.shape(), x.shape(), "evaluate");
  Complex value = 0.0;
  for (int k = 0; k < E.block_count(); ++k)
    value += (E.density(k) * x.block(k)).trace();
  return value;
}

State pure_state(const AlgebraShape& shape, int block_index, const Vector& v) {
  if (block_index < 0 || block_index >= shape.block_count())
    throw MalformedInput("pure_state: block index out of range");
  if (v.size() != shape.block_dim(block_index))
    throw ShapeMismatch("pure_state: vector length does not match block");
  double norm = v.norm();
  if (norm == 0.0) throw ZeroVector("pure_state: vector must be nonzero");

  Vector unit = v / norm;
  std::vector<Matrix> rho;
  rho.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k) {
    if (k == block_index)
      rho.push_back(unit * unit.adjoint());
    else
      rho.push_back(Matrix::Zero(shape.block_dim(k), shape.block_dim(k)));
  }
  return State(shape, std::move(rho));
}

namespace {

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success)
    throw NumericalFailure("trace norm: SVD did not converge");
  return svd.singularValues().sum();
}

}  // namespace

double functional_norm(const State& E) {
  double norm = 0.0;
  for (int k = 0; k < E.block_count(); ++k) norm += trace_norm(E.density(k));
  return norm;
}

double functional_norm(const State& E1, const State& E2) {
  require_same_shape(E1.shape(), E2.shape(), "functional_norm");
  double norm = 0.0;
  for (int k = 0; k < E1.block_count(); ++k)
    norm += trace_norm(E1.density(k) - E2.density(k));
  return norm;
}

bool are_orthogonal(const State& E1, const State& E2, double tol) {
  if (tol < 0.0) throw MalformedInput("are_orthogonal: tolerance must be >= 0");
  return std::abs(functional_norm(E1, E2) - 2.0) <= tol;
}

State compress(const State& E, const AlgebraElement& p, double tol) {
  require_same_shape(E.shape(), p.shape(), "compress");
  if (!is_projection(p, tol))
    throw NotAProjection("compress: p is not a self-adjoint projection");

  double weight = evaluate(E, p).real();
  if (weight <= tol)
    throw ZeroWeight("compress: E(p) = " + std::to_string(weight) +
                     " is below the weight threshold");

  std::vector<Matrix> rho;
  rho.reserve(static_cast<size_t>(E.block_count()));
  for (int k = 0; k < E.block_count(); ++k)
    rho.push_back((p.block(k) * E.density(k) * p.block(k)) / weight);
  return State(E.shape(), std::move(rho));
}

double cauchy_schwarz_gap(const State& E, const AlgebraElement& y,
                          const AlgebraElement& z) {
  require_same_shape(E.shape(), y.shape(), "cauchy_schwarz_gap");
  require_same_shape(E.shape(), z.shape(), "cauchy_schwarz_gap");
  double yy = evaluate(E, adjoint(y) * y).real();
  double zz = evaluate(E, adjoint(z) * z).real();
  Complex yz = evaluate(E, adjoint(y) * z);
  return yy * zz - std::norm(yz);
}

}  // namespace cstar
