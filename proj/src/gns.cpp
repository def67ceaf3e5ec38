#include "cstar/gns.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "cstar/eigenstates.hpp"

namespace cstar {

Matrix GnsData::rep(const AlgebraElement& x) const {
  require_same_shape(shape, x.shape(), "gns rep");
  Vector coeffs = x.flatten();
  Matrix image = Matrix::Zero(hilbert_dim, hilbert_dim);
  for (int i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != Complex(0.0, 0.0))
      image += coeffs(i) * rep_units[static_cast<size_t>(i)];
  return image;
}

GnsData gns_construct(const State& E, double rank_tol) {
  if (rank_tol < 0.0)
    throw MalformedInput("gns_construct: rank tolerance must be >= 0");

  const AlgebraShape& shape = E.shape();
  const int n = shape.flat_size();

  // Gram entries over matrix units reduce to density entries:
  // E(E_pq* E_rs) = delta_pr E(E_qs) = delta_pr rho(s, q), blockwise.
  Matrix gram = Matrix::Zero(n, n);
  for (int k = 0; k < shape.block_count(); ++k) {
    const int nk = shape.block_dim(k);
    const int offset = shape.flat_offset(k);
    for (int p = 0; p < nk; ++p)
      for (int q = 0; q < nk; ++q)
        for (int s = 0; s < nk; ++s)
          gram(offset + p * nk + q, offset + p * nk + s) =
              E.density(k)(s, q);
  }
  gram = 0.5 * (gram + gram.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("gns_construct: Gram eigensolver did not converge");
  const Eigen::VectorXd& eigs = solver.eigenvalues();  // ascending
  double largest = eigs(n - 1);
  if (largest <= 0.0)
    throw NumericalFailure("gns_construct: Gram matrix has no positive part");

  double cut = rank_tol * largest;
  int first_kept = 0;
  while (first_kept < n && eigs(first_kept) <= cut) ++first_kept;
  if (first_kept == n)
    throw NumericalFailure("gns_construct: null-space cut removed everything");
  if (first_kept > 0) {
    double last_dropped = eigs(first_kept - 1);
    if (last_dropped > 0.0 && eigs(first_kept) / last_dropped < 1e3)
      throw NumericalFailure(
          "gns_construct: no clear spectral gap at the null-space cut "
          "(ratio " +
          std::to_string(eigs(first_kept) / last_dropped) + ")");
  }

  const int dim = n - first_kept;
  GnsData g;
  g.shape = shape;
  g.hilbert_dim = dim;

  // Kept eigenpairs, ascending. Classes e_j = [sum_i (u_j)_i b_i / sqrt(s_j)]
  // are orthonormal; coordinates of a class [a] are D^{1/2} U^H a.
  Matrix kept = solver.eigenvectors().rightCols(dim);
  Eigen::VectorXd kept_eigs = eigs.tail(dim);
  Eigen::VectorXd root = kept_eigs.cwiseSqrt();

  g.quotient_map = root.cast<Complex>().asDiagonal() * kept.adjoint();
  Matrix lift = kept * root.cwiseInverse().cast<Complex>().asDiagonal();

  // Left multiplication by the unit E_pq of block k replaces row p of an
  // operand block with its row q and zeroes everything else. In coefficient
  // coordinates that contracts the row-p columns of the quotient map with
  // the row-q rows of the lifted basis:
  //   rep(E_pq) = Q[:, p-th row slice] * lift[q-th row slice, :].
  g.rep_units.resize(static_cast<size_t>(n));
  for (int k = 0; k < shape.block_count(); ++k) {
    const int nk = shape.block_dim(k);
    const int offset = shape.flat_offset(k);
    for (int p = 0; p < nk; ++p)
      for (int q = 0; q < nk; ++q)
        g.rep_units[static_cast<size_t>(offset + p * nk + q)] =
            g.quotient_map.middleCols(offset + p * nk, nk) *
            lift.middleRows(offset + q * nk, nk);
  }

  g.cyclic_vector =
      g.quotient_map * AlgebraElement::identity(shape).flatten();
  return g;
}

Complex vector_state_of(const GnsData& g, const Vector& w,
                        const AlgebraElement& x) {
  if (w.size() != g.hilbert_dim)
    throw ShapeMismatch("vector_state_of: vector length does not match "
                        "Hilbert space dimension");
  double norm2 = w.squaredNorm();
  if (norm2 == 0.0) throw ZeroVector("vector_state_of: vector must be nonzero");
  return (w.adjoint() * g.rep(x) * w)(0) / norm2;
}

State state_from_vector(const GnsData& g, const Vector& w) {
  if (w.size() != g.hilbert_dim)
    throw ShapeMismatch("state_from_vector: vector length does not match "
                        "Hilbert space dimension");
  double norm2 = w.squaredNorm();
  if (norm2 == 0.0)
    throw ZeroVector("state_from_vector: vector must be nonzero");

  // tr(rho E_rc) = rho(c, r): read the density off the functional values on
  // matrix units, then hermitize away the reconstruction roundoff.
  std::vector<Matrix> rho;
  rho.reserve(static_cast<size_t>(g.shape.block_count()));
  int unit_index = 0;
  const std::vector<AlgebraElement> units = matrix_units(g.shape);
  for (int k = 0; k < g.shape.block_count(); ++k) {
    int nk = g.shape.block_dim(k);
    Matrix block(nk, nk);
    for (int r = 0; r < nk; ++r)
      for (int c = 0; c < nk; ++c) {
        Complex value =
            (w.adjoint() * g.rep_units[static_cast<size_t>(unit_index)] * w)(0) /
            norm2;
        block(c, r) = value;
        ++unit_index;
      }
    block = 0.5 * (block + block.adjoint().eval());
    rho.push_back(std::move(block));
  }
  return State(g.shape, std::move(rho));
}

std::pair<bool, bool> theorem3_check(const GnsData& g, const Vector& w,
                                     const AlgebraElement& x, Complex lambda,
                                     double tol) {
  if (w.size() != g.hilbert_dim)
    throw ShapeMismatch("theorem3_check: vector length does not match "
                        "Hilbert space dimension");
  double norm = w.norm();
  if (norm == 0.0) throw ZeroVector("theorem3_check: vector must be nonzero");

  bool is_eigenvector = (g.rep(x) * w - lambda * w).norm() <= tol * norm;
  EigenstateCertificate cert =
      is_eigenstate(state_from_vector(g, w), x, lambda, tol);
  return {is_eigenvector, cert.accepted};
}

double gns_fidelity_defect(const GnsData& g, const State& E) {
  require_same_shape(g.shape, E.shape(), "gns_fidelity_defect");
  const std::vector<AlgebraElement> units = matrix_units(g.shape);
  double defect = 0.0;
  for (size_t i = 0; i < units.size(); ++i) {
    Complex via_rep =
        (g.cyclic_vector.adjoint() * g.rep_units[i] * g.cyclic_vector)(0);
    defect = std::max(defect, std::abs(via_rep - evaluate(E, units[i])));
  }
  return defect;
}

double gns_cyclicity_margin(const GnsData& g) {
  const int n = g.shape.flat_size();
  Matrix span(g.hilbert_dim, n);
  for (int i = 0; i < n; ++i)
    span.col(i) = g.rep_units[static_cast<size_t>(i)] * g.cyclic_vector;
  Eigen::JacobiSVD<Matrix> svd(span);
  if (svd.info() != Eigen::Success)
    throw NumericalFailure("gns_cyclicity_margin: SVD did not converge");
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

}  // namespace cstar
