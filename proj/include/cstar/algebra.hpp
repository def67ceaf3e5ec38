#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "cstar/errors.hpp"

namespace cstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Block structure of a finite-dimensional C*-algebra A = M_{n_1} + ... +
// M_{n_m} (direct sum of full complex matrix algebras). Every element and
// state in the toolkit carries one of these.
class AlgebraShape {
 public:
  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<int> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_dim(int k) const { return blocks_.at(static_cast<size_t>(k)); }
  const std::vector<int>& blocks() const { return blocks_; }

  // Length of the flattened coefficient vector: sum of n_k^2. This is the
  // dimension of A as a vector space and the length serialization uses.
  int flat_size() const;

  // Dimension of the direct-sum column space: sum of n_k. Equals the total
  // eigenvalue multiplicity of any element.
  int space_dim() const;

  // Start of block k in the flattened coefficient vector.
  int flat_offset(int k) const;

  // Start of block k in the direct-sum column space.
  int space_offset(int k) const;

  bool operator==(const AlgebraShape& other) const = default;

  // Parses "4" or "2,3" style lists. Throws MalformedInput on empty lists,
  // non-numeric entries, or dimensions < 1.
  static AlgebraShape parse(const std::string& text);

  std::string to_string() const;

 private:
  std::vector<int> blocks_;
};

// An element x of A, stored as one dense complex matrix per direct summand.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement identity(const AlgebraShape& shape);

  const AlgebraShape& shape() const { return shape_; }
  int block_count() const { return shape_.block_count(); }
  const Matrix& block(int k) const { return blocks_[static_cast<size_t>(k)]; }
  Matrix& block(int k) { return blocks_[static_cast<size_t>(k)]; }

  // Coefficients with respect to the matrix-unit basis: block k occupies
  // indices [flat_offset(k), flat_offset(k) + n_k^2) in row-major order.
  Vector flatten() const;
  static AlgebraElement unflatten(const AlgebraShape& shape, const Vector& v);

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

AlgebraElement adjoint(const AlgebraElement& x);
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scalar_mul(Complex c, const AlgebraElement& x);

inline AlgebraElement operator*(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return mul(x, y);
}
inline AlgebraElement operator+(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return add(x, y);
}
inline AlgebraElement operator-(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return sub(x, y);
}
inline AlgebraElement operator*(Complex c, const AlgebraElement& x) {
  return scalar_mul(c, x);
}
inline AlgebraElement operator*(double c, const AlgebraElement& x) {
  return scalar_mul(Complex(c, 0.0), x);
}

// (x + x*)/2. Shared by every routine that needs a hermitian input so that
// repeated eigendecompositions of the same element see bit-identical data.
AlgebraElement hermitize(const AlgebraElement& x);

// x - lambda * 1.
AlgebraElement shift(const AlgebraElement& x, Complex lambda);

// Largest singular value over all blocks (the C*-norm of A realized on the
// direct sum).
double operator_norm(const AlgebraElement& x);

// Frobenius norm of x - x*; convenience for the predicates below.
double self_adjoint_defect(const AlgebraElement& x);

bool is_self_adjoint(const AlgebraElement& x, double tol);
bool is_projection(const AlgebraElement& x, double tol);
bool is_positive(const AlgebraElement& x, double tol);

// Default tolerances, scale-relative so results do not depend on the unit of
// the element: 1e-10 * max(1, ||x||) for self-adjointness and 1e-8 *
// max(1, ||x||) for spectral clustering.
double default_self_adjoint_tol(const AlgebraElement& x);
double default_cluster_tol(const AlgebraElement& x);

struct SpectralPoint {
  Complex value;
  int multiplicity = 0;
};

// Spectrum of an element, computed as the union of the blockwise matrix
// eigenvalues. This equals the spectrum relative to A itself by spectral
// permanence for C*-subalgebras: the spectrum of an element of a unital
// C*-subalgebra does not change when computed in the ambient algebra.
struct SpectrumReport {
  std::vector<SpectralPoint> points;
  bool is_self_adjoint = false;
  double cluster_tolerance = 0.0;

  int total_multiplicity() const;
  double distance_to(Complex lambda) const;
};

// Eigenvalues within cluster_tol of each other are merged (single linkage)
// with summed multiplicity; the merged point is the mean of its members.
// For self-adjoint input the element is hermitized first, points are real
// and sorted ascending. Throws NumericalFailure if the eigensolver fails.
SpectrumReport spectrum(const AlgebraElement& x, double cluster_tol);
SpectrumReport spectrum(const AlgebraElement& x);

// The matrix units E^{(k)}_{rc} of every block, ordered consistently with
// AlgebraElement::flatten. They form a basis of A, so a linear identity that
// holds on all of them holds on all of A.
std::vector<AlgebraElement> matrix_units(const AlgebraShape& shape);

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b,
                        const char* op);

}  // namespace cstar
