#pragma once

#include <optional>
#include <vector>

#include "cstar/algebra.hpp"

namespace cstar {

// A state E on A, stored through its block density matrix: E(x) = sum_k
// tr(rho_k x_k). This is the Riesz identification of the normalized positive
// linear functionals with unit-trace positive elements; it makes the norm
// and positivity of a functional finite computations.
//
// Construction validates hermiticity (1e-12 absolute per block), joint
// positivity (min eigenvalue >= -1e-12) and normalization. Trace drift below
// 1e-9 is renormalized away; anything beyond is rejected as MalformedInput.
// The stored blocks are the hermitized, renormalized ones.
class State {
 public:
  State(AlgebraShape shape, std::vector<Matrix> rho);

  const AlgebraShape& shape() const { return shape_; }
  int block_count() const { return shape_.block_count(); }
  const Matrix& density(int k) const { return rho_[static_cast<size_t>(k)]; }

  // Densities flattened in matrix-unit order, matching AlgebraElement.
  Vector flatten() const;

  // The density as an element of A (positive, trace one).
  AlgebraElement as_element() const;

  static State maximally_mixed(const AlgebraShape& shape);

  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kPositivityTol = 1e-12;
  static constexpr double kTraceDriftTol = 1e-9;

 private:
  AlgebraShape shape_;
  std::vector<Matrix> rho_;
};

// E(x) = sum_k tr(rho_k x_k).
Complex evaluate(const State& E, const AlgebraElement& x);

// The vector state of v in block k: density v v* / <v,v> in that block and
// zero elsewhere. Throws ZeroVector when v has norm zero.
State pure_state(const AlgebraShape& shape, int block_index, const Vector& v);

// Trace norm of the density (always 1 for a valid state). The dual norm of a
// hermitian functional on a matrix algebra is the trace norm of its density,
// which is what makes this the functional norm ||E||.
double functional_norm(const State& E);

// ||E1 - E2|| = sum_k ||rho1_k - rho2_k||_1 (sum of singular values).
double functional_norm(const State& E1, const State& E2);

// Orthogonal functionals satisfy ||E1 - E2|| = ||E1|| + ||E2|| = 2.
bool are_orthogonal(const State& E1, const State& E2, double tol);

// The compressed state x -> E(pxp)/E(p) for a self-adjoint projection p,
// realized as density p rho p / tr(rho p). Throws NotAProjection when p
// fails the projection test at tol, ZeroWeight when E(p) <= tol (the
// compression formula is undefined there).
State compress(const State& E, const AlgebraElement& p, double tol = 1e-12);

// E(y*y) E(z*z) - |E(y*z)|^2, the Cauchy-Schwarz gap; nonnegative up to
// roundoff for every state.
double cauchy_schwarz_gap(const State& E, const AlgebraElement& y,
                          const AlgebraElement& z);

}  // namespace cstar
