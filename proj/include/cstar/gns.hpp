#pragma once

#include <utility>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/state.hpp"

namespace cstar {

// Concrete *-representation produced by the GNS construction from a state:
// the Hilbert space is the algebra modulo the numerical null space of the
// sesquilinear form <y, z> = E(y* z), the representation is left
// multiplication on the quotient, and the cyclic vector is the class of 1.
//
// rep_units holds the representation matrices of the matrix units; rep() of
// an arbitrary element extends by linearity. quotient_map sends matrix-unit
// coefficient vectors (length N = flat_size) to quotient coordinates.
struct GnsData {
  AlgebraShape shape;
  int hilbert_dim = 0;
  std::vector<Matrix> rep_units;  // hilbert_dim x hilbert_dim each
  Vector cyclic_vector;           // length hilbert_dim
  Matrix quotient_map;            // hilbert_dim x flat_size

  Matrix rep(const AlgebraElement& x) const;
};

// Builds the Gram matrix G[i][j] = E(b_i* b_j) over the matrix-unit basis,
// cuts its numerical null space (eigenvalues <= rank_tol * largest), and
// orthonormalizes the quotient through the Gram eigenbasis (symmetric
// orthogonalization, deterministic). A blurred rank decision -- the ratio
// between the last kept and first dropped eigenvalue under 1e3 -- raises
// NumericalFailure instead of silently mis-ranking.
GnsData gns_construct(const State& E, double rank_tol = 1e-10);

// <w, rep(x) w> / <w, w>. Throws ZeroVector for w = 0.
Complex vector_state_of(const GnsData& g, const Vector& w,
                        const AlgebraElement& x);

// Density of the vector state induced by w, reconstructed by evaluating the
// functional on all matrix units.
State state_from_vector(const GnsData& g, const Vector& w);

// The two sides of the vector-state correspondence, computed independently:
// first = ||rep(x) w - lambda w|| <= tol * ||w|| (w is an eigenvector),
// second = the eigenstate certificate of the induced vector state accepted
// at lambda with tolerance tol. The theorem says they always agree.
std::pair<bool, bool> theorem3_check(const GnsData& g, const Vector& w,
                                     const AlgebraElement& x, Complex lambda,
                                     double tol);

// Diagnostics for the summary output: the largest deviation of
// <v, rep(b) v> from E(b) over matrix-unit probes, and the smallest singular
// value of the span matrix {[b_i]} relative to the largest (cyclicity).
double gns_fidelity_defect(const GnsData& g, const State& E);
double gns_cyclicity_margin(const GnsData& g);

}  // namespace cstar
