#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/scalar_function.hpp"
#include "cstar/state.hpp"

namespace cstar {

// Outcome of checking whether E is an eigenstate of x at lambda by both
// criteria: the residual E((x-lambda)*(x-lambda)) and the definitional
// defect max_y |E(yx) - lambda E(y)| over the probe set. The two vanish
// together; Cauchy-Schwarz bounds defect^2 by residual on unit-norm probes.
struct EigenstateCertificate {
  Complex lambda;
  double residual = 0.0;
  double definition_defect = 0.0;
  int probes_used = 0;
  bool accepted = false;
};

// E((x-lambda)*(x-lambda)) as a real number. The imaginary part must vanish
// for a valid state; larger than 1e-9 raises NumericalFailure, anything
// smaller is discarded.
double residual(const State& E, const AlgebraElement& x, Complex lambda);

// Default acceptance tolerance, 1e-10 * max(1, ||x||^2); scale-relative so
// verdicts do not depend on the unit of x.
double default_acceptance_tol(const AlgebraElement& x);

// Number of seeded random probes appended to the matrix units.
inline constexpr int kRandomProbes = 32;

// Certificate over the deterministic probe set (all matrix units plus 32
// seeded unit-norm elements). Accepted iff residual <= tol.
EigenstateCertificate is_eigenstate(const State& E, const AlgebraElement& x,
                                    Complex lambda, double tol);
EigenstateCertificate is_eigenstate(const State& E, const AlgebraElement& x,
                                    Complex lambda);

// Constructive eigenstate synthesis for self-adjoint x: for every lambda
// within cluster_tol of the spectrum, returns a pure state supported on the
// eigenspace of the lambda-cluster. This is the finite-dimensional
// replacement for the abstract existence argument: instead of extending a
// functional from the left ideal A(x-lambda), the kernel of x-lambda is
// computed explicitly and a deterministic kernel vector is chosen (the
// eigenbasis vector whose largest-magnitude entry has the smallest global
// row index, phase-normalized so that entry is real positive).
//
// Throws NotSelfAdjoint if x fails the self-adjointness test at sa_tol,
// NotInSpectrum if dist(lambda, spectrum) > cluster_tol.
State eigenstate_for(const AlgebraElement& x, double lambda, double sa_tol,
                     double cluster_tol);
State eigenstate_for(const AlgebraElement& x, double lambda);

// Max over probes y (matrix units plus `trials` seeded unit-norm elements)
// of |E(y (x - lambda))| -- how far E is from annihilating the left ideal
// A(x - lambda). For an eigenstate this is at most sqrt(residual) by
// Cauchy-Schwarz.
double ideal_annihilation_defect(const State& E, const AlgebraElement& x,
                                 Complex lambda, int trials,
                                 std::uint64_t seed);

// Distance from lambda to the spectrum of x, for states already certified
// as eigenstates at lambda (every eigenvalue lies in the spectrum). Throws
// NotAnEigenstate if the certificate at tol rejects.
double eigenvalue_in_spectrum_check(const AlgebraElement& x, const State& E,
                                    Complex lambda, double tol);

// Smallest singular value of the matrix whose rows are the flattened
// densities, normalized by the largest. A margin above tolerance certifies
// linear independence of the functionals.
double independence_margin(const std::vector<State>& states);

// The continuous function with sup norm 1 separating two eigenvalues:
// f(t) = clamp(2 (t - lambda2) / (lambda1 - lambda2) - 1, -1, 1), so
// f(lambda1) = 1 and f(lambda2) = -1. Throws DegenerateWitness when
// lambda1 == lambda2.
ScalarFunction orthogonality_witness(double lambda1, double lambda2);

// Variational characterization: the minimum of E((x-lambda)*(x-lambda))
// over all states equals the bottom eigenvalue of (x-lambda)*(x-lambda),
// attained at the pure state on the minimizing eigenvector. Returns that
// minimum and state.
std::pair<double, State> min_residual_over_states(const AlgebraElement& x,
                                                  Complex lambda);

}  // namespace cstar
