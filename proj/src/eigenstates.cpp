#include "cstar/eigenstates.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "cstar/random.hpp"

namespace cstar {

double residual(const State& E, const AlgebraElement& x, Complex lambda) {
  require_same_shape(E.shape(), x.shape(), "residual");
  AlgebraElement d = shift(x, lambda);
  Complex value = evaluate(E, adjoint(d) * d);
  if (std::abs(value.imag()) > 1e-9)
    throw NumericalFailure("residual: imaginary part " +
                           std::to_string(value.imag()) +
                           " exceeds 1e-9");
  return value.real();
}

double default_acceptance_tol(const AlgebraElement& x) {
  double norm = operator_norm(x);
  return 1e-10 * std::max(1.0, norm * norm);
}

EigenstateCertificate is_eigenstate(const State& E, const AlgebraElement& x,
                                    Complex lambda, double tol) {
  require_same_shape(E.shape(), x.shape(), "is_eigenstate");
  if (tol < 0.0) throw MalformedInput("is_eigenstate: tolerance must be >= 0");

  EigenstateCertificate cert;
  cert.lambda = lambda;
  cert.residual = residual(E, x, lambda);

  std::vector<AlgebraElement> probes =
      probe_set(x.shape(), kRandomProbes, kProbeSeed);
  double defect = 0.0;
  for (const AlgebraElement& y : probes) {
    Complex lhs = evaluate(E, y * x);
    Complex rhs = lambda * evaluate(E, y);
    defect = std::max(defect, std::abs(lhs - rhs));
  }
  cert.definition_defect = defect;
  cert.probes_used = static_cast<int>(probes.size());
  cert.accepted = cert.residual <= tol;
  return cert;
}

EigenstateCertificate is_eigenstate(const State& E, const AlgebraElement& x,
                                    Complex lambda) {
  return is_eigenstate(E, x, lambda, default_acceptance_tol(x));
}

namespace {

struct EigenPair {
  double value;
  int block;
  Vector vector;  // block-local
};

// All eigenpairs of the hermitized element, blockwise, eigenvalues ascending
// within each block.
std::vector<EigenPair> hermitian_eigenpairs(const AlgebraElement& h) {
  std::vector<EigenPair> pairs;
  for (int k = 0; k < h.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.block(k));
    if (solver.info() != Eigen::Success)
      throw NumericalFailure("eigenstate_for: eigensolver did not converge");
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
      pairs.push_back({solver.eigenvalues()(i), k, solver.eigenvectors().col(i)});
  }
  return pairs;
}

// Rotate the phase so the largest-magnitude entry is real positive, and
// report that entry's global row index. Deterministic tie-break: the first
// maximal entry wins.
int normalize_phase(const AlgebraShape& shape, int block, Vector& v) {
  int arg_max = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    double mag = std::abs(v(i));
    if (mag > best) {
      best = mag;
      arg_max = i;
    }
  }
  Complex pivot = v(arg_max);
  if (std::abs(pivot) > 0.0) v *= std::abs(pivot) / pivot;
  return shape.space_offset(block) + arg_max;
}

}  // namespace

State eigenstate_for(const AlgebraElement& x, double lambda, double sa_tol,
                     double cluster_tol) {
  if (!is_self_adjoint(x, sa_tol))
    throw NotSelfAdjoint("eigenstate_for: element is not self-adjoint");

  AlgebraElement h = hermitize(x);
  std::vector<EigenPair> pairs = hermitian_eigenpairs(h);

  double dist = std::numeric_limits<double>::infinity();
  for (const EigenPair& p : pairs) dist = std::min(dist, std::abs(p.value - lambda));
  if (dist > cluster_tol)
    throw NotInSpectrum("eigenstate_for: lambda = " + std::to_string(lambda) +
                        " is " + std::to_string(dist) +
                        " away from the spectrum");

  // Eigenbasis of the lambda-cluster; pick the deterministic representative.
  int best_row = std::numeric_limits<int>::max();
  const EigenPair* chosen = nullptr;
  Vector chosen_vec;
  for (EigenPair& p : pairs) {
    if (std::abs(p.value - lambda) > cluster_tol) continue;
    Vector v = p.vector;
    int row = normalize_phase(x.shape(), p.block, v);
    if (row < best_row) {
      best_row = row;
      chosen = &p;
      chosen_vec = std::move(v);
    }
  }
  if (chosen == nullptr)
    throw NumericalFailure("eigenstate_for: empty eigenvalue cluster");
  return pure_state(x.shape(), chosen->block, chosen_vec);
}

State eigenstate_for(const AlgebraElement& x, double lambda) {
  return eigenstate_for(x, lambda, default_self_adjoint_tol(x),
                        default_cluster_tol(x));
}

double ideal_annihilation_defect(const State& E, const AlgebraElement& x,
                                 Complex lambda, int trials,
                                 std::uint64_t seed) {
  require_same_shape(E.shape(), x.shape(), "ideal_annihilation_defect");
  if (trials < 1)
    throw MalformedInput("ideal_annihilation_defect: trials must be >= 1");
  AlgebraElement d = shift(x, lambda);
  double defect = 0.0;
  for (const AlgebraElement& y : probe_set(x.shape(), trials, seed))
    defect = std::max(defect, std::abs(evaluate(E, y * d)));
  return defect;
}

double eigenvalue_in_spectrum_check(const AlgebraElement& x, const State& E,
                                    Complex lambda, double tol) {
  EigenstateCertificate cert = is_eigenstate(E, x, lambda, tol);
  if (!cert.accepted)
    throw NotAnEigenstate("eigenvalue_in_spectrum_check: residual " +
                          std::to_string(cert.residual) + " exceeds " +
                          std::to_string(tol));
  return spectrum(x).distance_to(lambda);
}

double independence_margin(const std::vector<State>& states) {
  if (states.empty())
    throw MalformedInput("independence_margin: empty state list");
  for (const State& s : states)
    require_same_shape(states.front().shape(), s.shape(),
                       "independence_margin");

  const int n = states.front().shape().flat_size();
  Matrix rows(static_cast<int>(states.size()), n);
  for (size_t i = 0; i < states.size(); ++i)
    rows.row(static_cast<int>(i)) = states[i].flatten().transpose();

  Eigen::JacobiSVD<Matrix> svd(rows);
  if (svd.info() != Eigen::Success)
    throw NumericalFailure("independence_margin: SVD did not converge");
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

ScalarFunction orthogonality_witness(double lambda1, double lambda2) {
  if (lambda1 == lambda2)
    throw DegenerateWitness("orthogonality witness needs distinct eigenvalues");
  return {[lambda1, lambda2](double t) {
            double raw = 2.0 * (t - lambda2) / (lambda1 - lambda2) - 1.0;
            return std::clamp(raw, -1.0, 1.0);
          },
          "witness:" + std::to_string(lambda1) + ":" +
              std::to_string(lambda2)};
}

std::pair<double, State> min_residual_over_states(const AlgebraElement& x,
                                                  Complex lambda) {
  AlgebraElement d = shift(x, lambda);
  // The minimum of tr(rho h) over densities is the bottom eigenvalue of h.
  AlgebraElement h = hermitize(adjoint(d) * d);

  double best = std::numeric_limits<double>::infinity();
  int best_block = -1;
  Vector best_vec;
  for (int k = 0; k < h.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.block(k));
    if (solver.info() != Eigen::Success)
      throw NumericalFailure(
          "min_residual_over_states: eigensolver did not converge");
    if (solver.eigenvalues()(0) < best) {
      best = solver.eigenvalues()(0);
      best_block = k;
      best_vec = solver.eigenvectors().col(0);
    }
  }
  normalize_phase(x.shape(), best_block, best_vec);
  return {best, pure_state(x.shape(), best_block, best_vec)};
}

}  // namespace cstar
