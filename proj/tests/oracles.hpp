#pragma once

// Independent reference computations for the test suites. Everything here is
// hand-rolled (explicit index loops, cyclic Jacobi) so the checks do not
// share a code path with the Eigen-based implementation they judge.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat naive_mul(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Cplx sum = 0.0;
      for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  return out;
}

inline Mat naive_adjoint(const Mat& a) {
  Mat out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

// tr(a b) computed entrywise.
inline Cplx trace_product(const Mat& a, const Mat& b) {
  Cplx sum = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, i);
  return sum;
}

// Eigenvalues of a hermitian matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> hermitian_eigenvalues(Mat h) {
  const int n = static_cast<int>(h.rows());
  if (n == 0) return {};
  if (n == 1) return {h(0, 0).real()};

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(h(i, j)));
  const double stop = 1e-14 * std::max(1.0, scale);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(h(p, q));
        if (r <= stop * 1e-2) continue;
        const Cplx phase = h(p, q) / r;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        // Unitary rotation in the (p, q) plane:
        //   column p of U = (c, s e^{-i phi}), column q = (-s e^{i phi}, c).
        // H <- U* H U first updates columns, then rows.
        for (int i = 0; i < n; ++i) {
          const Cplx hip = h(i, p), hiq = h(i, q);
          h(i, p) = c * hip + s * std::conj(phase) * hiq;
          h(i, q) = -s * phase * hip + c * hiq;
        }
        for (int j = 0; j < n; ++j) {
          const Cplx hpj = h(p, j), hqj = h(q, j);
          h(p, j) = c * hpj + s * phase * hqj;
          h(q, j) = -s * std::conj(phase) * hpj + c * hqj;
        }
      }
  }

  std::vector<double> values(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<size_t>(i)] = h(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

// Singular values as square roots of the eigenvalues of a* a, descending.
inline std::vector<double> singular_values(const Mat& a) {
  std::vector<double> eigs = hermitian_eigenvalues(naive_mul(naive_adjoint(a), a));
  std::vector<double> sv;
  sv.reserve(eigs.size());
  for (auto it = eigs.rbegin(); it != eigs.rend(); ++it)
    sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

inline double operator_norm(const Mat& a) {
  std::vector<double> sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

inline double trace_norm(const Mat& a) {
  double sum = 0.0;
  for (double s : singular_values(a)) sum += s;
  return sum;
}

// Gram-matrix rank with a relative cut, for GNS dimension cross-checks.
inline int rank_with_cut(const Mat& gram, double rel_tol) {
  std::vector<double> eigs = hermitian_eigenvalues(gram);
  double largest = eigs.empty() ? 0.0 : eigs.back();
  int rank = 0;
  for (double e : eigs)
    if (e > rel_tol * largest) ++rank;
  return rank;
}

}  // namespace oracle
