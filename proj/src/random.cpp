#include "cstar/random.hpp"

#include <cmath>
#include <numbers>

namespace cstar {

double Rng::normal() {
  // Box-Muller; u is kept away from 0 so the log is finite.
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

Complex Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

AlgebraElement random_element(const AlgebraShape& shape, Rng& rng) {
  AlgebraElement x = AlgebraElement::zero(shape);
  for (int k = 0; k < shape.block_count(); ++k) {
    int n = shape.block_dim(k);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) x.block(k)(r, c) = rng.complex_normal();
  }
  return x;
}

AlgebraElement random_hermitian(const AlgebraShape& shape, Rng& rng) {
  return hermitize(random_element(shape, rng));
}

AlgebraElement random_unit_norm_element(const AlgebraShape& shape, Rng& rng) {
  AlgebraElement x = random_element(shape, rng);
  double norm = operator_norm(x);
  if (norm == 0.0) return AlgebraElement::identity(shape);
  return scalar_mul(1.0 / norm, x);
}

State random_state(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> rho;
  rho.reserve(static_cast<size_t>(shape.block_count()));
  double trace = 0.0;
  for (int k = 0; k < shape.block_count(); ++k) {
    int n = shape.block_dim(k);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rng.complex_normal();
    Matrix square = m * m.adjoint();
    trace += square.trace().real();
    rho.push_back(std::move(square));
  }
  for (auto& r : rho) r /= trace;
  return State(shape, std::move(rho));
}

std::vector<AlgebraElement> probe_set(const AlgebraShape& shape,
                                      int extra_random, std::uint64_t seed) {
  std::vector<AlgebraElement> probes = matrix_units(shape);
  Rng rng(seed);
  for (int i = 0; i < extra_random; ++i)
    probes.push_back(random_unit_norm_element(shape, rng));
  return probes;
}

}  // namespace cstar
