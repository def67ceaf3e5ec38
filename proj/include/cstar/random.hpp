#pragma once

#include <cstdint>
#include <random>

#include "cstar/algebra.hpp"
#include "cstar/state.hpp"

namespace cstar {

// Seed of the deterministic probe generator used by eigenstate verification.
inline constexpr std::uint64_t kProbeSeed = 0xC57A;

// Deterministic random source. The normal variates use an explicit
// bit-to-double mapping and Box-Muller instead of std::*_distribution, so a
// fixed seed reproduces the same stream regardless of standard-library
// implementation details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal();
  Complex complex_normal();  // standard complex normal, E|z|^2 = 1

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Gaussian-filled element: every entry of every block an independent
// standard complex normal.
AlgebraElement random_element(const AlgebraShape& shape, Rng& rng);

// Hermitized gaussian element (x + x*)/2.
AlgebraElement random_hermitian(const AlgebraShape& shape, Rng& rng);

// Gaussian element rescaled to operator norm 1.
AlgebraElement random_unit_norm_element(const AlgebraShape& shape, Rng& rng);

// Random density: rho_k = M_k M_k* with gaussian M_k, jointly normalized to
// unit trace. Positive by construction.
State random_state(const AlgebraShape& shape, Rng& rng);

// The deterministic probe set for definitional eigenstate checks: all matrix
// units of every block (a basis of A, so a zero defect on them certifies the
// universally quantified definition), followed by `extra_random` seeded
// pseudorandom elements of unit operator norm for conditioning diagnostics.
std::vector<AlgebraElement> probe_set(const AlgebraShape& shape,
                                      int extra_random,
                                      std::uint64_t seed = kProbeSeed);

}  // namespace cstar
