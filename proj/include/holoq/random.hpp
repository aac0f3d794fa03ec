// Seeded random primitives. mt19937_64 output is pinned by the standard and
// the double/Gaussian derivations below avoid std::*_distribution, so the
// same seed yields the same stream on every platform.

#ifndef HOLOQ_RANDOM_HPP
#define HOLOQ_RANDOM_HPP

#include <random>

#include "holoq/qumix.hpp"

namespace holoq {

using Rng = std::mt19937_64;

inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; one value per call.
double gaussian(Rng& rng);

Complex gaussian_complex(Rng& rng);

// Haar-like random unitary via QR of a Gaussian matrix, phases fixed.
Matrix random_unitary(Eigen::Index dim, Rng& rng);

Ket random_ket(int qubits, Rng& rng);

// Wishart-style random density operator (full rank almost surely).
Qumix random_mixed(int qubits, Rng& rng);

}  // namespace holoq

#endif  // HOLOQ_RANDOM_HPP
