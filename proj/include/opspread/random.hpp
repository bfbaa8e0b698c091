#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opspread/matkernel.hpp"
#include "opspread/states.hpp"

namespace opspread {

using Rng = std::mt19937_64;

/// Mixes a master seed with an item index (splitmix64 finalizer) so that
/// per-item streams are independent and serial/parallel runs agree.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) with 53 random bits. Implemented by hand so the
/// stream is identical across standard libraries.
double uniform_real(Rng& rng);

/// Standard normal via Box-Muller (two uniforms per call, no cached state).
double standard_normal(Rng& rng);

/// Complex standard normal: N(0,1) real and imaginary parts.
Complex complex_normal(Rng& rng);

Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed isometry (rows ≥ cols): Ginibre + QR with the phase of
/// the triangular factor's diagonal folded back in.
Matrix haar_isometry(int rows, int cols, Rng& rng);

Matrix haar_unitary(int dim, Rng& rng);

/// Full-rank mixed state GG†/Tr(GG†) from a square Ginibre G.
DensityMatrix random_density_matrix(int dim, Rng& rng);

/// Haar-random pure state |ψ⟩⟨ψ|.
DensityMatrix random_pure_state(int dim, Rng& rng);

/// Uniform point on the probability simplex (normalized exponentials).
std::vector<double> random_simplex(int m, Rng& rng);

}  // namespace opspread
