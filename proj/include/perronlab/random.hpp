#pragma once

// Seeded generators behind the property suites.  Every trial owns an engine
// seeded from (seed, trial), so results do not depend on scheduling.

#include "perronlab/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace perronlab::sampling {

using Rng = std::mt19937_64;

Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive
double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

// Entries U(0,1) kept with probability `density`; every row and column keeps
// at least one entry.
RMatrix nonnegative(Rng& rng, std::size_t n, double density = 1.0);
// Cyclic block pattern of the given period: class c only feeds class c+1.
RMatrix imprimitive(Rng& rng, std::size_t n, std::size_t period);
RMatrix permutation(Rng& rng, std::size_t n);

// Divides by the spectral radius; throws when r(T) = 0.
RMatrix normalize_radius(const RMatrix& t);
RMatrix normalize_rows(const RMatrix& t);

struct Sample {
    RMatrix t;
    std::string family;
};

// Nonnegative matrices, n in [1, n_max]: dense, sparse, imprimitive,
// permutation, and block-triangular couplings of equal-radius pieces.
Sample cyclicity_sample(Rng& rng, std::size_t n_max);
// Row-stochastic matrices of the same families.
Sample stochastic_sample(Rng& rng, std::size_t n_max);
// r(T) = 1: irreducible (pole 1), chained equal-radius blocks with coupling
// in [0.5, 1] (pole 2 or 3), a dominated block of radius <= 0.6 (pole 1),
// imprimitive (pole 1).
Sample pole_sample(Rng& rng, std::size_t n_max);
// Jordan block of size m at 1, coupled (entries <= 0.3) into a random block
// of radius <= 0.5.
RMatrix planted_jordan(Rng& rng, std::size_t m, std::size_t extra);

// Complex entries with |z| in [0.1, 2]; each entry is zero with probability
// zero_prob, at least one entry stays nonzero.
CVector complex_vector(Rng& rng, std::size_t n, double zero_prob = 0.2);
// Linearly independent nonzero family of `count` vectors in C^n.
std::vector<LatticeVector> independent_family(Rng& rng, std::size_t n, std::size_t count);

}  // namespace perronlab::sampling
