#pragma once

// Order and modulus operations on the finite coordinate lattices, plus the
// signum-operator lattice powers f^[n].

#include "perronlab/types.hpp"

#include <vector>

namespace perronlab {

inline constexpr double kDefaultDominationTol = 1e-10;

LatticeVector modulus(const LatticeVector& v);

// Entrywise supremum of real vectors sharing a model.
LatticeVector entrywise_sup(const std::vector<LatticeVector>& vs);

// |z_i| <= x_i + tol for every coordinate. x must be real.
bool dominates(const LatticeVector& x, const LatticeVector& z,
               double tol = kDefaultDominationTol);

// Pointwise (f_i/|f_i|)^n |f_i|, and 0 where f_i = 0. Throws for f = 0.
LatticeVector lattice_power(const LatticeVector& f, int n);

struct IndependenceReport {
    std::size_t rank = 0;          // rank of the input family
    std::size_t powered_rank = 0;  // rank of the powered pivot basis
    std::vector<std::size_t> pivots;
    std::vector<LatticeVector> pivot_basis;  // f_j with f_j(x_k) = delta_jk
    bool preserved = false;
};

// Builds the pivot basis f_1..f_r of span(G) (f_j(x_k) = delta_jk on pivot
// coordinates x_k), powers it, and compares ranks.
IndependenceReport independence_report(const std::vector<LatticeVector>& family, int n);

inline bool independence_preserved(const std::vector<LatticeVector>& family, int n) {
    return independence_report(family, n).preserved;
}

// Nonnegative with at most one nonzero per row: |Tz| = T|z| for all z.
bool is_lattice_homomorphism(const OperatorMatrix& t, double tol = 1e-12);

}  // namespace perronlab
