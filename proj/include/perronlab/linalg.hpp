#pragma once

// Dense numerical-rank helpers on top of Eigen's SVD.

#include "perronlab/types.hpp"

#include <limits>

namespace perronlab::linalg {

// Singular values at or below this count as zero:
// dimension * machine epsilon * largest singular value * 10^3.
double rank_threshold(Eigen::Index dimension, double sigma_max);

RVector singular_values(const CMatrix& a);

std::size_t numerical_rank(const CMatrix& a);

inline std::size_t nullity(const CMatrix& a) {
    return static_cast<std::size_t>(a.cols()) - numerical_rank(a);
}

// Orthonormal basis (columns) of the numerical kernel of a.
CMatrix null_space(const CMatrix& a);

// The k right singular vectors belonging to the k smallest singular values.
CMatrix smallest_right_singular_vectors(const CMatrix& a, Eigen::Index k);

// Orthonormal basis (columns) of the numerical kernel of a real matrix.
RMatrix real_null_space(const RMatrix& a);

struct ConstrainedKernel {
    CMatrix basis;  // columns span ker(a) ∩ ker(c)
    // Smallest singular value of c restricted to ker(a); +inf when ker(a) = {0}
    // or there are no constraint rows.
    double constraint_sigma_min = std::numeric_limits<double>::infinity();
    std::size_t unconstrained_dim = 0;
};

// Two-stage intersection: numerical kernel of a first, then the kernel of the
// constraint rows restricted to it.
ConstrainedKernel constrained_kernel(const CMatrix& a, const CMatrix& c);

}  // namespace perronlab::linalg
