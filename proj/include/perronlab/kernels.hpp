#pragma once

// Dense kernels with a serial reference implementation and an OpenMP variant.
// The serial versions are the ground truth in the unit tests; the dispatching
// entry points pick the parallel variant for large matrices when more than one
// thread is available.

#include "perronlab/types.hpp"

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perronlab::kernels {

namespace serial {
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix power(const CMatrix& a, std::size_t n);
// sum_{k<n} a^k by accumulation, one product per term.
CMatrix geometric_sum(const CMatrix& a, std::size_t n);
}  // namespace serial

namespace omp {
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix power(const CMatrix& a, std::size_t n);
// sum_{k<n} a^k by binary splitting: S(2m) = S(m) + a^m S(m).
CMatrix geometric_sum(const CMatrix& a, std::size_t n);
}  // namespace omp

// Matrices with at least this many rows use the OpenMP kernels.
inline constexpr Eigen::Index kParallelThreshold = 48;

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix power(const CMatrix& a, std::size_t n);

// Thread cap from PERRONLAB_THREADS (default: OpenMP's own maximum).
int thread_cap();

// Runs body(i) for i in [0, count). Work items must be independent; results are
// expected to be written to per-index slots so the merge stays deterministic.
template <class Body>
void parallel_for(std::size_t count, Body&& body, bool allow_parallel = true) {
#ifdef _OPENMP
    if (allow_parallel && count > 1 && thread_cap() > 1) {
        const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
        for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)allow_parallel;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace perronlab::kernels
