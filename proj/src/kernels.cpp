#include "perronlab/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace perronlab::kernels {

namespace {

void check_product_shape(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matmul: inner dimensions differ");
}

void check_square(const CMatrix& a) {
    if (a.rows() != a.cols()) throw Error("kernel expects a square matrix");
}

}  // namespace

namespace serial {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    check_product_shape(a, b);
    const Eigen::Index m = a.rows(), k = a.cols(), n = b.cols();
    CMatrix c = CMatrix::Zero(m, n);
    // Column-major friendly j-l-i order.
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < k; ++l) {
            const cplx blj = b(l, j);
            if (blj == cplx(0.0)) continue;
            for (Eigen::Index i = 0; i < m; ++i) c(i, j) += a(i, l) * blj;
        }
    return c;
}

CMatrix power(const CMatrix& a, std::size_t n) {
    check_square(a);
    CMatrix result = CMatrix::Identity(a.rows(), a.cols());
    CMatrix base = a;
    while (n > 0) {
        if (n & 1u) result = serial::matmul(result, base);
        n >>= 1u;
        if (n) base = serial::matmul(base, base);
    }
    return result;
}

CMatrix geometric_sum(const CMatrix& a, std::size_t n) {
    check_square(a);
    CMatrix sum = CMatrix::Zero(a.rows(), a.cols());
    CMatrix term = CMatrix::Identity(a.rows(), a.cols());
    for (std::size_t k = 0; k < n; ++k) {
        sum += term;
        if (k + 1 < n) term = serial::matmul(term, a);
    }
    return sum;
}

}  // namespace serial

namespace omp {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    check_product_shape(a, b);
    const Eigen::Index m = a.rows(), k = a.cols(), n = b.cols();
    CMatrix c = CMatrix::Zero(m, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_cap())
#endif
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < k; ++l) {
            const cplx blj = b(l, j);
            if (blj == cplx(0.0)) continue;
            for (Eigen::Index i = 0; i < m; ++i) c(i, j) += a(i, l) * blj;
        }
    return c;
}

CMatrix power(const CMatrix& a, std::size_t n) {
    check_square(a);
    CMatrix result = CMatrix::Identity(a.rows(), a.cols());
    CMatrix base = a;
    while (n > 0) {
        if (n & 1u) result = omp::matmul(result, base);
        n >>= 1u;
        if (n) base = omp::matmul(base, base);
    }
    return result;
}

CMatrix geometric_sum(const CMatrix& a, std::size_t n) {
    check_square(a);
    const Eigen::Index d = a.rows();
    if (n == 0) return CMatrix::Zero(d, d);
    // Invariant: sum = S(m) = sum_{k<m} a^k and pw = a^m, with m the bits of n
    // consumed so far.
    CMatrix sum = CMatrix::Identity(d, d);
    CMatrix pw = a;
    std::size_t top = 1;
    while (top * 2 <= n) top *= 2;
    for (std::size_t bit = top >> 1; bit > 0; bit >>= 1) {
        sum += omp::matmul(pw, sum);  // S(2m)
        pw = omp::matmul(pw, pw);
        if (n & bit) {
            sum += pw;  // S(2m+1) = S(2m) + a^{2m}
            pw = omp::matmul(pw, a);
        }
    }
    return sum;
}

}  // namespace omp

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.rows() >= kParallelThreshold && thread_cap() > 1) return omp::matmul(a, b);
    return serial::matmul(a, b);
}

CMatrix power(const CMatrix& a, std::size_t n) {
    if (a.rows() >= kParallelThreshold && thread_cap() > 1) return omp::power(a, n);
    return serial::power(a, n);
}

int thread_cap() {
#ifdef _OPENMP
    static const int cap = [] {
        int base = omp_get_max_threads();
        if (const char* env = std::getenv("PERRONLAB_THREADS")) {
            try {
                int requested = std::stoi(env);
                if (requested >= 1) base = std::min(base, requested);
            } catch (...) {
            }
        }
        return std::max(base, 1);
    }();
    return cap;
#else
    return 1;
#endif
}

}  // namespace perronlab::kernels
