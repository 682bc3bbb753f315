#include "perronlab/linalg.hpp"

#include <algorithm>

namespace perronlab::linalg {

namespace {

constexpr Eigen::Index kJacobiLimit = 64;

template <class Mat>
struct SvdOf {
    RVector sigma;
    Mat v;
};

template <class Mat>
SvdOf<Mat> svd_with_v(const Mat& a) {
    if (a.rows() <= kJacobiLimit && a.cols() <= kJacobiLimit) {
        Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
        return {svd.singularValues(), svd.matrixV()};
    }
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV()};
}

template <class Mat>
Mat null_space_impl(const Mat& a) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return Mat::Identity(n, n);
    auto svd = svd_with_v(a);
    const double smax = svd.sigma.size() ? svd.sigma(0) : 0.0;
    const double thr = rank_threshold(std::max(a.rows(), a.cols()), smax);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.sigma.size(); ++i)
        if (svd.sigma(i) > thr) ++rank;
    return svd.v.rightCols(n - rank);
}

}  // namespace

double rank_threshold(Eigen::Index dimension, double sigma_max) {
    return static_cast<double>(dimension) * std::numeric_limits<double>::epsilon() *
           sigma_max * 1e3;
}

RVector singular_values(const CMatrix& a) {
    if (a.rows() <= kJacobiLimit && a.cols() <= kJacobiLimit)
        return Eigen::JacobiSVD<CMatrix>(a).singularValues();
    return Eigen::BDCSVD<CMatrix>(a).singularValues();
}

std::size_t numerical_rank(const CMatrix& a) {
    if (a.size() == 0) return 0;
    RVector s = singular_values(a);
    const double thr = rank_threshold(std::max(a.rows(), a.cols()), s(0));
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > thr) ++r;
    return r;
}

CMatrix null_space(const CMatrix& a) { return null_space_impl(a); }

CMatrix smallest_right_singular_vectors(const CMatrix& a, Eigen::Index k) {
    if (k <= 0) return CMatrix(a.cols(), 0);
    if (a.rows() == 0) return CMatrix::Identity(a.cols(), a.cols()).rightCols(k);
    auto svd = svd_with_v(a);
    return svd.v.rightCols(std::min(k, a.cols()));
}

RMatrix real_null_space(const RMatrix& a) { return null_space_impl(a); }

ConstrainedKernel constrained_kernel(const CMatrix& a, const CMatrix& c) {
    ConstrainedKernel out;
    CMatrix v = null_space(a);
    out.unconstrained_dim = static_cast<std::size_t>(v.cols());
    if (c.rows() == 0 || v.cols() == 0) {
        out.basis = v;
        return out;
    }
    CMatrix w = c * v;
    RVector s = singular_values(w);
    // Singular values of the k x d matrix w: the smallest of the d "directions"
    // is zero whenever k < d.
    const Eigen::Index d = v.cols();
    out.constraint_sigma_min = (s.size() < d) ? 0.0 : s(s.size() - 1);
    // Constraint rows are O(1) coefficients; use an absolute floor so that a
    // vanishing w does not make every direction "nonzero".
    auto svd = svd_with_v(w);
    const double thr = rank_threshold(std::max(w.rows(), w.cols()), std::max(1.0, svd.sigma(0)));
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.sigma.size(); ++i)
        if (svd.sigma(i) > thr) ++rank;
    out.basis = v * svd.v.rightCols(d - rank);
    return out;
}

}  // namespace perronlab::linalg
