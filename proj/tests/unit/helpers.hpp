#pragma once

#include "perronlab/types.hpp"

#include <initializer_list>

namespace test_util {

using perronlab::cplx;
using perronlab::CMatrix;
using perronlab::CVector;
using perronlab::RMatrix;
using perronlab::RVector;

inline RMatrix rmat(std::initializer_list<std::initializer_list<double>> rows) {
    RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline CVector cvec(std::initializer_list<cplx> v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (cplx z : v) out(i++) = z;
    return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace test_util
