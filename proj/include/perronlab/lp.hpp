#pragma once

// Small dense linear programs: min c^T x subject to A x >= b with x free.
// Two-phase tableau simplex with Bland's rule, sized for the n <= 10
// feasibility questions in the DAEC search and the fixed-space oracle.

#include "perronlab/types.hpp"

namespace perronlab::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    RVector x;
    double objective = 0.0;
};

Result minimize(const RVector& c, const RMatrix& a, const RVector& b, double tol = 1e-10);

inline bool feasible(const RMatrix& a, const RVector& b, RVector* witness = nullptr,
                     double tol = 1e-10) {
    Result r = minimize(RVector::Zero(a.cols()), a, b, tol);
    if (r.status == Status::Infeasible) return false;
    if (witness) *witness = r.x;
    return true;
}

}  // namespace perronlab::lp
