#include "perronlab/lp.hpp"

#include <cmath>
#include <vector>

namespace perronlab::lp {

namespace {

// Tableau with m constraint rows and one cost row (index m); column `rhs` holds
// the right-hand side, and -objective in the cost row.
struct Tableau {
    RMatrix t;
    std::vector<Eigen::Index> basis;
    Eigen::Index rhs;

    void pivot(Eigen::Index row, Eigen::Index col) {
        t.row(row) /= t(row, col);
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            if (r == row) continue;
            const double f = t(r, col);
            if (f != 0.0) t.row(r) -= f * t.row(row);
        }
        basis[static_cast<std::size_t>(row)] = col;
    }
};

// Bland's rule. Columns >= allowed_cols never enter. Returns false if unbounded.
bool run(Tableau& tb, Eigen::Index allowed_cols, double tol) {
    const Eigen::Index m = tb.t.rows() - 1;
    for (int iter = 0; iter < 100000; ++iter) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < allowed_cols; ++j)
            if (tb.t(m, j) < -tol) {
                enter = j;
                break;
            }
        if (enter < 0) return true;
        Eigen::Index leave = -1;
        double best = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double a = tb.t(i, enter);
            if (a <= tol) continue;
            const double ratio = tb.t(i, tb.rhs) / a;
            if (leave < 0 || ratio < best - tol ||
                (std::abs(ratio - best) <= tol &&
                 tb.basis[static_cast<std::size_t>(i)] < tb.basis[static_cast<std::size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return false;
        tb.pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
}

}  // namespace

Result minimize(const RVector& c, const RMatrix& a, const RVector& b, double tol) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (c.size() != n || b.size() != m) throw Error("lp: shape mismatch");
    Result res;
    if (m == 0) {
        if (c.cwiseAbs().maxCoeff() > tol && n > 0) {
            res.status = Status::Unbounded;
            return res;
        }
        res.status = Status::Optimal;
        res.x = RVector::Zero(n);
        return res;
    }

    // Columns: x+ (n), x- (n), surplus (m), artificial (m).
    const Eigen::Index nstruct = 2 * n + m;
    const Eigen::Index ncols = nstruct + m;
    Tableau tb{RMatrix::Zero(m + 1, ncols + 1), std::vector<Eigen::Index>(static_cast<std::size_t>(m)), ncols};
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sign = b(i) < 0 ? -1.0 : 1.0;
        tb.t.block(i, 0, 1, n) = sign * a.row(i);
        tb.t.block(i, n, 1, n) = -sign * a.row(i);
        tb.t(i, 2 * n + i) = -sign;
        tb.t(i, nstruct + i) = 1.0;
        tb.t(i, tb.rhs) = sign * b(i);
        tb.basis[static_cast<std::size_t>(i)] = nstruct + i;
    }
    // Phase 1: minimize the sum of artificials.
    for (Eigen::Index i = 0; i < m; ++i) tb.t.row(m) -= tb.t.row(i);
    for (Eigen::Index i = 0; i < m; ++i) tb.t(m, nstruct + i) = 0.0;
    run(tb, ncols, tol);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (-tb.t(m, tb.rhs) > tol * scale * 10) {
        res.status = Status::Infeasible;
        return res;
    }
    // Drive remaining artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tb.basis[static_cast<std::size_t>(i)] < nstruct) continue;
        for (Eigen::Index j = 0; j < nstruct; ++j)
            if (std::abs(tb.t(i, j)) > tol) {
                tb.pivot(i, j);
                break;
            }
    }

    // Phase 2 cost row.
    RVector cost = RVector::Zero(ncols);
    cost.head(n) = c;
    cost.segment(n, n) = -c;
    tb.t.row(m).setZero();
    tb.t.block(m, 0, 1, ncols) = cost.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
        const double cb = cost(tb.basis[static_cast<std::size_t>(i)]);
        if (cb != 0.0) tb.t.row(m) -= cb * tb.t.row(i);
    }
    if (!run(tb, nstruct, tol)) {
        res.status = Status::Unbounded;
        return res;
    }
    RVector y = RVector::Zero(ncols);
    for (Eigen::Index i = 0; i < m; ++i) y(tb.basis[static_cast<std::size_t>(i)]) = tb.t(i, tb.rhs);
    res.x = y.head(n) - y.segment(n, n);
    res.objective = c.dot(res.x);
    res.status = Status::Optimal;
    return res;
}

}  // namespace perronlab::lp
