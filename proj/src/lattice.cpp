#include "perronlab/lattice.hpp"

#include "perronlab/linalg.hpp"

#include <cmath>

namespace perronlab {

namespace {

void require_same_model(const LatticeVector& a, const LatticeVector& b) {
    if (!a.model().compatible(b.model())) throw Error("model mismatch");
}

}  // namespace

LatticeVector modulus(const LatticeVector& v) {
    return LatticeVector(v.entries().cwiseAbs().cast<cplx>(), v.model());
}

LatticeVector entrywise_sup(const std::vector<LatticeVector>& vs) {
    if (vs.empty()) throw Error("empty supremum");
    RVector out = vs.front().real_part();
    for (const auto& v : vs) {
        require_same_model(vs.front(), v);
        if (!v.is_real()) throw Error("entrywise_sup requires real vectors");
        out = out.cwiseMax(v.real_part());
    }
    return LatticeVector(out.cast<cplx>(), vs.front().model());
}

bool dominates(const LatticeVector& x, const LatticeVector& z, double tol) {
    require_same_model(x, z);
    if (!x.is_real()) throw Error("dominates requires a real dominating vector");
    const RVector xr = x.real_part();
    for (std::size_t i = 0; i < z.size(); ++i)
        if (std::abs(z[i]) > xr(static_cast<Eigen::Index>(i)) + tol) return false;
    return true;
}

LatticeVector lattice_power(const LatticeVector& f, int n) {
    if (f.is_zero()) throw Error("undefined lattice power of zero");
    CVector out(static_cast<Eigen::Index>(f.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const cplx fi = f.entries()(i);
        const double r = std::abs(fi);
        if (r == 0.0) {
            out(i) = 0.0;
            continue;
        }
        // Unit phase to the n-th power by squaring (exact for +-1, +-i), then
        // renormalized so that |f^[n]_i| = |f_i|.
        cplx base = fi / r;
        if (n < 0) base = std::conj(base);
        unsigned e = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
        cplx acc = 1.0;
        while (e > 0) {
            if (e & 1u) acc *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        out(i) = acc / std::abs(acc) * r;
    }
    return LatticeVector(std::move(out), f.model());
}

IndependenceReport independence_report(const std::vector<LatticeVector>& family, int n) {
    if (family.empty()) throw Error("independence check needs a nonempty family");
    IndependenceReport rep;
    const auto m = static_cast<Eigen::Index>(family.size());
    const auto dim = static_cast<Eigen::Index>(family.front().size());
    CMatrix rows(m, dim);
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto& g = family[static_cast<std::size_t>(j)];
        require_same_model(family.front(), g);
        if (g.is_zero()) throw Error("zero vector in family");
        rows.row(j) = g.entries().transpose();
    }
    rep.rank = linalg::numerical_rank(rows);

    // Gauss-Jordan with column search: each accepted pivot column x_k gets a
    // row f_k with f_k(x_k) = 1 and f_j(x_k) = 0 for j != k.
    const double scale = rows.cwiseAbs().maxCoeff();
    const double zero_tol = linalg::rank_threshold(std::max(m, dim), scale);
    CMatrix work = rows;
    Eigen::Index next_row = 0;
    for (Eigen::Index col = 0; col < dim && next_row < m; ++col) {
        Eigen::Index best = -1;
        double best_abs = zero_tol;
        for (Eigen::Index r = next_row; r < m; ++r) {
            const double a = std::abs(work(r, col));
            if (a > best_abs) {
                best_abs = a;
                best = r;
            }
        }
        if (best < 0) continue;
        work.row(next_row).swap(work.row(best));
        work.row(next_row) /= work(next_row, col);
        work(next_row, col) = 1.0;
        for (Eigen::Index r = 0; r < m; ++r) {
            if (r == next_row) continue;
            const cplx factor = work(r, col);
            if (factor == cplx(0.0)) continue;
            work.row(r) -= factor * work.row(next_row);
            work(r, col) = 0.0;
        }
        rep.pivots.push_back(static_cast<std::size_t>(col));
        ++next_row;
    }

    const auto& model = family.front().model();
    CMatrix powered(next_row, dim);
    for (Eigen::Index j = 0; j < next_row; ++j) {
        LatticeVector f(work.row(j).transpose(), model);
        powered.row(j) = lattice_power(f, n).entries().transpose();
        rep.pivot_basis.push_back(std::move(f));
    }
    rep.powered_rank = next_row > 0 ? linalg::numerical_rank(powered) : 0;
    rep.preserved = rep.powered_rank >= rep.rank;
    return rep;
}

bool is_lattice_homomorphism(const OperatorMatrix& t, double tol) {
    const CMatrix& a = t.entries();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        int nonzeros = 0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const cplx v = a(i, j);
            if (std::abs(v.imag()) > tol || v.real() < -tol) return false;
            if (v.real() > tol) ++nonzeros;
        }
        if (nonzeros > 1) return false;
    }
    return true;
}

}  // namespace perronlab
