#include "perronlab/fixed_space.hpp"

#include "perronlab/lattice.hpp"
#include "perronlab/linalg.hpp"
#include "perronlab/lp.hpp"
#include "perronlab/operator.hpp"

#include <algorithm>
#include <cmath>

namespace perronlab {

namespace {

RMatrix real_fixed_basis(const OperatorMatrix& t, const CMatrix& c) {
    const auto n = static_cast<Eigen::Index>(t.dimension());
    CMatrix m = -t.entries();
    m.diagonal().array() += 1.0;
    // Real solutions of (1 - T) v = 0, C v = 0.
    RMatrix stacked(2 * (n + c.rows()), n);
    stacked << m.real(), m.imag(), c.real(), c.imag();
    return linalg::real_null_space(stacked);
}

double sup_norm(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

void require_fixed(const FixedSpaceHandle& h, const LatticeVector& g) {
    if (!g.model().compatible(h.t.model())) throw Error("model mismatch");
    if (!g.is_real(h.tol)) throw Error("fixed-space suprema need real vectors");
    if (fixed_residual(h, g.entries()) > h.tol * std::max(1.0, sup_norm(g.entries())))
        throw Error("vector is not in the fixed space");
}

// Gauss-Jordan on the rows b^T; rows come out with unit pivots.
RMatrix rref_rows(const RMatrix& basis) {
    RMatrix r = basis.transpose();
    const Eigen::Index rows = r.rows(), cols = r.cols();
    Eigen::Index lead = 0;
    for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
        Eigen::Index piv = lead;
        for (Eigen::Index i = lead + 1; i < rows; ++i)
            if (std::abs(r(i, c)) > std::abs(r(piv, c))) piv = i;
        if (std::abs(r(piv, c)) < 1e-10) continue;
        r.row(lead).swap(r.row(piv));
        r.row(lead) /= r(lead, c);
        for (Eigen::Index i = 0; i < rows; ++i)
            if (i != lead) r.row(i) -= r(i, c) * r.row(lead);
        ++lead;
    }
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            if (std::abs(r(i, j)) < 1e-12) r(i, j) = 0.0;
            const double rounded = std::round(r(i, j));
            if (std::abs(r(i, j) - rounded) < 1e-12) r(i, j) = rounded;
        }
    return r.topRows(lead);
}

}  // namespace

FixedSpaceHandle make_fixed_space(const ConstrainedOperator& t, double tol) {
    if (!is_markov(t.op, std::max(tol, kPositivityTol))) throw Error("operator is not Markov");
    FixedSpaceHandle h{t.op, t.constraints, real_fixed_basis(t.op, t.constraints), tol};
    return h;
}

FixedSpaceHandle make_fixed_space(const OperatorMatrix& t, double tol) {
    return make_fixed_space(ConstrainedOperator(t), tol);
}

double fixed_residual(const FixedSpaceHandle& h, const CVector& v) {
    double r = sup_norm(h.t.entries() * v - v);
    if (h.constraints.rows() > 0) r = std::max(r, sup_norm(h.constraints * v));
    return r;
}

SupResult sup_in_fixed_space(const FixedSpaceHandle& h, const std::vector<LatticeVector>& g,
                             double tol, std::size_t max_iter) {
    if (g.empty()) throw Error("empty supremum");
    for (const auto& v : g) require_fixed(h, v);
    RVector cur = entrywise_sup(g).real_part();
    const RMatrix t = h.t.entries().real();
    SupResult res{LatticeVector::zeros(h.t.model()), 0, true};
    for (std::size_t it = 0; it < max_iter; ++it) {
        const RVector next = t * cur;
        const double step = (next - cur).cwiseAbs().maxCoeff();
        if (((next - cur).array() < -tol).any()) res.monotone = false;
        if (step <= tol) {
            res.value = LatticeVector(cur.cast<cplx>(), h.t.model());
            res.iterations = it;
            return res;
        }
        cur = next;
    }
    throw Error("fixed-space supremum iteration did not converge");
}

SupResult f_modulus(const FixedSpaceHandle& h, const LatticeVector& f, double tol) {
    const LatticeVector neg(-f.entries(), f.model());
    return sup_in_fixed_space(h, {f, neg}, tol);
}

AmIdentity am_identity_check(const FixedSpaceHandle& h, const LatticeVector& g1,
                             const LatticeVector& g2, double tol) {
    for (const auto* g : {&g1, &g2})
        if (!g->is_real(tol) || (g->real_part().array() < -tol).any())
            throw Error("AM identity needs nonnegative vectors");
    const auto join = sup_in_fixed_space(h, {g1, g2});
    AmIdentity a{join.value, sup_norm(join.value.entries()),
                 sup_norm(entrywise_sup({g1, g2}).entries()),
                 std::max(sup_norm(g1.entries()), sup_norm(g2.entries())), false};
    a.pass = std::abs(a.join_norm - a.lattice_norm) <= tol && std::abs(a.lattice_norm - a.max_norm) <= tol;
    return a;
}

SublatticeResult is_fixed_space_sublattice(const FixedSpaceHandle& h) {
    SublatticeResult res;
    const RMatrix rows = rref_rows(h.basis);
    std::vector<RVector> probes;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) probes.push_back(rows.row(i).transpose());
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
            probes.push_back((rows.row(i) + rows.row(j)).transpose());
            probes.push_back((rows.row(i) - rows.row(j)).transpose());
        }
    for (const auto& f : probes) {
        const CVector mod = f.cwiseAbs().cast<cplx>();
        if (fixed_residual(h, mod) > h.tol * std::max(1.0, f.cwiseAbs().maxCoeff())) {
            res.is_sublattice = false;
            res.witness = LatticeVector(f.cast<cplx>(), h.t.model());
            return res;
        }
    }
    return res;
}

RVector fixed_upper_bound_minimum(const FixedSpaceHandle& h, const std::vector<LatticeVector>& g) {
    if (g.empty()) throw Error("empty family");
    const auto n = h.basis.rows();
    const auto d = h.basis.cols();
    RMatrix a(n * static_cast<Eigen::Index>(g.size()), d);
    RVector b(a.rows());
    for (std::size_t s = 0; s < g.size(); ++s) {
        const auto off = static_cast<Eigen::Index>(s) * n;
        a.block(off, 0, n, d) = h.basis;
        b.segment(off, n) = g[s].real_part();
    }
    RVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto res = lp::minimize(h.basis.row(i).transpose(), a, b);
        if (res.status != lp::Status::Optimal) throw Error("no fixed upper bound found");
        out(i) = (h.basis.row(i) * res.x)(0);
    }
    return out;
}

NoSupremumModel no_supremum_model(std::size_t n) {
    if (n < 2) throw Error("truncation N must be >= 2");
    const std::size_t dim = 3 + 2 * n;
    RMatrix s = RMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    s.topLeftCorner(3, 3) << 1, 0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 1;
    NoSupremumModel m{ConstrainedOperator(OperatorMatrix::real(RMatrix::Identity(1, 1))), n};
    auto at = [&](std::size_t r, std::size_t c) -> double& {
        return s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    };
    at(m.g_index(1), 1) = 1.0;  // g'_1 = f_2
    for (std::size_t k = 2; k <= n - 1; ++k) at(m.g_index(k), m.g_index(k - 1)) = 1.0;
    at(m.g_limit(), m.g_limit()) = 1.0;
    for (std::size_t k = 1; k <= n - 1; ++k) at(m.h_index(k), m.h_index(k)) = 1.0;
    at(m.h_limit(), m.h_limit()) = 1.0;

    std::vector<std::string> labels = {"f1", "f2", "f3"};
    for (std::size_t k = 1; k <= n - 1; ++k) labels.push_back("g" + std::to_string(k));
    labels.push_back("g_lim");
    for (std::size_t k = 1; k <= n - 1; ++k) labels.push_back("h" + std::to_string(k));
    labels.push_back("h_lim");

    CMatrix c = CMatrix::Zero(2, static_cast<Eigen::Index>(dim));
    c(0, static_cast<Eigen::Index>(m.g_limit())) = 1.0;
    c(0, static_cast<Eigen::Index>(m.g_index(n - 1))) = -1.0;
    c(1, static_cast<Eigen::Index>(m.g_limit())) = 1.0;
    c(1, static_cast<Eigen::Index>(m.h_limit())) = -1.0;
    m.op = ConstrainedOperator(OperatorMatrix(s.cast<cplx>(), SpaceModel(dim, NormTag::SupNorm, labels)), c);
    return m;
}

std::vector<WitnessStep> no_supremum_witness(const NoSupremumModel& m, const LatticeVector& f,
                                             std::size_t depth) {
    if (f.size() != 3 || !f.is_real()) throw Error("f must be a real vector in R^3");
    if (depth > m.n - 1) throw Error("depth exceeds truncation resolution");
    std::vector<WitnessStep> chain;
    if (depth == 0) return chain;

    const FixedSpaceHandle base = make_fixed_space(OperatorMatrix::real(m.op.op.entries().topLeftCorner(3, 3).real()));
    const auto fmod = f_modulus(base, f).value.real_part();
    const double level = fmod(1);
    const std::size_t dim = m.op.op.dimension();
    RVector b = RVector::Constant(static_cast<Eigen::Index>(dim), level);
    b.head(3) = fmod;

    const FixedSpaceHandle ext{m.op.op, m.op.constraints, RMatrix(), 1e-10};
    RVector lower = RVector::Zero(static_cast<Eigen::Index>(dim));
    lower.head(3) = f.real_part().cwiseAbs();
    auto record = [&](std::size_t lowered, double decrease) {
        WitnessStep s{LatticeVector(b.cast<cplx>(), m.op.op.model()), lowered, decrease,
                      fixed_residual(ext, b.cast<cplx>()), ((b - lower).array() >= -1e-12).all()};
        chain.push_back(std::move(s));
    };
    record(0, 0.0);
    for (std::size_t step = 1; step < depth; ++step) {
        const std::size_t idx = m.h_index(step);
        const double old = b(static_cast<Eigen::Index>(idx));
        b(static_cast<Eigen::Index>(idx)) = 0.0;
        record(idx, old);
    }
    return chain;
}

}  // namespace perronlab
