#include "perronlab/operator.hpp"

#include "perronlab/kernels.hpp"

#include <cmath>

namespace perronlab {

bool is_positive(const OperatorMatrix& t, double tol) {
    const CMatrix& a = t.entries();
    return (a.imag().cwiseAbs().array() <= tol).all() && (a.real().array() >= -tol).all();
}

bool is_markov(const OperatorMatrix& t, double tol) {
    if (t.model().norm() != NormTag::SupNorm)
        throw Error("Markov check requires C(K) model");
    if (!is_positive(t, tol)) return false;
    const RVector sums = t.entries().real().rowwise().sum();
    return ((sums.array() - 1.0).abs() <= tol).all();
}

double op_norm(const CMatrix& a, NormTag norm) {
    if (a.size() == 0) return 0.0;
    if (norm == NormTag::SupNorm) return a.cwiseAbs().rowwise().sum().maxCoeff();
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

double vector_norm(const CVector& v, NormTag norm) {
    if (v.size() == 0) return 0.0;
    return norm == NormTag::SupNorm ? v.cwiseAbs().maxCoeff() : v.cwiseAbs().sum();
}

OperatorMatrix power(const OperatorMatrix& t, std::size_t n) {
    return t.with_entries(kernels::power(t.entries(), n));
}

OperatorMatrix cesaro_mean(const OperatorMatrix& t, std::size_t n) {
    if (n < 1) throw Error("cesaro_mean needs n >= 1");
    CMatrix sum = n <= kCesaroAccumulateLimit
                      ? kernels::serial::geometric_sum(t.entries(), n)
                      : kernels::omp::geometric_sum(t.entries(), n);
    return t.with_entries(sum / static_cast<double>(n));
}

ResolventResult resolvent_checked(const OperatorMatrix& t, cplx lambda) {
    const auto n = static_cast<Eigen::Index>(t.dimension());
    const CMatrix shifted = lambda * CMatrix::Identity(n, n) - t.entries();
    Eigen::PartialPivLU<CMatrix> lu(shifted);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) throw Error("λ in spectrum (numerically)");
    CMatrix r = lu.solve(CMatrix::Identity(n, n));
    if (!r.allFinite()) throw Error("λ in spectrum (numerically)");
    const double residual =
        op_norm(CMatrix(shifted * r - CMatrix::Identity(n, n)), t.model().norm());
    return {t.with_entries(std::move(r)), residual, rcond};
}

std::vector<std::size_t> support(const LatticeVector& x, double tol) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].real() > tol) s.push_back(i);
    return s;
}

OperatorMatrix restrict_to_ideal(const OperatorMatrix& t, const LatticeVector& x, double tol) {
    if (!x.model().compatible(t.model()) && x.size() != t.dimension())
        throw Error("model mismatch");
    if (!x.is_real(tol) || (x.real_part().array() < -tol).any())
        throw Error("ideal generator must be nonnegative");
    const auto supp = support(x, tol);
    if (supp.empty()) throw Error("ideal generator must be nonzero");
    std::vector<bool> inside(t.dimension(), false);
    for (auto i : supp) inside[i] = true;
    const CMatrix& a = t.entries();
    for (auto j : supp)
        for (std::size_t i = 0; i < t.dimension(); ++i)
            if (!inside[i] && std::abs(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > tol)
                throw Error("ideal not T-invariant");
    const auto k = static_cast<Eigen::Index>(supp.size());
    CMatrix sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c)
            sub(r, c) = a(static_cast<Eigen::Index>(supp[static_cast<std::size_t>(r)]),
                          static_cast<Eigen::Index>(supp[static_cast<std::size_t>(c)]));
    std::vector<std::string> labels;
    if (t.model().has_labels())
        for (auto i : supp) labels.push_back(t.model().labels()[i]);
    return OperatorMatrix(std::move(sub), SpaceModel(supp.size(), NormTag::SupNorm, labels));
}

OperatorMatrix direct_sum(const std::vector<OperatorMatrix>& blocks) {
    if (blocks.empty()) throw Error("direct_sum needs at least one block");
    const NormTag tag = blocks.front().model().norm();
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.model().norm() != tag) throw Error("direct_sum: mixed norm tags");
        total += b.dimension();
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    Eigen::Index offset = 0;
    for (const auto& b : blocks) {
        const auto d = static_cast<Eigen::Index>(b.dimension());
        out.block(offset, offset, d, d) = b.entries();
        offset += d;
    }
    return OperatorMatrix(std::move(out), SpaceModel(total, tag));
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

ShiftMultSpec ShiftMultSpec::with_default_truncation(int m) {
    return ShiftMultSpec{m, static_cast<std::size_t>(factorial(m + 1))};
}

namespace {

void validate(const ShiftMultSpec& spec) {
    if (spec.m < 1) throw Error("shift-mult block index m must be >= 1");
    if (static_cast<double>(spec.n) < factorial(spec.m) + 1.0)
        throw Error("truncation N must be at least m!+1");
}

}  // namespace

RVector shift_mult_symbol(const ShiftMultSpec& spec) {
    validate(spec);
    const double mf = factorial(spec.m);
    const double step = 1.0 / factorial(spec.m - 1);
    RVector a(static_cast<Eigen::Index>(spec.n));
    for (std::size_t l = 1; l <= spec.n; ++l) {
        const double ld = static_cast<double>(l);
        double v = 1.0;
        if (ld < mf) v = std::exp2(step);
        else if (ld == mf) v = std::exp2(-static_cast<double>(spec.m));
        a(static_cast<Eigen::Index>(l - 1)) = v;
    }
    return a;
}

OperatorMatrix shift_mult_block(const ShiftMultSpec& spec) {
    const RVector a = shift_mult_symbol(spec);
    const auto n = static_cast<Eigen::Index>(spec.n);
    CMatrix t = CMatrix::Zero(n, n);
    // (S M x)_{l+1} = a_l x_l; the last coordinate is shifted out.
    for (Eigen::Index l = 0; l + 1 < n; ++l) t(l + 1, l) = a(l);
    return OperatorMatrix(std::move(t), SpaceModel(spec.n, NormTag::OneNorm));
}

LatticeVector symbol_power(const ShiftMultSpec& spec, std::size_t j) {
    validate(spec);
    const double mf = factorial(spec.m);
    const double step = 1.0 / factorial(spec.m - 1);
    const double jd = static_cast<double>(j);
    CVector s(static_cast<Eigen::Index>(spec.n));
    for (std::size_t l = 1; l <= spec.n; ++l) {
        const double ld = static_cast<double>(l);
        double v = 1.0;
        if (ld <= mf - jd) v = std::exp2(jd * step);
        else if (ld <= mf) v = std::exp2((mf - ld) * step - spec.m);
        s(static_cast<Eigen::Index>(l - 1)) = v;
    }
    return LatticeVector(std::move(s), SpaceModel(spec.n, NormTag::OneNorm));
}

double cesaro_lower_bound(int m) {
    if (m < 1) throw Error("cesaro_lower_bound needs m >= 1");
    const double md = m;
    const double fm1 = factorial(m - 1);
    return (std::exp2(md) - 1.0) / ((md + 1.0) * md) /
           (fm1 * (std::exp2(1.0 / fm1) - 1.0));
}

}  // namespace perronlab
