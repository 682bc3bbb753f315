#include "perronlab/random.hpp"

#include "perronlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace perronlab::sampling {

namespace {

double radius(const RMatrix& t) {
    if (t.size() == 0) return 0.0;
    Eigen::EigenSolver<RMatrix> es(t, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

RMatrix positive_block(Rng& rng, std::size_t n) {
    RMatrix b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = uniform(rng, 0.05, 1.0);
    return b;
}

// Splits n into k positive parts.
std::vector<std::size_t> split(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> parts(k, 1);
    for (std::size_t r = n - k; r > 0; --r) ++parts[uniform_size(rng, 0, k - 1)];
    return parts;
}

// Block upper-triangular chain of equal-radius blocks with coupling in [lo, hi].
RMatrix chain(Rng& rng, const std::vector<RMatrix>& blocks, double lo, double hi) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.rows();
    RMatrix t = RMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        t.block(off, off, b.rows(), b.cols()) = b;
        if (k + 1 < blocks.size()) {
            const auto& nb = blocks[k + 1];
            for (Eigen::Index i = 0; i < b.rows(); ++i)
                for (Eigen::Index j = 0; j < nb.cols(); ++j) t(off + i, off + b.rows() + j) = uniform(rng, lo, hi);
        }
        off += b.rows();
    }
    return t;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Rng(seq);
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

RMatrix nonnegative(Rng& rng, std::size_t n, double density) {
    const auto ni = static_cast<Eigen::Index>(n);
    RMatrix t = RMatrix::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i)
        for (Eigen::Index j = 0; j < ni; ++j)
            if (uniform(rng) < density) t(i, j) = uniform(rng);
    for (Eigen::Index i = 0; i < ni; ++i) {
        if (t.row(i).maxCoeff() == 0.0) t(i, static_cast<Eigen::Index>(uniform_size(rng, 0, n - 1))) = uniform(rng, 0.1, 1.0);
        if (t.col(i).maxCoeff() == 0.0) t(static_cast<Eigen::Index>(uniform_size(rng, 0, n - 1)), i) = uniform(rng, 0.1, 1.0);
    }
    return t;
}

RMatrix imprimitive(Rng& rng, std::size_t n, std::size_t period) {
    if (period == 0 || period > n) throw Error("period must lie in [1, n]");
    const auto sizes = split(rng, n, period);
    std::vector<Eigen::Index> start(period + 1, 0);
    for (std::size_t c = 0; c < period; ++c) start[c + 1] = start[c] + static_cast<Eigen::Index>(sizes[c]);
    RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < period; ++c) {
        const std::size_t d = (c + 1) % period;
        for (Eigen::Index i = start[c]; i < start[c + 1]; ++i)
            for (Eigen::Index j = start[d]; j < start[d + 1]; ++j) t(i, j) = uniform(rng, 0.05, 1.0);
    }
    return t;
}

RMatrix permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i])) = 1.0;
    return t;
}

RMatrix normalize_radius(const RMatrix& t) {
    const double r = radius(t);
    if (r <= 1e-14) throw Error("r(T) = 0");
    return t / r;
}

RMatrix normalize_rows(const RMatrix& t) {
    RMatrix out = t;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double s = out.row(i).sum();
        if (s <= 0.0) throw Error("zero row cannot be normalized");
        out.row(i) /= s;
    }
    return out;
}

Sample cyclicity_sample(Rng& rng, std::size_t n_max) {
    const std::size_t n = uniform_size(rng, 1, n_max);
    switch (uniform_size(rng, 0, 5)) {
        case 0:
            return {nonnegative(rng, n, 1.0), "dense"};
        case 1:
            return {nonnegative(rng, n, uniform(rng, 0.15, 0.5)), "sparse"};
        case 2:
            return {imprimitive(rng, n, uniform_size(rng, 1, n)), "imprimitive"};
        case 3:
            return {permutation(rng, n), "permutation"};
        case 4: {
            // two equal-radius imprimitive blocks of one period, coupled
            if (n < 2) return {nonnegative(rng, n), "dense"};
            const std::size_t n1 = uniform_size(rng, 1, n - 1);
            const std::size_t p = uniform_size(rng, 1, std::min(n1, n - n1));
            const RMatrix a = normalize_radius(imprimitive(rng, n1, p));
            const RMatrix b = normalize_radius(imprimitive(rng, n - n1, p));
            return {chain(rng, {a, b}, 0.0, 1.0), "coupled_imprimitive"};
        }
        default: {
            // direct sum of blocks with unrelated radii
            if (n < 2) return {nonnegative(rng, n), "dense"};
            const std::size_t n1 = uniform_size(rng, 1, n - 1);
            RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            t.topLeftCorner(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n1)) =
                imprimitive(rng, n1, uniform_size(rng, 1, n1));
            t.bottomRightCorner(static_cast<Eigen::Index>(n - n1), static_cast<Eigen::Index>(n - n1)) =
                nonnegative(rng, n - n1, 0.5);
            return {t, "direct_sum"};
        }
    }
}

Sample stochastic_sample(Rng& rng, std::size_t n_max) {
    const std::size_t n = uniform_size(rng, 1, n_max);
    switch (uniform_size(rng, 0, 5)) {
        case 0:
            return {normalize_rows(nonnegative(rng, n, 1.0)), "dense"};
        case 1:
            return {normalize_rows(nonnegative(rng, n, uniform(rng, 0.15, 0.5))), "sparse"};
        case 2:
            return {normalize_rows(imprimitive(rng, n, uniform_size(rng, 1, n))), "periodic"};
        case 3:
            return {permutation(rng, n), "permutation"};
        case 4: {
            // transient states feeding two closed periodic classes
            if (n < 3) return {permutation(rng, n), "permutation"};
            const auto parts = split(rng, n, 3);
            RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            const auto a = static_cast<Eigen::Index>(parts[0]), b = static_cast<Eigen::Index>(parts[1]);
            const auto c = static_cast<Eigen::Index>(parts[2]);
            t.block(0, 0, a, a) = imprimitive(rng, parts[0], uniform_size(rng, 1, parts[0]));
            t.block(a, a, b, b) = imprimitive(rng, parts[1], uniform_size(rng, 1, parts[1]));
            for (Eigen::Index r = a + b; r < a + b + c; ++r)
                for (Eigen::Index col = 0; col < a + b + c; ++col) t(r, col) = uniform(rng, 0.05, 1.0);
            return {normalize_rows(t), "absorbing_classes"};
        }
        default: {
            // disjoint cycles of several lengths
            RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            std::size_t at = 0;
            while (at < n) {
                const std::size_t len = uniform_size(rng, 1, std::min<std::size_t>(4, n - at));
                for (std::size_t k = 0; k < len; ++k)
                    t(static_cast<Eigen::Index>(at + k), static_cast<Eigen::Index>(at + (k + 1) % len)) = 1.0;
                at += len;
            }
            return {t, "cycles"};
        }
    }
}

Sample pole_sample(Rng& rng, std::size_t n_max) {
    const std::size_t n = uniform_size(rng, std::min<std::size_t>(2, n_max), n_max);
    switch (uniform_size(rng, 0, 3)) {
        case 0:
            return {normalize_radius(positive_block(rng, n)), "irreducible"};
        case 1: {
            const std::size_t k = std::min<std::size_t>(n, uniform_size(rng, 2, 3));
            std::vector<RMatrix> blocks;
            for (auto s : split(rng, n, k)) blocks.push_back(normalize_radius(positive_block(rng, s)));
            return {normalize_radius(chain(rng, blocks, 0.5, 1.0)), "coupled_equal_radius"};
        }
        case 2: {
            const auto parts = split(rng, n, 2);
            const RMatrix a = normalize_radius(positive_block(rng, parts[0]));
            const RMatrix b = uniform(rng, 0.1, 0.6) * normalize_radius(positive_block(rng, parts[1]));
            const bool top = uniform(rng) < 0.5;
            return {normalize_radius(top ? chain(rng, {a, b}, 0.5, 1.0) : chain(rng, {b, a}, 0.5, 1.0)),
                    "dominated_block"};
        }
        default:
            return {normalize_radius(imprimitive(rng, n, uniform_size(rng, 2, n))), "imprimitive"};
    }
}

RMatrix planted_jordan(Rng& rng, std::size_t m, std::size_t extra) {
    RMatrix j = RMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i + 1 < j.rows(); ++i) j(i, i + 1) = 1.0;
    if (extra == 0) return j;
    const RMatrix b = uniform(rng, 0.1, 0.5) * normalize_radius(positive_block(rng, extra));
    return chain(rng, {j, b}, 0.0, 0.3);
}

CVector complex_vector(Rng& rng, std::size_t n, double zero_prob) {
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (uniform(rng) < zero_prob) {
            v(i) = 0.0;
            continue;
        }
        v(i) = std::polar(uniform(rng, 0.1, 2.0), uniform(rng, -std::numbers::pi, std::numbers::pi));
    }
    if (v.cwiseAbs().maxCoeff() == 0.0) v(static_cast<Eigen::Index>(uniform_size(rng, 0, n - 1))) = 1.0;
    return v;
}

std::vector<LatticeVector> independent_family(Rng& rng, std::size_t n, std::size_t count) {
    if (count == 0 || count > n) throw Error("family size must lie in [1, n]");
    for (;;) {
        std::vector<LatticeVector> fam;
        CMatrix rows(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < count; ++k) {
            const CVector v = complex_vector(rng, n, 0.3);
            rows.row(static_cast<Eigen::Index>(k)) = v.transpose();
            fam.emplace_back(v, SpaceModel(n, NormTag::SupNorm));
        }
        if (linalg::numerical_rank(rows) == count) return fam;
    }
}

}  // namespace perronlab::sampling
