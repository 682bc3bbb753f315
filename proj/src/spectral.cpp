#include "perronlab/spectral.hpp"

#include "perronlab/linalg.hpp"
#include "perronlab/lp.hpp"
#include "perronlab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace perronlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CMatrix shifted(const CMatrix& a, cplx c) {
    CMatrix m = -a;
    m.diagonal().array() += c;
    return m;
}

CMatrix matrix_power(const CMatrix& a, std::size_t k) {
    CMatrix p = CMatrix::Identity(a.rows(), a.cols());
    for (std::size_t i = 0; i < k; ++i) p = p * a;
    return p;
}

bool certifies_multiplicity(const CMatrix& t, cplx c, std::size_t k) {
    return linalg::nullity(matrix_power(shifted(t, c), k)) >= k;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<std::size_t>> groups(UnionFind& uf) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<long> slot(uf.parent.size(), -1);
    for (std::size_t i = 0; i < uf.parent.size(); ++i) {
        const auto root = uf.find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    return out;
}

cplx mean_of(const CVector& vals, const std::vector<std::size_t>& idx) {
    cplx s = 0.0;
    for (auto i : idx) s += vals(static_cast<Eigen::Index>(i));
    return s / static_cast<double>(idx.size());
}

// Largest entry becomes real positive and of modulus one.
CVector normalize_phase(const CVector& v) {
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    const cplx pivot = v(at);
    if (std::abs(pivot) == 0.0) return v;
    return v / pivot;
}

std::size_t constrained_dim(const CMatrix& a, const CMatrix& c) {
    return static_cast<std::size_t>(linalg::constrained_kernel(a, c).basis.cols());
}

cplx unit_root(long p, long q) {
    const long k = ((p % q) + q) % q;
    if (k == 0) return 1.0;
    if (4 * k == q) return cplx(0.0, 1.0);
    if (2 * k == q) return -1.0;
    if (4 * k == 3 * q) return cplx(0.0, -1.0);
    return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(q));
}

}  // namespace

std::vector<EigenCluster> eigenvalue_clusters(const OperatorMatrix& t, double cluster_tol) {
    const CMatrix& a = t.entries();
    Eigen::ComplexEigenSolver<CMatrix> es(a, false);
    if (es.info() != Eigen::Success) throw Error("eigensolver did not converge");
    const CVector vals = es.eigenvalues();
    const auto n = static_cast<std::size_t>(vals.size());
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());

    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(vals(static_cast<Eigen::Index>(i)) - vals(static_cast<Eigen::Index>(j))) <=
                cluster_tol * scale)
                uf.unite(i, j);

    static const double ladder[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 3e-2};
    for (double level : ladder) {
        if (level <= cluster_tol) continue;
        auto current = groups(uf);
        const std::size_t g = current.size();
        if (g < 2) break;
        UnionFind link(g);
        for (std::size_t p = 0; p < g; ++p)
            for (std::size_t q = p + 1; q < g; ++q) {
                double d = std::numeric_limits<double>::infinity();
                for (auto i : current[p])
                    for (auto j : current[q])
                        d = std::min(d, std::abs(vals(static_cast<Eigen::Index>(i)) -
                                                 vals(static_cast<Eigen::Index>(j))));
                if (d <= level * scale) link.unite(p, q);
            }
        for (const auto& comp : groups(link)) {
            if (comp.size() < 2) continue;
            std::vector<std::size_t> members;
            for (auto p : comp) members.insert(members.end(), current[p].begin(), current[p].end());
            const cplx c = mean_of(vals, members);
            if (certifies_multiplicity(a, c, members.size()))
                for (auto i : members) uf.unite(members.front(), i);
        }
    }

    std::vector<EigenCluster> out;
    for (const auto& g : groups(uf)) out.push_back({mean_of(vals, g), g.size()});
    // Descending modulus, then ascending angle in [0, 2 pi).
    std::sort(out.begin(), out.end(), [](const EigenCluster& x, const EigenCluster& y) {
        const double ax = std::abs(x.value), ay = std::abs(y.value);
        if (std::abs(ax - ay) > 1e-12 * std::max(1.0, std::max(ax, ay))) return ax > ay;
        return angle_fraction(x.value) < angle_fraction(y.value);
    });
    return out;
}

std::vector<EigenPair> eigen(const OperatorMatrix& t, double cluster_tol) {
    const CMatrix& a = t.entries();
    std::vector<EigenPair> pairs;
    for (const auto& cl : eigenvalue_clusters(t, cluster_tol)) {
        EigenPair p;
        p.value = cl.value;
        p.alg_mult = cl.alg_mult;
        const CMatrix m = shifted(a, cl.value);
        const std::size_t raw = linalg::nullity(m);
        p.geo_mult = std::clamp<std::size_t>(raw, 1, cl.alg_mult);
        const CMatrix v = linalg::smallest_right_singular_vectors(m, static_cast<Eigen::Index>(p.geo_mult));
        for (Eigen::Index j = 0; j < v.cols(); ++j)
            p.basis.emplace_back(normalize_phase(v.col(j)), t.model());
        p.pole_order = cl.alg_mult;
        CMatrix pw = m;
        std::size_t prev = raw;
        for (std::size_t k = 1; k <= cl.alg_mult; ++k) {
            pw = pw * m;
            const std::size_t next = linalg::nullity(pw);
            if (next == prev) {
                p.pole_order = k;
                break;
            }
            prev = next;
        }
        p.pole_order = std::max<std::size_t>(p.pole_order, 1);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

double spectral_radius(const OperatorMatrix& t) {
    double r = 0.0;
    for (const auto& c : eigenvalue_clusters(t)) r = std::max(r, std::abs(c.value));
    return r;
}

double spectral_radius(const std::vector<EigenPair>& pairs) {
    double r = 0.0;
    for (const auto& p : pairs) r = std::max(r, std::abs(p.value));
    return r;
}

std::size_t pole_order_at(const OperatorMatrix& t, cplx lambda0, double tol) {
    const auto clusters = eigenvalue_clusters(t);
    const bool present = std::any_of(clusters.begin(), clusters.end(), [&](const EigenCluster& c) {
        return std::abs(c.value - lambda0) <= tol * std::max(1.0, std::abs(lambda0));
    });
    if (!present) throw Error("λ₀ not in spectrum");
    const CMatrix m = shifted(t.entries(), lambda0);
    CMatrix pw = m;
    std::size_t rank = linalg::numerical_rank(pw);
    for (std::size_t k = 1; k <= t.dimension(); ++k) {
        pw = pw * m;
        const std::size_t next = linalg::numerical_rank(pw);
        if (next == rank) return k;
        rank = next;
    }
    return t.dimension();
}

const char* to_string(CyclicVerdict v) {
    switch (v) {
        case CyclicVerdict::Cyclic: return "cyclic";
        case CyclicVerdict::NotCyclic: return "not_cyclic";
        case CyclicVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

double angle_fraction(cplx z) {
    double x = std::arg(z) / kTwoPi;
    if (x < 0) x += 1.0;
    if (x >= 1.0) x -= 1.0;
    return x;
}

std::optional<std::pair<long, long>> rational_approximation(double x, int q_max, double window) {
    if (q_max < 1) throw Error("q_max must be >= 1");
    x -= std::floor(x);
    // Convergents p/q of the continued fraction of x.
    double p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(rest);
        const double p = a * p1 + p2, q = a * q1 + q2;
        if (q > q_max) break;
        if (std::abs(x - p / q) < window) {
            const long qi = static_cast<long>(q);
            return std::make_pair(static_cast<long>(p) % qi, qi);
        }
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
        const double frac = rest - a;
        if (frac < 1e-300) break;
        rest = 1.0 / frac;
    }
    // x within the window of 1 is the angle 0.
    if (std::abs(x - 1.0) < window) return std::make_pair(0L, 1L);
    return std::nullopt;
}

CyclicityResult is_cyclic(const std::vector<cplx>& s, double r, double tol, int q_max) {
    if (q_max < 1) throw Error("q_max must be >= 1");
    CyclicityResult res;
    if (s.empty()) {
        res.detail = "empty set";
        return res;
    }
    const double scale = std::max(1.0, r);
    for (const auto& z : s)
        if (std::abs(std::abs(z) - r) > tol * scale)
            throw Error("element off the circle of radius r");
    if (r <= 0.0) {
        res.detail = "r = 0";
        return res;
    }
    std::vector<cplx> sorted = s;
    std::sort(sorted.begin(), sorted.end(),
              [](cplx a, cplx b) { return angle_fraction(a) < angle_fraction(b); });
    auto present = [&](cplx w) {
        return std::any_of(sorted.begin(), sorted.end(),
                           [&](cplx z) { return std::abs(z - w) <= tol * scale; });
    };
    bool irrational_seen = false;
    for (const auto& z : sorted) {
        const double x = angle_fraction(z);
        const auto frac = rational_approximation(x, q_max);
        if (frac) {
            const auto [p, q] = *frac;
            for (long n = 1; n <= q; ++n) {
                const cplx w = r * unit_root(n * p, q);
                if (!present(w)) {
                    res.verdict = CyclicVerdict::NotCyclic;
                    res.witness = w;
                    std::ostringstream os;
                    os << "power n=" << n << " of angle " << p << "/" << q << " missing";
                    res.detail = os.str();
                    return res;
                }
            }
        } else {
            irrational_seen = true;
            const double theta = kTwoPi * x;
            for (std::size_t n = 1; n <= sorted.size() + 1; ++n) {
                const cplx w = std::polar(r, theta * static_cast<double>(n));
                if (!present(w)) {
                    res.verdict = CyclicVerdict::NotCyclic;
                    res.witness = w;
                    std::ostringstream os;
                    os << "irrational angle; power n=" << n << " missing";
                    res.detail = os.str();
                    return res;
                }
            }
        }
    }
    if (irrational_seen) {
        res.verdict = CyclicVerdict::Inconclusive;
        res.detail = "irrational angle whose probed powers are all present";
    }
    return res;
}

bool SpectralReport::dim_check_passed() const { return all_pass(dim_verdicts); }

bool all_pass(const std::vector<DimVerdict>& verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const DimVerdict& v) { return v.pass; });
}

SpectralReport spectral_report(const ConstrainedOperator& t, const SpectralOptions& opts) {
    SpectralReport rep;
    rep.pairs = eigen(t.op, opts.cluster_tol);
    rep.spectral_radius = spectral_radius(rep.pairs);
    const double r = rep.spectral_radius;
    const double band = opts.band_tol * std::max(1.0, r);
    std::vector<cplx> values;
    for (const auto& p : rep.pairs) {
        if (std::abs(p.value) < r - band) continue;
        EigenPair q = p;
        if (t.has_constraints()) {
            // Point spectrum of the constrained subspace.
            const auto ker = linalg::constrained_kernel(shifted(t.op.entries(), p.value), t.constraints);
            if (ker.basis.cols() == 0) continue;
            q.geo_mult = static_cast<std::size_t>(ker.basis.cols());
            q.basis.clear();
            for (Eigen::Index j = 0; j < ker.basis.cols(); ++j)
                q.basis.emplace_back(normalize_phase(ker.basis.col(j)), t.op.model());
        }
        values.push_back(q.value);
        rep.peripheral.push_back(std::move(q));
    }
    if (r > 0.0) rep.cyclic = is_cyclic(values, r, band / std::max(1.0, r), opts.q_max);
    if (opts.dim_check) rep.dim_verdicts = dim_estimate_check(t, opts.band_tol, opts.n_min, opts.n_max);
    return rep;
}

SpectralReport spectral_report(const OperatorMatrix& t, const SpectralOptions& opts) {
    return spectral_report(ConstrainedOperator(t), opts);
}

std::vector<cplx> peripheral_spectrum(const SpectralReport& rep, double band_tol) {
    std::vector<cplx> out;
    const double r = rep.spectral_radius;
    for (const auto& p : rep.pairs)
        if (std::abs(p.value) >= r - band_tol * std::max(1.0, r)) out.push_back(p.value);
    return out;
}

std::vector<cplx> rational_peripheral_point_spectrum(const SpectralReport& rep, int q_max,
                                                     double band_tol) {
    std::vector<cplx> out;
    for (const auto& z : peripheral_spectrum(rep, band_tol))
        if (rational_approximation(angle_fraction(z), q_max)) out.push_back(z);
    return out;
}

std::vector<DimVerdict> dim_estimate_check(const ConstrainedOperator& t, double tol, int n_min,
                                           int n_max) {
    if (n_min > n_max) throw Error("empty n range");
    const auto clusters = eigenvalue_clusters(t.op);
    double r = 0.0;
    for (const auto& c : clusters) r = std::max(r, std::abs(c.value));
    if (r <= 1e-14) throw Error("r(T) = 0");
    const CMatrix a = t.op.entries() / r;

    std::vector<DimVerdict> out;
    for (const auto& c : clusters) {
        if (std::abs(c.value) / r < 1.0 - tol) continue;
        const double x = angle_fraction(c.value);
        const auto frac = rational_approximation(x, kDefaultQMax);
        auto power_of = [&](long n) -> cplx {
            if (frac) return unit_root(n * frac->first, frac->second);
            return std::polar(1.0, kTwoPi * x * static_cast<double>(n));
        };
        const cplx u = power_of(1);
        const std::size_t lhs = constrained_dim(shifted(a, u), t.constraints);
        if (lhs == 0) continue;
        for (int n = n_min; n <= n_max; ++n) {
            DimVerdict v;
            v.value = u;
            v.theta = kTwoPi * (frac ? static_cast<double>(frac->first) / static_cast<double>(frac->second) : x);
            v.n = n;
            v.dim_theta = lhs;
            v.dim_n_theta = constrained_dim(shifted(a, power_of(n)), t.constraints);
            v.pass = v.dim_theta <= v.dim_n_theta;
            out.push_back(v);
        }
    }
    return out;
}

std::vector<DimVerdict> dim_estimate_check_in_ideal(const OperatorMatrix& t, const LatticeVector& x,
                                                    double tol, int n_min, int n_max) {
    const double r = spectral_radius(t);
    const CVector res = t.entries() * x.entries() - r * x.entries();
    const double xn = x.entries().cwiseAbs().maxCoeff();
    if (xn == 0.0 || res.cwiseAbs().maxCoeff() > std::max(tol, 1e-8) * std::max(1.0, r) * xn)
        throw Error("x is not a fixed vector of T for r(T)");
    const OperatorMatrix sub = restrict_to_ideal(t, x);
    return dim_estimate_check(sub, tol, n_min, n_max);
}

MeanErgodicResult mean_ergodic_projection(const OperatorMatrix& t, double tol) {
    MeanErgodicResult res;
    const auto pairs = eigen(t);
    const double r = spectral_radius(pairs);
    const auto n = static_cast<Eigen::Index>(t.dimension());
    if (r > 1.0 + tol) {
        res.diagnostic = "spectral radius exceeds 1";
        return res;
    }
    const EigenPair* one = nullptr;
    for (const auto& p : pairs) {
        if (std::abs(p.value) < 1.0 - tol) continue;
        if (p.pole_order > 1) {
            std::ostringstream os;
            os << "peripheral eigenvalue " << p.value << " has pole order " << p.pole_order;
            res.diagnostic = os.str();
            return res;
        }
        if (std::abs(p.value - 1.0) <= tol) one = &p;
    }
    CMatrix proj = CMatrix::Zero(n, n);
    if (one) {
        const CMatrix m = shifted(t.entries(), 1.0);
        const auto g = static_cast<Eigen::Index>(one->geo_mult);
        const CMatrix v = linalg::smallest_right_singular_vectors(m, g);
        const CMatrix w = linalg::smallest_right_singular_vectors(m.adjoint(), g);
        const CMatrix wv = w.adjoint() * v;
        Eigen::PartialPivLU<CMatrix> lu(wv);
        if (!(lu.rcond() > 1e-12)) {
            res.diagnostic = "fixed space and its complement are numerically not transversal";
            return res;
        }
        proj = v * lu.solve(w.adjoint());
        res.diagnostic = "projection onto ker(1-T) along range(1-T)";
    } else {
        res.diagnostic = "1 is not an eigenvalue; P = 0";
    }
    const OperatorMatrix c = cesaro_mean(t, kMeanErgodicHorizon);
    res.cesaro_defect = op_norm(CMatrix(proj - c.entries()), t.model().norm());
    res.projection = t.with_entries(std::move(proj));
    return res;
}

const char* to_string(DaecVerdict v) {
    switch (v) {
        case DaecVerdict::Holds: return "holds";
        case DaecVerdict::Fails: return "fails";
        case DaecVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// ||z||_inf = 1, first nonzero entry real positive.
CVector normalize_witness(const CVector& z) {
    const double m = z.cwiseAbs().maxCoeff();
    CVector out = z / m;
    for (Eigen::Index i = 0; i < out.size(); ++i)
        if (std::abs(out(i)) > 1e-12) {
            out *= std::conj(out(i)) / std::abs(out(i));
            out(i) = std::abs(out(i));
            break;
        }
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (std::abs(out(i).imag()) < 1e-15) out(i).imag(0.0);
        if (std::abs(out(i).real()) < 1e-15) out(i).real(0.0);
    }
    return out;
}

// Smallest x = B c (1^T x minimal) with x >= |z|.
std::optional<RVector> dominating_fixed_vector(const RMatrix& b, const RVector& zabs) {
    const RVector cost = b.colwise().sum().transpose();
    const auto res = lp::minimize(cost, b, zabs);
    if (res.status != lp::Status::Optimal) return std::nullopt;
    RVector x = b * res.x;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) < 1e-14) x(i) = 0.0;
    return x;
}

DaecResult daec_impl(const CMatrix& a, const SpaceModel& model, double r, double theta,
                     double tol, int budget, std::uint64_t seed) {
    DaecResult res;
    const auto n = a.rows();
    const cplx lambda = std::polar(r, theta);
    {
        OperatorMatrix op(a, model);
        const auto clusters = eigenvalue_clusters(op);
        auto near = [&](cplx w) {
            return std::any_of(clusters.begin(), clusters.end(), [&](const EigenCluster& c) {
                return std::abs(c.value - w) <= tol * std::max(1.0, r);
            });
        };
        if (!near(lambda) || !near(cplx(r))) throw Error("eigenvalues absent");
    }

    // Real basis of ker(r - T) (real and imaginary parts stacked).
    const CMatrix mr = shifted(a, cplx(r));
    RMatrix stacked(2 * n, n);
    stacked << mr.real(), mr.imag();
    RMatrix b = linalg::real_null_space(stacked);
    if (b.cols() == 0) {
        b = RMatrix(n, 1);
        b.col(0) = linalg::smallest_right_singular_vectors(mr, 1).col(0).real();
    }
    const auto d = b.cols();

    // Largest support of a nonnegative x in ker(r - T): coordinate i belongs to
    // it iff max x_i subject to x = B c >= 0, 1^T x <= 1 is positive.
    // Rows: x = B c >= 0 and -1^T x >= -1.
    RMatrix cone(n + 1, d);
    cone.topRows(n) = b;
    cone.row(n) = -b.colwise().sum();
    RVector rhs = RVector::Zero(n + 1);
    rhs(n) = -1.0;
    std::vector<bool> in_support(static_cast<std::size_t>(n), false);
    bool numerical_trouble = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        try {
            const auto lpres = lp::minimize(-b.row(i).transpose(), cone, rhs);
            if (lpres.status == lp::Status::Optimal && (b.row(i) * lpres.x)(0) > 1e-9)
                in_support[static_cast<std::size_t>(i)] = true;
            if (lpres.status == lp::Status::Unbounded) numerical_trouble = true;
        } catch (const Error&) {
            numerical_trouble = true;
        }
    }
    const auto support_size = std::count(in_support.begin(), in_support.end(), true);

    auto finish_holds = [&](const CVector& zc) -> bool {
        const CVector z = normalize_witness(zc);
        const auto x = dominating_fixed_vector(b, z.cwiseAbs());
        if (!x) return false;
        res.verdict = DaecVerdict::Holds;
        res.z = LatticeVector(z, model);
        res.x = LatticeVector(x->cast<cplx>(), model);
        res.provable = true;
        return true;
    };

    const CMatrix ml = shifted(a, lambda);
    if (!numerical_trouble) {
        if (support_size == 0) {
            res.verdict = DaecVerdict::Fails;
            res.provable = true;
            res.detail = "ker(r-T) contains no nonzero positive vector";
            return res;
        }
        // z must vanish off the maximal support.
        CMatrix off(n - support_size, n);
        off.setZero();
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (!in_support[static_cast<std::size_t>(i)]) off(row++, i) = 1.0;
        const auto ker = linalg::constrained_kernel(ml, off);
        if (ker.unconstrained_dim == 0) throw Error("eigenvalues absent");
        if (ker.basis.cols() > 0 && finish_holds(ker.basis.col(0))) {
            res.detail = "eigenvector supported in the maximal positive fixed support";
            return res;
        }
        if (ker.basis.cols() == 0) {
            res.verdict = DaecVerdict::Fails;
            res.provable = true;
            res.detail = "every eigenvector leaves the support of ker(r-T)_+";
            return res;
        }
    }

    // Fallback: randomized search over the eigenspace.
    const CMatrix z_basis = linalg::null_space(ml);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < budget && z_basis.cols() > 0; ++trial) {
        CVector coef(z_basis.cols());
        if (trial < z_basis.cols()) {
            coef.setZero();
            coef(trial) = 1.0;
        } else {
            for (Eigen::Index j = 0; j < coef.size(); ++j) coef(j) = cplx(gauss(rng), gauss(rng));
        }
        try {
            if (finish_holds(z_basis * coef)) {
                res.detail = "randomized search";
                return res;
            }
        } catch (const Error&) {
        }
    }
    res.verdict = DaecVerdict::Inconclusive;
    res.detail = "search budget exhausted";
    return res;
}

}  // namespace

DaecResult daec_check(const OperatorMatrix& t, double r, double theta, double tol,
                      int search_budget, std::uint64_t seed) {
    return daec_impl(t.entries(), t.model(), r, theta, tol, search_budget, seed);
}

DaecResult daec_check_adjoint(const OperatorMatrix& t, double r, double theta, double tol,
                              int search_budget, std::uint64_t seed) {
    return daec_impl(t.entries().transpose(), t.model(), r, theta, tol, search_budget, seed);
}

std::vector<double> default_ratio_schedule(int k_max) {
    std::vector<double> s;
    for (int k = 1; k <= k_max; ++k) s.push_back(1.0 + std::ldexp(1.0, -k));
    return s;
}

ResolventRatio resolvent_growth_ratio(const OperatorMatrix& t, double theta,
                                      const std::vector<double>& schedule) {
    if (schedule.empty()) throw Error("empty r schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 1.0)) throw Error("r schedule must stay above 1");
        if (i > 0 && !(schedule[i] < schedule[i - 1]))
            throw Error("r schedule must be strictly decreasing");
    }
    ResolventRatio out;
    for (double r : schedule) {
        const double num = op_norm(resolvent(t, std::polar(r, theta)));
        const double den = op_norm(resolvent(t, cplx(r)));
        out.samples.emplace_back(r, num / den);
    }
    for (std::size_t i = out.samples.size() / 2; i < out.samples.size(); ++i)
        out.limsup_estimate = std::max(out.limsup_estimate, out.samples[i].second);
    return out;
}

}  // namespace perronlab
