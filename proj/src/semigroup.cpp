#include "perronlab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace perronlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double phi) {
    phi = std::fmod(phi, kTwoPi);
    return phi < 0 ? phi + kTwoPi : phi;
}

void add(SparseRow& row, std::size_t idx, double w) {
    if (w != 0.0) row.emplace_back(idx, w);
}

void compact(SparseRow& row) {
    std::sort(row.begin(), row.end());
    SparseRow out;
    for (const auto& [i, w] : row) {
        if (!out.empty() && out.back().first == i)
            out.back().second += w;
        else
            out.emplace_back(i, w);
    }
    row.swap(out);
}

// Weights of f(angle phi) in terms of the circle samples, scaled by `scale`.
void circle_weights(const SemigroupGrid& g, double phi, double scale, SparseRow& row) {
    phi = wrap_angle(phi);
    const double step = kTwoPi / static_cast<double>(g.m);
    if (g.interp == CircleInterp::Linear) {
        const double u = phi / step;
        auto k = static_cast<std::size_t>(std::floor(u));
        const double frac = u - static_cast<double>(k);
        k %= g.m;
        if (frac < 1e-12) {
            add(row, k, scale);
        } else if (frac > 1.0 - 1e-12) {
            add(row, (k + 1) % g.m, scale);
        } else {
            add(row, k, scale * (1.0 - frac));
            add(row, (k + 1) % g.m, scale * frac);
        }
        return;
    }
    // Periodic band-limited interpolant on an even number of nodes.
    const double md = static_cast<double>(g.m);
    for (std::size_t j = 0; j < g.m; ++j) {
        const double x = phi - g.angle(j);
        const double sh = std::sin(0.5 * x);
        double w;
        if (std::abs(sh) < 1e-14)
            w = 1.0;
        else
            w = std::sin(0.5 * md * x) * std::cos(0.5 * x) / sh / md;
        add(row, j, scale * w);
    }
}

void ray_weights(const SemigroupGrid& g, double x, double scale, SparseRow& row) {
    const double u = x / g.length * static_cast<double>(g.n);
    auto k = static_cast<std::size_t>(std::floor(u));
    if (k >= g.n) {
        add(row, g.ray_offset() + g.n, scale);
        return;
    }
    const double frac = u - static_cast<double>(k);
    if (frac < 1e-12) {
        add(row, g.ray_offset() + k, scale);
    } else if (frac > 1.0 - 1e-12) {
        add(row, g.ray_offset() + k + 1, scale);
    } else {
        add(row, g.ray_offset() + k, scale * (1.0 - frac));
        add(row, g.ray_offset() + k + 1, scale * frac);
    }
}

double norm_inf(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

const char* to_string(CircleInterp i) {
    return i == CircleInterp::Linear ? "linear" : "trigonometric";
}

CircleInterp circle_interp_from_string(const std::string& s) {
    if (s == "linear") return CircleInterp::Linear;
    if (s == "trigonometric" || s == "trig") return CircleInterp::Trigonometric;
    throw ParseError("unknown circle interpolation: " + s);
}

SemigroupGrid::SemigroupGrid(std::size_t m_, std::size_t n_, double length_, CircleInterp interp_)
    : m(m_), n(n_), length(length_), interp(interp_) {
    if (m == 0 || m % 4 != 0) throw Error("circle resolution M must be a positive multiple of 4");
    if (n == 0) throw Error("ray resolution N must be positive");
    if (!(length > 0.0)) throw Error("ray length L must be positive");
}

double SemigroupGrid::angle(std::size_t k) const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(m);
}

double SemigroupGrid::quadrature_step() const {
    return std::min(kTwoPi / static_cast<double>(m), length / static_cast<double>(n));
}

CVector sample(const SemigroupGrid& g, const CircleFn& circle, const RayFn& ray, cplx at_infinity) {
    CVector f(static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.m; ++k)
        f(static_cast<Eigen::Index>(k)) = circle(std::polar(1.0, g.angle(k)));
    for (std::size_t k = 0; k <= g.n; ++k)
        f(static_cast<Eigen::Index>(g.ray_offset() + k)) = ray(g.ray_point(k));
    f(static_cast<Eigen::Index>(g.infinity_index())) = at_infinity;
    return f;
}

std::vector<SparseRow> semigroup_rows(const SemigroupGrid& g, double t) {
    if (t < 0.0) throw Error("t must be nonnegative");
    if (t > g.length) throw Error("t exceeds the ray truncation L");
    std::vector<SparseRow> rows(g.size());
    for (std::size_t k = 0; k < g.m; ++k) circle_weights(g, g.angle(k) - t, 1.0, rows[k]);
    const double hq = g.quadrature_step();
    for (std::size_t k = 0; k <= g.n; ++k) {
        auto& row = rows[g.ray_offset() + k];
        const double x = g.ray_point(k);
        if (x >= t) {
            ray_weights(g, x - t, 1.0, row);
            continue;
        }
        const double tau = t - x;
        const double decay = std::exp(-tau);
        add(row, g.ray_offset(), decay);
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(tau / hq - 1e-9)));
        const double ds = tau / static_cast<double>(pieces);
        for (std::size_t q = 0; q <= pieces; ++q) {
            const double s = ds * static_cast<double>(q);
            const double w = (q == 0 || q == pieces ? 0.5 : 1.0) * ds * std::exp(s) * decay;
            // <mu, R(s) f> = (f(e^{-is} i) + f(-e^{-is} i)) / 2
            circle_weights(g, 0.5 * std::numbers::pi - s, 0.5 * w, row);
            circle_weights(g, 1.5 * std::numbers::pi - s, 0.5 * w, row);
        }
    }
    add(rows[g.infinity_index()], g.infinity_index(), 1.0);
    for (auto& r : rows) compact(r);
    return rows;
}

RMatrix semigroup_matrix(const SemigroupGrid& g, double t) {
    const auto rows = semigroup_rows(g, t);
    RMatrix m = RMatrix::Zero(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, w] : rows[i]) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
    return m;
}

CVector semigroup_apply(const SemigroupGrid& g, double t, const CVector& f) {
    if (static_cast<std::size_t>(f.size()) != g.size()) throw Error("grid function has wrong size");
    CVector out(f.size());
    const auto rows = semigroup_rows(g, t);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        cplx acc = 0.0;
        for (const auto& [j, w] : rows[i]) acc += w * f(static_cast<Eigen::Index>(j));
        out(static_cast<Eigen::Index>(i)) = acc;
    }
    return out;
}

double generator_residual(const SemigroupGrid& g, const CVector& f, cplx lambda, double h) {
    if (!(h > 0.0)) throw Error("h must be positive");
    const CVector th = semigroup_apply(g, h, f);
    return norm_inf((th - f) / h - lambda * f);
}

cplx mu_pairing(const SemigroupGrid& g, const CVector& f) {
    // +-i are grid points because 4 | M.
    return 0.5 * (f(static_cast<Eigen::Index>(g.m / 4)) + f(static_cast<Eigen::Index>(3 * g.m / 4)));
}

MarkovDefect markov_defect(const SemigroupGrid& g, double t) {
    MarkovDefect d;
    for (const auto& row : semigroup_rows(g, t)) {
        double sum = 0.0;
        for (const auto& [j, w] : row) {
            sum += w;
            d.min_entry = std::min(d.min_entry, w);
        }
        d.row_sum = std::max(d.row_sum, std::abs(sum - 1.0));
    }
    return d;
}

namespace {

CVector apply_rows(const std::vector<SparseRow>& rows, const CVector& f) {
    CVector out(f.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        cplx acc = 0.0;
        for (const auto& [j, w] : rows[i]) acc += w * f(static_cast<Eigen::Index>(j));
        out(static_cast<Eigen::Index>(i)) = acc;
    }
    return out;
}

}  // namespace

double semigroup_defect(const SemigroupGrid& g, double t, double s, const std::vector<CVector>& dict) {
    return semigroup_defect_sup(g, {{t, s}}, dict);
}

double semigroup_defect_sup(const SemigroupGrid& g, const std::vector<std::pair<double, double>>& pairs,
                            const std::vector<CVector>& dict) {
    std::map<double, std::vector<SparseRow>> cache;
    auto rows_at = [&](double t) -> const std::vector<SparseRow>& {
        auto it = cache.find(t);
        if (it == cache.end()) it = cache.emplace(t, semigroup_rows(g, t)).first;
        return it->second;
    };
    double worst = 0.0;
    for (const auto& [t, s] : pairs)
        for (const auto& f : dict) {
            const CVector lhs = apply_rows(rows_at(t), apply_rows(rows_at(s), f));
            const CVector rhs = apply_rows(rows_at(t + s), f);
            worst = std::max(worst, norm_inf(lhs - rhs) / std::max(1e-300, norm_inf(f)));
        }
    return worst;
}

std::vector<CVector> test_dictionary(const SemigroupGrid& g) {
    // Each ray part satisfies f'(0) = f(0) - <mu, f|_T>, so orbits stay C^1 on the ray.
    auto zero_ray = [](double) { return cplx(0.0); };
    auto zero_circle = [](cplx) { return cplx(0.0); };
    return {
        sample(g, [](cplx x) { return cplx(x.real()); }, zero_ray, 0.0),
        sample(g, [](cplx x) { return cplx((x * x).real()); },
               [](double x) { return cplx(x * std::exp(-x)); }, 0.0),
        sample(g, zero_circle, [](double x) { return cplx((1.0 + 2.0 * x) * std::exp(-x)); }, 0.0),
        sample(g, [](cplx) { return cplx(1.0); }, [](double) { return cplx(1.0); }, 1.0),
    };
}

}  // namespace perronlab
