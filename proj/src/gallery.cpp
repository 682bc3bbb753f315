#include "perronlab/gallery.hpp"

#include "perronlab/fixed_space.hpp"
#include "perronlab/lattice.hpp"
#include "perronlab/linalg.hpp"
#include "perronlab/operator.hpp"
#include "perronlab/semigroup.hpp"
#include "perronlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace perronlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const char* kFixedRef = "Examples after the fixed-space theorem, (a): \"it is easy to check that this supremum is given by (1,1,1)\"";
const char* kNoSupRef = "Examples after the fixed-space theorem, (b): \"(f',g',h'') in ker(1-S) is also an upper bound ... but it is smaller\"";
const char* kShiftRef = "Example of a lattice homomorphism with liminf ||T^j|| < inf but unbounded Cesaro means";
const char* kSubgroupRef = "Example of an AM-space operator with peripheral point spectrum G \\ {1}, eigenvector formula (*)";
const char* kOnePointRef = "Example of a Markov operator on C(K): \"i is an eigenvalue of T, but -1 is not\"";
const char* kRemarkRef = "Remark on the restriction to {f(inf) = 0}: \"i,-i in sigma_pnt(T|_F) but -1,1 not\"";
const char* kNoDaecRef = "Example of a 4x4 positive matrix without the dominated approximate eigenvector condition";
const char* kSemigroupRef = "Example of a Markov C_0-semigroup on C(T ⊔ [0,inf]) with i but not 2i in the point spectrum of A";

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct FactList {
    std::vector<Fact> facts;
    void add(std::string id, const char* ref, const char* tag, bool pass, double measured,
             std::string expected) {
        facts.push_back({std::move(id), ref, tag, pass, measured, std::move(expected)});
    }
};

class Params {
public:
    Params(const CaseParams& defaults, const CaseParams& overrides) : values_(defaults) {
        for (const auto& [k, v] : overrides) {
            if (!values_.count(k)) throw ParseError("unknown parameter: " + k);
            values_[k] = v;
        }
    }
    const CaseParams& all() const { return values_; }
    double real(const std::string& k) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(values_.at(k), &pos);
            if (pos != values_.at(k).size()) throw std::invalid_argument(k);
            return v;
        } catch (const std::logic_error&) {
            throw ParseError("parameter " + k + " is not a number: " + values_.at(k));
        }
    }
    std::size_t count(const std::string& k) const {
        const double v = real(k);
        if (v < 0 || v != std::floor(v)) throw ParseError("parameter " + k + " must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    }
    std::vector<double> list(const std::string& k) const {
        std::vector<double> out;
        std::stringstream ss(values_.at(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::logic_error&) {
                throw ParseError("parameter " + k + " has a bad entry: " + item);
            }
        }
        if (out.empty()) throw ParseError("parameter " + k + " is empty");
        return out;
    }
    const std::string& text(const std::string& k) const { return values_.at(k); }

private:
    CaseParams values_;
};

template <class Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& v) {
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

CMatrix shifted(const OperatorMatrix& t, cplx lambda) {
    CMatrix a = -t.entries();
    a.diagonal().array() += lambda;
    return a;
}

// --- cases -----------------------------------------------------------------

CaseReport fixed_space_case(const Params& p) {
    const double tol = p.real("tol");
    FactList out;
    const auto h = make_fixed_space(fixed_space_example());
    const auto ones = LatticeVector::real({1, 1, 1});
    const auto fhat = LatticeVector::real({1, 0, -1});
    const auto neg = LatticeVector::real({-1, 0, 1});
    out.add("fixed_space_dim", kFixedRef, "PAPER", h.basis.cols() == 2, static_cast<double>(h.basis.cols()), "2");
    const double span_res = std::max(fixed_residual(h, ones.entries()), fixed_residual(h, fhat.entries()));
    out.add("span_members_fixed", kFixedRef, "PAPER", span_res <= tol, span_res, "<= " + fmt(tol));

    const auto sup = sup_in_fixed_space(h, {fhat, neg});
    const double dev = inf_norm(sup.value.real_part() - ones.real_part());
    out.add("sup_plus_minus_fhat", kFixedRef, "PAPER", dev <= tol, dev, "(1,1,1) within " + fmt(tol));
    out.add("monotone_certificate", kFixedRef, "DERIVED", sup.monotone, static_cast<double>(sup.iterations),
            "T^{n+1} h0 >= T^n h0 at every step");

    const auto lp_min = fixed_upper_bound_minimum(h, {fhat, neg});
    const double lp_gap = inf_norm(RVector(lp_min - sup.value.real_part()));
    out.add("lp_least_upper_bound", kFixedRef, "DERIVED", lp_gap <= 1e-8, lp_gap,
            "per-coordinate LP minimum over fixed upper bounds equals sup_F");

    const auto mod = f_modulus(h, fhat);
    const double norm_gap = std::abs(inf_norm(mod.value.entries()) - inf_norm(fhat.entries()));
    out.add("modulus_norm_identity", kFixedRef, "PAPER", norm_gap <= 1e-8, norm_gap, "|| |f|_F || = ||f||");

    const auto am = am_identity_check(h, LatticeVector::real({0.5, 1, 1.5}), LatticeVector::real({2, 1, 0}));
    out.add("am_identity", kFixedRef, "DERIVED", am.pass, am.join_norm, "||g1 v_F g2|| = ||g1 v g2|| = 2");

    const auto sl = is_fixed_space_sublattice(h);
    const bool witness_ok = sl.witness && inf_norm(sl.witness->real_part() - fhat.real_part()) <= 1e-12;
    out.add("not_a_sublattice", kFixedRef, "PAPER", !sl.is_sublattice && witness_ok,
            sl.is_sublattice ? 1.0 : 0.0, "false with witness (1,0,-1)");
    return {"fixed_space_3x3", p.all(), out.facts};
}

CaseReport no_supremum_case(const Params& p) {
    const std::size_t n = p.count("N");
    const std::size_t depth = p.count("depth");
    FactList out;
    const auto m = no_supremum_model(n);
    const auto fhat = LatticeVector::real({1, 0, -1});
    const auto chain = no_supremum_witness(m, fhat, depth);
    out.add("chain_length", kNoSupRef, "DERIVED", chain.size() == depth, static_cast<double>(chain.size()),
            std::to_string(depth) + " (demonstration at truncation N, not a proof)");
    double worst_res = 0.0;
    bool bounds = true, decreasing = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        worst_res = std::max(worst_res, chain[i].fixed_residual);
        bounds = bounds && chain[i].upper_bound;
        if (i > 0) {
            const RVector prev = chain[i - 1].bound.real_part();
            const RVector cur = chain[i].bound.real_part();
            decreasing = decreasing && (cur.array() <= prev.array()).all() && chain[i].decrease > 0.0 &&
                         cur(static_cast<Eigen::Index>(chain[i].lowered)) <
                             prev(static_cast<Eigen::Index>(chain[i].lowered));
        }
    }
    out.add("bounds_fixed", kNoSupRef, "DERIVED", worst_res <= 1e-10, worst_res, "S b = b, C b = 0 within 1e-10");
    out.add("bounds_dominate", kNoSupRef, "DERIVED", bounds, bounds ? 1.0 : 0.0, "b >= +-(f,0,0)");
    out.add("strictly_decreasing", kNoSupRef, "DERIVED", decreasing, decreasing ? 1.0 : 0.0,
            "each bound strictly below its predecessor");
    if (!chain.empty()) {
        RVector canon = RVector::Ones(static_cast<Eigen::Index>(m.op.op.dimension()));
        const double dev = inf_norm(RVector(chain.front().bound.real_part() - canon));
        out.add("canonical_bound", kNoSupRef, "DERIVED", dev <= 1e-10, dev, "((1,1,1), 1, 1)");
    }
    bool too_deep = false;
    try {
        no_supremum_witness(m, fhat, n);
    } catch (const Error&) {
        too_deep = true;
    }
    out.add("depth_limit", kNoSupRef, "DERIVED", too_deep, too_deep ? 1.0 : 0.0,
            "depth N is beyond the truncation resolution");
    return {"no_supremum_extension", p.all(), out.facts};
}

CaseReport cesaro_shift_case(const Params& p) {
    const auto m_list = p.list("m_list");
    const auto h_max = static_cast<int>(p.count("h_max"));
    FactList out;
    double prev_c = -1.0;
    bool increasing = true;
    for (double md : m_list) {
        const int m = static_cast<int>(md);
        if (m < 2 || m > 4 || md != m) throw Error("m_list entries must lie in {2,3,4}");
        const auto spec = ShiftMultSpec::with_default_truncation(m);
        const auto block = shift_mult_block(spec);
        const std::string tagm = "m" + std::to_string(m);

        // closed-form symbol against brute-force powers on the prefix l + j <= n
        double sym_gap = 0.0;
        for (std::size_t j = 1; j <= 6; ++j) {
            const CMatrix tj = power(block, j).entries();
            const auto sym = symbol_power(spec, j);
            for (std::size_t l = 1; l + j <= spec.n; ++l)
                sym_gap = std::max(sym_gap, std::abs(tj(static_cast<Eigen::Index>(l + j - 1),
                                                        static_cast<Eigen::Index>(l - 1)) -
                                                     sym[l - 1]));
        }
        out.add("symbol_power_" + tagm, kShiftRef, "DERIVED", sym_gap <= 1e-12, sym_gap,
                "closed-form symbol equals brute-force powers, j <= 3!");

        double worst = 0.0;
        for (int h = 1; h <= h_max; ++h) {
            const auto j = static_cast<std::size_t>(factorial(h));
            const double closed = inf_norm(symbol_power(spec, j).entries());
            const double direct = op_norm(power(block, j));
            worst = std::max({worst, closed, direct});
        }
        out.add("power_norm_" + tagm, kShiftRef, "PAPER", worst <= 2.0 + 1e-12, worst, "||T_m^{h!}|| <= 2");

        double direct_sum = 0.0;
        for (int k = 0; k < static_cast<int>(factorial(m)); ++k) direct_sum += std::exp2(k / factorial(m - 1));
        direct_sum /= factorial(m + 1);
        const double c = cesaro_lower_bound(m);
        out.add("cesaro_bound_" + tagm, kShiftRef, "DERIVED", std::abs(c - direct_sum) <= 1e-10, c,
                "c(m) = direct summation " + fmt(direct_sum));

        const auto j = static_cast<std::size_t>(factorial(m + 1)) - 1;
        const CMatrix mean = cesaro_mean(block, j).entries();
        const double e1_norm = mean.col(0).cwiseAbs().sum();
        out.add("cesaro_mean_e1_" + tagm, kShiftRef, "PAPER", e1_norm >= c - 1e-12, e1_norm,
                ">= c(m) at j = (m+1)! - 1");
        increasing = increasing && c > prev_c;
        prev_c = c;
    }
    out.add("cesaro_bound_increasing", kShiftRef, "DERIVED", increasing, prev_c, "c(m) increasing over m_list");
    return {"cesaro_unbounded_shift", p.all(), out.facts};
}

CaseReport subgroup_case(const Params& p) {
    const int q = static_cast<int>(p.count("q"));
    const std::size_t n = p.count("N");
    const auto study = p.list("N_study");
    FactList out;
    for (int k = 1; k < q; ++k) {
        const auto e = subgroup_eigenvector(q, n, k);
        const std::string id = "lambda_" + std::to_string(k) + "/" + std::to_string(q);
        out.add(id + "_residual", kSubgroupRef, "DERIVED", e.residual <= 0.05, e.residual, "<= 0.05");
        out.add(id + "_c0_tail", kSubgroupRef, "DERIVED", e.tail <= 0.05, e.tail, "<= 0.05");
        out.add(id + "_g1_series", kSubgroupRef, "DERIVED", e.g1_series_gap <= e.g1_series_bound,
                e.g1_series_gap, "<= Dirichlet bound " + fmt(e.g1_series_bound));
        double worst_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s + 1 < study.size(); ++s) {
            const auto a = subgroup_eigenvector(q, static_cast<std::size_t>(study[s]), k);
            const auto b = subgroup_eigenvector(q, static_cast<std::size_t>(study[s + 1]), k);
            worst_ratio = std::min({worst_ratio, a.residual / b.residual, a.tail / b.tail});
        }
        if (study.size() > 1)
            out.add(id + "_rate", kSubgroupRef, "DERIVED", worst_ratio >= 1.8, worst_ratio,
                    ">= 1.8 per doubling of N");
    }
    const auto t = subgroup_operator(q, n);
    const auto fixed = linalg::null_space(shifted(t, 1.0));
    const CVector ones = CVector::Ones(t.entries().rows());
    const double one_res = inf_norm(CVector(t.entries() * ones - ones));
    out.add("lambda_1_kernel_dim", kSubgroupRef, "PAPER", fixed.cols() == 1 && one_res <= 1e-14,
            static_cast<double>(fixed.cols()), "ker(1 - T) spanned by (1_G, 1_N)");
    CVector v = fixed.col(0);
    v /= v(0);
    const double tail = v.tail(static_cast<Eigen::Index>(n / 2)).cwiseAbs().minCoeff();
    out.add("lambda_1_tail", kSubgroupRef, "PAPER", std::abs(tail - 1.0) <= 1e-8, tail,
            "tail = 1, not in c_0");
    return {"subgroup_minus_one", p.all(), out.facts};
}

CaseReport one_point_case(const Params& p, bool remark) {
    const std::size_t n = p.count("N");
    FactList out;
    const auto m = one_point_compactification(n, remark);
    const char* ref = remark ? kRemarkRef : kOnePointRef;
    out.add("markov", ref, "PAPER", is_markov(m.op.op), 1.0, "T positive, T1 = 1");

    const CVector g = one_point_eigenfunction(m);
    const double g_res = inf_norm(CVector(m.op.op.entries() * g - cplx(0, 1) * g));
    const double g_con = inf_norm(CVector(m.op.constraints * g));
    out.add("i_eigenfunction_residual", ref, "PAPER", g_res == 0.0 && g_con == 0.0, g_res,
            "T g = i g exactly, constraints hold");

    const auto ki = linalg::constrained_kernel(shifted(m.op.op, cplx(0, 1)), m.op.constraints);
    out.add("i_kernel_dim", ref, "PAPER", ki.basis.cols() == 1, static_cast<double>(ki.basis.cols()), "1");
    if (ki.basis.cols() == 1) {
        // g lies in the computed kernel
        const CVector b = ki.basis.col(0);
        const cplx coef = b.dot(g) / b.squaredNorm();
        const double gap = inf_norm(CVector(g - coef * b));
        out.add("i_kernel_contains_g", ref, "PAPER", gap <= 1e-10, gap, "g in ker(i - T)");
    }
    const auto km1 = linalg::constrained_kernel(shifted(m.op.op, -1.0), m.op.constraints);
    out.add("minus_one_kernel_dim", ref, "PAPER", km1.basis.cols() == 0, static_cast<double>(km1.basis.cols()),
            "0");
    out.add("minus_one_sigma_min", ref, "DERIVED", km1.constraint_sigma_min >= 0.1, km1.constraint_sigma_min,
            ">= 0.1");
    if (remark) {
        const auto k1 = linalg::constrained_kernel(shifted(m.op.op, 1.0), m.op.constraints);
        out.add("one_kernel_dim", ref, "PAPER", k1.basis.cols() == 0, static_cast<double>(k1.basis.cols()), "0");
        const auto kmi = linalg::constrained_kernel(shifted(m.op.op, cplx(0, -1)), m.op.constraints);
        out.add("minus_i_kernel_dim", ref, "PAPER", kmi.basis.cols() == 1, static_cast<double>(kmi.basis.cols()),
                "1");
    }
    const auto dims = dim_estimate_check(m.op, kBandTol, -6, 6);
    bool found = false;
    for (const auto& d : dims)
        if (!d.pass && std::abs(d.value - cplx(0, 1)) < 1e-9 && d.n == 2 && d.dim_theta == 1 && d.dim_n_theta == 0)
            found = true;
    out.add("dim_estimate_violation", ref, "PAPER", found, found ? 1.0 : 0.0,
            "dim ker(i - T) = 1 > dim ker(-1 - T) = 0 at theta = pi/2, n = 2");
    return {remark ? "one_point_remark" : "one_point_compactification", p.all(), out.facts};
}

CaseReport no_daec_case(const Params& p) {
    FactList out;
    const auto t = no_daec_example();
    const auto clusters = eigenvalue_clusters(t);
    bool spec_ok = clusters.size() == 2;
    for (const auto& c : clusters)
        spec_ok = spec_ok && (std::abs(c.value - 1.0) < 1e-6 || std::abs(c.value + 1.0) < 1e-6);
    out.add("spectrum", kNoDaecRef, "PAPER", spec_ok, static_cast<double>(clusters.size()), "{-1, 1}");

    auto spans = [&](const CMatrix& a, cplx lambda, const RVector& v) {
        const auto ker = linalg::null_space(shifted(OperatorMatrix(a, t.model()), lambda));
        if (ker.cols() != 1) return std::numeric_limits<double>::infinity();
        const CVector b = ker.col(0);
        const CVector w = v.cast<cplx>();
        const cplx coef = b.dot(w) / b.squaredNorm();
        return inf_norm(CVector(w - coef * b));
    };
    RVector v1(4), v2(4), w1(4), w2(4);
    v1 << 2, -2, -1, 0;
    v2 << 0, 0, 1, 0;
    w1 << 2, -2, 0, -1;
    w2 << 0, 0, 0, 1;
    const CMatrix tt = t.entries().transpose();
    const double e = std::max({spans(t.entries(), -1.0, v1), spans(t.entries(), 1.0, v2), spans(tt, -1.0, w1),
                               spans(tt, 1.0, w2)});
    out.add("eigenvectors", kNoDaecRef, "PAPER", e <= 1e-10, e,
            "ker(-1-T) = span(2,-2,-1,0), ker(1-T) = span e3, and likewise for T'");
    const auto d = daec_check(t, 1.0, std::numbers::pi);
    out.add("daec_fails_T", kNoDaecRef, "PAPER", d.verdict == DaecVerdict::Fails && d.provable,
            d.verdict == DaecVerdict::Fails ? 0.0 : 1.0, "fails (provable)");
    const auto da = daec_check_adjoint(t, 1.0, std::numbers::pi);
    out.add("daec_fails_T_adjoint", kNoDaecRef, "PAPER", da.verdict == DaecVerdict::Fails && da.provable,
            da.verdict == DaecVerdict::Fails ? 0.0 : 1.0, "fails (provable)");
    const double r = spectral_radius(t);
    out.add("spectral_radius", kNoDaecRef, "PAPER", std::abs(r - 1.0) <= 1e-8, r, "1");
    return {"no_daec_4x4", p.all(), out.facts};
}

CaseReport semigroup_case(const Params& p) {
    const auto m = p.count("M");
    const auto n = p.count("N");
    const double len = p.real("L");
    const double h = p.real("h");
    const auto interp = circle_interp_from_string(p.text("interp"));
    const auto t_list = p.list("t_list");
    const auto levels = p.list("levels");
    for (double t : t_list)
        if (t < 0.0 || t > len / 2) throw Error("t_list must lie in [0, L/2]");
    FactList out;
    const SemigroupGrid grid(m, n, len, interp);

    const CVector ident_probe = test_dictionary(grid)[1];
    const double id_gap = inf_norm(CVector(semigroup_apply(grid, 0.0, ident_probe) - ident_probe));
    out.add("t0_identity", kSemigroupRef, "TRIVIAL", id_gap == 0.0, id_gap, "T(0) = I exactly");

    double worst_row = 0.0, worst_neg = 0.0;
    for (double t : t_list) {
        const auto d = markov_defect(grid, t);
        worst_row = std::max(worst_row, d.row_sum);
        worst_neg = std::min(worst_neg, d.min_entry);
    }
    out.add("markov_fixes_one", kSemigroupRef, "PAPER", worst_row <= 0.02, worst_row, "|T(t)1 - 1| <= 0.02");
    out.add("positivity", kSemigroupRef, "TRIVIAL", worst_neg >= -1e-10, worst_neg, "weights >= -1e-10");

    const auto dict = test_dictionary(grid);
    const double single = semigroup_defect(grid, 0.3, 0.4, {dict[0]});
    out.add("semigroup_law_re_x", kSemigroupRef, "DERIVED", single <= 0.02, single,
            "||T(0.3)T(0.4)f - T(0.7)f|| <= 0.02");

    auto pair_grid = [&]() {
        std::vector<std::pair<double, double>> pairs;
        for (int a = 1; a <= 10; ++a)
            for (int b = 1; b <= 10; ++b) pairs.emplace_back(0.1 * a, 0.1 * b);
        return pairs;
    }();
    const CVector gi = sample(grid, [](cplx x) { return 1.0 / x; }, [](double) { return cplx(0.0); }, 0.0);
    const double res_i = generator_residual(grid, gi, cplx(0, 1), h);
    out.add("eigenfunction_i_residual", kSemigroupRef, "PAPER", res_i <= 0.05, res_i, "<= 0.05");

    std::vector<double> markov_levels, sg_levels, boundary_levels, res2i_levels;
    for (double lv : levels) {
        const SemigroupGrid g(static_cast<std::size_t>(lv), static_cast<std::size_t>(lv), len, interp);
        double row = 0.0;
        for (double t : t_list) row = std::max(row, markov_defect(g, t).row_sum);
        markov_levels.push_back(row);
        sg_levels.push_back(semigroup_defect_sup(g, pair_grid, test_dictionary(g)));
        const CVector h2 = sample(g, [](cplx x) { return 1.0 / (x * x); }, [](double) { return cplx(0.0); }, 0.0);
        boundary_levels.push_back(std::abs(mu_pairing(g, h2)));
        res2i_levels.push_back(generator_residual(g, h2, cplx(0, 2), h));
    }
    out.add("semigroup_law_sup", kSemigroupRef, "DERIVED", sg_levels.front() <= 0.02, sg_levels.front(),
            "max over (t,s) in {0.1..1}^2 <= 0.02 at the first level");
    auto min_ratio = [](const std::vector<double>& v) {
        double r = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < v.size(); ++i) r = std::min(r, v[i] / v[i + 1]);
        return r;
    };
    if (levels.size() > 1) {
        const double rm = min_ratio(markov_levels);
        out.add("markov_refinement", kSemigroupRef, "DERIVED", rm >= 1.6, rm, ">= 1.6 per doubling");
        const double rs = min_ratio(sg_levels);
        out.add("semigroup_refinement", kSemigroupRef, "DERIVED", rs >= 1.6, rs, ">= 1.6 per doubling");
    }
    const double bmin = *std::min_element(boundary_levels.begin(), boundary_levels.end());
    out.add("two_i_boundary_defect", kSemigroupRef, "DERIVED", bmin >= 0.3, bmin,
            "|<mu, h>| >= 0.3 at every level");
    const double rmin = *std::min_element(res2i_levels.begin(), res2i_levels.end());
    out.add("two_i_residual", kSemigroupRef, "DERIVED", rmin >= 0.3, rmin,
            "generator residual for x^{-2} stays >= 0.3");
    return {"markov_semigroup", p.all(), out.facts};
}

struct Registered {
    CaseInfo info;
    std::function<CaseReport(const Params&)> run;
};

const std::vector<Registered>& registry() {
    static const std::vector<Registered> reg = {
        {{"fixed_space_3x3", "suprema in the fixed space of a 3x3 Markov matrix", {{"tol", "1e-10"}}, true},
         fixed_space_case},
        {{"no_supremum_extension", "finite witness chain of ever smaller fixed upper bounds",
          {{"N", "16"}, {"depth", "3"}}, true},
         no_supremum_case},
        {{"cesaro_unbounded_shift", "shift-multiplication blocks with bounded power subsequence",
          {{"m_list", "2,3,4"}, {"h_max", "4"}}, true},
         cesaro_shift_case},
        {{"subgroup_minus_one", "peripheral point spectrum G \\ {1} on a c_0-type space",
          {{"q", "4"}, {"N", "256"}, {"N_study", "128,256,512"}}, true},
         subgroup_case},
        {{"one_point_compactification", "Markov operator with i but not -1 as eigenvalue", {{"N", "64"}}, true},
         [](const Params& p) { return one_point_case(p, false); }},
        {{"one_point_remark", "restriction to functions vanishing at infinity", {{"N", "64"}}, true},
         [](const Params& p) { return one_point_case(p, true); }},
        {{"no_daec_4x4", "-1 without dominated approximate eigenvectors", {}, true}, no_daec_case},
        {{"markov_semigroup", "Markov semigroup with i but not 2i in the boundary point spectrum",
          {{"M", "256"},
           {"N", "256"},
           {"L", "8"},
           {"h", "1e-3"},
           {"interp", "linear"},
           {"t_list", "0.1,0.3,0.7,1.5,4"},
           {"levels", "256,512,1024"}},
          true},
         semigroup_case},
        {{"power_bounded_c0", "power-bounded non-contractive c_0 operator (no explicit construction available)",
          {},
          false},
         nullptr},
    };
    return reg;
}

}  // namespace

OperatorMatrix fixed_space_example() {
    RMatrix t(3, 3);
    t << 1, 0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 1;
    return OperatorMatrix::real(t);
}

OperatorMatrix no_daec_example() {
    RMatrix t(4, 4);
    t << 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1;
    return OperatorMatrix::real(t);
}

OperatorMatrix swap_example() {
    RMatrix t(2, 2);
    t << 0, 1, 1, 0;
    return OperatorMatrix::real(t);
}

OnePointModel one_point_compactification(std::size_t n, bool vanish_at_infinity) {
    if (n < 2) throw Error("ray truncation N must be >= 2");
    const std::size_t dim = n + 6;
    OnePointModel m{ConstrainedOperator(OperatorMatrix::real(RMatrix::Identity(1, 1))), n};
    RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto at = [&](std::size_t r, std::size_t c) -> double& {
        return t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    };
    for (std::size_t j = 0; j < 4; ++j) at(j, (j + 3) % 4) = 1.0;
    at(m.ray(0), 1) = 0.5;
    at(m.ray(0), 3) = 0.5;
    for (std::size_t k = 1; k <= n; ++k) at(m.ray(k), m.ray(k - 1)) = 1.0;
    at(m.infinity(), m.infinity()) = 1.0;

    std::vector<std::string> labels = {"z0", "z1", "z2", "z3"};
    for (std::size_t k = 0; k <= n; ++k) labels.push_back("r" + std::to_string(k));
    labels.push_back("inf");

    CMatrix c = CMatrix::Zero(vanish_at_infinity ? 2 : 1, static_cast<Eigen::Index>(dim));
    c(0, static_cast<Eigen::Index>(m.ray(n))) = 1.0;
    c(0, static_cast<Eigen::Index>(m.infinity())) = -1.0;
    if (vanish_at_infinity) c(1, static_cast<Eigen::Index>(m.infinity())) = 1.0;
    m.op = ConstrainedOperator(OperatorMatrix(t.cast<cplx>(), SpaceModel(dim, NormTag::SupNorm, labels)), c);
    return m;
}

CVector one_point_eigenfunction(const OnePointModel& m) {
    CVector g = CVector::Zero(static_cast<Eigen::Index>(m.op.op.dimension()));
    const cplx vals[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
    for (Eigen::Index j = 0; j < 4; ++j) g(j) = vals[j];
    return g;
}

OperatorMatrix subgroup_operator(int q, std::size_t n) {
    if (q != 2 && q != 3 && q != 4 && q != 6) throw Error("subgroup order q must be one of 2, 3, 4, 6");
    if (n < 2) throw Error("sequence truncation N must be >= 2");
    const auto qi = static_cast<Eigen::Index>(q);
    const auto dim = qi + static_cast<Eigen::Index>(n);
    RMatrix t = RMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < qi; ++k) t(k, (k + 1) % qi) = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double nd = static_cast<double>(i);
        const Eigen::Index row = qi + static_cast<Eigen::Index>(i) - 1;
        const Eigen::Index next = i < n ? row + 1 : row;
        t(row, next) += nd / (nd + 1.0);
        t(row, 1) += 1.0 / (nd + 1.0);  // f(sigma_0), sigma_0 = 1
    }
    std::vector<std::string> labels;
    for (int k = 0; k < q; ++k) labels.push_back("f" + std::to_string(k));
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("g" + std::to_string(i));
    return OperatorMatrix(t.cast<cplx>(), SpaceModel(static_cast<std::size_t>(dim), NormTag::SupNorm, labels));
}

SubgroupEigen subgroup_eigenvector(int q, std::size_t n, int k) {
    const auto t = subgroup_operator(q, n);
    const cplx lambda = std::polar(1.0, kTwoPi * k / q);
    const cplx z = std::conj(lambda);
    const auto qi = static_cast<Eigen::Index>(q);
    CVector v(qi + static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < qi; ++j) v(j) = std::pow(lambda, static_cast<double>(j));
    const cplx f_sigma0 = v(1 % qi);

    // sum_{k>=2} z^k / (k(k-1)) = z + (1-z) log(1-z) on the closed disk minus {1}
    const bool at_one = std::abs(z - 1.0) < 1e-14;
    const cplx total = at_one ? cplx(1.0) : z + (1.0 - z) * std::log(1.0 - z);

    SubgroupEigen e;
    // g_n = n lambda^n f(sigma_0) sum_{k>n} z^k / (k(k-1))
    cplx partial = 0.0;
    cplx zk = z;  // z^1
    for (std::size_t i = 1; i <= n; ++i) {
        if (i >= 2) partial += zk / (static_cast<double>(i) * (static_cast<double>(i) - 1.0));
        const cplx tail = total - partial;
        v(qi + static_cast<Eigen::Index>(i) - 1) =
            static_cast<double>(i) * std::pow(lambda, static_cast<double>(i)) * f_sigma0 * tail;
        zk *= z;
    }
    // truncated series for g_1 at K = n^2 and its Dirichlet-test bound
    const std::size_t kmax = n * n;
    cplx trunc = 0.0, zp = z * z;
    for (std::size_t i = 2; i <= kmax; ++i) {
        trunc += zp / (static_cast<double>(i) * (static_cast<double>(i) - 1.0));
        zp *= z;
    }
    e.g1_series_gap = std::abs(total - trunc);
    const double kd = static_cast<double>(kmax);
    e.g1_series_bound = at_one ? 1.0 / kd : 2.0 / std::abs(1.0 - z) / (kd * (kd + 1.0)) + 1e-15;

    const double vn = v.cwiseAbs().maxCoeff();
    e.residual = (t.entries() * v - lambda * v).cwiseAbs().maxCoeff() / vn;
    e.tail = v.tail(static_cast<Eigen::Index>(n - n / 2)).cwiseAbs().maxCoeff() / vn;
    e.vector = std::move(v);
    return e;
}

bool CaseReport::passed() const {
    return std::all_of(facts.begin(), facts.end(), [](const Fact& f) { return f.pass; });
}

const std::vector<CaseInfo>& gallery_cases() {
    static const std::vector<CaseInfo> infos = [] {
        std::vector<CaseInfo> v;
        for (const auto& r : registry()) v.push_back(r.info);
        return v;
    }();
    return infos;
}

CaseReport run_case(const std::string& name, const CaseParams& overrides) {
    for (const auto& r : registry()) {
        if (r.info.name != name) continue;
        if (!r.info.implemented) throw Error("case " + name + " is registered but not implemented");
        return r.run(Params(r.info.defaults, overrides));
    }
    throw ParseError("unknown gallery case: " + name);
}

}  // namespace perronlab
