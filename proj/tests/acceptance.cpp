// One line per acceptance criterion; exit status 1 if any criterion fails.

#include "perronlab/fixed_space.hpp"
#include "perronlab/gallery.hpp"
#include "perronlab/lattice.hpp"
#include "perronlab/linalg.hpp"
#include "perronlab/operator.hpp"
#include "perronlab/random.hpp"
#include "perronlab/semigroup.hpp"
#include "perronlab/spectral.hpp"
#include "perronlab/verify.hpp"
#include "perronlab/weighting.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

using namespace perronlab;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[FAILED " << what << "] ";
        }
    }
};

RMatrix rmat(std::initializer_list<std::initializer_list<double>> rows) {
    RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

bool parallel(const CVector& a, const CVector& b, double tol = 1e-10) {
    // |<a,b>| = ||a|| ||b|| iff a and b are parallel
    return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) <= tol * a.norm() * b.norm();
}

bool case_passes(const CaseReport& rep, Outcome& o) {
    for (const auto& f : rep.facts) o.require(f.pass, rep.name + "/" + f.id);
    return rep.passed();
}

void suite(const std::string& name, std::size_t trials, Outcome& o) {
    const auto s = run_suite(name, {trials, 42, 8});
    o.detail << name << " " << s.passed << "/" << s.trials << "; ";
    o.require(s.ok(), name + (s.failures.empty() ? "" : ": " + s.failures.front()));
}

Outcome criterion_1() {
    Outcome o;
    case_passes(run_case("fixed_space_3x3"), o);
    const auto h = make_fixed_space(fixed_space_example());
    o.require(h.basis.cols() == 2, "dim F = 2");
    for (const CVector& v : {CVector(CVector::Ones(3)), CVector((CVector(3) << 1.0, 0.0, -1.0).finished())})
        o.require(fixed_residual(h, v) <= 1e-12, "spanning vector fixed");
    const auto f = LatticeVector::real({1, 0, -1});
    const auto s = sup_in_fixed_space(h, {f, LatticeVector::real({-1, 0, 1})});
    const double err = (s.value.real_part() - RVector::Ones(3)).cwiseAbs().maxCoeff();
    o.require(err <= 1e-10, "sup = (1,1,1)");
    const auto sub = is_fixed_space_sublattice(h);
    o.require(!sub.is_sublattice, "not a sublattice");
    o.require(sub.witness && parallel(sub.witness->entries(), f.entries()), "witness (1,0,-1)");
    o.detail << "sup error " << err;
    return o;
}

Outcome criterion_2() {
    Outcome o;
    double worst_symbol = 0.0, worst_norm = 0.0;
    for (int m : {2, 3}) {
        const auto spec = ShiftMultSpec::with_default_truncation(m);
        const auto t = shift_mult_block(spec);
        for (std::size_t j = 0; j <= 6; ++j) {
            const CMatrix p = power(t, j).entries();
            const CVector sym = symbol_power(spec, j).entries();
            for (std::size_t l = 0; l + j < spec.n; ++l)
                worst_symbol = std::max(worst_symbol, std::abs(p(static_cast<Eigen::Index>(l + j),
                                                                 static_cast<Eigen::Index>(l)) -
                                                               sym(static_cast<Eigen::Index>(l))));
        }
    }
    o.require(worst_symbol <= 1e-12, "symbol vs brute force");
    for (int m : {2, 3, 4}) {
        const auto t = shift_mult_block(ShiftMultSpec::with_default_truncation(m));
        for (int h = 1; h <= 4; ++h)
            worst_norm = std::max(worst_norm, op_norm(power(t, static_cast<std::size_t>(factorial(h)))));
    }
    o.require(worst_norm <= 2.0 + 1e-12, "||T^{h!}|| <= 2");
    auto direct = [](int m) {
        double s = 0.0;
        for (int k = 0; k < static_cast<int>(factorial(m)); ++k) s += std::pow(2.0, k / factorial(m - 1));
        return s / factorial(m + 1);
    };
    const double c2 = cesaro_lower_bound(2), c3 = cesaro_lower_bound(3);
    o.require(std::abs(c2 - 0.5) <= 1e-10 && std::abs(c2 - direct(2)) <= 1e-10, "c(2) = 0.5");
    o.require(std::abs(c3 - direct(3)) <= 1e-10, "c(3) matches direct summation");
    o.require(c2 < c3, "c increasing");
    o.detail << "symbol error " << worst_symbol << ", max norm " << worst_norm << ", c(2) " << c2 << ", c(3) " << c3;
    return o;
}

Outcome criterion_3() {
    Outcome o;
    suite("pole-order", 500, o);
    return o;
}

Outcome criterion_4() {
    Outcome o;
    suite("cyclicity", 1000, o);
    return o;
}

Outcome criterion_5() {
    Outcome o;
    suite("markov-dim", 1000, o);
    const auto m = one_point_compactification(64, true);
    const auto v = dim_estimate_check(m.op, kBandTol, -6, 6);
    bool violation = false;
    for (const auto& d : v)
        violation = violation || (!d.pass && std::abs(d.value - I) <= 1e-8 && d.n == 2 && d.dim_theta >= 1 &&
                                  d.dim_n_theta == 0);
    o.require(violation, "remark operator violates at i with dim ker(-1 - T) = 0");
    o.detail << "remark violation " << (violation ? "registered" : "missing");
    return o;
}

Outcome criterion_6() {
    Outcome o;
    case_passes(run_case("one_point_compactification", {{"N", "64"}}), o);
    const auto m = one_point_compactification(64);
    const CMatrix t = m.op.op.entries();
    const auto n = t.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    const auto ki = linalg::constrained_kernel(I * id - t, m.op.constraints);
    o.require(ki.basis.cols() == 1, "dim ker(i - T) = 1");
    const CVector g = one_point_eigenfunction(m);
    const CVector r = t * g - I * g;
    o.require(r.head(4).cwiseAbs().maxCoeff() == 0.0, "exact residual on Z_4");
    if (ki.basis.cols() == 1) o.require(parallel(ki.basis.col(0), g, 1e-8), "kernel contains g");
    const auto km = linalg::constrained_kernel(-id - t, m.op.constraints);
    o.require(km.basis.cols() == 0, "ker(-1 - T) = {0}");
    o.require(km.constraint_sigma_min >= 0.1, "sigma_min >= 0.1");
    o.detail << "sigma_min " << km.constraint_sigma_min;
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const auto t4 = no_daec_example();
    const auto a = daec_check(t4, 1.0, pi), b = daec_check_adjoint(t4, 1.0, pi);
    o.require(a.verdict == DaecVerdict::Fails && a.provable, "fails for T");
    o.require(b.verdict == DaecVerdict::Fails && b.provable, "fails for T^T");
    const auto s = daec_check(swap_example(), 1.0, pi);
    o.require(s.verdict == DaecVerdict::Holds, "holds on swap");
    o.require(s.z && parallel(s.z->entries(), (CVector(2) << 1.0, -1.0).finished()), "z ~ (1,-1)");
    o.require(s.x && parallel(s.x->entries(), (CVector(2) << 1.0, 1.0).finished()), "x ~ (1,1)");
    suite("daec-implies-cyclic", 1000, o);
    return o;
}

Outcome criterion_8() {
    Outcome o;
    std::vector<double> sched;
    for (int k = 1; k <= 20; ++k) sched.push_back(1.0 + std::ldexp(1.0, -k));
    double worst = 0.0;
    for (const auto& [r, q] : resolvent_growth_ratio(swap_example(), pi, sched).samples)
        worst = std::max(worst, std::abs(q - 1.0));
    o.require(worst <= 1e-10, "swap ratio 1 +- 1e-10");
    const auto d = OperatorMatrix::real(rmat({{1, 0}, {0, 0.5}}));
    const auto rd = resolvent_growth_ratio(d, pi, sched);
    o.require(rd.limsup_estimate <= 0.01, "diag limsup <= 0.01");
    bool minus_one = false;
    for (const auto& p : eigen(d)) minus_one = minus_one || std::abs(p.value + 1.0) <= 1e-8;
    o.require(!minus_one, "-1 not in spectrum");
    o.detail << "swap deviation " << worst << ", diag limsup " << rd.limsup_estimate;
    return o;
}

Outcome criterion_9() {
    Outcome o;
    case_passes(run_case("subgroup_minus_one"), o);
    double min_ratio = 1e300;
    for (int k = 1; k <= 3; ++k) {
        const auto e128 = subgroup_eigenvector(4, 128, k), e256 = subgroup_eigenvector(4, 256, k),
                   e512 = subgroup_eigenvector(4, 512, k);
        for (double ratio : {e128.residual / e256.residual, e256.residual / e512.residual, e128.tail / e256.tail,
                             e256.tail / e512.tail})
            min_ratio = std::min(min_ratio, ratio);
    }
    o.require(min_ratio >= 1.8, "C/N decay ratio >= 1.8");
    // lambda = 1: the constant vector, tail 1
    const auto one = subgroup_eigenvector(4, 256, 0);
    o.require(std::abs(one.tail - 1.0) <= 1e-9, "unit tail at lambda = 1");
    o.detail << "min decay ratio " << min_ratio << ", lambda=1 tail " << one.tail;
    return o;
}

Outcome criterion_10() {
    Outcome o;
    std::vector<std::pair<double, double>> pairs;
    for (int a = 1; a <= 10; ++a)
        for (int b = 1; b <= 10; ++b) pairs.emplace_back(0.1 * a, 0.1 * b);
    std::vector<double> markov, law, two_i;
    for (std::size_t m : {256u, 512u, 1024u}) {
        const SemigroupGrid g(m, m, 8.0);
        double md = 0.0;
        for (double t : {0.1, 0.3, 0.7, 1.5, 4.0}) md = std::max(md, markov_defect(g, t).row_sum);
        markov.push_back(md);
        law.push_back(semigroup_defect_sup(g, pairs, test_dictionary(g)));
        const CVector h = sample(g, [](cplx x) { return 1.0 / (x * x); }, [](double) { return cplx(0.0); }, 0.0);
        // boundary relation h'(0) = h(0) - <mu, h|_T> fails by |<mu, h>| for h vanishing on the ray
        two_i.push_back(std::abs(mu_pairing(g, h)));
        if (m == 256) {
            const CVector gi =
                sample(g, [](cplx x) { return 1.0 / x; }, [](double) { return cplx(0.0); }, 0.0);
            const double res = generator_residual(g, gi, I, 1e-3);
            o.require(res <= 0.05, "eigenfunction residual at i");
            o.detail << "i residual " << res << ", ";
        }
    }
    o.require(markov[0] <= 0.02 && law[0] <= 0.02, "defects <= 0.02 at 256");
    for (std::size_t k = 1; k < markov.size(); ++k) {
        o.require(markov[k - 1] / markov[k] >= 1.6, "Markov defect refinement");
        o.require(law[k - 1] / law[k] >= 1.6, "semigroup defect refinement");
    }
    for (double d : two_i) o.require(d >= 0.3, "2i boundary defect");
    o.detail << "markov " << markov[0] << "/" << markov[1] << "/" << markov[2] << ", law " << law[0] << "/" << law[1]
             << "/" << law[2] << ", 2i defect " << two_i.back();
    return o;
}

Outcome criterion_11() {
    Outcome o;
    double worst_mod = 0.0, worst_add = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        auto rng = sampling::trial_rng(42, k);
        const std::size_t n = sampling::uniform_size(rng, 1, 8);
        const LatticeVector f(sampling::complex_vector(rng, n), SpaceModel(n, NormTag::SupNorm));
        const int a = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
        const int b = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
        const CVector fa = lattice_power(f, a).entries(), fb = lattice_power(f, b).entries(),
                      fab = lattice_power(f, a + b).entries();
        worst_mod = std::max(worst_mod, (fa.cwiseAbs() - f.entries().cwiseAbs()).cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < f.entries().size(); ++i) {
            const double m = std::abs(f.entries()(i));
            if (m > 0.0) worst_add = std::max(worst_add, std::abs(fa(i) * fb(i) / m - fab(i)));
        }
    }
    o.require(worst_mod <= 1e-12, "modulus preserved");
    o.require(worst_add <= 1e-12, "exponent additivity");
    std::size_t preserved = 0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        auto rng = sampling::trial_rng(4242, k);
        const std::size_t n = sampling::uniform_size(rng, 1, 6);
        const std::size_t count = sampling::uniform_size(rng, 1, std::min<std::size_t>(4, n));
        const int p = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
        if (independence_preserved(sampling::independent_family(rng, n, count), p == 0 ? 1 : p)) ++preserved;
    }
    o.require(preserved == 500, "independence preserved on 500 families");
    o.detail << "modulus " << worst_mod << ", additivity " << worst_add << ", independence " << preserved << "/500";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"fixed-space construction", criterion_1},
        {"shift-multiplication example", criterion_2},
        {"pole-order equivalence", criterion_3},
        {"cyclicity suite", criterion_4},
        {"Markov dimension estimates", criterion_5},
        {"one-point compactification", criterion_6},
        {"dominated approximate eigenvectors", criterion_7},
        {"resolvent ratio", criterion_8},
        {"subgroup counterexample", criterion_9},
        {"Markov semigroup", criterion_10},
        {"lattice powers and independence", criterion_11},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
                  << "): " << o.detail.str() << " [" << secs << " s]" << std::endl;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size()
              << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
