#include "perronlab/verify.hpp"

#include "perronlab/fixed_space.hpp"
#include "perronlab/kernels.hpp"
#include "perronlab/lattice.hpp"
#include "perronlab/linalg.hpp"
#include "perronlab/lp.hpp"
#include "perronlab/operator.hpp"
#include "perronlab/random.hpp"
#include "perronlab/spectral.hpp"
#include "perronlab/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace perronlab {

namespace {

using sampling::Rng;

constexpr std::size_t kMaxReportedFailures = 10;

struct TrialOutcome {
    bool pass = true;
    std::string detail;
    std::map<std::string, double> counters;
};

using TrialFn = std::function<TrialOutcome(Rng&, std::size_t n)>;

SuiteSummary run_trials(const std::string& name, const SuiteOptions& opts, const TrialFn& fn) {
    std::vector<TrialOutcome> results(opts.trials);
    kernels::parallel_for(opts.trials, [&](std::size_t k) {
        Rng rng = sampling::trial_rng(opts.seed, k);
        try {
            results[k] = fn(rng, opts.n);
        } catch (const Error& e) {
            results[k] = {false, std::string("error: ") + e.what(), {}};
        }
    });
    SuiteSummary s;
    s.suite = name;
    s.trials = opts.trials;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const auto& r = results[k];
        if (r.pass)
            ++s.passed;
        else if (s.failures.size() < kMaxReportedFailures)
            s.failures.push_back("trial " + std::to_string(k) + ": " + r.detail);
        for (const auto& [key, v] : r.counters) s.counters[key] += v;
    }
    return s;
}

std::string describe(const std::string& family, const RMatrix& t) {
    std::ostringstream os;
    os << family << " n=" << t.rows();
    return os.str();
}

// ---------------------------------------------------------------------------

TrialOutcome perron_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::cyclicity_sample(rng, n_max);
    const auto t = OperatorMatrix::real(s.t);
    const double r = spectral_radius(t);
    const auto n = s.t.rows();
    RMatrix shifted = -s.t;
    shifted.diagonal().array() += r;
    const RMatrix basis = linalg::real_null_space(shifted);
    if (basis.cols() == 0) return {false, describe(s.family, s.t) + ": r(T) is not an eigenvalue", {}};
    // x = B c >= 0 with 1^T x = 1
    const auto d = basis.cols();
    RMatrix a(n + 2, d);
    RVector b(n + 2);
    a.topRows(n) = basis;
    b.head(n).setZero();
    a.row(n) = basis.colwise().sum();
    b(n) = 1.0;
    a.row(n + 1) = -basis.colwise().sum();
    b(n + 1) = -1.0;
    RVector c;
    if (!lp::feasible(a, b, &c, 1e-9)) return {false, describe(s.family, s.t) + ": no nonnegative eigenvector", {}};
    const RVector x = basis * c;
    const double res = (s.t * x - r * x).cwiseAbs().maxCoeff();
    if (x.minCoeff() < -1e-8 || res > 1e-8 * std::max(1.0, r))
        return {false, describe(s.family, s.t) + ": eigenvector check failed", {}};
    return {true, "", {}};
}

TrialOutcome cyclicity_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::cyclicity_sample(rng, n_max);
    const auto rep = spectral_report(OperatorMatrix::real(s.t));
    if (rep.cyclic.verdict == CyclicVerdict::Cyclic) return {true, "", {{s.family, 1.0}}};
    return {false, describe(s.family, s.t) + ": " + to_string(rep.cyclic.verdict) + " " + rep.cyclic.detail, {}};
}

TrialOutcome markov_dim_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::stochastic_sample(rng, n_max);
    const auto v = dim_estimate_check(OperatorMatrix::real(s.t), kBandTol, -6, 6);
    for (const auto& d : v)
        if (!d.pass) {
            std::ostringstream os;
            os << describe(s.family, s.t) << ": dim ker(e^{i theta} - T) = " << d.dim_theta << " > "
               << d.dim_n_theta << " at theta = " << d.theta << ", n = " << d.n;
            return {false, os.str(), {}};
        }
    return {true, "", {{"checks", static_cast<double>(v.size())}}};
}

TrialOutcome daec_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::cyclicity_sample(rng, n_max);
    const auto t = OperatorMatrix::real(s.t);
    const auto clusters = eigenvalue_clusters(t);
    double r = 0.0;
    for (const auto& c : clusters) r = std::max(r, std::abs(c.value));
    if (r <= 1e-10) return {true, "", {{"nilpotent", 1.0}}};
    TrialOutcome out;
    for (const auto& c : clusters) {
        if (std::abs(c.value) < r * (1.0 - 1e-8)) continue;
        const double theta = std::arg(c.value);
        const auto d = daec_check(t, r, theta);
        if (d.verdict == DaecVerdict::Holds) {
            out.counters["holds"] += 1.0;
            for (int k = -6; k <= 6; ++k) {
                const cplx target = std::polar(r, k * theta);
                double best = std::numeric_limits<double>::infinity();
                for (const auto& e : clusters) best = std::min(best, std::abs(e.value - target));
                if (best > 1e-8 * std::max(1.0, r)) {
                    std::ostringstream os;
                    os << describe(s.family, s.t) << ": DAEC holds at theta = " << theta << " but r e^{i "
                       << k << " theta} is " << best << " away from the spectrum";
                    return {false, os.str(), {}};
                }
            }
        } else if (d.verdict == DaecVerdict::Fails) {
            out.counters["fails"] += 1.0;
        } else {
            out.counters["inconclusive"] += 1.0;
        }
    }
    return out;
}

TrialOutcome fixed_space_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::stochastic_sample(rng, std::min<std::size_t>(n_max, 10));
    const auto h = make_fixed_space(OperatorMatrix::real(s.t));
    const auto d = h.basis.cols();
    const SpaceModel model(static_cast<std::size_t>(s.t.rows()), NormTag::SupNorm);
    auto random_fixed = [&]() {
        RVector c(d);
        for (Eigen::Index i = 0; i < d; ++i) c(i) = sampling::uniform(rng, -1.0, 1.0);
        return LatticeVector((h.basis * c).cast<cplx>(), model);
    };
    const std::vector<LatticeVector> g = {random_fixed(), random_fixed()};
    const auto sup = sup_in_fixed_space(h, g);
    const RVector v = sup.value.real_part();
    const std::string who = describe(s.family, s.t);
    constexpr double tol = 1e-8;
    if (!sup.monotone) return {false, who + ": monotonicity certificate broken", {}};
    if (fixed_residual(h, sup.value.entries()) > tol) return {false, who + ": sup_F is not fixed", {}};
    for (const auto& gi : g)
        if ((v - gi.real_part()).minCoeff() < -tol) return {false, who + ": sup_F does not dominate the inputs", {}};
    const RVector oracle = fixed_upper_bound_minimum(h, g);
    if ((v - oracle).cwiseAbs().maxCoeff() > 1e-7)
        return {false, who + ": sup_F differs from the LP least upper bound", {}};
    const auto again = sup_in_fixed_space(h, {sup.value});
    if ((again.value.real_part() - v).cwiseAbs().maxCoeff() > tol) return {false, who + ": not idempotent", {}};
    const auto mod = f_modulus(h, g[0]);
    const double gap = std::abs(mod.value.real_part().cwiseAbs().maxCoeff() - g[0].real_part().cwiseAbs().maxCoeff());
    if (gap > tol) return {false, who + ": modulus norm identity off by " + std::to_string(gap), {}};
    return {true, "", {{"iterations", static_cast<double>(sup.iterations)}}};
}

TrialOutcome ws_coeffs_trial(Rng& rng, std::size_t) {
    // builtin defaults plus randomized parameters
    std::vector<SchemeFamily> fams = {
        builtin_scheme(SchemeKind::Powers), builtin_scheme(SchemeKind::Cesaro), builtin_scheme(SchemeKind::AbelNet),
        builtin_scheme(SchemeKind::AbelPowers), builtin_scheme(SchemeKind::Exponential)};
    SchemeParams ap;
    ap.lambda = sampling::uniform(rng, 1.2, 4.0);
    fams.push_back(builtin_scheme(SchemeKind::AbelPowers, ap));
    SchemeParams ex;
    double t = 0.0;
    for (int i = 0; i < 20; ++i) ex.times.push_back(t += sampling::uniform(rng, 0.2, 1.5));
    fams.push_back(builtin_scheme(SchemeKind::Exponential, ex));
    SchemeParams an;
    double lam = sampling::uniform(rng, 1.5, 3.0);
    for (int i = 0; i < 20; ++i) an.lambdas.push_back(lam = 1.0 + (lam - 1.0) * sampling::uniform(rng, 0.5, 0.95));
    fams.push_back(builtin_scheme(SchemeKind::AbelNet, an));

    for (const auto& f : fams) {
        for (std::size_t p = 0; p < 20; ++p) {
            const auto st = f.stream(p);
            if (check_ws1(st).verdict != Verdict::Pass || check_ws2(st).verdict != Verdict::Pass)
                return {false, std::string(to_string(f.kind)) + " index " + std::to_string(p) + " fails WS1/WS2", {}};
        }
        // abel_powers column k peaks near j = k (lambda - 1); the prefix has to
        // reach past the peak before monotone decay is observable
        std::size_t prefix = 20;
        if (f.kind == SchemeKind::AbelPowers)
            prefix = std::max<std::size_t>(prefix, static_cast<std::size_t>(std::ceil(4.0 * 5.0 * (f.params.lambda - 1.0))) + 2);
        const auto w3 = check_ws3(f, 5, 1e-10, prefix);
        if (w3.verdict != Verdict::Pass)
            return {false, std::string(to_string(f.kind)) + " fails WS3 on prefix: " + w3.detail, {}};
    }
    for (std::size_t a = 0; a < fams.size(); ++a)
        for (std::size_t b = a; b < fams.size(); ++b) {
            const auto c = convolve(fams[a].stream(3), fams[b].stream(5));
            if (check_ws1(c).verdict != Verdict::Pass || check_ws2(c).verdict != Verdict::Pass)
                return {false, std::string("convolution ") + to_string(fams[a].kind) + " * " + to_string(fams[b].kind) +
                                   " fails WS1/WS2", {}};
        }
    return {true, "", {}};
}

TrialOutcome lattice_powers_trial(Rng& rng, std::size_t n_max) {
    const std::size_t n = sampling::uniform_size(rng, 1, std::max<std::size_t>(1, n_max));
    const LatticeVector f(sampling::complex_vector(rng, n), SpaceModel(n, NormTag::SupNorm));
    const int a = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
    const int b = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
    const CVector fa = lattice_power(f, a).entries();
    const CVector fb = lattice_power(f, b).entries();
    const CVector fab = lattice_power(f, a + b).entries();
    const RVector mod = f.entries().cwiseAbs();
    if ((fa.cwiseAbs() - mod).cwiseAbs().maxCoeff() > 1e-12) return {false, "modulus not preserved", {}};
    for (Eigen::Index i = 0; i < f.entries().size(); ++i) {
        if (mod(i) == 0.0) {
            if (fab(i) != cplx(0.0)) return {false, "zero set not preserved", {}};
            continue;
        }
        if (std::abs(fa(i) * fb(i) / mod(i) - fab(i)) > 1e-12) return {false, "exponents not additive", {}};
    }
    // independence of lattice powers of an independent family, dim <= 6, |G| <= 4
    const std::size_t dim = sampling::uniform_size(rng, 1, 6);
    const std::size_t count = sampling::uniform_size(rng, 1, std::min<std::size_t>(4, dim));
    const auto fam = sampling::independent_family(rng, dim, count);
    const int e = static_cast<int>(sampling::uniform_size(rng, 0, 12)) - 6;
    if (!independence_preserved(fam, e)) return {false, "independence lost at n = " + std::to_string(e), {}};
    // lattice homomorphisms: T z = e^{i theta} z  =>  T |z| = |z|
    const std::size_t pn = sampling::uniform_size(rng, 1, std::max<std::size_t>(1, n_max));
    const auto p = OperatorMatrix::real(sampling::permutation(rng, pn));
    for (const auto& pair : eigen(p))
        for (const auto& z : pair.basis) {
            const CVector m = z.entries().cwiseAbs().cast<cplx>();
            if ((p.entries() * m - m).cwiseAbs().maxCoeff() > 1e-10) return {false, "T|z| != |z|", {}};
        }
    return {true, "", {}};
}

TrialOutcome pole_order_trial(Rng& rng, std::size_t n_max) {
    const auto s = sampling::pole_sample(rng, n_max);
    const auto t = OperatorMatrix::real(s.t);
    const std::size_t pole = pole_order_at(t, 1.0);
    const auto probe = ws_bounded_probe(t, builtin_scheme(SchemeKind::Cesaro), 200, 50);
    const bool bounded = probe.verdict == ProbeVerdict::BoundedEvidence;
    if (bounded != (pole == 1)) {
        std::ostringstream os;
        os << describe(s.family, s.t) << ": pole order " << pole << " but probe says " << to_string(probe.verdict)
           << " (slope " << probe.growth_exponent << ")";
        return {false, os.str(), {}};
    }
    // planted Jordan block J_m(1): Cesaro norms grow like j^{m-1}
    const std::size_t m = sampling::uniform_size(rng, 2, 3);
    const auto planted = OperatorMatrix::real(sampling::planted_jordan(rng, m, sampling::uniform_size(rng, 0, 3)));
    const auto jp = ws_bounded_probe(planted, builtin_scheme(SchemeKind::Cesaro), 200, 50);
    const double want = static_cast<double>(m - 1);
    if (std::abs(jp.growth_exponent - want) > 0.2) {
        std::ostringstream os;
        os << "planted J_" << m << "(1): growth exponent " << jp.growth_exponent << ", expected " << want;
        return {false, os.str(), {}};
    }
    return {true, "", {{"pole_" + std::to_string(pole), 1.0}, {"jordan_" + std::to_string(m), 1.0}}};
}

struct SuiteEntry {
    std::string name;
    TrialFn fn;
};

const std::vector<SuiteEntry>& suites() {
    static const std::vector<SuiteEntry> s = {
        {"perron", perron_trial},
        {"cyclicity", cyclicity_trial},
        {"markov-dim", markov_dim_trial},
        {"daec-implies-cyclic", daec_trial},
        {"fixed-space", fixed_space_trial},
        {"ws-coeffs", ws_coeffs_trial},
        {"lattice-powers", lattice_powers_trial},
        {"pole-order", pole_order_trial},
    };
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : suites()) v.push_back(s.name);
        return v;
    }();
    return names;
}

SuiteSummary run_suite(const std::string& name, const SuiteOptions& opts) {
    if (opts.n == 0) throw ParseError("--n must be positive");
    for (const auto& s : suites())
        if (s.name == name) return run_trials(name, opts, s.fn);
    throw ParseError("unknown suite: " + name);
}

}  // namespace perronlab
