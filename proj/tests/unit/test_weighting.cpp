#include "doctest.h"
#include "helpers.hpp"

#include "perronlab/operator.hpp"
#include "perronlab/random.hpp"
#include "perronlab/weighting.hpp"

#include <cmath>

using namespace perronlab;
using test_util::max_abs_diff;
using test_util::rmat;

namespace {

OperatorMatrix swap2() { return OperatorMatrix::real(rmat({{0, 1}, {1, 0}})); }
OperatorMatrix jordan2() { return OperatorMatrix::real(rmat({{1, 1}, {0, 1}})); }

const std::vector<SchemeKind> kBuiltins = {SchemeKind::Powers, SchemeKind::AbelNet, SchemeKind::AbelPowers,
                                           SchemeKind::Cesaro, SchemeKind::Exponential};

}  // namespace

TEST_CASE("builtin coefficient formulas") {
    const auto abel = abel_stream(2.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < 60; ++k) {
        CHECK(abel(k) == doctest::Approx(std::ldexp(1.0, -static_cast<int>(k + 1))));
        sum += abel(k);
    }
    CHECK(sum == doctest::Approx(1.0));
    const auto ap = abel_power_stream(2.0, 2);
    for (std::size_t k = 0; k < 60; ++k)
        CHECK(ap(k) == doctest::Approx((k + 1.0) / std::ldexp(1.0, static_cast<int>(k + 2))));
    const auto c3 = cesaro_stream(3);
    CHECK(c3(0) == doctest::Approx(1.0 / 3));
    CHECK(c3(2) == doctest::Approx(1.0 / 3));
    CHECK(c3(3) == 0.0);
    CHECK(c3.finite_support());
    const auto e = exponential_stream(1.5);
    CHECK(e(3) == doctest::Approx(std::exp(-1.5) * 1.5 * 1.5 * 1.5 / 6));
    CHECK(delta_stream(4)(4) == 1.0);
    CHECK(delta_stream(4)(3) == 0.0);
}

TEST_CASE("abel_powers binomials stay finite far out") {
    const auto s = abel_power_stream(1.5, 40);
    for (std::size_t k = 0; k <= 500; ++k) {
        CHECK(std::isfinite(s(k)));
        CHECK(s(k) >= 0.0);
    }
}

TEST_CASE("WS1 and WS2 checks") {
    CHECK(check_ws1(exponential_stream(1.0)).verdict == Verdict::Pass);
    CHECK(check_ws1(finite_stream({0.5, 0.6})).verdict == Verdict::Fail);
    CHECK(check_ws2(finite_stream({0.6, 0.5, -0.1})).verdict == Verdict::Fail);
    CHECK(check_ws2(finite_stream({0.6, 0.4})).verdict == Verdict::Pass);
    CoeffStream no_tail;
    no_tail.coeff = [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k + 1)); };
    CHECK(check_ws1(no_tail).verdict == Verdict::Inconclusive);
}

TEST_CASE("every builtin stream and family passes the scheme checks") {
    for (auto kind : kBuiltins) {
        const auto fam = builtin_scheme(kind);
        for (std::size_t p = 0; p < 20; ++p) {
            CHECK(check_ws1(fam.stream(p)).verdict == Verdict::Pass);
            CHECK(check_ws2(fam.stream(p)).verdict == Verdict::Pass);
        }
        CHECK(check_ws3(fam).verdict == Verdict::Pass);
    }
}

TEST_CASE("WS3 rejects a constant family") {
    SchemeParams p;
    p.rows = std::vector<std::vector<double>>(20, std::vector<double>{1.0});
    const auto fam = builtin_scheme(SchemeKind::Custom, p);
    CHECK(check_ws3(fam).verdict == Verdict::Fail);
}

TEST_CASE("scheme parameter validation") {
    SchemeParams bad_net;
    bad_net.lambdas = {2.0, 3.0};
    CHECK_THROWS_AS(builtin_scheme(SchemeKind::AbelNet, bad_net), Error);
    SchemeParams bad_lambda;
    bad_lambda.lambda = 1.0;
    CHECK_THROWS_AS(builtin_scheme(SchemeKind::AbelPowers, bad_lambda), Error);
    SchemeParams bad_times;
    bad_times.times = {1.0, 0.5};
    CHECK_THROWS_AS(builtin_scheme(SchemeKind::Exponential, bad_times), Error);
    CHECK(scheme_kind_from_string("abel_net") == SchemeKind::AbelNet);
    CHECK_THROWS_AS(scheme_kind_from_string("borel"), ParseError);
}

TEST_CASE("convolution") {
    const auto d2 = convolve(delta_stream(1), delta_stream(1));
    CHECK(d2(2) == doctest::Approx(1.0));
    CHECK(d2(1) == 0.0);
    const auto same = convolve(abel_stream(2.0), delta_stream(0));
    const auto ap = convolve(abel_stream(2.0), abel_stream(2.0));
    for (std::size_t k = 0; k < 40; ++k) {
        CHECK(same(k) == doctest::Approx(abel_stream(2.0)(k)));
        CHECK(ap(k) == doctest::Approx((k + 1.0) / std::ldexp(1.0, static_cast<int>(k + 2))));
    }
    for (auto a : kBuiltins)
        for (auto b : kBuiltins) {
            const auto c = convolve(builtin_scheme(a).stream(2), builtin_scheme(b).stream(3));
            CHECK(check_ws1(c).verdict == Verdict::Pass);
            CHECK(check_ws2(c).verdict == Verdict::Pass);
        }
}

TEST_CASE("truncated functional calculus") {
    const auto id = OperatorMatrix::identity(SpaceModel(3, NormTag::SupNorm));
    CHECK(max_abs_diff(apply_weight(id, exponential_stream(2.0)).value.entries(), CMatrix::Identity(3, 3)) < 1e-10);
    CHECK(max_abs_diff(apply_weight(swap2(), cesaro_stream(2)).value.entries(), CMatrix::Constant(2, 2, 0.5)) < 1e-15);
    const auto w = apply_weight(jordan2(), abel_stream(2.0), 400);
    CHECK(max_abs_diff(w.value.entries(), rmat({{1, 1}, {0, 1}}).cast<cplx>()) < 1e-10);
    CHECK(w.tail.power_growth);
    CHECK_THROWS_AS(apply_weight(OperatorMatrix::real(rmat({{2}})), cesaro_stream(2)), Error);
}

TEST_CASE("Cesaro weights reproduce Cesaro means exactly") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto rng = sampling::trial_rng(31, k);
        const auto t = OperatorMatrix::real(sampling::stochastic_sample(rng, 6).t);
        for (std::size_t j : {1u, 7u, 50u}) {
            const auto w = apply_weight(t, cesaro_stream(j));
            CHECK(w.tail.exact);
            CHECK(max_abs_diff(w.value.entries(), cesaro_mean(t, j).entries()) < 1e-13);
        }
    }
}

TEST_CASE("Abel weights converge to the scaled resolvent") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto rng = sampling::trial_rng(37, k);
        const auto t = OperatorMatrix::real(sampling::stochastic_sample(rng, 6).t);
        const auto w = apply_weight(t, abel_stream(1.5), 200);
        const CMatrix want = 0.5 * resolvent(t, 1.5).entries();
        CHECK(max_abs_diff(w.value.entries(), want) <= 1e-8);
    }
}

TEST_CASE("boundedness probes") {
    auto rng = sampling::trial_rng(41, 0);
    const auto markov = OperatorMatrix::real(sampling::stochastic_sample(rng, 5).t);
    for (auto kind : kBuiltins) {
        const auto rep = ws_bounded_probe(markov, builtin_scheme(kind), 200, 30);
        CHECK(rep.max_norm == doctest::Approx(1.0));
        CHECK(rep.verdict == ProbeVerdict::BoundedEvidence);
    }
    const auto grow = ws_bounded_probe(jordan2(), builtin_scheme(SchemeKind::Cesaro), 200, 50);
    CHECK(grow.verdict == ProbeVerdict::GrowthEvidence);
    CHECK(grow.monotone_growth);
    for (const auto& r : grow.rows) CHECK(r.norm == doctest::Approx(1.0 + (r.index - 1.0) / 2.0));
    const auto pw = ws_bounded_probe(swap2(), builtin_scheme(SchemeKind::Powers), 200, 20);
    for (const auto& r : pw.rows) CHECK(r.norm == doctest::Approx(1.0));
    CHECK(pw.verdict == ProbeVerdict::BoundedEvidence);
}

TEST_CASE("Cesaro norms of Jordan blocks grow like j^(m-1)") {
    for (std::size_t m : {2u, 3u, 4u}) {
        RMatrix j = RMatrix::Identity(m, m);
        for (std::size_t i = 0; i + 1 < m; ++i) j(i, i + 1) = 1.0;
        const auto rep = ws_bounded_probe(OperatorMatrix::real(j), builtin_scheme(SchemeKind::Cesaro), 200, 50);
        CHECK(rep.verdict == ProbeVerdict::GrowthEvidence);
        for (const auto& r : rep.rows) {
            if (r.index < 10) continue;
            const double ratio = r.norm / std::pow(r.index, static_cast<double>(m - 1));
            const double first = rep.rows[9].norm / std::pow(rep.rows[9].index, static_cast<double>(m - 1));
            CHECK(ratio <= 2.0 * first);
            CHECK(ratio >= 0.5 * first);
        }
    }
}

TEST_CASE("growth share separates transients from growth") {
    std::vector<double> x, conv, lin;
    for (int j = 1; j <= 50; ++j) {
        x.push_back(j);
        conv.push_back(1.0 - 1.0 / j);
        lin.push_back(3.0 + 0.1 * j);
    }
    CHECK(std::abs(linear_growth_share(x, conv, 10, 50)) < 1e-10);
    CHECK(linear_growth_share(x, lin, 10, 50) == doctest::Approx(5.0 / 8.0));
    CHECK(std::isnan(linear_growth_share(x, lin, 60, 70)));
}

TEST_CASE("weighted scalar sums") {
    std::vector<double> r(201);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = static_cast<double>(k);
    const auto ces = weighted_scalar_sum(builtin_scheme(SchemeKind::Cesaro), r, 30);
    for (const auto& row : ces) CHECK(row.sum == doctest::Approx((row.index - 1.0) / 2.0));
    const auto ex = weighted_scalar_sum(builtin_scheme(SchemeKind::Exponential), r, 20);
    for (const auto& row : ex) CHECK(row.sum == doctest::Approx(row.index).epsilon(1e-9));
    const std::vector<double> ones(201, 1.0);
    for (auto kind : kBuiltins)
        for (const auto& row : weighted_scalar_sum(builtin_scheme(kind), ones, 20)) {
            // mass beyond the prefix must be flagged
            if (!row.tail_flag) CHECK(row.sum == doctest::Approx(1.0).epsilon(1e-9));
            if (row.sum < 1.0 - 1e-9) CHECK(row.tail_flag);
            CHECK(row.sum <= 1.0 + 1e-12);
        }
    CHECK_THROWS_AS(weighted_scalar_sum(builtin_scheme(SchemeKind::Cesaro), {2.0, 1.0}, 3), Error);
}

TEST_CASE("monotone orbits") {
    auto rng = sampling::trial_rng(43, 0);
    const auto markov = OperatorMatrix::real(sampling::stochastic_sample(rng, 5).t);
    const auto m = monotone_orbit_report(markov, LatticeVector::ones(markov.model()), 20);
    CHECK(m.monotone);
    CHECK(m.bounded);
    for (double v : m.norms) CHECK(v == doctest::Approx(1.0));
    const auto j = monotone_orbit_report(jordan2(), LatticeVector::real({0, 1}), 30);
    for (std::size_t n = 0; n < j.norms.size(); ++n) CHECK(j.norms[n] == doctest::Approx(std::max<double>(n, 1.0)));  // T^n (0,1) = (n,1)
    CHECK_FALSE(j.bounded);
    const auto s = monotone_orbit_report(swap2(), LatticeVector::real({1, 1}), 10);
    CHECK(s.bounded);
    CHECK_THROWS_WITH_AS(monotone_orbit_report(swap2(), LatticeVector::real({1, 0}), 10), "orbit not monotone", Error);
}
