#include "doctest.h"
#include "helpers.hpp"

#include "perronlab/semigroup.hpp"

#include <cmath>
#include <numbers>

using namespace perronlab;

namespace {

const cplx I{0.0, 1.0};

CVector inverse_on_circle(const SemigroupGrid& g) {
    return sample(g, [](cplx x) { return 1.0 / x; }, [](double) { return cplx(0.0); }, 0.0);
}

}  // namespace

TEST_CASE("grid layout") {
    const SemigroupGrid g(8, 4, 2.0);
    CHECK(g.size() == 14);
    CHECK(g.ray_offset() == 8);
    CHECK(g.infinity_index() == 13);
    CHECK(g.angle(2) == doctest::Approx(std::numbers::pi / 2));
    CHECK(g.ray_point(4) == doctest::Approx(2.0));
    CHECK_THROWS_AS(SemigroupGrid(6, 4), Error);
    CHECK_THROWS_AS(SemigroupGrid(8, 0), Error);
    CHECK_THROWS_AS(SemigroupGrid(8, 4, 0.0), Error);
    CHECK(circle_interp_from_string("trig") == CircleInterp::Trigonometric);
    CHECK_THROWS_AS(circle_interp_from_string("cubic"), ParseError);
}

TEST_CASE("time zero is the identity and constants are fixed") {
    const SemigroupGrid g(64, 64, 8.0);
    const RMatrix t0 = semigroup_matrix(g, 0.0);
    CHECK((t0 - RMatrix::Identity(g.size(), g.size())).cwiseAbs().maxCoeff() == 0.0);
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        const auto d = markov_defect(g, t);
        CHECK(d.row_sum <= 0.02);
        CHECK(d.min_entry >= -1e-10);
    }
    CHECK_THROWS_AS(semigroup_rows(g, -0.1), Error);
    CHECK_THROWS_AS(semigroup_rows(g, 8.5), Error);
}

TEST_CASE("positivity: nonnegative functions stay nonnegative") {
    const SemigroupGrid g(64, 64, 8.0);
    const CVector f = sample(
        g, [](cplx x) { return cplx(1.0 + x.real()); }, [](double x) { return cplx(std::exp(-x)); }, 0.0);
    for (double t : {0.2, 0.9, 2.5}) CHECK(semigroup_apply(g, t, f).real().minCoeff() >= -1e-10);
}

TEST_CASE("semigroup law on the dictionary") {
    const SemigroupGrid g(256, 256, 8.0);
    const auto dict = test_dictionary(g);
    CHECK(semigroup_defect(g, 0.3, 0.4, {dict[0]}) <= 0.02);
    CHECK(semigroup_defect(g, 0.3, 0.4, dict) <= 0.02);
    // mu samples exactly +-i
    const CVector h = inverse_on_circle(g);
    CHECK(std::abs(mu_pairing(g, h)) < 1e-12);
    const CVector sq = sample(g, [](cplx x) { return 1.0 / (x * x); }, [](double) { return cplx(0.0); }, 0.0);
    CHECK(std::abs(mu_pairing(g, sq) + 1.0) < 1e-12);
}

TEST_CASE("generator residuals") {
    const SemigroupGrid g(256, 256, 8.0);
    CHECK(generator_residual(g, inverse_on_circle(g), I, 1e-3) <= 0.05);
    const CVector sq = sample(g, [](cplx x) { return 1.0 / (x * x); }, [](double) { return cplx(0.0); }, 0.0);
    CHECK(generator_residual(g, sq, 2.0 * I, 1e-3) >= 0.3);
    CHECK_THROWS_AS(generator_residual(g, sq, I, 0.0), Error);
}

TEST_CASE("defects shrink under refinement") {
    std::vector<std::pair<double, double>> pairs;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) pairs.emplace_back(0.25 * a, 0.25 * b);
    double prev_markov = 0.0, prev_sg = 0.0;
    for (std::size_t m : {128u, 256u}) {
        const SemigroupGrid g(m, m, 8.0);
        const double md = markov_defect(g, 1.0).row_sum;
        const double sd = semigroup_defect_sup(g, pairs, test_dictionary(g));
        if (prev_markov > 0.0) {
            CHECK(prev_markov / md >= 1.6);
            CHECK(prev_sg / sd >= 1.6);
        }
        prev_markov = md;
        prev_sg = sd;
    }
}

TEST_CASE("trigonometric interpolation reproduces band-limited circle data") {
    const SemigroupGrid g(32, 16, 4.0, CircleInterp::Trigonometric);
    const CVector f = sample(g, [](cplx x) { return x * x; }, [](double) { return cplx(0.0); }, 0.0);
    // on the circle T(t) is a rotation: (T(t) f)(x) = f(e^{-it} x)
    const CVector r = semigroup_apply(g, 0.3, f);
    for (std::size_t k = 0; k < g.m; ++k) {
        const cplx x = std::polar(1.0, g.angle(k) - 0.3);
        CHECK(std::abs(r(static_cast<Eigen::Index>(k)) - x * x) < 1e-10);
    }
}
