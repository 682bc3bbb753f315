#include "doctest.h"
#include "helpers.hpp"

#include "perronlab/kernels.hpp"
#include "perronlab/linalg.hpp"
#include "perronlab/lp.hpp"
#include "perronlab/random.hpp"

#include <atomic>

using namespace perronlab;
using test_util::max_abs_diff;
using test_util::rmat;

TEST_CASE("numerical rank and null spaces") {
    const CMatrix a = rmat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}).cast<cplx>();
    CHECK(linalg::numerical_rank(a) == 2);
    CHECK(linalg::nullity(a) == 1);
    const CMatrix ns = linalg::null_space(a);
    REQUIRE(ns.cols() == 1);
    CHECK((a * ns).norm() < 1e-12);
    CHECK(linalg::numerical_rank(CMatrix::Zero(3, 3)) == 0);
    CHECK(linalg::null_space(CMatrix::Identity(4, 4)).cols() == 0);
    const RMatrix r = linalg::real_null_space(rmat({{1, -1, 0}, {0, 1, -1}}));
    REQUIRE(r.cols() == 1);
    CHECK(std::abs(r(0, 0) - r(1, 0)) < 1e-12);
    CHECK(std::abs(r(1, 0) - r(2, 0)) < 1e-12);
}

TEST_CASE("rank threshold scales with dimension and largest singular value") {
    CHECK(linalg::rank_threshold(10, 2.0) == doctest::Approx(10 * std::numeric_limits<double>::epsilon() * 2.0 * 1e3));
    // a perturbation far below the threshold does not raise the rank
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-15;
    CHECK(linalg::numerical_rank(a) == 1);
}

TEST_CASE("constrained kernels") {
    // ker a = span{e1, e2}; the constraint x1 - x2 = 0 leaves span{(1,1,0)}
    CMatrix a = CMatrix::Zero(1, 3);
    a(0, 2) = 1.0;
    CMatrix c = CMatrix::Zero(1, 3);
    c(0, 0) = 1.0;
    c(0, 1) = -1.0;
    const auto k = linalg::constrained_kernel(a, c);
    CHECK(k.unconstrained_dim == 2);
    REQUIRE(k.basis.cols() == 1);
    CHECK(std::abs(k.basis(0, 0) - k.basis(1, 0)) < 1e-12);
    CHECK(std::abs(k.basis(2, 0)) < 1e-12);
    const auto none = linalg::constrained_kernel(a, CMatrix::Zero(0, 3));
    CHECK(none.basis.cols() == 2);
    CHECK(std::isinf(none.constraint_sigma_min));
}

TEST_CASE("linear programs") {
    // min x + y s.t. x >= 1, y >= 2, x + y >= 4
    const RMatrix a = rmat({{1, 0}, {0, 1}, {1, 1}});
    RVector b(3);
    b << 1, 2, 4;
    RVector c(2);
    c << 1, 1;
    const auto r = lp::minimize(c, a, b);
    REQUIRE(r.status == lp::Status::Optimal);
    CHECK(r.objective == doctest::Approx(4.0));
    CHECK((a * r.x - b).minCoeff() >= -1e-10);
    // free variables may go negative
    RVector c2(2);
    c2 << -1, 0;
    const RMatrix a2 = rmat({{-1, 0}, {0, 1}});
    RVector b2(2);
    b2 << 3, -5;  // x <= -3, y >= -5
    const auto r2 = lp::minimize(c2, a2, b2);
    REQUIRE(r2.status == lp::Status::Optimal);
    CHECK(r2.x(0) == doctest::Approx(-3.0));
    // unbounded and infeasible
    CHECK(lp::minimize(c, rmat({{1, 0}}), RVector::Constant(1, 0.0)).status == lp::Status::Unbounded);
    RVector b3(2);
    b3 << 1, 0;
    CHECK_FALSE(lp::feasible(rmat({{1}, {-1}}), b3));  // x >= 1 and x <= 0
    CHECK_THROWS_AS(lp::minimize(c, a, RVector::Zero(2)), Error);
}

TEST_CASE("linear programs agree with brute-force vertex enumeration on random boxes") {
    for (std::uint64_t k = 0; k < 50; ++k) {
        auto rng = sampling::trial_rng(17, k);
        // box lo <= x <= hi in R^2 plus one random cut; vertices checked by enumeration
        RVector lo(2), hi(2);
        for (int i = 0; i < 2; ++i) {
            lo(i) = sampling::uniform(rng, -2, 0);
            hi(i) = sampling::uniform(rng, 0.5, 2);
        }
        RMatrix a(4, 2);
        a << 1, 0, 0, 1, -1, 0, 0, -1;
        RVector b(4);
        b << lo(0), lo(1), -hi(0), -hi(1);
        RVector c(2);
        c << sampling::uniform(rng, -1, 1), sampling::uniform(rng, -1, 1);
        const auto r = lp::minimize(c, a, b);
        REQUIRE(r.status == lp::Status::Optimal);
        double best = std::numeric_limits<double>::infinity();
        for (double x : {lo(0), hi(0)})
            for (double y : {lo(1), hi(1)}) best = std::min(best, c(0) * x + c(1) * y);
        CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("serial and OpenMP kernels agree") {
    for (std::uint64_t k = 0; k < 6; ++k) {
        auto rng = sampling::trial_rng(23, k);
        const std::size_t n = sampling::uniform_size(rng, 1, 70);
        const CMatrix a = sampling::nonnegative(rng, n).cast<cplx>() / static_cast<double>(n);
        const CMatrix b = sampling::nonnegative(rng, n).cast<cplx>();
        const double scale = 1.0 + b.cwiseAbs().maxCoeff();
        CHECK(max_abs_diff(kernels::serial::matmul(a, b), kernels::omp::matmul(a, b)) <= 1e-12 * scale * n);
        CHECK(max_abs_diff(kernels::serial::matmul(a, b), a * b) <= 1e-12 * scale * n);
        for (std::size_t p : {0u, 1u, 5u, 16u}) {
            CHECK(max_abs_diff(kernels::serial::power(a, p), kernels::omp::power(a, p)) <= 1e-10);
            CHECK(max_abs_diff(kernels::serial::geometric_sum(a, p), kernels::omp::geometric_sum(a, p)) <= 1e-9);
        }
        CHECK(max_abs_diff(kernels::matmul(a, b), a * b) <= 1e-12 * scale * n);
    }
}

TEST_CASE("geometric sums") {
    const CMatrix j = rmat({{1, 1}, {0, 1}}).cast<cplx>();
    const CMatrix s = kernels::omp::geometric_sum(j, 10);
    CHECK(s(0, 0).real() == doctest::Approx(10.0));
    CHECK(s(0, 1).real() == doctest::Approx(45.0));
    CHECK(kernels::serial::geometric_sum(j, 0).norm() == 0.0);
}

TEST_CASE("parallel_for visits every index exactly once") {
    std::vector<int> hits(1000, 0);
    kernels::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(kernels::thread_cap() >= 1);
}
