#include "doctest.h"

#include "perronlab/random.hpp"
#include "perronlab/spectral.hpp"

#include <algorithm>

using namespace perronlab;

TEST_CASE("per-trial engines are reproducible and distinct") {
    auto a = sampling::trial_rng(42, 3), b = sampling::trial_rng(42, 3), c = sampling::trial_rng(42, 4);
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
}

TEST_CASE("uniform ranges") {
    auto rng = sampling::trial_rng(1, 0);
    for (int k = 0; k < 500; ++k) {
        const auto n = sampling::uniform_size(rng, 2, 5);
        CHECK((n >= 2 && n <= 5));
        const double u = sampling::uniform(rng, -1, 1);
        CHECK((u >= -1 && u <= 1));
    }
}

TEST_CASE("generator families have the advertised structure") {
    for (std::uint64_t k = 0; k < 100; ++k) {
        auto rng = sampling::trial_rng(9, k);
        const std::size_t n = sampling::uniform_size(rng, 1, 8);
        const RMatrix t = sampling::nonnegative(rng, n, 0.3);
        CHECK(t.minCoeff() >= 0.0);
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            CHECK(t.row(i).maxCoeff() > 0.0);
            CHECK(t.col(i).maxCoeff() > 0.0);
        }
        const RMatrix p = sampling::permutation(rng, n);
        CHECK((p.rowwise().sum().array() == 1.0).all());
        CHECK((p.colwise().sum().array() == 1.0).all());
        const RMatrix s = sampling::stochastic_sample(rng, 8).t;
        CHECK((s.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK(s.minCoeff() >= 0.0);
        const auto ps = sampling::pole_sample(rng, 8);
        CHECK(spectral_radius(OperatorMatrix::real(ps.t)) == doctest::Approx(1.0).epsilon(1e-8));
        const auto v = sampling::complex_vector(rng, n);
        CHECK(v.cwiseAbs().maxCoeff() > 0.0);
    }
}

TEST_CASE("imprimitive samples have the requested period") {
    for (std::uint64_t k = 0; k < 30; ++k) {
        auto rng = sampling::trial_rng(13, k);
        const std::size_t period = sampling::uniform_size(rng, 2, 4);
        const RMatrix t = sampling::normalize_radius(sampling::imprimitive(rng, 8, period));
        const auto rep = spectral_report(OperatorMatrix::real(t));
        CHECK(rep.peripheral.size() == period);
    }
}

TEST_CASE("planted Jordan blocks have the planted pole order") {
    for (std::uint64_t k = 0; k < 30; ++k) {
        auto rng = sampling::trial_rng(17, k);
        const std::size_t m = 2 + k % 2;
        const RMatrix t = sampling::planted_jordan(rng, m, 3);
        CHECK(pole_order_at(OperatorMatrix::real(t), 1.0) == m);
    }
}

TEST_CASE("independent families") {
    auto rng = sampling::trial_rng(21, 0);
    const auto fam = sampling::independent_family(rng, 5, 3);
    CHECK(fam.size() == 3);
    CHECK_THROWS_AS(sampling::independent_family(rng, 2, 3), Error);
    CHECK_THROWS_AS(sampling::normalize_radius(RMatrix::Zero(2, 2)), Error);
}
