#include "doctest.h"
#include "helpers.hpp"

#include "perronlab/fixed_space.hpp"
#include "perronlab/gallery.hpp"
#include "perronlab/lattice.hpp"
#include "perronlab/random.hpp"

using namespace perronlab;
using test_util::rmat;

namespace {

double dist(const LatticeVector& a, const std::vector<double>& b) {
    return (a.real_part() - RVector::Map(b.data(), static_cast<Eigen::Index>(b.size()))).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("fixed space of the three-by-three example") {
    const auto h = make_fixed_space(fixed_space_example());
    CHECK(h.basis.cols() == 2);
    CHECK(fixed_residual(h, test_util::cvec({1.0, 1.0, 1.0})) < 1e-12);
    CHECK(fixed_residual(h, test_util::cvec({1.0, 0.0, -1.0})) < 1e-12);
    CHECK(fixed_residual(h, test_util::cvec({1.0, 0.0, 1.0})) > 0.1);
    const auto fhat = LatticeVector::real({1, 0, -1});
    const auto mfhat = LatticeVector::real({-1, 0, 1});
    const auto s = sup_in_fixed_space(h, {fhat, mfhat});
    CHECK(dist(s.value, {1, 1, 1}) <= 1e-10);
    CHECK(s.monotone);
    const auto m = f_modulus(h, fhat);
    CHECK(dist(m.value, {1, 1, 1}) <= 1e-10);
    CHECK(m.value.norm() == doctest::Approx(fhat.norm()));
    const auto sub = is_fixed_space_sublattice(h);
    CHECK_FALSE(sub.is_sublattice);
    REQUIRE(sub.witness);
    CHECK(std::min(dist(*sub.witness, {1, 0, -1}), dist(*sub.witness, {-1, 0, 1})) < 1e-12);
    const RVector lp_min = fixed_upper_bound_minimum(h, {fhat, mfhat});
    CHECK((lp_min - RVector::Ones(3)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("trivial fixed-space suprema") {
    const auto h = make_fixed_space(fixed_space_example());
    const auto one = LatticeVector::real({1, 1, 1});
    CHECK(dist(sup_in_fixed_space(h, {one}).value, {1, 1, 1}) < 1e-12);
    CHECK(dist(f_modulus(h, one).value, {1, 1, 1}) < 1e-12);
    CHECK(f_modulus(h, LatticeVector::real({0, 0, 0})).value.norm() < 1e-12);
    const auto id = make_fixed_space(OperatorMatrix::identity(SpaceModel(3, NormTag::SupNorm)));
    const auto a = LatticeVector::real({1, -2, 0.5}), b = LatticeVector::real({0, 3, -1});
    CHECK(dist(sup_in_fixed_space(id, {a, b}).value, {1, 3, 0.5}) < 1e-12);
    CHECK(is_fixed_space_sublattice(id).is_sublattice);
    const auto irr = make_fixed_space(OperatorMatrix::real(rmat({{0.2, 0.8}, {0.6, 0.4}})));
    CHECK(irr.basis.cols() == 1);
    CHECK(is_fixed_space_sublattice(irr).is_sublattice);
}

TEST_CASE("fixed-space errors") {
    const auto h = make_fixed_space(fixed_space_example());
    CHECK_THROWS_WITH_AS(sup_in_fixed_space(h, {LatticeVector::real({1, 0, 0})}), "vector is not in the fixed space",
                         Error);
    CHECK_THROWS_AS(sup_in_fixed_space(h, {}), Error);
    CHECK_THROWS_AS(make_fixed_space(OperatorMatrix::real(rmat({{0.5, 0.4}, {0, 1}}))), Error);
    // a slow chain cannot converge in a handful of iterations
    const auto slow = make_fixed_space(OperatorMatrix::real(rmat({{1, 0, 0}, {0.001, 0.998, 0.001}, {0, 0, 1}})));
    const auto f = LatticeVector::real({1, 0, -1});
    CHECK_THROWS_AS(sup_in_fixed_space(slow, {f, LatticeVector::real({-1, 0, 1})}, 1e-12, 5), Error);
}

TEST_CASE("AM-space norm identities") {
    const auto h = make_fixed_space(fixed_space_example());
    const auto one = LatticeVector::real({1, 1, 1});
    const auto r = am_identity_check(h, one, one);
    CHECK(r.pass);
    CHECK(r.join_norm == doctest::Approx(1.0));
    const auto g2 = LatticeVector::real({1.5, 1, 0.5});  // (1,1,1) + (1,0,-1)/2, nonnegative and fixed
    const auto r2 = am_identity_check(h, one, g2);
    CHECK(r2.pass);
    CHECK(r2.join_norm == doctest::Approx(1.5));
    CHECK(r2.lattice_norm == doctest::Approx(1.5));
    CHECK(r2.max_norm == doctest::Approx(1.5));
    const auto r3 = am_identity_check(h, g2, LatticeVector::real({0, 0, 0}));
    CHECK(dist(r3.join, {1.5, 1, 0.5}) < 1e-10);
    CHECK_THROWS_AS(am_identity_check(h, LatticeVector::real({1, 0, -1}), one), Error);
}

TEST_CASE("seeded fixed-space suprema match the LP oracle") {
    for (std::uint64_t k = 0; k < 100; ++k) {
        auto rng = sampling::trial_rng(47, k);
        const auto s = sampling::stochastic_sample(rng, 10);
        const auto h = make_fixed_space(OperatorMatrix::real(s.t));
        std::vector<LatticeVector> g;
        for (int i = 0; i < 2; ++i) {
            RVector c(h.basis.cols());
            for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = sampling::uniform(rng, -1, 1);
            g.emplace_back((h.basis * c).cast<cplx>(), h.t.model());
        }
        const auto sup = sup_in_fixed_space(h, g);
        const RVector v = sup.value.real_part();
        CHECK(sup.monotone);
        CHECK(fixed_residual(h, sup.value.entries()) <= 1e-8);
        for (const auto& gi : g) CHECK((v - gi.real_part()).minCoeff() >= -1e-8);
        CHECK((v - fixed_upper_bound_minimum(h, g)).cwiseAbs().maxCoeff() <= 1e-7);
        CHECK((sup_in_fixed_space(h, {sup.value}).value.real_part() - v).cwiseAbs().maxCoeff() <= 1e-8);
        const auto m = f_modulus(h, g[0]);
        CHECK(std::abs(m.value.norm() - g[0].norm()) <= 1e-8);
    }
}

TEST_CASE("witness chain for the missing supremum") {
    const auto m = no_supremum_model(16);
    CHECK(m.op.op.dimension() == 3 + 2 * 16);
    const auto f = LatticeVector::real({1, 0, -1});
    CHECK(no_supremum_witness(m, f, 0).empty());
    const auto one = no_supremum_witness(m, f, 1);
    REQUIRE(one.size() == 1);
    CHECK((one[0].bound.real_part() - RVector::Ones(m.op.op.dimension())).cwiseAbs().maxCoeff() < 1e-10);
    const auto chain = no_supremum_witness(m, f, 3);
    REQUIRE(chain.size() == 3);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        CHECK(chain[i].upper_bound);
        CHECK(chain[i].fixed_residual <= 1e-10);
        if (i > 0) {
            const RVector d = chain[i - 1].bound.real_part() - chain[i].bound.real_part();
            CHECK(d.minCoeff() >= -1e-12);
            CHECK(d.maxCoeff() > 0.0);
            CHECK(chain[i].decrease > 0.0);
        }
    }
    CHECK_THROWS_WITH_AS(no_supremum_witness(m, f, 16), "depth exceeds truncation resolution", Error);
    CHECK_THROWS_AS(no_supremum_model(1), Error);
}
