#include "doctest.h"
#include "helpers.hpp"

#include "perronlab/gallery.hpp"
#include "perronlab/io.hpp"
#include "perronlab/spectral.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

using namespace perronlab;
using io::json;

TEST_CASE("complex and vector readers") {
    CHECK(io::complex_from_json(json(2.5)) == cplx(2.5));
    CHECK(io::complex_from_json(json::parse(R"({"re":1,"im":-2})")) == cplx(1, -2));
    CHECK(io::complex_from_json(json::parse(R"({"im":3})")) == cplx(0, 3));
    CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({})")), ParseError);
    CHECK_THROWS_AS(io::complex_from_json(json("1")), ParseError);
    CHECK(io::vector_from_json(json::parse("[1, {\"re\":0,\"im\":1}]")).size() == 2);
    CHECK_THROWS_AS(io::vector_from_json(json(1)), ParseError);
}

TEST_CASE("operator reader") {
    const auto op = io::operator_from_json(json::parse(R"({"entries": [[0,1],[1,0]]})"));
    CHECK(op.op.dimension() == 2);
    CHECK(op.op.model().norm() == NormTag::SupNorm);
    CHECK_FALSE(op.has_constraints());
    const auto c = io::operator_from_json(json::parse(
        R"({"model": {"dim": 2, "norm": "one", "labels": ["a","b"]}, "entries": [[1,0],[0,1]], "constraints": [[1,-1]]})"));
    CHECK(c.op.model().norm() == NormTag::OneNorm);
    CHECK(c.has_constraints());
    CHECK_THROWS_AS(io::operator_from_json(json::parse(R"({"entries": [[1,0],[0]]})")), ParseError);
    CHECK_THROWS_AS(io::operator_from_json(json::parse(R"({"entries": []})")), ParseError);
    CHECK_THROWS_AS(io::operator_from_json(json::parse(R"({"model": {"dim": 3}, "entries": [[1]]})")), ParseError);
    CHECK_THROWS_AS(io::operator_from_json(json::parse(R"({"model": {"dim": 1, "norm": "l2"}, "entries": [[1]]})")),
                    ParseError);
    CHECK_THROWS_AS(io::operator_from_json(json::parse(R"({"entries": [["x"]]})")), ParseError);
}

TEST_CASE("operators round-trip through JSON") {
    const auto t = ConstrainedOperator(no_daec_example());
    const auto back = io::operator_from_json(io::to_json(t));
    CHECK(back.op.entries() == t.op.entries());
    const auto om = one_point_compactification(8);
    const auto back2 = io::operator_from_json(io::to_json(om.op));
    CHECK(back2.constraints == om.op.constraints);
    const auto m = SpaceModel(2, NormTag::OneNorm, {"p", "q"});
    const auto mm = io::model_from_json(io::to_json(m));
    CHECK(mm.labels() == m.labels());
}

TEST_CASE("scheme reader") {
    const auto f = io::scheme_from_json(json::parse(R"({"kind": "abel_powers", "params": {"lambda": 3}})"));
    CHECK(f.kind == SchemeKind::AbelPowers);
    CHECK(f.params.lambda == 3.0);
    CHECK_THROWS_AS(io::scheme_from_json(json::parse(R"({"kind": "nope"})")), ParseError);
    CHECK_THROWS_AS(io::scheme_from_json(json::parse(R"({"kind": "cesaro", "params": {"x": 1}})")), ParseError);
    CHECK_THROWS_AS(io::scheme_from_json(json::parse(R"({"kind": "abel_powers", "params": {"lambda": 0.5}})")),
                    ParseError);
}

TEST_CASE("vector lists") {
    const SpaceModel m(3, NormTag::SupNorm);
    const auto v = io::parse_vector_list("[1,0,-1]; [-1,0,1]", m);
    REQUIRE(v.size() == 2);
    CHECK(v[1][2] == cplx(1.0));
    CHECK_THROWS_AS(io::parse_vector_list("[1,0]", m), ParseError);
    CHECK_THROWS_AS(io::parse_vector_list("[1,0,", m), ParseError);
    CHECK_THROWS_AS(io::parse_vector_list(" ; ", m), ParseError);
    const auto nested = io::parse_vector_list(" [[1,0,-1], [-1,0,1]]", m);
    REQUIRE(nested.size() == 2);
    CHECK(nested[0].entries() == v[0].entries());
    CHECK(nested[1].entries() == v[1].entries());
    CHECK_THROWS_AS(io::parse_vector_list("[[1,0,-1],[1]]", m), ParseError);
    CHECK_THROWS_AS(io::parse_vector_list("[[1,0,-1]", m), ParseError);
}

TEST_CASE("number formatting") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    for (double x : {1.0 / 3.0, std::numbers::pi, 1e-300, 123456789.123456789})
        CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("CSV exports have fixed headers") {
    const auto rep = spectral_report(no_daec_example());
    const auto csv = io::spectral_csv(rep);
    CHECK(csv.rfind("re,im,modulus,alg_mult,geo_mult,pole_order,peripheral\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.pairs.size()) + 1);
    const auto c = io::case_csv(run_case("no_daec_4x4"));
    CHECK(c.rfind("case,fact,tag,status,measured,expected\n", 0) == 0);
    const auto j = io::to_json(rep);
    CHECK(j.contains("spectral_radius"));
    CHECK(j["cyclic"].contains("verdict"));
    CHECK(io::to_json(rep).dump() == j.dump());
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "perronlab_io_test";
    std::filesystem::create_directories(dir);
    const auto good = (dir / "op.json").string();
    io::write_text_file(good, R"({"entries": [[1]]})");
    CHECK(io::read_operator_file(good).op.dimension() == 1);
    const auto bad = (dir / "bad.json").string();
    io::write_text_file(bad, "{not json");
    CHECK_THROWS_AS(io::read_operator_file(bad), ParseError);
    CHECK_THROWS_AS(io::read_json_file((dir / "missing.json").string()), ParseError);
    std::filesystem::remove_all(dir);
}
