#include "doctest.h"

#include "perronlab/io.hpp"
#include "perronlab/verify.hpp"

using namespace perronlab;

TEST_CASE("every suite passes a short seeded run") {
    for (const auto& name : suite_names()) {
        const auto s = run_suite(name, {40, 42, 6});
        CHECK(s.suite == name);
        CHECK(s.trials == 40);
        CHECK_MESSAGE(s.ok(), name << ": " << (s.failures.empty() ? std::string() : s.failures.front()));
    }
}

TEST_CASE("suite summaries are deterministic") {
    const auto a = io::to_json(run_suite("cyclicity", {60, 7, 6})).dump();
    const auto b = io::to_json(run_suite("cyclicity", {60, 7, 6})).dump();
    CHECK(a == b);
}

TEST_CASE("suite argument validation") {
    CHECK_THROWS_AS(run_suite("nope", {}), ParseError);
    CHECK_THROWS_AS(run_suite("perron", {10, 1, 0}), ParseError);
    CHECK(run_suite("perron", {0, 1, 4}).trials == 0);
}
