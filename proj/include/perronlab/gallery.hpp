#pragma once

// Named reconstructions of the explicit example operators, each evaluated as
// a list of machine-checked facts with provenance tags.

#include "perronlab/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace perronlab {

// Explicit matrices.
OperatorMatrix fixed_space_example();  // 3x3 Markov, F = span{(1,1,1), (1,0,-1)}
OperatorMatrix no_daec_example();      // 4x4, sigma = {-1, 1}
OperatorMatrix swap_example();         // [[0,1],[1,0]]

// Z_4 ⊔ {0..N} ⊔ {∞}: rotation on Z_4, averaged feed into 0, shift along the
// ray, ∞ fixed.  Continuity at ∞ is the constraint row f(N) - f(∞) = 0; the
// vanishing variant adds f(∞) = 0.
struct OnePointModel {
    ConstrainedOperator op;
    std::size_t n = 0;
    std::size_t ray(std::size_t k) const { return 4 + k; }
    std::size_t infinity() const { return 5 + n; }
};
OnePointModel one_point_compactification(std::size_t n, bool vanish_at_infinity = false);
// g(j) = (-i)^j on Z_4, zero elsewhere.
CVector one_point_eigenfunction(const OnePointModel& m);

// Shift on Z_q coupled to the averaged tail recursion on g_1..g_N; row N is
// closed by g'_N = N/(N+1) g_N + f(1)/(N+1), which keeps the matrix Markov.
OperatorMatrix subgroup_operator(int q, std::size_t n);

struct SubgroupEigen {
    CVector vector;           // (f, g), f(k) = lambda^k
    double residual = 0.0;    // ||T v - lambda v|| / ||v||
    double tail = 0.0;        // max_{n > N/2} |g_n| / ||v||
    double g1_series_gap = 0.0;    // |closed form - truncated sum| for g_1
    double g1_series_bound = 0.0;  // Dirichlet-test bound for that gap
};
// lambda = e^{2 pi i k / q}; g from the tail form of the eigenvector recursion.
SubgroupEigen subgroup_eigenvector(int q, std::size_t n, int k);

using CaseParams = std::map<std::string, std::string>;

struct Fact {
    std::string id;
    std::string paper_ref;
    std::string tag;  // PAPER, DERIVED or TRIVIAL
    bool pass = false;
    double measured = 0.0;
    std::string expected;
};

struct CaseReport {
    std::string name;
    CaseParams params;
    std::vector<Fact> facts;
    bool passed() const;
};

struct CaseInfo {
    std::string name;
    std::string summary;
    CaseParams defaults;
    bool implemented = true;
};

const std::vector<CaseInfo>& gallery_cases();
// Unknown names and unknown parameter keys throw ParseError.
CaseReport run_case(const std::string& name, const CaseParams& overrides = {});

}  // namespace perronlab
