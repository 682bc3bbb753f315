#pragma once

// Dense operators on the coordinate models: positivity, induced norms, powers,
// Cesàro means, resolvents, ideal restriction, direct sums, and the truncated
// shift-multiplication blocks T_m = S M_m on l^1.

#include "perronlab/types.hpp"

#include <vector>

namespace perronlab {

inline constexpr double kPositivityTol = 1e-12;

bool is_positive(const OperatorMatrix& t, double tol = kPositivityTol);

// Positive with unit row sums. Only meaningful on the C(K) model.
bool is_markov(const OperatorMatrix& t, double tol = kPositivityTol);

// Exact induced norm: max row sum (sup) or max column sum (one).
double op_norm(const CMatrix& a, NormTag norm);
inline double op_norm(const OperatorMatrix& t) { return op_norm(t.entries(), t.model().norm()); }

double vector_norm(const CVector& v, NormTag norm);

OperatorMatrix power(const OperatorMatrix& t, std::size_t n);

// (1/n) sum_{k<n} T^k. Direct accumulation up to kCesaroAccumulateLimit terms,
// binary splitting beyond.
inline constexpr std::size_t kCesaroAccumulateLimit = 4096;
OperatorMatrix cesaro_mean(const OperatorMatrix& t, std::size_t n);

struct ResolventResult {
    OperatorMatrix value;
    double residual = 0.0;  // ||(lambda - T) R - I|| in the model norm
    double rcond = 0.0;
};

ResolventResult resolvent_checked(const OperatorMatrix& t, cplx lambda);
inline OperatorMatrix resolvent(const OperatorMatrix& t, cplx lambda) {
    return resolvent_checked(t, lambda).value;
}

// Support of x (x_i > tol) must be T-invariant; returns T on that support with
// the sup-norm model of the reduced dimension.
OperatorMatrix restrict_to_ideal(const OperatorMatrix& t, const LatticeVector& x,
                                 double tol = 1e-10);
std::vector<std::size_t> support(const LatticeVector& x, double tol);

OperatorMatrix direct_sum(const std::vector<OperatorMatrix>& blocks);

struct ShiftMultSpec {
    int m = 2;              // block index
    std::size_t n = 3;      // truncation length, >= m! + 1

    static ShiftMultSpec with_default_truncation(int m);  // n = (m+1)!
};

double factorial(int k);

// a^{(m)}_l for l = 1..n (returned 0-based).
RVector shift_mult_symbol(const ShiftMultSpec& spec);

// Truncated matrix of S M_m on l^1 (OneNorm model).
OperatorMatrix shift_mult_block(const ShiftMultSpec& spec);

// Closed-form symbol of T_m^j = S^j M~_{m,j}, truncated to n entries.
LatticeVector symbol_power(const ShiftMultSpec& spec, std::size_t j);

// Lower bound c(m) on the Cesàro means of T_m, closed form.
double cesaro_lower_bound(int m);

}  // namespace perronlab
