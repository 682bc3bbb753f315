#pragma once

// Suprema inside the fixed space F = ker(1 - T) of a Markov operator, computed
// by the monotone iteration h <- T h from the entrywise supremum, plus the
// AM-space norm identities, the sublattice test and the finite witness chain
// for the non-order-complete extension.

#include "perronlab/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perronlab {

struct FixedSpaceHandle {
    OperatorMatrix t;
    CMatrix constraints;  // k x n; F is intersected with ker(constraints)
    RMatrix basis;        // n x d real basis of F_R (columns)
    double tol = 1e-10;
};

// T must be Markov; the real and imaginary parts of ker(1 - T) are split.
FixedSpaceHandle make_fixed_space(const OperatorMatrix& t, double tol = 1e-10);
FixedSpaceHandle make_fixed_space(const ConstrainedOperator& t, double tol = 1e-10);

// ||T v - v||_inf plus the constraint residual.
double fixed_residual(const FixedSpaceHandle& h, const CVector& v);

struct SupResult {
    LatticeVector value;
    std::size_t iterations = 0;
    bool monotone = true;  // T^{n+1} h0 >= T^n h0 - tol at every step
};

inline constexpr double kSupTol = 1e-12;
inline constexpr std::size_t kSupMaxIter = 1000000;

SupResult sup_in_fixed_space(const FixedSpaceHandle& h, const std::vector<LatticeVector>& g,
                             double tol = kSupTol, std::size_t max_iter = kSupMaxIter);

// |f|_F = sup_F {f, -f}.
SupResult f_modulus(const FixedSpaceHandle& h, const LatticeVector& f, double tol = kSupTol);

struct AmIdentity {
    LatticeVector join;       // g1 v_F g2
    double join_norm = 0.0;   // ||g1 v_F g2||
    double lattice_norm = 0.0;  // ||g1 v g2||
    double max_norm = 0.0;    // max(||g1||, ||g2||)
    bool pass = false;
};

AmIdentity am_identity_check(const FixedSpaceHandle& h, const LatticeVector& g1,
                             const LatticeVector& g2, double tol = 1e-9);

struct SublatticeResult {
    bool is_sublattice = true;
    std::optional<LatticeVector> witness;  // f in F with |f| outside F
};

// Moduli of the reduced-row-echelon basis of F_R, then of pairwise sums and
// differences, are tested for membership in F.
SublatticeResult is_fixed_space_sublattice(const FixedSpaceHandle& h);

// min over fixed upper bounds k of G of k_i, for every coordinate i (LP).
RVector fixed_upper_bound_minimum(const FixedSpaceHandle& h, const std::vector<LatticeVector>& g);

// R^3 x c x c truncated at N: f (3), g_1..g_{N-1}, lim g, h_1..h_{N-1}, lim h,
// with S(f, g, h) = (T f, (f_2, g_1, ..., g_{N-2}), h) and constraint rows
// lim g = g_{N-1}, lim g = lim h.
struct NoSupremumModel {
    ConstrainedOperator op;
    std::size_t n = 0;

    std::size_t g_index(std::size_t k) const { return 2 + k; }        // k = 1..N-1
    std::size_t g_limit() const { return 2 + n; }
    std::size_t h_index(std::size_t k) const { return 2 + n + k; }    // k = 1..N-1
    std::size_t h_limit() const { return 2 + 2 * n; }
};

NoSupremumModel no_supremum_model(std::size_t n);

struct WitnessStep {
    LatticeVector bound;
    std::size_t lowered = 0;   // coordinate strictly decreased from the previous bound
    double decrease = 0.0;
    double fixed_residual = 0.0;
    bool upper_bound = false;  // dominates +-(f, 0, 0)
};

// depth fixed upper bounds of +-(f, 0, 0), each strictly below its predecessor.
// Demonstration at truncation N, not a proof.
std::vector<WitnessStep> no_supremum_witness(const NoSupremumModel& m, const LatticeVector& f,
                                             std::size_t depth);

}  // namespace perronlab
