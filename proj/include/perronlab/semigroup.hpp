#pragma once

// Grid simulator for the Markov semigroup on C(T ⊔ [0, ∞]): rotation on the
// circle, translation on the ray, and a memory term fed back at the origin
// through mu = (delta_i + delta_{-i}) / 2.  Time is exact; only space is
// discretized (circle interpolation plus trapezoid quadrature).

#include "perronlab/types.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace perronlab {

enum class CircleInterp { Linear, Trigonometric };
const char* to_string(CircleInterp i);
CircleInterp circle_interp_from_string(const std::string& s);

// Coordinates: M circle angles 2 pi m / M, then N + 1 ray points n L / N, then ∞.
struct SemigroupGrid {
    std::size_t m = 256;
    std::size_t n = 256;
    double length = 8.0;
    CircleInterp interp = CircleInterp::Linear;

    SemigroupGrid() = default;
    SemigroupGrid(std::size_t m_, std::size_t n_, double length_ = 8.0,
                  CircleInterp interp_ = CircleInterp::Linear);

    std::size_t size() const { return m + n + 2; }
    std::size_t ray_offset() const { return m; }
    std::size_t infinity_index() const { return m + n + 1; }
    double angle(std::size_t k) const;
    double ray_point(std::size_t k) const { return length * static_cast<double>(k) / static_cast<double>(n); }
    double quadrature_step() const;
};

using CircleFn = std::function<cplx(cplx)>;   // x on the unit circle
using RayFn = std::function<cplx(double)>;    // x in [0, ∞); ∞ handled separately

CVector sample(const SemigroupGrid& g, const CircleFn& circle, const RayFn& ray, cplx at_infinity);

// Row of T(t): (coordinate, weight) pairs.
using SparseRow = std::vector<std::pair<std::size_t, double>>;
std::vector<SparseRow> semigroup_rows(const SemigroupGrid& g, double t);
RMatrix semigroup_matrix(const SemigroupGrid& g, double t);

CVector semigroup_apply(const SemigroupGrid& g, double t, const CVector& f);

// ||(T(h) f - f) / h - lambda f||_inf.
double generator_residual(const SemigroupGrid& g, const CVector& f, cplx lambda, double h);

// <mu, f|_T> evaluated on the grid; the boundary relation f'(0) = f(0) - <mu, f|_T>.
cplx mu_pairing(const SemigroupGrid& g, const CVector& f);

struct MarkovDefect {
    double row_sum = 0.0;    // max |T(t) 1 - 1|
    double min_entry = 0.0;  // most negative weight
};
MarkovDefect markov_defect(const SemigroupGrid& g, double t);

// max over f of ||T(t) T(s) f - T(t + s) f||_inf, normalized by ||f||_inf.
double semigroup_defect(const SemigroupGrid& g, double t, double s, const std::vector<CVector>& dict);
// Same, maximized over the given (t, s) pairs.  A single pair converges
// erratically because the interpolation error depends on where t falls
// between nodes; the maximum over many pairs tracks the O(h^2) envelope.
double semigroup_defect_sup(const SemigroupGrid& g, const std::vector<std::pair<double, double>>& pairs,
                            const std::vector<CVector>& dict);

// Smooth test functions in the generator domain: Re x ⊕ 0, Re x^2 ⊕ x e^{-x},
// 0 ⊕ (1 + 2x) e^{-x}, constant 1.
std::vector<CVector> test_dictionary(const SemigroupGrid& g);

}  // namespace perronlab
