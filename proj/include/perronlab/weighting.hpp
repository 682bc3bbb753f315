#pragma once

// Analytic weights with nonnegative coefficients: coefficient streams, the
// builtin weighting-scheme families, the (WS1)-(WS3) checks, Cauchy products,
// truncated evaluation f(T) = sum a_k T^k and finite-prefix boundedness probes.

#include "perronlab/types.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace perronlab {

inline constexpr std::size_t kNoSupportBound = std::numeric_limits<std::size_t>::max();

struct CoeffStream {
    std::function<double(std::size_t)> coeff;
    // Upper bound for sum_{k>K} a_k; empty when none is known.
    std::function<double(std::size_t)> tail;
    std::string description;
    // a_k = 0 for every k >= support.
    std::size_t support = kNoSupportBound;

    double operator()(std::size_t k) const { return k >= support ? 0.0 : coeff(k); }
    bool finite_support() const { return support != kNoSupportBound; }
    bool has_tail_bound() const { return finite_support() || static_cast<bool>(tail); }
    // 0 past the support, tail(K) otherwise; NaN when unknown.
    double tail_bound(std::size_t k_max) const;
};

CoeffStream delta_stream(std::size_t j);
CoeffStream finite_stream(std::vector<double> coeffs, std::string description = "custom");
CoeffStream abel_stream(double lambda);
CoeffStream abel_power_stream(double lambda, std::size_t j);
CoeffStream cesaro_stream(std::size_t j);
CoeffStream exponential_stream(double t);

enum class SchemeKind { Powers, AbelNet, AbelPowers, Cesaro, Exponential, Custom };
const char* to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct SchemeParams {
    double lambda = 2.0;                       // AbelPowers
    std::vector<double> lambdas;               // AbelNet, default 1 + 1/j
    std::vector<double> times;                 // Exponential, default t_j = j
    std::vector<std::vector<double>> rows;     // Custom, one coefficient list per index
};

// Ordered index prefix of a weighting scheme. Powers and AbelPowers are indexed
// by j = 0, 1, ...; the others by j = 1, 2, ...
struct SchemeFamily {
    SchemeKind kind = SchemeKind::Cesaro;
    SchemeParams params;
    std::string description;

    double index(std::size_t position) const;
    CoeffStream stream(std::size_t position) const;
    // Number of indices available; unlimited unless the parameters are a finite list.
    std::size_t length() const;
};

SchemeFamily builtin_scheme(SchemeKind kind, SchemeParams params = {});

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct CheckResult {
    Verdict verdict = Verdict::Inconclusive;
    double measured = 0.0;  // partial sum, minimum coefficient, ...
    std::string detail;
};

CheckResult check_ws1(const CoeffStream& s, std::size_t k_max = 200, double tol = 1e-10);
CheckResult check_ws2(const CoeffStream& s, std::size_t k_max = 200, double tol = 1e-10);
// Pass means pass-on-prefix: each column k <= k_max is non-increasing over the
// tail half of the prefix and either already <= tol or strictly decaying.
CheckResult check_ws3(const SchemeFamily& fam, std::size_t k_max = 5, double tol = 1e-10,
                      std::size_t prefix = 20);

CoeffStream convolve(const CoeffStream& s, const CoeffStream& t);

struct TailReport {
    std::size_t terms = 0;          // number of coefficients summed
    bool exact = false;             // finite support fully summed
    double tail_bound = 0.0;        // bound on the omitted coefficient mass (NaN if unknown)
    double max_power_norm = 0.0;    // max_{k <= K} ||T^k||
    double tail_estimate = 0.0;     // tail_bound * max_power_norm
    bool power_growth = false;      // ||T^k|| still growing: tail not rigorously bounded
};

struct WeightedOperator {
    OperatorMatrix value;
    TailReport tail;
};

inline constexpr double kWeightRadiusTol = 1e-8;

WeightedOperator apply_weight(const OperatorMatrix& t, const CoeffStream& s, std::size_t k_max = 200);

enum class ProbeVerdict { BoundedEvidence, GrowthEvidence, Inconclusive };
const char* to_string(ProbeVerdict v);

struct ProbeRow {
    double index = 0.0;
    double norm = 0.0;
    double tail_bound = 0.0;
    bool tail_flag = false;  // truncation tail not negligible
};

struct ProbeReport {
    std::vector<ProbeRow> rows;
    double max_norm = 0.0;
    double growth_exponent = 0.0;  // log-log slope of ||f_j(T)|| against j
    // c2 x_end / y_end for the fit y = c0 + c1/x + c2 x over the window;
    // near 0 for a convergent family, near 1 or above under linear or faster growth.
    double linear_share = 0.0;
    bool monotone_growth = false;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

// Least-squares slope of log y against log x over points with x in [lo, hi].
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double lo,
                    double hi);

double linear_growth_share(const std::vector<double>& x, const std::vector<double>& y, double lo,
                           double hi);
// Verdict: growth evidence when linear_share > 0.5, bounded evidence below 0.25.
ProbeReport ws_bounded_probe(const OperatorMatrix& t, const SchemeFamily& fam,
                             std::size_t k_max = 200, std::size_t budget = 50);

struct ScalarSumRow {
    double index = 0.0;
    double sum = 0.0;
    bool tail_flag = false;
};

// sum_{k <= K} a_{j,k} r_k for the first `count` indices; K + 1 = r.size().
std::vector<ScalarSumRow> weighted_scalar_sum(const SchemeFamily& fam, const std::vector<double>& r,
                                              std::size_t count);

struct OrbitReport {
    std::vector<double> norms;  // ||T^n x|| for n = 0..N, model norm
    bool monotone = true;       // T^{n+1} x >= T^n x - tol at every step
    bool bounded = true;        // no growth over the second half of the orbit
};

OrbitReport monotone_orbit_report(const OperatorMatrix& t, const LatticeVector& x, std::size_t n,
                                  double tol = 1e-12);

}  // namespace perronlab
