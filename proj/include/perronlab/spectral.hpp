#pragma once

// Eigenstructure of dense operators, peripheral sets, cyclicity verdicts,
// eigenspace-dimension estimates, mean ergodic projections, the dominated
// eigenvector (DAEC) check and the resolvent growth ratio.

#include "perronlab/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perronlab {

inline constexpr double kClusterTol = 1e-7;     // relative to max(1, r(T))
inline constexpr double kBandTol = 1e-8;
inline constexpr int kDefaultQMax = 64;
inline constexpr double kAngleWindow = 1e-9;

struct EigenPair {
    cplx value;
    std::size_t alg_mult = 1;
    std::size_t geo_mult = 1;
    std::vector<LatticeVector> basis;
    std::size_t pole_order = 1;
};

struct EigenCluster {
    cplx value;
    std::size_t alg_mult = 1;
};

// Computed eigenvalues merged into multiplicity clusters. Clusters closer than
// cluster_tol merge unconditionally; wider splits (defective eigenvalues lose
// digits like eps^(1/k)) merge only when nullity((c - T)^k) >= k certifies a
// k-fold eigenvalue at the cluster mean c.
std::vector<EigenCluster> eigenvalue_clusters(const OperatorMatrix& t,
                                              double cluster_tol = kClusterTol);

std::vector<EigenPair> eigen(const OperatorMatrix& t, double cluster_tol = kClusterTol);

double spectral_radius(const OperatorMatrix& t);
double spectral_radius(const std::vector<EigenPair>& pairs);

// Largest Jordan block at lambda0: smallest m with
// rank((lambda0 - T)^m) = rank((lambda0 - T)^(m+1)).
std::size_t pole_order_at(const OperatorMatrix& t, cplx lambda0, double tol = 1e-6);

enum class CyclicVerdict { Cyclic, NotCyclic, Inconclusive };
const char* to_string(CyclicVerdict v);

struct CyclicityResult {
    CyclicVerdict verdict = CyclicVerdict::Cyclic;
    std::optional<cplx> witness;  // first missing r e^{i n theta}
    std::string detail;
};

// p/q with q <= q_max and |x - p/q| < window, 0 <= p < q, via continued fractions.
std::optional<std::pair<long, long>> rational_approximation(double x, int q_max,
                                                            double window = kAngleWindow);
// theta / 2 pi of z reduced to [0, 1).
double angle_fraction(cplx z);

CyclicityResult is_cyclic(const std::vector<cplx>& s, double r, double tol = kBandTol,
                          int q_max = kDefaultQMax);

struct DimVerdict {
    cplx value;          // e^{i theta} after rescaling by r(T)
    double theta = 0.0;  // in [0, 2 pi)
    int n = 0;
    std::size_t dim_theta = 0;
    std::size_t dim_n_theta = 0;
    bool pass = true;
};

struct SpectralOptions {
    double cluster_tol = kClusterTol;
    double band_tol = kBandTol;
    int q_max = kDefaultQMax;
    bool dim_check = false;
    int n_min = -6;
    int n_max = 6;
};

struct SpectralReport {
    std::vector<EigenPair> pairs;
    double spectral_radius = 0.0;
    std::vector<EigenPair> peripheral;
    CyclicityResult cyclic;
    std::vector<DimVerdict> dim_verdicts;

    bool dim_check_passed() const;
};

SpectralReport spectral_report(const OperatorMatrix& t, const SpectralOptions& opts = {});
SpectralReport spectral_report(const ConstrainedOperator& t, const SpectralOptions& opts = {});

std::vector<cplx> peripheral_spectrum(const SpectralReport& rep, double band_tol = kBandTol);
// In finite dimensions every spectral value is an eigenvalue.
inline std::vector<cplx> peripheral_point_spectrum(const SpectralReport& rep,
                                                   double band_tol = kBandTol) {
    return peripheral_spectrum(rep, band_tol);
}

std::vector<cplx> rational_peripheral_point_spectrum(const SpectralReport& rep,
                                                     int q_max = kDefaultQMax,
                                                     double band_tol = kBandTol);

// dim ker(e^{i theta} - T/r) <= dim ker(e^{i n theta} - T/r) for every peripheral
// e^{i theta} and n in [n_min, n_max]; kernels are intersected with the
// constraint subspace. An absent eigenvalue has dimension 0.
std::vector<DimVerdict> dim_estimate_check(const ConstrainedOperator& t, double tol,
                                           int n_min, int n_max);
inline std::vector<DimVerdict> dim_estimate_check(const OperatorMatrix& t, double tol = kBandTol,
                                                  int n_min = -6, int n_max = 6) {
    return dim_estimate_check(ConstrainedOperator(t), tol, n_min, n_max);
}

std::vector<DimVerdict> dim_estimate_check_in_ideal(const OperatorMatrix& t,
                                                    const LatticeVector& x,
                                                    double tol = kBandTol, int n_min = -6,
                                                    int n_max = 6);

bool all_pass(const std::vector<DimVerdict>& verdicts);

struct MeanErgodicResult {
    std::optional<OperatorMatrix> projection;
    std::string diagnostic;
    double cesaro_defect = 0.0;  // ||P - cesaro_mean(T, N)|| at N = kMeanErgodicHorizon
};

inline constexpr std::size_t kMeanErgodicHorizon = std::size_t{1} << 24;

MeanErgodicResult mean_ergodic_projection(const OperatorMatrix& t, double tol = 1e-8);

enum class DaecVerdict { Holds, Fails, Inconclusive };
const char* to_string(DaecVerdict v);

struct DaecResult {
    DaecVerdict verdict = DaecVerdict::Inconclusive;
    std::optional<LatticeVector> z;
    std::optional<LatticeVector> x;
    bool provable = false;
    std::string detail;
};

// Looks for z in ker(r e^{i theta} - T) \ {0} and x in ker(r - T), x >= 0,
// with |z| <= x.
DaecResult daec_check(const OperatorMatrix& t, double r, double theta, double tol = 1e-8,
                      int search_budget = 200, std::uint64_t seed = 1);
DaecResult daec_check_adjoint(const OperatorMatrix& t, double r, double theta,
                              double tol = 1e-8, int search_budget = 200,
                              std::uint64_t seed = 1);

struct ResolventRatio {
    std::vector<std::pair<double, double>> samples;  // (r, ratio)
    double limsup_estimate = 0.0;
};

std::vector<double> default_ratio_schedule(int k_max = 30);

ResolventRatio resolvent_growth_ratio(const OperatorMatrix& t, double theta,
                                      const std::vector<double>& schedule = default_ratio_schedule());

}  // namespace perronlab
