#include "perronlab/weighting.hpp"

#include "perronlab/kernels.hpp"
#include "perronlab/operator.hpp"
#include "perronlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace perronlab {

double CoeffStream::tail_bound(std::size_t k_max) const {
    if (finite_support() && k_max + 1 >= support) return 0.0;
    if (tail) return tail(k_max);
    return std::numeric_limits<double>::quiet_NaN();
}

CoeffStream delta_stream(std::size_t j) {
    CoeffStream s;
    s.coeff = [j](std::size_t k) { return k == j ? 1.0 : 0.0; };
    s.support = j + 1;
    s.description = "z^" + std::to_string(j);
    return s;
}

CoeffStream finite_stream(std::vector<double> coeffs, std::string description) {
    auto data = std::make_shared<const std::vector<double>>(std::move(coeffs));
    CoeffStream s;
    s.support = data->size();
    s.coeff = [data](std::size_t k) { return k < data->size() ? (*data)[k] : 0.0; };
    s.description = std::move(description);
    return s;
}

CoeffStream abel_stream(double lambda) {
    if (!(lambda > 1.0)) throw Error("AbelNet needs lambda > 1");
    CoeffStream s;
    s.coeff = [lambda](std::size_t k) {
        return (lambda - 1.0) * std::pow(lambda, -static_cast<double>(k + 1));
    };
    s.tail = [lambda](std::size_t k) { return std::pow(lambda, -static_cast<double>(k + 1)); };
    std::ostringstream os;
    os << "(lambda-1)/(lambda-z), lambda=" << lambda;
    s.description = os.str();
    return s;
}

namespace {

// Negative-binomial weights C(j+k-1, k) (lambda-1)^j / lambda^{j+k} by the
// recurrence a_{k+1} = a_k (j+k) / ((k+1) lambda).
double abel_power_coeff(double lambda, std::size_t j, std::size_t k) {
    double a = std::pow((lambda - 1.0) / lambda, static_cast<double>(j));
    for (std::size_t i = 0; i < k; ++i)
        a *= static_cast<double>(j + i) / (static_cast<double>(i + 1) * lambda);
    return a;
}

double poisson_coeff(double t, std::size_t k) {
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-t + static_cast<double>(k) * std::log(t) - std::lgamma(static_cast<double>(k) + 1.0));
}

}  // namespace

CoeffStream abel_power_stream(double lambda, std::size_t j) {
    if (!(lambda > 1.0)) throw Error("AbelPowers needs lambda > 1");
    CoeffStream s;
    s.coeff = [lambda, j](std::size_t k) { return abel_power_coeff(lambda, j, k); };
    if (j == 0) s.support = 1;
    s.tail = [lambda, j](std::size_t k) {
        // Ratios a_{i+1}/a_i are non-increasing in i, so the tail past K is a
        // geometric majorant from a_{K+1} whenever that ratio is below 1.
        const double next = abel_power_coeff(lambda, j, k + 1);
        const double rho = static_cast<double>(j + k + 1) / (static_cast<double>(k + 2) * lambda);
        if (rho >= 1.0) return 1.0;
        return std::min(1.0, next / (1.0 - rho));
    };
    std::ostringstream os;
    os << "((lambda-1)/(lambda-z))^" << j << ", lambda=" << lambda;
    s.description = os.str();
    return s;
}

CoeffStream cesaro_stream(std::size_t j) {
    if (j < 1) throw Error("Cesaro index must be >= 1");
    CoeffStream s;
    const double w = 1.0 / static_cast<double>(j);
    s.coeff = [w, j](std::size_t k) { return k < j ? w : 0.0; };
    s.support = j;
    s.description = "cesaro j=" + std::to_string(j);
    return s;
}

CoeffStream exponential_stream(double t) {
    if (!(t >= 0.0)) throw Error("Exponential needs t >= 0");
    CoeffStream s;
    s.coeff = [t](std::size_t k) { return poisson_coeff(t, k); };
    if (t == 0.0) s.support = 1;
    s.tail = [t](std::size_t k) {
        const double next = poisson_coeff(t, k + 1);
        const double rho = t / static_cast<double>(k + 2);
        if (rho >= 1.0) return 1.0;
        return std::min(1.0, next / (1.0 - rho));
    };
    std::ostringstream os;
    os << "exp(t(z-1)), t=" << t;
    s.description = os.str();
    return s;
}

const char* to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::Powers: return "powers";
        case SchemeKind::AbelNet: return "abel_net";
        case SchemeKind::AbelPowers: return "abel_powers";
        case SchemeKind::Cesaro: return "cesaro";
        case SchemeKind::Exponential: return "exponential";
        case SchemeKind::Custom: return "custom";
    }
    return "?";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
    for (auto k : {SchemeKind::Powers, SchemeKind::AbelNet, SchemeKind::AbelPowers, SchemeKind::Cesaro,
                   SchemeKind::Exponential, SchemeKind::Custom})
        if (s == to_string(k)) return k;
    throw ParseError("unknown scheme kind '" + s + "'");
}

double SchemeFamily::index(std::size_t position) const {
    switch (kind) {
        case SchemeKind::Powers:
        case SchemeKind::AbelPowers: return static_cast<double>(position);
        case SchemeKind::Exponential:
            return params.times.empty() ? static_cast<double>(position + 1) : params.times.at(position);
        default: return static_cast<double>(position + 1);
    }
}

std::size_t SchemeFamily::length() const {
    switch (kind) {
        case SchemeKind::AbelNet: return params.lambdas.empty() ? kNoSupportBound : params.lambdas.size();
        case SchemeKind::Exponential: return params.times.empty() ? kNoSupportBound : params.times.size();
        case SchemeKind::Custom: return params.rows.size();
        default: return kNoSupportBound;
    }
}

CoeffStream SchemeFamily::stream(std::size_t position) const {
    if (position >= length()) throw Error("scheme index beyond the provided parameter list");
    switch (kind) {
        case SchemeKind::Powers: return delta_stream(position);
        case SchemeKind::AbelNet:
            return abel_stream(params.lambdas.empty() ? 1.0 + 1.0 / static_cast<double>(position + 1)
                                                      : params.lambdas[position]);
        case SchemeKind::AbelPowers: return abel_power_stream(params.lambda, position);
        case SchemeKind::Cesaro: return cesaro_stream(position + 1);
        case SchemeKind::Exponential: return exponential_stream(index(position));
        case SchemeKind::Custom:
            return finite_stream(params.rows[position], "custom row " + std::to_string(position));
    }
    throw Error("unknown scheme kind");
}

SchemeFamily builtin_scheme(SchemeKind kind, SchemeParams params) {
    SchemeFamily f;
    f.kind = kind;
    switch (kind) {
        case SchemeKind::AbelNet:
            for (std::size_t i = 0; i < params.lambdas.size(); ++i) {
                if (!(params.lambdas[i] > 1.0)) throw Error("AbelNet needs lambda_j > 1");
                if (i > 0 && !(params.lambdas[i] < params.lambdas[i - 1]))
                    throw Error("AbelNet needs lambda_j decreasing");
            }
            f.description = "(lambda_j-1)/(lambda_j-z)";
            break;
        case SchemeKind::AbelPowers:
            if (!(params.lambda > 1.0)) throw Error("AbelPowers needs lambda > 1");
            f.description = "((lambda-1)/(lambda-z))^j";
            break;
        case SchemeKind::Exponential:
            for (std::size_t i = 0; i < params.times.size(); ++i) {
                if (!(params.times[i] >= 0.0)) throw Error("Exponential needs t_j >= 0");
                if (i > 0 && !(params.times[i] > params.times[i - 1]))
                    throw Error("Exponential needs t_j increasing");
            }
            f.description = "exp(t_j(z-1))";
            break;
        case SchemeKind::Custom:
            if (params.rows.empty()) throw Error("custom scheme needs coefficient rows");
            f.description = "custom";
            break;
        case SchemeKind::Powers: f.description = "z^j"; break;
        case SchemeKind::Cesaro: f.description = "(1/j) sum_{k<j} z^k"; break;
    }
    f.params = std::move(params);
    return f;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

CheckResult check_ws1(const CoeffStream& s, std::size_t k_max, double tol) {
    CheckResult r;
    double sum = 0.0;
    const std::size_t upto = s.finite_support() ? std::min(k_max + 1, s.support) : k_max + 1;
    for (std::size_t k = 0; k < upto; ++k) sum += s(k);
    r.measured = sum;
    const double tail = s.tail_bound(k_max);
    if (std::isnan(tail)) {
        r.verdict = Verdict::Inconclusive;
        r.detail = "no tail bound";
        return r;
    }
    r.verdict = std::abs(sum - 1.0) <= tol + tail ? Verdict::Pass : Verdict::Fail;
    std::ostringstream os;
    os << "partial sum " << sum << ", tail bound " << tail;
    r.detail = os.str();
    return r;
}

CheckResult check_ws2(const CoeffStream& s, std::size_t k_max, double tol) {
    CheckResult r;
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= k_max; ++k) lo = std::min(lo, s(k));
    r.measured = lo;
    r.verdict = lo >= -tol ? Verdict::Pass : Verdict::Fail;
    r.detail = "minimum coefficient";
    return r;
}

CheckResult check_ws3(const SchemeFamily& fam, std::size_t k_max, double tol, std::size_t prefix) {
    if (prefix < 3) throw Error("WS3 check needs an index prefix of length >= 3");
    prefix = std::min(prefix, fam.length());
    if (prefix < 3) throw Error("WS3 check needs an index prefix of length >= 3");
    std::vector<CoeffStream> streams;
    for (std::size_t p = 0; p < prefix; ++p) streams.push_back(fam.stream(p));
    CheckResult r;
    r.verdict = Verdict::Pass;
    double worst = 0.0;
    for (std::size_t k = 0; k <= k_max; ++k) {
        std::vector<double> col;
        for (const auto& s : streams) col.push_back(s(k));
        const std::size_t half = prefix / 2;
        bool non_increasing = true;
        for (std::size_t p = half; p + 1 < prefix; ++p)
            if (col[p + 1] > col[p] + tol) non_increasing = false;
        const double last = col.back();
        worst = std::max(worst, last);
        const bool small = last <= tol;
        const bool decaying = last < col[half] - tol;
        if (!non_increasing) {
            if (r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Inconclusive;
                r.detail = "column k=" + std::to_string(k) + " not monotone on the prefix tail";
            }
        } else if (!small && !decaying) {
            r.verdict = Verdict::Fail;
            r.detail = "column k=" + std::to_string(k) + " does not decay";
            r.measured = last;
            return r;
        }
    }
    r.measured = worst;
    if (r.verdict == Verdict::Pass) r.detail = "pass on prefix of length " + std::to_string(prefix);
    return r;
}

CoeffStream convolve(const CoeffStream& s, const CoeffStream& t) {
    CoeffStream c;
    c.coeff = [s, t](std::size_t k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) acc += s(i) * t(k - i);
        return acc;
    };
    if (s.finite_support() && t.finite_support()) c.support = s.support + t.support - 1;
    if (s.has_tail_bound() && t.has_tail_bound()) {
        c.tail = [s, t](std::size_t k) {
            // i + l > K forces i > K/2 or l > K/2 (nonnegative coefficients).
            const std::size_t h = k / 2;
            auto mass = [k](const CoeffStream& u) {
                double m = u.tail_bound(k);
                for (std::size_t i = 0; i <= k && i < u.support; ++i) m += u(i);
                return m;
            };
            return s.tail_bound(h) * mass(t) + t.tail_bound(h) * mass(s);
        };
    }
    c.description = "(" + s.description + ")*(" + t.description + ")";
    return c;
}

namespace {

struct PowerTable {
    std::vector<CMatrix> powers;
    std::vector<double> norms;
};

PowerTable power_table(const OperatorMatrix& t, std::size_t k_max) {
    PowerTable tab;
    CMatrix p = CMatrix::Identity(static_cast<Eigen::Index>(t.dimension()), static_cast<Eigen::Index>(t.dimension()));
    for (std::size_t k = 0; k <= k_max; ++k) {
        tab.norms.push_back(op_norm(p, t.model().norm()));
        tab.powers.push_back(p);
        if (k < k_max) p = kernels::matmul(p, t.entries());
    }
    return tab;
}

void require_radius(const OperatorMatrix& t) {
    if (spectral_radius(t) > 1.0 + kWeightRadiusTol) throw Error("spectral radius exceeds 1");
}

WeightedOperator weighted_sum(const OperatorMatrix& t, const PowerTable& tab, const CoeffStream& s,
                              std::size_t k_max) {
    const auto n = static_cast<Eigen::Index>(t.dimension());
    CMatrix acc = CMatrix::Zero(n, n);
    const std::size_t upto = s.finite_support() ? std::min(k_max + 1, s.support) : k_max + 1;
    for (std::size_t k = 0; k < upto; ++k) {
        const double a = s(k);
        if (a != 0.0) acc += a * tab.powers[k];
    }
    TailReport rep;
    rep.terms = upto;
    rep.exact = s.finite_support() && s.support <= k_max + 1;
    rep.tail_bound = rep.exact ? 0.0 : s.tail_bound(k_max);
    rep.max_power_norm = *std::max_element(tab.norms.begin(), tab.norms.begin() + static_cast<long>(k_max + 1));
    rep.tail_estimate = rep.tail_bound * rep.max_power_norm;
    double head = 0.0;
    for (std::size_t k = 0; k <= k_max / 2; ++k) head = std::max(head, tab.norms[k]);
    rep.power_growth = tab.norms[k_max] > (1.0 + 1e-9) * head;
    return {t.with_entries(std::move(acc)), rep};
}

}  // namespace

WeightedOperator apply_weight(const OperatorMatrix& t, const CoeffStream& s, std::size_t k_max) {
    require_radius(t);
    const std::size_t need = s.finite_support() ? std::min(k_max, s.support - 1) : k_max;
    return weighted_sum(t, power_table(t, std::max<std::size_t>(need, 1)), s, std::max<std::size_t>(need, 1));
}

const char* to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::BoundedEvidence: return "bounded-evidence";
        case ProbeVerdict::GrowthEvidence: return "growth-evidence";
        case ProbeVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] < lo || x[i] > hi || !(x[i] > 0) || !(y[i] > 0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return 0.0;
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (m * sxy - sx * sy) / den;
}

double linear_growth_share(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= lo && x[i] <= hi && x[i] > 0.0) idx.push_back(i);
    if (idx.size() < 4) return std::numeric_limits<double>::quiet_NaN();
    RMatrix a(static_cast<Eigen::Index>(idx.size()), 3);
    RVector b(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double xi = x[idx[r]];
        a.row(static_cast<Eigen::Index>(r)) << 1.0, 1.0 / xi, xi;
        b(static_cast<Eigen::Index>(r)) = y[idx[r]];
    }
    const RVector c = a.colPivHouseholderQr().solve(b);
    const double y_end = y[idx.back()];
    if (!(y_end > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return c(2) * x[idx.back()] / y_end;
}

ProbeReport ws_bounded_probe(const OperatorMatrix& t, const SchemeFamily& fam, std::size_t k_max,
                             std::size_t budget) {
    budget = std::min(budget, fam.length());
    if (budget == 0) throw Error("probe budget must be positive");
    std::vector<CoeffStream> streams;
    std::size_t need = 1;
    for (std::size_t p = 0; p < budget; ++p) {
        streams.push_back(fam.stream(p));
        const auto& s = streams.back();
        need = std::max(need, s.finite_support() ? std::min(k_max, s.support - 1) : k_max);
    }
    const PowerTable tab = power_table(t, need);

    ProbeReport rep;
    rep.rows.resize(budget);
    kernels::parallel_for(budget, [&](std::size_t p) {
        const auto w = weighted_sum(t, tab, streams[p], need);
        ProbeRow row;
        row.index = fam.index(p);
        row.norm = op_norm(w.value);
        row.tail_bound = w.tail.tail_bound;
        row.tail_flag = std::isnan(w.tail.tail_bound) || w.tail.tail_estimate > 1e-6 || w.tail.power_growth;
        rep.rows[p] = row;
    });

    std::vector<double> xs, ys;
    for (const auto& r : rep.rows) {
        rep.max_norm = std::max(rep.max_norm, r.norm);
        xs.push_back(r.index);
        ys.push_back(r.norm);
    }
    rep.monotone_growth = true;
    for (std::size_t p = budget / 2; p + 1 < budget; ++p)
        if (!(ys[p + 1] > ys[p])) rep.monotone_growth = false;

    // Fit window: indices 10..50 when the prefix reaches that far, otherwise
    // the second half of the prefix.
    double lo = 10.0, hi = 50.0;
    if (xs.back() < 20.0) {
        lo = xs[budget / 2];
        hi = xs.back();
    }
    rep.growth_exponent = loglog_slope(xs, ys, lo, hi);
    // The log-log slope alone confuses O(1/j) transients of a convergent
    // family with slow growth, so the verdict fits y = c0 + c1/x + c2 x.
    rep.linear_share = linear_growth_share(xs, ys, lo, hi);
    const double stat = std::isnan(rep.linear_share) ? rep.growth_exponent : rep.linear_share;
    if (stat > 0.5)
        rep.verdict = ProbeVerdict::GrowthEvidence;
    else if (stat < 0.25)
        rep.verdict = ProbeVerdict::BoundedEvidence;
    else
        rep.verdict = ProbeVerdict::Inconclusive;
    return rep;
}

std::vector<ScalarSumRow> weighted_scalar_sum(const SchemeFamily& fam, const std::vector<double>& r,
                                              std::size_t count) {
    if (r.empty()) throw Error("empty r sequence");
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k] < 0.0) throw Error("r sequence must be nonnegative");
        if (k > 0 && r[k] < r[k - 1]) throw Error("r sequence must be non-decreasing");
    }
    const std::size_t k_max = r.size() - 1;
    count = std::min(count, fam.length());
    std::vector<ScalarSumRow> out;
    for (std::size_t p = 0; p < count; ++p) {
        const auto s = fam.stream(p);
        ScalarSumRow row;
        row.index = fam.index(p);
        for (std::size_t k = 0; k <= k_max && k < s.support; ++k) row.sum += s(k) * r[k];
        const double tail = s.tail_bound(k_max);
        row.tail_flag = std::isnan(tail) || tail * r.back() > 1e-9;
        out.push_back(row);
    }
    return out;
}

OrbitReport monotone_orbit_report(const OperatorMatrix& t, const LatticeVector& x, std::size_t n,
                                  double tol) {
    if (!is_positive(t)) throw Error("operator is not positive");
    if (!x.model().compatible(t.model())) throw Error("model mismatch");
    if (!x.is_real(tol) || (x.real_part().array() < -tol).any())
        throw Error("orbit vector must be nonnegative");
    CVector cur = x.entries();
    CVector next = t.entries() * cur;
    if (((next - cur).real().array() < -tol).any()) throw Error("orbit not monotone");
    OrbitReport rep;
    for (std::size_t k = 0; k <= n; ++k) {
        rep.norms.push_back(vector_norm(cur, t.model().norm()));
        next = t.entries() * cur;
        if (k < n && ((next - cur).real().array() < -tol * std::max(1.0, cur.cwiseAbs().maxCoeff())).any())
            rep.monotone = false;
        cur = next;
    }
    const double mid = rep.norms[n / 2];
    rep.bounded = rep.norms.back() <= mid * (1.0 + 1e-9) + tol;
    return rep;
}

}  // namespace perronlab
