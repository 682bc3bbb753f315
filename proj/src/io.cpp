#include "perronlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace perronlab::io {

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number(x, what));
    return out;
}

CMatrix matrix_from_json(const json& j, std::size_t cols, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
    CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const CVector row = vector_from_json(j[r]);
        if (static_cast<std::size_t>(row.size()) != cols)
            throw ParseError(std::string(what) + " row " + std::to_string(r) + " has " +
                             std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(CVector(m.row(r).transpose())));
    return rows;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return json(x).dump();
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

json to_json(const SpaceModel& m) {
    json j{{"dim", m.dimension()}, {"norm", to_string(m.norm())}};
    if (m.has_labels()) j["labels"] = m.labels();
    return j;
}

json to_json(const LatticeVector& v) { return to_json(v.entries()); }

json to_json(const OperatorMatrix& t) {
    return json{{"model", to_json(t.model())}, {"entries", matrix_to_json(t.entries())}};
}

json to_json(const ConstrainedOperator& t) {
    json j = to_json(t.op);
    if (t.has_constraints()) j["constraints"] = matrix_to_json(t.constraints);
    return j;
}

json to_json(const SpectralReport& rep) {
    json pairs = json::array();
    for (const auto& p : rep.pairs) {
        json basis = json::array();
        for (const auto& b : p.basis) basis.push_back(to_json(b));
        pairs.push_back({{"value", to_json(p.value)},
                         {"alg_mult", p.alg_mult},
                         {"geo_mult", p.geo_mult},
                         {"pole_order", p.pole_order},
                         {"basis", basis}});
    }
    json peripheral = json::array();
    for (const auto& p : rep.peripheral) peripheral.push_back(to_json(p.value));
    json cyc{{"verdict", to_string(rep.cyclic.verdict)}, {"detail", rep.cyclic.detail}};
    cyc["witness"] = rep.cyclic.witness ? to_json(*rep.cyclic.witness) : json(nullptr);
    json dims = json::array();
    for (const auto& d : rep.dim_verdicts)
        dims.push_back({{"value", to_json(d.value)},
                        {"theta", d.theta},
                        {"n", d.n},
                        {"dim_theta", d.dim_theta},
                        {"dim_n_theta", d.dim_n_theta},
                        {"pass", d.pass}});
    return json{{"spectral_radius", rep.spectral_radius},
                {"pairs", pairs},
                {"peripheral", peripheral},
                {"cyclic", cyc},
                {"dim_estimate", dims}};
}

json to_json(const CaseReport& rep) {
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    json facts = json::array();
    for (const auto& f : rep.facts)
        facts.push_back({{"id", f.id},
                         {"paper_ref", f.paper_ref},
                         {"status", f.pass ? "pass" : "fail"},
                         {"measured", f.measured},
                         {"expected", f.expected},
                         {"tag", f.tag}});
    return json{{"name", rep.name}, {"params", params}, {"facts", facts}};
}

json to_json(const SuiteSummary& s) {
    json counters = json::object();
    for (const auto& [k, v] : s.counters) counters[k] = v;
    return json{{"suite", s.suite},
                {"trials", s.trials},
                {"passed", s.passed},
                {"failures", s.failures},
                {"counters", counters}};
}

json to_json(const std::vector<WitnessStep>& chain) {
    json a = json::array();
    for (const auto& s : chain)
        a.push_back({{"bound", to_json(s.bound)},
                     {"lowered", s.lowered},
                     {"decrease", s.decrease},
                     {"fixed_residual", s.fixed_residual},
                     {"upper_bound", s.upper_bound}});
    return a;
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object()) {
        const double re = j.contains("re") ? number(j.at("re"), "re") : 0.0;
        const double im = j.contains("im") ? number(j.at("im"), "im") : 0.0;
        if (!j.contains("re") && !j.contains("im")) throw ParseError("complex entry needs 're' or 'im'");
        return {re, im};
    }
    throw ParseError("expected a number or {\"re\", \"im\"}, got " + j.dump());
}

CVector vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("vector must be a JSON array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

SpaceModel model_from_json(const json& j) {
    const json& d = require(j, "dim");
    if (!d.is_number_integer() || d.get<long long>() <= 0) throw ParseError("'dim' must be a positive integer");
    NormTag norm = NormTag::SupNorm;
    if (j.contains("norm")) {
        if (!j.at("norm").is_string()) throw ParseError("'norm' must be a string");
        norm = norm_tag_from_string(j.at("norm").get<std::string>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        try {
            labels = j.at("labels").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception&) {
            throw ParseError("'labels' must be a list of strings");
        }
    }
    try {
        return SpaceModel(d.get<std::size_t>(), norm, std::move(labels));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

ConstrainedOperator operator_from_json(const json& j) {
    const json& e = require(j, "entries");
    if (!e.is_array() || e.empty()) throw ParseError("'entries' must be a nonempty array of rows");
    const std::size_t n = e.size();
    const SpaceModel model = j.contains("model") ? model_from_json(j.at("model")) : SpaceModel(n, NormTag::SupNorm);
    if (model.dimension() != n)
        throw ParseError("model dimension " + std::to_string(model.dimension()) + " does not match " +
                         std::to_string(n) + " rows");
    CMatrix entries = matrix_from_json(e, n, "entries");
    OperatorMatrix op(std::move(entries), model);
    if (!j.contains("constraints")) return ConstrainedOperator(std::move(op));
    return ConstrainedOperator(std::move(op), matrix_from_json(j.at("constraints"), n, "constraints"));
}

SchemeFamily scheme_from_json(const json& j) {
    const json& k = require(j, "kind");
    if (!k.is_string()) throw ParseError("'kind' must be a string");
    const SchemeKind kind = scheme_kind_from_string(k.get<std::string>());
    SchemeParams p;
    if (j.contains("params")) {
        const json& q = j.at("params");
        if (!q.is_object()) throw ParseError("'params' must be an object");
        for (const auto& [key, val] : q.items()) {
            if (key == "lambda")
                p.lambda = number(val, "lambda");
            else if (key == "lambdas")
                p.lambdas = number_list(val, "lambdas");
            else if (key == "times")
                p.times = number_list(val, "times");
            else if (key == "rows") {
                if (!val.is_array()) throw ParseError("'rows' must be an array of arrays");
                for (const auto& r : val) p.rows.push_back(number_list(r, "rows"));
            } else
                throw ParseError("unknown scheme parameter '" + key + "'");
        }
    }
    try {
        return builtin_scheme(kind, std::move(p));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ConstrainedOperator read_operator_file(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return operator_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

std::vector<LatticeVector> parse_vector_list(const std::string& text, const SpaceModel& model) {
    std::vector<LatticeVector> out;
    auto push = [&](const json& j, const std::string& item) {
        CVector v = vector_from_json(j);
        if (static_cast<std::size_t>(v.size()) != model.dimension())
            throw ParseError("vector '" + item + "' has " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(model.dimension()));
        out.emplace_back(std::move(v), model);
    };
    // a single JSON array of arrays is accepted as well
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text.compare(first, 1, "[") == 0 &&
        text.find_first_not_of(" \t", first + 1) != std::string::npos &&
        text[text.find_first_not_of(" \t", first + 1)] == '[') {
        json all;
        try {
            all = json::parse(text);
        } catch (const nlohmann::json::parse_error&) {
            throw ParseError("cannot parse vector list '" + text + "'");
        }
        for (const auto& j : all) push(j, j.dump());
        if (out.empty()) throw ParseError("no vectors given");
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(item);
        } catch (const nlohmann::json::parse_error&) {
            throw ParseError("cannot parse vector '" + item + "'");
        }
        push(j, item);
    }
    if (out.empty()) throw ParseError("no vectors given");
    return out;
}

std::string spectral_csv(const SpectralReport& rep) {
    std::ostringstream os;
    os << "re,im,modulus,alg_mult,geo_mult,pole_order,peripheral\n";
    for (const auto& p : rep.pairs) {
        bool per = false;
        for (const auto& q : rep.peripheral) per = per || q.value == p.value;
        os << format_double(p.value.real()) << ',' << format_double(p.value.imag()) << ','
           << format_double(std::abs(p.value)) << ',' << p.alg_mult << ',' << p.geo_mult << ',' << p.pole_order
           << ',' << (per ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string case_csv(const CaseReport& rep) {
    std::ostringstream os;
    os << "case,fact,tag,status,measured,expected\n";
    for (const auto& f : rep.facts)
        os << csv_escape(rep.name) << ',' << csv_escape(f.id) << ',' << f.tag << ',' << (f.pass ? "pass" : "fail")
           << ',' << format_double(f.measured) << ',' << csv_escape(f.expected) << '\n';
    return os.str();
}

std::string probe_csv(const ProbeReport& rep) {
    std::ostringstream os;
    os << "index,norm,tail_bound,tail_flag\n";
    for (const auto& r : rep.rows)
        os << format_double(r.index) << ',' << format_double(r.norm) << ',' << format_double(r.tail_bound) << ','
           << (r.tail_flag ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace perronlab::io
