// perronlab command line: spectrum, ws, fixed-space, gallery, verify.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 solver error.

#include "perronlab/fixed_space.hpp"
#include "perronlab/gallery.hpp"
#include "perronlab/io.hpp"
#include "perronlab/spectral.hpp"
#include "perronlab/verify.hpp"
#include "perronlab/weighting.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace pl = perronlab;
using pl::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;

std::pair<int, int> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw pl::ParseError("--n-range expects lo:hi, got '" + s + "'");
    try {
        std::size_t used = 0;
        const int lo = std::stoi(s.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(s);
        const std::string rest = s.substr(colon + 1);
        const int hi = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(s);
        if (lo > hi) throw pl::ParseError("--n-range: lo > hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw pl::ParseError("--n-range expects integers lo:hi, got '" + s + "'");
    }
}

std::vector<double> parse_numbers(const std::string& s, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw pl::ParseError("not a number: '" + item + "'");
        }
    }
    if (out.empty()) throw pl::ParseError("empty number list");
    return out;
}

pl::cplx parse_point(const std::string& s) {
    const auto v = parse_numbers(s);
    if (v.size() > 2) throw pl::ParseError("--at expects re or re,im");
    return {v[0], v.size() == 2 ? v[1] : 0.0};
}

// A builtin kind name or a path to a scheme JSON file.
pl::SchemeFamily load_scheme(const std::string& spec) {
    if (std::filesystem::exists(spec)) return pl::io::scheme_from_json(pl::io::read_json_file(spec));
    return pl::builtin_scheme(pl::scheme_kind_from_string(spec));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        pl::io::write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    std::string file;
    double band_tol = pl::kBandTol;
    int q_max = pl::kDefaultQMax;
    bool dim_check = false;
    std::string n_range = "-6:6";
    std::string json_out;
    std::string csv_out;
};

int cmd_spectrum(const SpectrumArgs& a) {
    const auto op = pl::io::read_operator_file(a.file);
    pl::SpectralOptions opts;
    opts.band_tol = a.band_tol;
    opts.q_max = a.q_max;
    opts.dim_check = a.dim_check;
    std::tie(opts.n_min, opts.n_max) = parse_range(a.n_range);
    const auto rep = pl::spectral_report(op, opts);
    // JSON goes to stdout unless some output file was requested
    if (!a.json_out.empty() || a.csv_out.empty()) emit(a.json_out, dump(pl::io::to_json(rep)));
    if (!a.csv_out.empty()) emit(a.csv_out, pl::io::spectral_csv(rep));
    if (a.dim_check && !rep.dim_check_passed()) {
        for (const auto& d : rep.dim_verdicts)
            if (!d.pass)
                std::cerr << "dim-estimate violation: theta = " << pl::io::format_double(d.theta) << ", n = " << d.n
                          << ", dim " << d.dim_theta << " > " << d.dim_n_theta << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

struct WsArgs {
    std::string scheme = "cesaro";
    std::string op;
    std::size_t k_max = 200;
    std::size_t budget = 50;
    std::string r_list;
    std::size_t count = 20;
    std::string at = "1";
    std::string csv_out;
};

int cmd_ws_probe(const WsArgs& a) {
    const auto op = pl::io::read_operator_file(a.op);
    const auto rep = pl::ws_bounded_probe(op.op, load_scheme(a.scheme), a.k_max, a.budget);
    emit(a.csv_out, pl::io::probe_csv(rep));
    std::cerr << "verdict " << pl::to_string(rep.verdict) << ", growth exponent "
              << pl::io::format_double(rep.growth_exponent) << "\n";
    return kExitOk;
}

int cmd_ws_scalar_sum(const WsArgs& a) {
    if (a.r_list.empty()) throw pl::ParseError("--r is required");
    const auto rows = pl::weighted_scalar_sum(load_scheme(a.scheme), parse_numbers(a.r_list), a.count);
    std::ostringstream os;
    os << "index,value,tail_flag\n";
    for (const auto& r : rows)
        os << pl::io::format_double(r.index) << ',' << pl::io::format_double(r.sum) << ',' << (r.tail_flag ? 1 : 0)
           << '\n';
    emit(a.csv_out, os.str());
    return kExitOk;
}

int cmd_ws_pole_order(const WsArgs& a) {
    const auto op = pl::io::read_operator_file(a.op);
    std::cout << pl::pole_order_at(op.op, parse_point(a.at)) << "\n";
    return kExitOk;
}

struct FixedArgs {
    std::string op;
    std::string vectors;
    std::string json_out;
};

int cmd_fixed_sup(const FixedArgs& a, bool modulus) {
    const auto op = pl::io::read_operator_file(a.op);
    const auto h = pl::make_fixed_space(op);
    const auto vs = pl::io::parse_vector_list(a.vectors, op.op.model());
    if (modulus && vs.size() != 1) throw pl::ParseError("modulus takes exactly one vector");
    const auto r = modulus ? pl::f_modulus(h, vs[0]) : pl::sup_in_fixed_space(h, vs);
    json j{{"value", pl::io::to_json(r.value)}, {"iterations", r.iterations}, {"monotone", r.monotone}};
    emit(a.json_out, dump(j));
    return kExitOk;
}

int cmd_fixed_sublattice(const FixedArgs& a) {
    const auto op = pl::io::read_operator_file(a.op);
    const auto h = pl::make_fixed_space(op);
    const auto r = pl::is_fixed_space_sublattice(h);
    json basis = json::array();
    for (Eigen::Index c = 0; c < h.basis.cols(); ++c) basis.push_back(pl::io::to_json(pl::CVector(h.basis.col(c).cast<pl::cplx>())));
    json j{{"dimension", h.basis.cols()}, {"basis", basis}, {"is_sublattice", r.is_sublattice}};
    j["witness"] = r.witness ? pl::io::to_json(*r.witness) : json(nullptr);
    emit(a.json_out, dump(j));
    return kExitOk;
}

struct GalleryArgs {
    std::string name;
    std::vector<std::string> params;
    std::string json_out;
    std::string csv_out;
};

int cmd_gallery_list() {
    for (const auto& c : pl::gallery_cases()) {
        std::cout << c.name << (c.implemented ? "" : " (unimplemented)") << "\n  " << c.summary << "\n";
        for (const auto& [k, v] : c.defaults) std::cout << "    --param " << k << "=" << v << "\n";
    }
    return kExitOk;
}

int cmd_gallery_run(const GalleryArgs& a) {
    pl::CaseParams overrides;
    for (const auto& p : a.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw pl::ParseError("--param expects key=value, got '" + p + "'");
        overrides[p.substr(0, eq)] = p.substr(eq + 1);
    }
    const auto rep = pl::run_case(a.name, overrides);
    for (const auto& f : rep.facts)
        std::cout << (f.pass ? "PASS " : "FAIL ") << f.id << " [" << f.tag << "] measured "
                  << pl::io::format_double(f.measured) << ", expected " << f.expected << "\n";
    std::cout << rep.name << ": " << (rep.passed() ? "all facts pass" : "FAILED") << "\n";
    if (!a.json_out.empty()) emit(a.json_out, dump(pl::io::to_json(rep)));
    if (!a.csv_out.empty()) emit(a.csv_out, pl::io::case_csv(rep));
    return rep.passed() ? kExitOk : kExitCheckFailed;
}

struct VerifyArgs {
    std::string suite;
    pl::SuiteOptions opts;
    std::string json_out;
};

int cmd_verify(const VerifyArgs& a) {
    const auto s = pl::run_suite(a.suite, a.opts);
    std::cout << s.suite << ": " << s.passed << "/" << s.trials << " pass (seed " << a.opts.seed << ", n <= "
              << a.opts.n << ")\n";
    for (const auto& f : s.failures) std::cout << "  " << f << "\n";
    if (!a.json_out.empty()) emit(a.json_out, dump(pl::io::to_json(s)));
    return s.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perronlab: peripheral spectra of positive matrices"};
    app.require_subcommand(1);
    std::function<int()> action;

    SpectrumArgs sp;
    auto* spectrum = app.add_subcommand("spectrum", "Spectral report of an operator JSON file");
    spectrum->add_option("file", sp.file, "Operator JSON")->required();
    spectrum->add_option("--band-tol", sp.band_tol, "Peripheral band tolerance");
    spectrum->add_option("--qmax", sp.q_max, "Largest denominator for rational angles");
    spectrum->add_flag("--dim-check", sp.dim_check, "Run the eigenspace-dimension estimates (exit 1 on violation)");
    spectrum->add_option("--n-range", sp.n_range, "Exponent range lo:hi for --dim-check");
    spectrum->add_option("--json", sp.json_out, "Write the JSON report here");
    spectrum->add_option("--csv", sp.csv_out, "Write the CSV report here");
    spectrum->callback([&] { action = [&] { return cmd_spectrum(sp); }; });

    WsArgs ws;
    auto* wsc = app.add_subcommand("ws", "Weighting-scheme probes");
    wsc->require_subcommand(1);
    auto* probe = wsc->add_subcommand("probe", "Norms of f_j(T) over a scheme prefix (CSV)");
    probe->add_option("--scheme", ws.scheme, "Builtin kind or scheme JSON file");
    probe->add_option("--op", ws.op, "Operator JSON")->required();
    probe->add_option("--k-max", ws.k_max, "Truncation order");
    probe->add_option("--budget", ws.budget, "Number of scheme indices");
    probe->add_option("--csv", ws.csv_out, "Output file (default stdout)");
    probe->callback([&] { action = [&] { return cmd_ws_probe(ws); }; });
    auto* ssum = wsc->add_subcommand("scalar-sum", "sum_k a_{j,k} r_k for a non-decreasing sequence r");
    ssum->add_option("--scheme", ws.scheme, "Builtin kind or scheme JSON file");
    ssum->add_option("--r", ws.r_list, "Comma separated r_0,r_1,...")->required();
    ssum->add_option("--count", ws.count, "Number of scheme indices");
    ssum->add_option("--csv", ws.csv_out, "Output file (default stdout)");
    ssum->callback([&] { action = [&] { return cmd_ws_scalar_sum(ws); }; });
    auto* pole = wsc->add_subcommand("pole-order", "Largest Jordan block at a point");
    pole->add_option("--op", ws.op, "Operator JSON")->required();
    pole->add_option("--at", ws.at, "Point re or re,im");
    pole->callback([&] { action = [&] { return cmd_ws_pole_order(ws); }; });

    FixedArgs fx;
    auto* fixed = app.add_subcommand("fixed-space", "Fixed space of a Markov operator");
    fixed->require_subcommand(1);
    auto* sup = fixed->add_subcommand("sup", "Supremum in the fixed space");
    sup->add_option("--op", fx.op, "Operator JSON")->required();
    sup->add_option("--vectors", fx.vectors, "Vectors \"[..];[..]\"")->required();
    sup->add_option("--json", fx.json_out, "Output file (default stdout)");
    sup->callback([&] { action = [&] { return cmd_fixed_sup(fx, false); }; });
    auto* mod = fixed->add_subcommand("modulus", "Modulus in the fixed space");
    mod->add_option("--op", fx.op, "Operator JSON")->required();
    mod->add_option("--vector,--vectors", fx.vectors, "Vector \"[..]\"")->required();
    mod->add_option("--json", fx.json_out, "Output file (default stdout)");
    mod->callback([&] { action = [&] { return cmd_fixed_sup(fx, true); }; });
    auto* subl = fixed->add_subcommand("sublattice", "Is the fixed space a sublattice?");
    subl->add_option("--op", fx.op, "Operator JSON")->required();
    subl->add_option("--json", fx.json_out, "Output file (default stdout)");
    subl->callback([&] { action = [&] { return cmd_fixed_sublattice(fx); }; });

    GalleryArgs ga;
    auto* gallery = app.add_subcommand("gallery", "Worked examples with checked facts");
    gallery->require_subcommand(1);
    auto* glist = gallery->add_subcommand("list", "List cases and default parameters");
    glist->callback([&] { action = [] { return cmd_gallery_list(); }; });
    auto* grun = gallery->add_subcommand("run", "Run a case");
    grun->add_option("name", ga.name, "Case name")->required();
    grun->add_option("--param", ga.params, "Override key=value (repeatable)");
    grun->add_option("--json", ga.json_out, "Write the CaseReport JSON here");
    grun->add_option("--csv", ga.csv_out, "Write the CaseReport CSV here");
    grun->callback([&] { action = [&] { return cmd_gallery_run(ga); }; });

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Seeded property suites");
    verify->add_option("suite", va.suite, "Suite name")->required();
    verify->add_option("--trials", va.opts.trials, "Number of trials");
    verify->add_option("--seed", va.opts.seed, "64-bit seed");
    verify->add_option("--n", va.opts.n, "Dimension cap");
    verify->add_option("--json", va.json_out, "Write the summary JSON here");
    verify->callback([&] { action = [&] { return cmd_verify(va); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        return action();
    } catch (const pl::ParseError& e) {
        std::cerr << "perronlab: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "perronlab: " << e.what() << "\n";
        return kExitSolver;
    }
}
