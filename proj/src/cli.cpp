#include "bbtspec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "bbtspec/errors.hpp"
#include "bbtspec/gamma.hpp"
#include "bbtspec/newton_check.hpp"
#include "bbtspec/report.hpp"
#include "bbtspec/spectra.hpp"

namespace bbt {

namespace fs = std::filesystem;

nlohmann::json substitute_param(nlohmann::json doc, const std::string& name, const std::string& value) {
    const std::string token = "$" + name;
    int hits = 0;
    std::function<void(nlohmann::json&)> walk = [&](nlohmann::json& j) {
        if (j.is_string() && j.get<std::string>() == token) {
            j = value;
            ++hits;
        } else if (j.is_array() || j.is_object()) {
            for (auto& c : j) walk(c);
        }
    };
    if (doc.contains("blocks")) walk(doc["blocks"]);
    if (hits == 0) throw InputError("placeholder \"" + token + "\" not found in the symbol");
    return doc;
}

std::string value_tag(const std::string& value) {
    std::string t;
    for (char c : value) t += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return t;
}

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open symbol file '" + path + "'");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

MatrixSymbol read_symbol(const std::string& path) {
    try {
        return parse_symbol(read_json(path));
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw InputError(path + ": " + msg);
    }
}

std::string suffixed(const std::string& stem, const std::string& tag, const std::string& ext) {
    return tag.empty() ? stem + "." + ext : stem + "_" + tag + "." + ext;
}

int exit_for(const Analysis& a) {
    for (const auto& e : a.errors)
        if (e.kind == "input") return kExitInput;
    return a.errors.empty() ? kExitOk : kExitDegenerate;
}

// writes report and figures for one analysed symbol
void emit_analysis(const Analysis& a, const RunConfig& cfg, const std::string& tag) {
    const fs::path out(cfg.out);
    if (cfg.wants("json")) write_text(out / suffixed("report", tag, "json"), a.report.dump(2) + "\n");
    if (cfg.wants("csv")) {
        write_text(out / suffixed("eig", tag, "csv"), csv_points(a.eigenvalues));
        write_text(out / suffixed("lambda0", tag, "csv"), csv_points(a.lambda0_points));
        if (a.gamma) write_text(out / suffixed("gamma", tag, "csv"), csv_contours(*a.gamma));
    }
    if (cfg.wants("svg")) {
        write_text(out / suffixed("eig", tag, "svg"), svg_scatter(a.eigenvalues, "sp(T_n)"));
        write_text(out / suffixed("lambda0", tag, "svg"), svg_scatter(a.lambda0_points, "Lambda0 sample"));
        if (a.gamma) write_text(out / suffixed("gamma", tag, "svg"), svg_contours(*a.gamma, "Gamma"));
    }
}

void report_errors(const Analysis& a) {
    for (const auto& e : a.errors) std::cerr << "bbtspec: " << e.section << " (" << e.kind << "): " << e.message << "\n";
}

int cmd_analyze(const RunConfig& cfg) {
    const auto sym = read_symbol(cfg.symbol_path);
    const Analysis a = analyze_symbol(sym, cfg);
    emit_analysis(a, cfg, "");
    report_errors(a);
    const auto& v = a.report["verdict"];
    std::cout << "k=" << v["k"] << " real=" << v["real"] << " enclosing=" << v["enclosing"]
              << " min_ray_crossings=" << v["min_ray_crossings"] << " agreement=" << v["agreement"] << "\n";
    return exit_for(a);
}

int cmd_eig(const RunConfig& cfg) {
    const auto sym = read_symbol(cfg.symbol_path);
    if (static_cast<long>(cfg.n) * sym.k() > 2000) throw InputError("n k must be <= 2000");
    const auto ev = eigenvalues(truncation(sym, cfg.n));
    const fs::path out(cfg.out);
    if (cfg.wants("csv")) write_text(out / "eig.csv", csv_points(ev));
    if (cfg.wants("svg")) write_text(out / "eig.svg", svg_scatter(ev, "sp(T_n)"));
    if (cfg.wants("json")) {
        ojson j = document_header("eigenvalues");
        j["config"] = to_json(cfg);
        ojson pts = ojson::array();
        for (const auto& z : ev) pts.push_back(to_json(z));
        j["eigenvalues"] = {{"n", cfg.n}, {"count", ev.size()}, {"max_abs_imag", max_abs_imag(ev)}, {"values", pts}};
        write_text(out / "eig.json", j.dump(2) + "\n");
    }
    std::cout << "n=" << cfg.n << " count=" << ev.size() << " max_abs_imag=" << max_abs_imag(ev) << "\n";
    return kExitOk;
}

int cmd_lambda0(const RunConfig& cfg) {
    const auto sym = read_symbol(cfg.symbol_path);
    const auto f = char_function(sym);
    const Box box = cfg.box ? *cfg.box : default_lambda0_box(sym, std::min(cfg.n, 2000 / sym.k()));
    Lambda0Options o;
    o.tau = cfg.tol;
    const auto s = sample_lambda0(f, box, cfg.res, o);
    std::vector<cplx> pts;
    for (const auto& p : s.points) pts.push_back(p.lambda);
    const auto v = reality_verdict(s);
    const fs::path out(cfg.out);
    if (cfg.wants("csv")) write_text(out / "lambda0.csv", csv_points(pts));
    if (cfg.wants("svg")) write_text(out / "lambda0.svg", svg_scatter(pts, "Lambda0 sample"));
    if (cfg.wants("json")) {
        ojson j = document_header("lambda0");
        j["config"] = to_json(cfg);
        j["lambda0"] = {{"box", to_json(box)}, {"res", cfg.res}, {"tau", cfg.tol}, {"points", s.points.size()},
                        {"skipped", s.skipped}, {"refined", s.refined}, {"cell_diagonal", s.cell_diagonal()},
                        {"real", v.real}, {"max_abs_imag", v.max_abs_imag}, {"offenders", v.offenders.size()}};
        write_text(out / "lambda0.json", j.dump(2) + "\n");
    }
    std::cout << "points=" << s.points.size() << " real=" << (v.real ? "true" : "false")
              << " max_abs_imag=" << v.max_abs_imag << "\n";
    return kExitOk;
}

int cmd_gamma(const RunConfig& cfg) {
    const auto sym = read_symbol(cfg.symbol_path);
    const auto f = char_function(sym);
    const Box box = cfg.box ? *cfg.box : default_gamma_box(f);
    const auto cs = trace_gamma(f, box, cfg.res);
    const auto c = oval_census(cs);
    const int rays = min_ray_crossings(f, cfg.rays);
    const fs::path out(cfg.out);
    if (cfg.wants("csv")) write_text(out / "gamma.csv", csv_contours(cs));
    if (cfg.wants("svg")) write_text(out / "gamma.svg", svg_contours(cs, "Gamma"));
    if (cfg.wants("json")) {
        ojson j = document_header("gamma");
        j["config"] = to_json(cfg);
        j["gamma"] = {{"box", to_json(box)},
                      {"res", cfg.res},
                      {"k", f.k},
                      {"census",
                       {{"enclosing", c.enclosing}, {"non_enclosing", c.non_enclosing},
                        {"open_or_unreliable", c.open_or_unreliable}}},
                      {"min_ray_crossings", rays}};
        write_text(out / "gamma.json", j.dump(2) + "\n");
    }
    std::cout << "enclosing=" << c.enclosing << " non_enclosing=" << c.non_enclosing
              << " open_or_unreliable=" << c.open_or_unreliable << " min_ray_crossings=" << rays << "\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.param.empty()) throw InputError("sweep needs --param");
    if (cfg.values.empty()) throw InputError("sweep needs a non-empty --values list");
    const auto doc = read_json(cfg.symbol_path);
    struct Row {
        double key;
        std::string value;
        Analysis a;
    };
    std::vector<Row> rows;
    // substitute everything first so input errors surface before any work
    std::vector<MatrixSymbol> syms;
    for (const auto& v : cfg.values) {
        const double key = to_double(parse_rational(v));
        syms.push_back(parse_symbol(substitute_param(doc, cfg.param, v)));
        rows.push_back({key, v, {}});
    }
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].a = analyze_symbol(syms[i], cfg);
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });

    std::string csv = "value,real,enclosing,min_ray_crossings,k,agreement,eig_max_abs_imag\n";
    int code = kExitOk;
    for (const auto& row : rows) {
        const std::string tag = cfg.param + "=" + value_tag(row.value);
        emit_analysis(row.a, cfg, tag);
        report_errors(row.a);
        code = std::max(code, exit_for(row.a));
        const auto& v = row.a.report["verdict"];
        auto field = [](const ojson& j) {
            if (j.is_null()) return std::string();
            if (j.is_boolean()) return std::string(j.get<bool>() ? "real" : "non-real");
            return j.dump();
        };
        const auto& e = row.a.report.contains("eigenvalues") ? row.a.report["eigenvalues"]["max_abs_imag"] : ojson(nullptr);
        char eig[64] = "";
        if (!e.is_null()) std::snprintf(eig, sizeof eig, "%.6e", e.get<double>());
        csv += row.value + "," + field(v["real"]) + "," + (v["enclosing"].is_null() ? "" : v["enclosing"].dump()) + "," +
               (v["min_ray_crossings"].is_null() ? "" : v["min_ray_crossings"].dump()) + "," + v["k"].dump() + "," +
               (v["agreement"].is_null() ? "" : (v["agreement"].get<bool>() ? "yes" : "no")) + "," + eig + "\n";
        std::cout << cfg.param << "=" << row.value << " real=" << v["real"] << " enclosing=" << v["enclosing"]
                  << " min_ray_crossings=" << v["min_ray_crossings"] << "\n";
    }
    if (cfg.wants("csv")) write_text(fs::path(cfg.out) / "sweep_summary.csv", csv);
    return code;
}

int cmd_newton_check(const RunConfig& cfg) {
    const auto s = newton_check(cfg.n, cfg.ks, cfg.seed);
    const fs::path out(cfg.out);
    auto verts = [](const NewtonTrial& t) {
        std::string v;
        for (const auto& [d, e] : t.vertices) v += (v.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(e);
        return v;
    };
    if (cfg.wants("csv")) {
        std::string csv = "trial,k,p,q,matches_oracle,triangle,in_triangle,generic,vertices\n";
        for (const auto& t : s.trials)
            csv += std::to_string(t.index) + "," + std::to_string(t.k) + "," + std::to_string(t.p) + "," +
                   std::to_string(t.q) + "," + (t.matches_oracle ? "1" : "0") + "," + (t.triangle ? "1" : "0") + "," +
                   (t.in_triangle ? "1" : "0") + "," + (t.generic ? "1" : "0") + "," + verts(t) + "\n";
        write_text(out / "newton_check.csv", csv);
    }
    if (cfg.wants("json")) {
        ojson j = document_header("newton_check");
        j["config"] = to_json(cfg);
        ojson trials = ojson::array();
        for (const auto& t : s.trials) {
            ojson v = ojson::array();
            for (const auto& [d, e] : t.vertices) v.push_back({d, e});
            trials.push_back({{"trial", t.index}, {"k", t.k}, {"p", t.p}, {"q", t.q}, {"matches_oracle", t.matches_oracle},
                              {"triangle", t.triangle}, {"in_triangle", t.in_triangle}, {"generic", t.generic},
                              {"vertices", v}});
        }
        j["newton_check"] = {{"trials", s.trials.size()}, {"oracle_failures", s.oracle_failures},
                             {"non_generic", s.non_generic}, {"non_triangle", s.non_triangle}, {"results", trials}};
        write_text(out / "newton_check.json", j.dump(2) + "\n");
    }
    std::cout << "trials=" << s.trials.size() << " oracle_failures=" << s.oracle_failures
              << " non_generic=" << s.non_generic << " non_triangle=" << s.non_triangle << "\n";
    for (const auto& t : s.trials)
        if (!t.generic) std::cout << "  non-generic trial " << t.index << " (k=" << t.k << ", hull " << verts(t) << ")\n";
    return s.oracle_failures ? kExitDegenerate : kExitOk;
}

template <class T>
std::vector<T> split_list(const std::string& text, T (*conv)(const std::string&)) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) throw InputError("empty item in list '" + text + "'");
        out.push_back(conv(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string as_string(const std::string& s) { return s; }
int as_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw InputError("");
        return v;
    } catch (const std::exception&) {
        throw InputError("'" + s + "' is not an integer");
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Spectra of banded block Toeplitz matrices", "bbtspec"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BBTSPEC_VERSION);

    RunConfig cfg;
    std::string box, gamma_box, values, formats = "csv,json,svg", ks = "2,3";
    bool no_implicit = false, no_g0 = false;

    auto common = [&](CLI::App* sc, bool symbol) {
        if (symbol) sc->add_option("--symbol", cfg.symbol_path, "symbol JSON file")->required();
        sc->add_option("--out", cfg.out, "output directory");
        sc->add_option("--format", formats, "comma list of csv, json, svg");
    };
    auto* analyze = app.add_subcommand("analyze", "full report on one symbol");
    auto* eig = app.add_subcommand("eig", "eigenvalues of T_n");
    auto* gamma = app.add_subcommand("gamma", "trace Gamma and count ovals");
    auto* lambda0 = app.add_subcommand("lambda0", "sample Lambda0");
    auto* sweep = app.add_subcommand("sweep", "analyze a parametrised symbol over a value list");
    auto* newton = app.add_subcommand("newton-check", "random Newton polygon trials");
    for (auto* sc : {analyze, eig, gamma, lambda0, sweep}) common(sc, true);
    common(newton, false);
    for (auto* sc : {analyze, gamma, lambda0, sweep}) {
        sc->add_option("--box", box, "x0,x1,y0,y1");
        sc->add_option("--res", cfg.res, "cells on the longer box side, power of two in [64, 4096]");
        sc->add_option("--tol", cfg.tol, "Lambda0 gap threshold");
        sc->add_option("--rays", cfg.rays, "ray directions");
    }
    for (auto* sc : {analyze, sweep}) {
        sc->add_option("--gamma-box", gamma_box, "Gamma box x0,x1,y0,y1");
        sc->add_option("--gamma-res", cfg.gamma_res, "Gamma resolution");
        sc->add_flag("--no-implicit", no_implicit, "skip the resultant curve");
        sc->add_flag("--no-g0", no_g0, "skip the G0 scan");
    }
    for (auto* sc : {analyze, eig, lambda0, sweep}) sc->add_option("--n", cfg.n, "truncation size");
    newton->add_option("--n", cfg.n, "number of trials")->default_val(100);
    newton->add_option("--seed", cfg.seed, "random seed");
    newton->add_option("--ks", ks, "comma list of block sizes");
    sweep->add_option("--param", cfg.param, "placeholder name ($NAME in the symbol)")->required();
    sweep->add_option("--values", values, "comma list of values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!box.empty()) cfg.box = parse_box(box);
        if (!gamma_box.empty()) cfg.gamma_box = parse_box(gamma_box);
        cfg.formats.clear();
        for (const auto& f : split_list<std::string>(formats, as_string)) cfg.formats.insert(f);
        if (cfg.command == "sweep") cfg.values = split_list<std::string>(values, as_string);
        if (cfg.command == "newton-check") cfg.ks = split_list<int>(ks, as_int);
        for (int k : cfg.ks)
            if (k < 1 || k > 6) throw InputError("--ks entries must be in [1, 6]");
        cfg.implicit = !no_implicit;
        cfg.g0 = !no_g0;
        resolve(cfg);
        fs::create_directories(cfg.out);

        if (cfg.command == "analyze") return cmd_analyze(cfg);
        if (cfg.command == "eig") return cmd_eig(cfg);
        if (cfg.command == "lambda0") return cmd_lambda0(cfg);
        if (cfg.command == "gamma") return cmd_gamma(cfg);
        if (cfg.command == "sweep") return cmd_sweep(cfg);
        return cmd_newton_check(cfg);
    } catch (const InputError& e) {
        std::cerr << "bbtspec: input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DegenerateError& e) {
        std::cerr << "bbtspec: degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ConvergenceError& e) {
        std::cerr << "bbtspec: no convergence: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "bbtspec: " << e.what() << "\n";
        return kExitInput;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace bbt
