#include "bbtspec/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bbtspec/errors.hpp"
#include "bbtspec/gamma.hpp"
#include "bbtspec/implicit.hpp"
#include "bbtspec/newton.hpp"
#include "bbtspec/spectra.hpp"

#ifndef BBTSPEC_VERSION
#define BBTSPEC_VERSION "0.0.0"
#endif

namespace bbt {

bool valid_resolution(int res) { return res >= 64 && res <= 4096 && (res & (res - 1)) == 0; }

void resolve(RunConfig& cfg) {
    static const std::set<std::string> known{"csv", "json", "svg"};
    for (const auto& f : cfg.formats)
        if (!known.count(f)) throw InputError("unknown format '" + f + "' (csv, json, svg)");
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw InputError("--tol must be positive");
    if (cfg.n < 1) throw InputError("--n must be >= 1");
    if (cfg.box && !cfg.box->valid()) throw InputError("--box is empty");
    if (cfg.gamma_box && !cfg.gamma_box->valid()) throw InputError("--gamma-box is empty");
    if (cfg.res == 0) cfg.res = cfg.command == "gamma" ? 512 : 4096;
    if (cfg.gamma_res == 0) cfg.gamma_res = 512;
    if (cfg.command != "eig" && cfg.command != "newton-check") {
        if (!valid_resolution(cfg.res)) throw InputError("--res must be a power of two in [64, 4096]");
        if (!valid_resolution(cfg.gamma_res)) throw InputError("--gamma-res must be a power of two in [64, 4096]");
        if (!valid_resolution(cfg.g0_res)) throw InputError("g0 resolution must be a power of two in [64, 4096]");
    }
    if (cfg.rays < 1) throw InputError("--rays must be >= 1");
    cfg.threads = thread_count();
}

ojson to_json(const Box& b) { return ojson::array({b.x0, b.x1, b.y0, b.y1}); }
ojson to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson to_json(const RunConfig& c) {
    ojson j;
    j["command"] = c.command;
    j["symbol"] = c.symbol_path;
    j["box"] = c.box ? to_json(*c.box) : ojson(nullptr);
    j["gamma_box"] = c.gamma_box ? to_json(*c.gamma_box) : ojson(nullptr);
    j["res"] = c.res;
    j["gamma_res"] = c.gamma_res;
    j["tol"] = c.tol;
    j["n"] = c.n;
    j["param"] = c.param;
    j["values"] = c.values;
    j["out"] = c.out;
    j["formats"] = std::vector<std::string>(c.formats.begin(), c.formats.end());
    j["implicit"] = c.implicit;
    j["g0"] = c.g0;
    j["g0_res"] = c.g0_res;
    j["rays"] = c.rays;
    j["seed"] = c.seed;
    j["ks"] = c.ks;
    j["threads"] = c.threads;
    return j;
}

ojson document_header(const std::string& kind) {
    ojson j;
    j["schema"] = kReportSchema;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = kind;
    j["tool"] = {{"name", "bbtspec"}, {"version", BBTSPEC_VERSION}};
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["generated_at"] = buf;
    return j;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct View {
    double x0, y0, w, h;
};

View view_of(double x0, double x1, double y0, double y1, double pad) {
    double w = x1 - x0, h = y1 - y0;
    if (w <= 0) {
        w = std::max(1.0, h);
        x0 -= w / 2;
    }
    if (h < 0.1 * w) {
        // flat clouds (real spectra) get a band around their centre line
        const double c = 0.5 * (y0 + y1);
        h = 0.1 * w;
        y0 = c - h / 2;
    }
    return {x0 - pad * w, y0 - pad * h, w * (1 + 2 * pad), h * (1 + 2 * pad)};
}

std::string svg_open(const View& v, const std::string& title) {
    std::ostringstream o;
    // y is flipped by the group transform, so the viewBox uses -y
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fixed6(v.x0) << ' ' << fixed6(-(v.y0 + v.h)) << ' '
      << fixed6(v.w) << ' ' << fixed6(v.h) << "\" width=\"800\" height=\""
      << std::max(100, static_cast<int>(std::lround(800.0 * v.h / v.w))) << "\">\n";
    o << "<title>" << title << "</title>\n";
    o << "<g transform=\"scale(1,-1)\">\n";
    return o.str();
}

}  // namespace

std::string csv_points(std::vector<cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::string out = "re,im\n";
    for (const auto& z : pts) out += g17(z.real()) + "," + g17(z.imag()) + "\n";
    return out;
}

std::string csv_contours(const ContourSet& cs) {
    std::string out = "component,closed,reliable,winding,index,x,y\n";
    for (std::size_t c = 0; c < cs.components.size(); ++c) {
        const auto& k = cs.components[c];
        const std::string head = std::to_string(c) + "," + (k.closed ? "1" : "0") + "," + (k.reliable ? "1" : "0") +
                                 "," + (k.winding ? std::to_string(*k.winding) : std::string()) + ",";
        for (std::size_t i = 0; i < k.points.size(); ++i)
            out += head + std::to_string(i) + "," + g17(k.points[i].real()) + "," + g17(k.points[i].imag()) + "\n";
    }
    return out;
}

std::string svg_scatter(const std::vector<cplx>& pts, const std::string& title) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    if (!pts.empty()) {
        x0 = x1 = pts[0].real();
        y0 = y1 = pts[0].imag();
    }
    for (const auto& z : pts) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    const View v = view_of(x0, x1, y0, y1, 0.05);
    const double r = 0.004 * std::max(v.w, v.h);
    std::ostringstream o;
    o << svg_open(v, title);
    o << "<line x1=\"" << fixed6(v.x0) << "\" y1=\"0.000000\" x2=\"" << fixed6(v.x0 + v.w)
      << "\" y2=\"0.000000\" stroke=\"#bbb\" stroke-width=\"" << fixed6(r / 4) << "\"/>\n";
    std::vector<cplx> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const auto& z : sorted)
        o << "<circle cx=\"" << fixed6(z.real()) << "\" cy=\"" << fixed6(z.imag()) << "\" r=\"" << fixed6(r)
          << "\" fill=\"#1f4e9c\"/>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

std::string svg_contours(const ContourSet& cs, const std::string& title) {
    const Box& b = cs.box;
    const View v = view_of(b.x0, b.x1, b.y0, b.y1, 0.02);
    const double sw = 0.003 * std::max(v.w, v.h);
    std::ostringstream o;
    o << svg_open(v, title);
    o << "<rect x=\"" << fixed6(b.x0) << "\" y=\"" << fixed6(b.y0) << "\" width=\"" << fixed6(b.width())
      << "\" height=\"" << fixed6(b.height()) << "\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"" << fixed6(sw / 2)
      << "\"/>\n";
    o << "<circle cx=\"0.000000\" cy=\"0.000000\" r=\"" << fixed6(2 * sw) << "\" fill=\"#000\"/>\n";
    for (const auto& k : cs.components) {
        const char* colour = "#999";
        if (k.closed && k.simple && k.reliable) colour = (k.winding && *k.winding != 0) ? "#c0392b" : "#1f4e9c";
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << fixed6(sw) << "\" points=\"";
        for (std::size_t i = 0; i < k.points.size(); ++i) {
            if (i) o << ' ';
            o << fixed6(k.points[i].real()) << ',' << fixed6(k.points[i].imag());
        }
        o << "\"/>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path.string());
    f << text;
    if (!f) throw InputError("write failed: " + path.string());
}

namespace {

std::string poly_string(const Poly2<Rational>& g) {
    std::string s;
    // highest total degree first, then by x power
    auto keys = g.support();
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const int da = a.first + a.second, db = b.first + b.second;
        return da != db ? da > db : a.first > b.first;
    });
    for (const auto& key : keys) {
        const Rational c = g.coeff(key.first, key.second);
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string term;
        if (mag != 1 || (key.first == 0 && key.second == 0)) term = mag.get_str();
        auto var = [&](const char* name, int e) {
            if (e == 0) return;
            if (!term.empty()) term += "*";
            term += name;
            if (e > 1) term += "^" + std::to_string(e);
        };
        var("x", key.first);
        var("y", key.second);
        s += term;
    }
    return s.empty() ? "0" : s;
}

template <class F>
void guarded(const char* section, std::vector<SectionError>& errors, F&& body) {
    try {
        body();
    } catch (const InputError& e) {
        errors.push_back({section, "input", e.what()});
    } catch (const DegenerateError& e) {
        errors.push_back({section, "degenerate", e.what()});
    } catch (const ConvergenceError& e) {
        errors.push_back({section, "convergence", e.what()});
    } catch (const std::exception& e) {
        errors.push_back({section, "other", e.what()});
    }
}

}  // namespace

Analysis analyze_symbol(const MatrixSymbol& sym, const RunConfig& cfg) {
    Analysis a;
    ojson& r = a.report;
    r = document_header("analysis");
    r["config"] = to_json(cfg);
    const CharFunction f = char_function(sym);

    r["symbol"] = {{"k", sym.k()}, {"p", f.p}, {"q", f.q}, {"r", sym.r()}, {"s", sym.s()}, {"exact", sym.exact()}};

    guarded("char_function", a.errors, [&] {
        ojson cf;
        const auto hull = newton_polygon(f);
        ojson verts = ojson::array();
        for (const auto& [d, e] : hull.vertices) verts.push_back({d, e});
        cf["newton_polygon"] = verts;
        cf["triangle"] = hull.is_triangle(f.p, f.q, f.k);
        cf["support_in_triangle"] = support_in_triangle(f);
        ojson coeffs = ojson::array();
        bool all = true;
        for (int l = 0; l < f.k; ++l) {
            const auto [o, d] = coeff_ord_deg(f, l);
            const auto [po, pd] = generic_ord_deg(f.k, f.p, f.q, l);
            const bool gen = o == po && d == pd;
            all = all && gen;
            coeffs.push_back({{"l", l}, {"ord", o}, {"deg", d}, {"predicted_ord", po}, {"predicted_deg", pd}, {"generic", gen}});
        }
        cf["coefficients"] = coeffs;
        cf["generic"] = all;
        r["char_function"] = cf;
    });

    Box l0box{};
    guarded("eigenvalues", a.errors, [&] {
        if (static_cast<long>(cfg.n) * sym.k() > 2000) throw InputError("n k must be <= 2000");
        a.eigenvalues = eigenvalues(truncation(sym, cfg.n));
        r["eigenvalues"] = {{"n", cfg.n}, {"count", a.eigenvalues.size()}, {"max_abs_imag", max_abs_imag(a.eigenvalues)}};
    });

    bool have_real = false, real = false;
    guarded("lambda0", a.errors, [&] {
        l0box = cfg.box ? *cfg.box : default_lambda0_box(sym, std::min(cfg.n, 2000 / sym.k()));
        Lambda0Options o;
        o.tau = cfg.tol;
        const auto s = sample_lambda0(f, l0box, cfg.res, o);
        for (const auto& p : s.points) a.lambda0_points.push_back(p.lambda);
        ojson j;
        j["box"] = to_json(l0box);
        j["res"] = cfg.res;
        j["grid"] = {s.grid.nx, s.grid.ny};
        j["tau"] = cfg.tol;
        j["points"] = s.points.size();
        j["skipped"] = s.skipped;
        j["refined"] = s.refined;
        j["cell_diagonal"] = s.cell_diagonal();
        const auto v = reality_verdict(s);
        double lo = 1e300, hi = -1e300;
        for (const auto& p : s.points) {
            lo = std::min(lo, p.lambda.real());
            hi = std::max(hi, p.lambda.real());
        }
        j["x_range"] = {lo, hi};
        j["real"] = v.real;
        j["max_abs_imag"] = v.max_abs_imag;
        j["offenders"] = v.offenders.size();
        r["lambda0"] = j;
        have_real = true;
        real = v.real;
    });

    bool have_census = false;
    OvalCensus census;
    guarded("gamma", a.errors, [&] {
        const Box gbox = cfg.gamma_box ? *cfg.gamma_box : default_gamma_box(f);
        a.gamma = trace_gamma(f, gbox, cfg.gamma_res);
        census = oval_census(*a.gamma);
        ojson j;
        j["box"] = to_json(gbox);
        j["res"] = cfg.gamma_res;
        j["mask_radius"] = a.gamma->mask_radius;
        j["census"] = {{"enclosing", census.enclosing}, {"non_enclosing", census.non_enclosing},
                       {"open_or_unreliable", census.open_or_unreliable}};
        ojson comps = ojson::array();
        for (const auto& k : a.gamma->components)
            comps.push_back({{"closed", k.closed}, {"simple", k.simple}, {"reliable", k.reliable},
                             {"unresolved", k.unresolved}, {"origin_hairpin", k.origin_hairpin},
                             {"winding", k.winding ? ojson(*k.winding) : ojson(nullptr)}, {"length", k.length},
                             {"points", k.points.size()}});
        j["components"] = comps;
        r["gamma"] = j;
        have_census = true;
    });

    int min_cross = -1;
    guarded("rays", a.errors, [&] {
        min_cross = min_ray_crossings(f, cfg.rays);
        r["rays"] = {{"directions", cfg.rays}, {"r_min", 1e-2}, {"r_max", 1e2}, {"samples", 1024}, {"min_crossings", min_cross}};
    });

    if (cfg.implicit) {
        guarded("implicit", a.errors, [&] {
            if (!f.exact || f.k > 4 || f.p + f.q > 8) {
                r["implicit"] = {{"available", false}, {"reason", !f.exact ? "float symbol" : "size guard k <= 4, p + q <= 8"}};
                return;
            }
            const auto c = gamma_implicit(f);
            int deg = 0;
            for (const auto& [key, v] : c.g.coeffs()) deg = std::max(deg, key.first + key.second);
            r["implicit"] = {{"available", true}, {"y_power", c.y_power}, {"r2_power", c.r2_power},
                             {"terms", c.g.size()}, {"degree", deg}, {"g", poly_string(c.g)}};
        });
    }

    if (cfg.g0) {
        guarded("g0", a.errors, [&] {
            const Box gb = cfg.box ? *cfg.box : l0box;
            if (!gb.valid()) throw DegenerateError("no box for the G0 scan");
            const auto scan = g0_scan(sym, f, gb, cfg.g0_res);
            ojson cands = ojson::array();
            for (const auto& c : scan.candidates)
                cands.push_back({{"lambda", to_json(c.lambda)}, {"abs_c0", c.abs_c0}, {"abs_c0_doubled", c.abs_c0_doubled}});
            r["g0"] = {{"best_effort", true}, {"box", to_json(gb)}, {"res", cfg.g0_res}, {"evaluated", scan.evaluated},
                       {"skipped", scan.skipped}, {"candidates", cands}};
        });
    }

    ojson v;
    v["k"] = f.k;
    v["real"] = have_real ? ojson(real) : ojson(nullptr);
    v["enclosing"] = have_census ? ojson(census.enclosing) : ojson(nullptr);
    v["ovals_match_k"] = have_census ? ojson(census.enclosing == f.k) : ojson(nullptr);
    v["min_ray_crossings"] = min_cross >= 0 ? ojson(min_cross) : ojson(nullptr);
    v["rays_reach_k"] = min_cross >= 0 ? ojson(min_cross >= f.k) : ojson(nullptr);
    const bool complete = have_real && have_census;
    v["agreement"] = complete ? ojson(real == (census.enclosing == f.k)) : ojson(nullptr);
    v["note"] = "numerical evidence, not a proof";
    r["verdict"] = v;

    ojson errs = ojson::array();
    for (const auto& e : a.errors) errs.push_back({{"section", e.section}, {"kind", e.kind}, {"message", e.message}});
    r["errors"] = errs;
    return a;
}

}  // namespace bbt
