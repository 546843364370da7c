#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "bbtspec/cli.hpp"
#include "bbtspec/errors.hpp"
#include "bbtspec/report.hpp"
#include "support.hpp"

using namespace bbt;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(BBTSPEC_TEST_OUT) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

std::string without_timestamp(std::string s) {
    return std::regex_replace(s, std::regex("\"generated_at\": \"[^\"]*\""), "\"generated_at\": \"\"");
}

std::string sym(const std::string& name) { return (fs::path(BBTSPEC_DATA_DIR) / "symbols" / name).string(); }

// Enough of JSON Schema for the shipped report schema.
class MiniValidator {
public:
    explicit MiniValidator(json root) : root_(std::move(root)) {}
    std::vector<std::string> validate(const json& doc) const {
        std::vector<std::string> errs;
        check(root_, doc, "$", errs);
        return errs;
    }

private:
    static bool has_type(const json& v, const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        return false;
    }
    const json& resolve(const json& s) const {
        if (!s.contains("$ref")) return s;
        const std::string ref = s["$ref"];
        REQUIRE(ref.rfind("#/$defs/", 0) == 0);
        return root_["$defs"][ref.substr(8)];
    }
    void check(const json& schema_in, const json& v, const std::string& path, std::vector<std::string>& errs) const {
        const json& s = resolve(schema_in);
        if (s.contains("type")) {
            bool ok = false;
            if (s["type"].is_array()) {
                for (const auto& t : s["type"]) ok = ok || has_type(v, t);
            } else {
                ok = has_type(v, s["type"]);
            }
            if (!ok) {
                errs.push_back(path + ": type");
                return;
            }
        }
        if (s.contains("const") && v != s["const"]) errs.push_back(path + ": const");
        if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end())
            errs.push_back(path + ": enum");
        if (v.is_object()) {
            if (s.contains("required"))
                for (const auto& r : s["required"])
                    if (!v.contains(r.get<std::string>())) errs.push_back(path + ": missing " + r.get<std::string>());
            if (s.contains("properties"))
                for (const auto& [k, sub] : s["properties"].items())
                    if (v.contains(k)) check(sub, v[k], path + "." + k, errs);
        }
        if (v.is_array()) {
            if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) errs.push_back(path + ": minItems");
            if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) errs.push_back(path + ": maxItems");
            if (s.contains("items"))
                for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", errs);
        }
    }
    json root_;
};

MiniValidator schema() {
    std::ifstream f(BBTSPEC_SCHEMA_PATH);
    REQUIRE(f);
    return MiniValidator(json::parse(f));
}

void check_schema(const fs::path& report) {
    const auto errs = schema().validate(json::parse(slurp(report)));
    for (const auto& e : errs) FAIL_CHECK(report.string() << ": " << e);
}

}  // namespace

TEST_CASE("fixed6 and csv") {
    CHECK(fixed6(-0.0) == "0.000000");
    CHECK(fixed6(-1e-9) == "0.000000");
    CHECK(fixed6(1.23456789) == "1.234568");
    CHECK(csv_points({{2, 1}, {1, 5}, {1, -5}}) == "re,im\n1,-5\n1,5\n2,1\n");
}

TEST_CASE("svg output uses six decimals and is deterministic") {
    std::vector<cplx> pts{{1, 0}, {-2, 0.5}, {3, -0.25}};
    const auto a = svg_scatter(pts, "t");
    CHECK(a == svg_scatter(pts, "t"));
    std::smatch m;
    const std::regex num("-?\\d+\\.(\\d+)");
    for (auto it = std::sregex_iterator(a.begin(), a.end(), num); it != std::sregex_iterator(); ++it)
        CHECK((*it)[1].length() == 6);
    CHECK(a.find("viewBox=\"") != std::string::npos);
}

TEST_CASE("resolution validation") {
    CHECK(valid_resolution(64));
    CHECK(valid_resolution(4096));
    CHECK_FALSE(valid_resolution(32));
    CHECK_FALSE(valid_resolution(100));
    CHECK_FALSE(valid_resolution(8192));
    RunConfig c;
    c.command = "lambda0";
    c.res = 100;
    CHECK_THROWS_AS(resolve(c), InputError);
    c.res = 0;
    resolve(c);
    CHECK(c.res == 4096);
    c.formats = {"png"};
    CHECK_THROWS_AS(resolve(c), InputError);
}

TEST_CASE("placeholder substitution") {
    json doc = json::parse(slurp(sym("b3_template.json")));
    auto out = substitute_param(doc, "zeta", "47");
    auto s = parse_symbol(out);
    CHECK(s.exact());
    CHECK(s.entry(0, 0, 0) == Scalar(47));
    CHECK_THROWS_AS(substitute_param(doc, "eta", "1"), InputError);
    CHECK(value_tag("-3/2") == "-3_2");
}

TEST_CASE("cli exit codes") {
    const auto out = scratch("exit_codes");
    const std::string o = out.string();
    std::ofstream(out / "bad.json") << "{\"k\": 2";
    CHECK(run_cli({"bbtspec", "analyze", "--symbol", (out / "bad.json").string(), "--out", o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "analyze", "--symbol", (out / "missing.json").string(), "--out", o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "lambda0", "--symbol", sym("b1.json"), "--res", "100", "--out", o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "lambda0", "--symbol", sym("b1.json"), "--format", "png", "--out", o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "lambda0", "--symbol", sym("b3_template.json"), "--out", o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "sweep", "--symbol", sym("b1.json"), "--param", "zeta", "--values", "1", "--out", o}) ==
          kExitInput);
    CHECK(run_cli({"bbtspec", "sweep", "--symbol", sym("b3_template.json"), "--param", "zeta", "--values", "", "--out",
                   o}) == kExitInput);
    CHECK(run_cli({"bbtspec", "frobnicate"}) == kExitInput);
    CHECK(run_cli({"bbtspec", "eig", "--symbol", sym("b1.json"), "--n", "1001", "--out", o}) == kExitInput);
    // a box with no Lambda0 points: analysis-level degeneracy, partial report still written
    CHECK(run_cli({"bbtspec", "analyze", "--symbol", sym("b1.json"), "--box=100,101,50,51", "--res", "64",
                   "--gamma-res", "128", "--no-g0", "--out", o}) == kExitDegenerate);
    const auto rep = json::parse(slurp(out / "report.json"));
    REQUIRE(rep["errors"].size() >= 1);
    CHECK(rep["errors"][0]["section"] == "lambda0");
    CHECK(rep["errors"][0]["kind"] == "degenerate");
    CHECK(rep["verdict"]["real"].is_null());
    CHECK(rep.contains("gamma"));
    check_schema(out / "report.json");
}

TEST_CASE("cli eig") {
    const auto out = scratch("eig");
    REQUIRE(run_cli({"bbtspec", "eig", "--symbol", sym("b1.json"), "--n", "1", "--out", out.string()}) == kExitOk);
    CHECK(slurp(out / "eig.csv") == "re,im\n3,0\n10,0\n");
    REQUIRE(run_cli({"bbtspec", "eig", "--symbol", sym("b2.json"), "--out", out.string()}) == kExitOk);
    std::ifstream f(out / "eig.csv");
    std::string line;
    int rows = -1;
    double max_im = 0;
    while (std::getline(f, line)) {
        if (rows++ < 0) continue;
        max_im = std::max(max_im, std::abs(std::stod(line.substr(line.find(',') + 1))));
    }
    CHECK(rows == 300);
    CHECK(max_im <= 1e-2);
    check_schema(out / "eig.json");
}

TEST_CASE("cli analyze is deterministic and matches the schema") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::vector<std::string> base{"bbtspec", "analyze", "--symbol", sym("gammab.json"), "--res", "256",
                                        "--gamma-res", "256", "--out"};
    auto args_a = base, args_b = base;
    args_a.push_back(a.string());
    args_b.push_back(b.string());
    REQUIRE(run_cli(args_a) == kExitOk);
    REQUIRE(run_cli(args_b) == kExitOk);
    for (const char* file : {"eig.csv", "eig.svg", "lambda0.csv", "lambda0.svg", "gamma.csv", "gamma.svg"}) {
        CAPTURE(file);
        CHECK(slurp(a / file) == slurp(b / file));
    }
    auto ja = json::parse(slurp(a / "report.json")), jb = json::parse(slurp(b / "report.json"));
    ja["config"]["out"] = jb["config"]["out"] = "";
    CHECK(without_timestamp(ja.dump(1)) == without_timestamp(jb.dump(1)));
    check_schema(a / "report.json");
    CHECK(ja["gamma"]["census"]["non_enclosing"].get<int>() >= 2);
    CHECK(ja["implicit"]["available"] == true);
}

TEST_CASE("single-value sweep equals analyze on the substituted symbol") {
    const auto sw = scratch("sweep1"), an = scratch("sweep1_analyze");
    const std::vector<std::string> common{"--res", "256", "--gamma-res", "256", "--no-g0"};
    std::vector<std::string> s{"bbtspec", "sweep", "--symbol", sym("b3_template.json"), "--param", "zeta", "--values",
                               "47", "--out", sw.string()};
    s.insert(s.end(), common.begin(), common.end());
    REQUIRE(run_cli(s) == kExitOk);
    json doc = json::parse(slurp(sym("b3_template.json")));
    std::ofstream(an / "b3_47.json") << substitute_param(doc, "zeta", "47").dump();
    std::vector<std::string> a{"bbtspec", "analyze", "--symbol", (an / "b3_47.json").string(), "--out", an.string()};
    a.insert(a.end(), common.begin(), common.end());
    REQUIRE(run_cli(a) == kExitOk);
    auto js = json::parse(slurp(sw / "report_zeta=47.json")), ja = json::parse(slurp(an / "report.json"));
    for (const char* section : {"symbol", "char_function", "eigenvalues", "lambda0", "gamma", "rays", "implicit", "verdict"}) {
        CAPTURE(section);
        CHECK(js[section] == ja[section]);
    }
    CHECK(slurp(sw / "gamma_zeta=47.svg") == slurp(an / "gamma.svg"));
    const auto summary = slurp(sw / "sweep_summary.csv");
    CHECK(summary.rfind("value,real,enclosing,min_ray_crossings", 0) == 0);
    CHECK(summary.find("\n47,real,2,") != std::string::npos);
}

TEST_CASE("cli newton-check") {
    const auto out = scratch("newton");
    REQUIRE(run_cli({"bbtspec", "newton-check", "--n", "20", "--out", out.string()}) == kExitOk);
    auto j = json::parse(slurp(out / "newton_check.json"));
    CHECK(j["newton_check"]["trials"] == 20);
    CHECK(j["newton_check"]["oracle_failures"] == 0);
    check_schema(out / "newton_check.json");
    // k = 1: the hull is always (-p,0), (q,0), (0,1)
    REQUIRE(run_cli({"bbtspec", "newton-check", "--n", "10", "--ks", "1", "--out", out.string()}) == kExitOk);
    j = json::parse(slurp(out / "newton_check.json"));
    for (const auto& t : j["newton_check"]["results"]) {
        CHECK(t["triangle"] == true);
        CHECK(t["vertices"].size() == 3);
    }
}

TEST_CASE("cli gamma and lambda0 write their documents") {
    const auto out = scratch("gl");
    REQUIRE(run_cli({"bbtspec", "gamma", "--symbol", sym("b1.json"), "--res", "256", "--out", out.string()}) == kExitOk);
    auto g = json::parse(slurp(out / "gamma.json"));
    CHECK(g["gamma"]["census"]["enclosing"] == 2);
    check_schema(out / "gamma.json");
    REQUIRE(run_cli({"bbtspec", "lambda0", "--symbol", sym("b1.json"), "--box=-10,25,-5,5", "--res", "256", "--out",
                     out.string()}) == kExitOk);
    auto l = json::parse(slurp(out / "lambda0.json"));
    CHECK(l["lambda0"]["real"] == true);
    check_schema(out / "lambda0.json");
}
