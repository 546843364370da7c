#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbtspec/contour.hpp"
#include "bbtspec/symbol.hpp"

namespace bbt {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "bbtspec.report";
inline constexpr int kReportSchemaVersion = 1;

/// Everything a run depends on. Zero/empty fields mean "command default";
/// resolve() fills them so the echo records the values actually used.
struct RunConfig {
    std::string command;
    std::string symbol_path;
    std::optional<Box> box;        // Lambda0 box; the Gamma box for `gamma`
    std::optional<Box> gamma_box;  // Gamma box for analyze/sweep
    int res = 0;
    int gamma_res = 0;
    double tol = 1e-3;
    int n = 100;
    std::string param;
    std::vector<std::string> values;
    std::string out = ".";
    std::set<std::string> formats{"csv", "json", "svg"};
    bool implicit = true;
    bool g0 = true;
    int g0_res = 128;
    int rays = 16;
    std::uint64_t seed = 1;
    std::vector<int> ks{2, 3};
    int threads = 0;

    bool wants(const std::string& fmt) const { return formats.count(fmt) != 0; }
};

/// Checks ranges and fills command defaults. Throws InputError.
void resolve(RunConfig& cfg);

/// Power of two in [64, 4096].
bool valid_resolution(int res);

ojson to_json(const RunConfig& cfg);
ojson to_json(const Box& b);
ojson to_json(cplx z);

/// Header common to every JSON document: schema, version, tool, timestamp.
ojson document_header(const std::string& kind);

/// "%.6f" with negative zero printed as zero.
std::string fixed6(double v);

/// Sorted by (re, im); header `re,im`.
std::string csv_points(std::vector<cplx> pts);
/// Columns component,closed,reliable,winding,index,x,y.
std::string csv_contours(const ContourSet& cs);

/// Scatter plot, viewBox = bounding box padded 5% (y up).
std::string svg_scatter(const std::vector<cplx>& pts, const std::string& title);
/// Polylines over the given box; enclosing ovals, other closed curves and
/// open pieces get different strokes.
std::string svg_contours(const ContourSet& cs, const std::string& title);

void write_text(const std::filesystem::path& path, const std::string& text);

struct SectionError {
    std::string section;
    std::string kind;  // "input", "degenerate", "convergence", "other"
    std::string message;
};

/// Output of the full pipeline on one symbol.
struct Analysis {
    ojson report;
    std::vector<cplx> eigenvalues;
    std::vector<cplx> lambda0_points;
    std::optional<ContourSet> gamma;
    std::vector<SectionError> errors;
    bool degenerate() const { return !errors.empty(); }
};

/// Runs every analysis section; a failing section is recorded in
/// report["errors"] and the rest continue.
Analysis analyze_symbol(const MatrixSymbol& sym, const RunConfig& cfg);

}  // namespace bbt
