#include "bbtspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bbtspec/determinant.hpp"
#include "bbtspec/errors.hpp"

namespace bbt {

namespace {

bool block_is_zero(const Block& b) {
    return std::all_of(b.begin(), b.end(), [](const Scalar& s) { return s.is_zero(); });
}

Scalar parse_entry(const nlohmann::json& e, const std::string& where) {
    if (e.is_number_integer()) {
        if (e.is_number_unsigned()) return Scalar(Rational(std::to_string(e.get<unsigned long long>())));
        return Scalar(Rational(std::to_string(e.get<long long>())));
    }
    if (e.is_number_float()) {
        const double d = e.get<double>();
        if (!std::isfinite(d)) throw InputError(where + ": non-finite entry");
        return Scalar(d);
    }
    if (e.is_string()) {
        const auto text = e.get<std::string>();
        if (text.find_first_of("iIjJ") != std::string::npos)
            throw InputError(where + ": non-real entry '" + text + "'");
        if (!text.empty() && text.front() == '$')
            throw InputError(where + ": unsubstituted placeholder '" + text + "'");
        try {
            return Scalar(parse_rational(text));
        } catch (const InputError& err) {
            throw InputError(where + ": " + err.what());
        }
    }
    if (e.is_array() || e.is_object()) throw InputError(where + ": non-real entry (complex or nested value)");
    throw InputError(where + ": unsupported entry type");
}

}  // namespace

MatrixSymbol::MatrixSymbol(int k, std::map<int, Block> blocks) : k_(k) {
    if (k < 1) throw InputError("block size k must be >= 1");
    bool any_float = false;
    for (auto& [m, b] : blocks) {
        if (static_cast<int>(b.size()) != k * k)
            throw InputError("block " + std::to_string(m) + " is not " + std::to_string(k) + "x" + std::to_string(k));
        for (const auto& e : b) any_float = any_float || !e.exact();
    }
    exact_ = !any_float;
    for (auto& [m, b] : blocks) {
        if (block_is_zero(b)) continue;
        if (any_float)
            for (auto& e : b) e = e.to_float();
        blocks_.emplace(m, std::move(b));
    }
    if (blocks_.empty()) throw InputError("all blocks are zero");
    if (r() < 1 || s() < 1)
        throw InputError("symbol needs nonzero blocks at negative and positive powers (r, s >= 1); got r=" +
                         std::to_string(r()) + ", s=" + std::to_string(s()));
}

Scalar MatrixSymbol::entry(int m, int i, int j) const {
    auto it = blocks_.find(m);
    if (it == blocks_.end()) return exact_ ? Scalar(0L) : Scalar(0.0);
    return it->second[static_cast<std::size_t>(i * k_ + j)];
}

LaurentPoly<Rational> MatrixSymbol::entry_poly_exact(int i, int j) const {
    if (!exact_) throw std::logic_error("entry_poly_exact on a float symbol");
    LaurentPoly<Rational> p;
    for (const auto& [m, b] : blocks_) p.add_term(m, b[static_cast<std::size_t>(i * k_ + j)].rational());
    return p;
}

LaurentPoly<double> MatrixSymbol::entry_poly(int i, int j) const {
    LaurentPoly<double> p;
    for (const auto& [m, b] : blocks_) p.add_term(m, b[static_cast<std::size_t>(i * k_ + j)].to_double());
    return p;
}

std::vector<cplx> MatrixSymbol::eval(cplx z) const {
    std::vector<cplx> out(static_cast<std::size_t>(k_ * k_), cplx{0.0, 0.0});
    for (const auto& [m, b] : blocks_) {
        const cplx zm = std::pow(z, m);
        for (std::size_t idx = 0; idx < b.size(); ++idx) out[idx] += b[idx].to_double() * zm;
    }
    return out;
}

double MatrixSymbol::scale() const {
    double s = 0.0;
    for (const auto& [m, b] : blocks_)
        for (const auto& e : b) s = std::max(s, std::abs(e.to_double()));
    return s;
}

MatrixSymbol MatrixSymbol::to_float() const {
    std::map<int, Block> out;
    for (const auto& [m, b] : blocks_) {
        Block fb;
        fb.reserve(b.size());
        for (const auto& e : b) fb.push_back(e.to_float());
        out.emplace(m, std::move(fb));
    }
    return MatrixSymbol(k_, std::move(out));
}

MatrixSymbol parse_symbol(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("symbol document must be a JSON object");
    if (!doc.contains("k") || !doc["k"].is_number_integer()) throw InputError("missing integer field 'k'");
    const long long k = doc["k"].get<long long>();
    if (k < 1) throw InputError("block size k must be >= 1");
    if (k > 64) throw InputError("block size k too large");
    if (!doc.contains("blocks") || !doc["blocks"].is_object()) throw InputError("missing object field 'blocks'");

    std::map<int, Block> blocks;
    for (const auto& [key, rows] : doc["blocks"].items()) {
        int m = 0;
        try {
            std::size_t used = 0;
            m = std::stoi(key, &used);
            if (used != key.size()) throw InputError("");
        } catch (const std::exception&) {
            throw InputError("block key '" + key + "' is not a signed integer");
        }
        if (blocks.count(m)) throw InputError("duplicate block exponent " + key);
        if (!rows.is_array() || static_cast<long long>(rows.size()) != k)
            throw InputError("block " + key + " must have k rows");
        Block b;
        b.reserve(static_cast<std::size_t>(k * k));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (!row.is_array() || static_cast<long long>(row.size()) != k)
                throw InputError("block " + key + " row " + std::to_string(i) + " must have k entries");
            for (std::size_t j = 0; j < row.size(); ++j)
                b.push_back(parse_entry(row[j], "block " + key + " entry (" + std::to_string(i) + "," +
                                                    std::to_string(j) + ")"));
        }
        blocks.emplace(m, std::move(b));
    }
    return MatrixSymbol(static_cast<int>(k), std::move(blocks));
}

MatrixSymbol load_symbol(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open symbol file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": JSON parse error: " + e.what());
    }
    return parse_symbol(doc);
}

nlohmann::json symbol_to_json(const MatrixSymbol& sym) {
    nlohmann::json doc;
    doc["k"] = sym.k();
    nlohmann::json blocks = nlohmann::json::object();
    for (const auto& [m, b] : sym.blocks()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < sym.k(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < sym.k(); ++j) {
                const Scalar& e = b[static_cast<std::size_t>(i * sym.k() + j)];
                if (e.exact()) {
                    const Rational& q = e.rational();
                    if (q.get_den() == 1 && q.get_num().fits_slong_p()) row.push_back(q.get_num().get_si());
                    else row.push_back(q.get_str());
                } else {
                    row.push_back(e.to_double());
                }
            }
            rows.push_back(std::move(row));
        }
        blocks[std::to_string(m)] = std::move(rows);
    }
    doc["blocks"] = std::move(blocks);
    return doc;
}

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

MatrixSymbol from_periodic_sequences(const std::vector<std::vector<Scalar>>& seqs, int p, int q) {
    const int k = static_cast<int>(seqs.size());
    if (k < 1) throw InputError("need at least one periodic sequence");
    if (p < 0 || q < 0) throw InputError("sequence index range -p..q needs p, q >= 0");
    for (const auto& sq : seqs)
        if (static_cast<int>(sq.size()) != p + q + 1)
            throw InputError("ragged periodic sequences: every sequence must cover -p..q");
    const bool exact = std::all_of(seqs.begin(), seqs.end(), [](const auto& sq) {
        return std::all_of(sq.begin(), sq.end(), [](const Scalar& e) { return e.exact(); });
    });
    auto a = [&](int n, int idx) -> Scalar {  // a_{n, idx}, idx 1-based
        const Scalar& v = seqs[static_cast<std::size_t>(idx - 1)][static_cast<std::size_t>(n + p)];
        return exact ? v : v.to_float();
    };

    std::map<int, Block> blocks;
    auto block_at = [&](int m) -> Block& {
        auto it = blocks.find(m);
        if (it == blocks.end())
            it = blocks.emplace(m, Block(static_cast<std::size_t>(k * k), exact ? Scalar(0L) : Scalar(0.0))).first;
        return it->second;
    };
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            const int lo = ceil_div(-p - i + j, k);
            const int hi = floor_div(q - i + j, k);
            for (int m = lo; m <= hi; ++m) {
                const int n = k * m + i - j;
                if (n < -p || n > q) continue;
                const int idx = m > 0 ? j : (m < 0 ? i : std::min(i, j));
                block_at(m)[static_cast<std::size_t>((i - 1) * k + (j - 1))] = a(n, idx);
            }
        }
    }
    return MatrixSymbol(k, std::move(blocks));
}

std::vector<Scalar> periodic_matrix(const std::vector<std::vector<Scalar>>& seqs, int p, int q, int n) {
    const int k = static_cast<int>(seqs.size());
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(n * n));
    const bool exact = std::all_of(seqs.begin(), seqs.end(), [](const auto& sq) {
        return std::all_of(sq.begin(), sq.end(), [](const Scalar& e) { return e.exact(); });
    });
    for (int I = 1; I <= n; ++I) {
        for (int J = 1; J <= n; ++J) {
            const int d = I - J;
            if (d < -p || d > q) {
                out.push_back(exact ? Scalar(0L) : Scalar(0.0));
                continue;
            }
            int idx = std::min(I, J) % k;
            if (idx == 0) idx = k;
            const Scalar& v = seqs[static_cast<std::size_t>(idx - 1)][static_cast<std::size_t>(d + p)];
            out.push_back(exact ? v : v.to_float());
        }
    }
    return out;
}

namespace {

template <class T, class EntryFn>
LaurentPoly<T> det_of_entries(int k, EntryFn entry) {
    std::vector<LaurentPoly<T>> m;
    m.reserve(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.push_back(entry(i, j));
    return subset_determinant(m, k, LaurentPoly<T>(), LaurentPoly<T>::constant(T(1)));
}

}  // namespace

LaurentPoly<Rational> scalar_symbol_exact(const MatrixSymbol& sym) {
    return det_of_entries<Rational>(sym.k(), [&](int i, int j) { return sym.entry_poly_exact(i, j); });
}

LaurentPoly<double> scalar_symbol(const MatrixSymbol& sym) {
    if (sym.exact()) return scalar_symbol_exact(sym).map<double>([](const Rational& q) { return q.get_d(); });
    return trimmed(det_of_entries<double>(sym.k(), [&](int i, int j) { return sym.entry_poly(i, j); }));
}

}  // namespace bbt
