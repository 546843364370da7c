#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbtspec/laurent.hpp"
#include "bbtspec/scalar.hpp"

namespace bbt {

/// k x k block, row-major.
using Block = std::vector<Scalar>;

/// Matrix-valued Laurent symbol B(z) = sum_{m=-r}^{s} A_m z^m with real
/// entries. Only nonzero blocks are stored; r, s >= 1 always holds.
class MatrixSymbol {
public:
    /// Validates and normalizes: trims zero blocks, checks k, square blocks
    /// and r, s >= 1. A symbol with any float entry is converted to float
    /// mode as a whole.
    MatrixSymbol(int k, std::map<int, Block> blocks);

    int k() const { return k_; }
    int r() const { return -blocks_.begin()->first; }
    int s() const { return blocks_.rbegin()->first; }
    bool exact() const { return exact_; }
    const std::map<int, Block>& blocks() const { return blocks_; }

    /// (A_m)_{ij}, zero outside the band. 0-based i, j.
    Scalar entry(int m, int i, int j) const;
    LaurentPoly<Rational> entry_poly_exact(int i, int j) const;
    LaurentPoly<double> entry_poly(int i, int j) const;

    /// B(z) as a row-major k x k complex matrix.
    std::vector<cplx> eval(cplx z) const;

    /// Largest |entry| over all blocks.
    double scale() const;

    MatrixSymbol to_float() const;

private:
    int k_;
    std::map<int, Block> blocks_;
    bool exact_ = true;
};

/// Symbol JSON: {"k": int, "blocks": {"<m>": [[entry, ...], ...], ...}}.
/// Entries: JSON integers (exact), JSON decimals (float), or strings holding
/// an exact rational ("a/b", "2.5", "-3"). Throws InputError.
MatrixSymbol parse_symbol(const nlohmann::json& doc);
MatrixSymbol load_symbol(const std::filesystem::path& path);
nlohmann::json symbol_to_json(const MatrixSymbol& sym);

/// Builds B(z) from the k periodic diagonal sequences of a k-Toeplitz
/// matrix: seqs[i][n + p] = a_{n, i+1} for -p <= n <= q.
MatrixSymbol from_periodic_sequences(const std::vector<std::vector<Scalar>>& seqs, int p, int q);

/// Scalar symbol b(z) = det B(z). The exact version requires exact().
LaurentPoly<double> scalar_symbol(const MatrixSymbol& sym);
LaurentPoly<Rational> scalar_symbol_exact(const MatrixSymbol& sym);

/// Dense n x n (row-major) k-periodic matrix with A_{I,J} = a_{I-J, min(I,J) mod k},
/// built straight from the sequences (no symbol involved).
std::vector<Scalar> periodic_matrix(const std::vector<std::vector<Scalar>>& seqs, int p, int q, int n);

}  // namespace bbt
