#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gman/rational.hpp"

namespace gman {

/// Sparse vector over Q: (index, value) pairs, strictly increasing index,
/// no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;

/// a += c * b.
void axpy(SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Rational& c);

/// Row echelon basis of a subspace, keyed by leading index. Rows are
/// monic at the pivot. Optionally each row remembers the combination of
/// inserted vectors that produced it.
class Echelon {
  public:
    explicit Echelon(bool track = false) : track_(track) {}

    std::size_t rank() const { return rows_.size(); }

    /// Reduces v modulo the span (leading-term reduction until the leading
    /// index has no pivot; continues through the tail when `full`).
    /// When tracking, `combo` receives the combination of inserted vectors
    /// subtracted along the way (v_out = v_in - sum combo_i * input_i).
    SparseVec reduce(SparseVec v, SparseVec* combo = nullptr, bool full = false) const;

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    /// Inserts v (the `id`-th input when tracking). Returns false if v was
    /// already in the span; with tracking, `kernel` then receives the
    /// dependency: input_id - sum combo = 0 as a vector over input ids.
    bool insert(SparseVec v, std::uint32_t id = 0, SparseVec* kernel = nullptr);

  private:
    struct Row {
        SparseVec v;
        SparseVec combo;
    };
    bool track_;
    std::map<std::uint32_t, Row> rows_;
};

/// Column-oriented matrix: column j is the image of the j-th domain basis
/// vector.
struct ColumnMatrix {
    std::size_t rows = 0;
    std::vector<SparseVec> cols;
};

std::size_t matrix_rank(const ColumnMatrix& m);
/// Basis of the kernel, as sparse combinations of columns.
std::vector<SparseVec> kernel_basis(const ColumnMatrix& m);
/// Some x with m x = b, if one exists.
std::optional<SparseVec> solve(const ColumnMatrix& m, const SparseVec& b);
/// Applies the matrix to a sparse combination of columns.
SparseVec apply(const ColumnMatrix& m, const SparseVec& x);

}  // namespace gman
