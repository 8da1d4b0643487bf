#include "gman/linalg.hpp"

namespace gman {

void axpy(SparseVec& a, const Rational& c, const SparseVec& b) {
    if (gman::is_zero(c) || b.empty()) return;
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second + c * b[j].second;
            if (!gman::is_zero(v)) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

SparseVec scaled(const SparseVec& v, const Rational& c) {
    SparseVec out;
    if (gman::is_zero(c)) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, x * c);
    return out;
}

SparseVec Echelon::reduce(SparseVec v, SparseVec* combo, bool full) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = rows_.find(v[pos].first);
        if (it == rows_.end()) {
            if (!full) break;
            ++pos;
            continue;
        }
        Rational c = -v[pos].second;
        axpy(v, c, it->second.v);
        if (combo && track_) axpy(*combo, -c, it->second.combo);
    }
    return v;
}

bool Echelon::insert(SparseVec v, std::uint32_t id, SparseVec* kernel) {
    SparseVec combo;
    v = reduce(std::move(v), track_ ? &combo : nullptr);
    if (v.empty()) {
        if (kernel && track_) {
            // input_id - combo reduces to zero
            SparseVec k{{id, Rational(1)}};
            axpy(k, Rational(-1), combo);
            *kernel = std::move(k);
        }
        return false;
    }
    Rational inv = 1 / v.front().second;
    Row row;
    row.v = scaled(v, inv);
    if (track_) {
        SparseVec c{{id, Rational(1)}};
        axpy(c, Rational(-1), combo);
        row.combo = scaled(c, inv);
    }
    rows_.emplace(row.v.front().first, std::move(row));
    return true;
}

std::size_t matrix_rank(const ColumnMatrix& m) {
    Echelon e;
    for (const auto& c : m.cols) e.insert(c);
    return e.rank();
}

std::vector<SparseVec> kernel_basis(const ColumnMatrix& m) {
    Echelon e(true);
    std::vector<SparseVec> out;
    for (std::uint32_t j = 0; j < m.cols.size(); ++j) {
        SparseVec k;
        if (!e.insert(m.cols[j], j, &k)) out.push_back(std::move(k));
    }
    return out;
}

std::optional<SparseVec> solve(const ColumnMatrix& m, const SparseVec& b) {
    Echelon e(true);
    for (std::uint32_t j = 0; j < m.cols.size(); ++j) e.insert(m.cols[j], j);
    SparseVec combo;
    SparseVec r = e.reduce(b, &combo, false);
    if (!r.empty()) return std::nullopt;
    return combo;
}

SparseVec apply(const ColumnMatrix& m, const SparseVec& x) {
    SparseVec out;
    for (const auto& [j, c] : x) axpy(out, c, m.cols[j]);
    return out;
}

}  // namespace gman
