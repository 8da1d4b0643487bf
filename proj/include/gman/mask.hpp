#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace gman {

/// Subset of a basis as a bitmask; used for exterior monomials
/// e_{i1}^ ... ^ e_{ip} (ascending) and for d_{j1} ^ ... ^ d_{jr}.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(std::size_t i) { return Mask{1} << i; }

/// Sign of reordering (a) ^ (b) into ascending order; 0 when they overlap.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int swaps = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        // elements of a above j must pass over it
        Mask above = (j >= 31) ? 0 : (a & ~((Mask{2} << j) - 1));
        swaps += std::popcount(above);
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

/// Number of elements of m strictly below index i.
inline int rank_below(Mask m, std::size_t i) { return std::popcount(m & (bit(i) - 1)); }

inline std::vector<std::size_t> mask_indices(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

/// All masks over `n` elements with exactly `k` bits, ascending.
inline std::vector<Mask> masks_of_size(std::size_t n, int k) {
    std::vector<Mask> out;
    if (k < 0 || static_cast<std::size_t>(k) > n) return out;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (std::popcount(m) == k) out.push_back(m);
    }
    return out;
}

inline std::string mask_to_string(Mask m) {
    std::string s = "{";
    bool first = true;
    for (auto i : mask_indices(m)) {
        s += (first ? "" : ",") + std::to_string(i);
        first = false;
    }
    return s + "}";
}

}  // namespace gman
