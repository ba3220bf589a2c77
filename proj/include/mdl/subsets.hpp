#pragma once
#include <bit>
#include <cstdint>
#include <vector>

namespace mdl {

// Lexicographic order on subsets of [k] viewed as ascending index
// sequences: {0} < {0,1} < {0,2} < {1}. Used for deterministic tie-breaks.
inline bool subset_lex_less(uint32_t a, uint32_t b) {
    while (a != 0 && b != 0) {
        int ia = std::countr_zero(a);
        int ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

inline std::vector<int> subset_indices(uint32_t mask) {
    std::vector<int> out;
    while (mask != 0) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

} // namespace mdl
