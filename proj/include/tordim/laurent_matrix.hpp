#pragma once

// Dense matrices over LaurentPoly2 and exact determinants by cofactor
// expansion with memoized minors (matrix sides stay small here).

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tordim/laurent.hpp"

namespace tordim {

struct LaurentMatrix {
    int rows = 0, cols = 0;
    std::vector<LaurentPoly2> entries;  // row-major

    LaurentMatrix() = default;
    LaurentMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

    LaurentPoly2& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
    const LaurentPoly2& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * cols + c];
    }
};

inline constexpr int kDeterminantCap = 16;

// det of the top-k rows against the column subset `mask` (k = popcount),
// expanding along row k-1 and memoizing subset minors.
inline LaurentPoly2 determinant(const LaurentMatrix& m, int side_cap = kDeterminantCap) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix not square");
    if (m.rows > side_cap) throw std::invalid_argument("determinant: side exceeds cap");
    const int n = m.rows;
    if (n == 0) return LaurentPoly2::constant(1);

    std::unordered_map<std::uint32_t, LaurentPoly2> memo;
    memo.reserve(1u << n);

    auto rec = [&](auto&& self, std::uint32_t mask) -> const LaurentPoly2& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int k = __builtin_popcount(mask);
        LaurentPoly2 det;
        int j = 0;
        for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++j) {
            int c = __builtin_ctz(rest);
            const LaurentPoly2& entry = m.at(k - 1, c);
            if (!entry.is_zero()) {
                LaurentPoly2 sub = entry * self(self, mask & ~(1u << c));
                if (j % 2 == 0)
                    det += sub;
                else
                    det -= sub;
            }
        }
        return memo.emplace(mask, std::move(det)).first->second;
    };

    memo.emplace(0u, LaurentPoly2::constant(1));
    return rec(rec, (1u << n) - 1);
}

}  // namespace tordim
