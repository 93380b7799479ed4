#pragma once

#include <vector>

namespace qchain::detail {

// Strictly increasing k-element multi-indices over {0..n-1}, lex order.
inline std::vector<std::vector<int>> increasing_multiindices(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Sorts an index list in place; returns the permutation sign, 0 on repeats.
inline int sort_indices(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1])
            return 0;
    return sign;
}

}  // namespace qchain::detail
