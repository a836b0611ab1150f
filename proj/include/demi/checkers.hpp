#pragma once

// Exact verification of the Demidenko four-point conditions (three
// equivalent formulations) and of the Anti-Robinson condition.  All checks
// ignore the diagonal and report a deterministic violating witness.

#include <span>

#include "demi/core.hpp"

namespace demi {

/// Full quadruple scan: C(j,i) + C(k,l) <= C(j,l) + C(k,i) for all
/// i < j < k < l.  O(n^4); witness is the lexicographically first
/// violating quadruple.
inline Verdict check_demidenko_quadruple(const SymmetricMatrix& C) {
    const int n = C.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l)
                    if (C(j, i) + C(k, l) > C(j, l) + C(k, i))
                        return Verdict{false, {i, j, k, l}};
    return Verdict{};
}

/// Adjacent-row formulation: C(j,i) + C(j+1,l) <= C(j,l) + C(j+1,i) for all
/// i < j < j+1 < l.  O(n^3).
inline Verdict check_demidenko_adjacent(const SymmetricMatrix& C) {
    const int n = C.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j + 2 <= n; ++j)
            for (int l = j + 2; l <= n; ++l)
                if (C(j, i) + C(j + 1, l) > C(j, l) + C(j + 1, i))
                    return Verdict{false, {i, j, j + 1, l}};
    return Verdict{};
}

/// Row-difference formulation, the O(n^2) check: for every j in 2..n-2,
/// max_{i<j} (C(j,i) - C(j+1,i))  <=  min_{l>j+1} (C(j,l) - C(j+1,l)).
/// A failure is reported as the quadruple (argmax i, j, j+1, argmin l).
inline Verdict check_demidenko(const SymmetricMatrix& C) {
    const int n = C.size();
    for (int j = 2; j + 2 <= n; ++j) {
        Value lo = C(j, 1) - C(j + 1, 1);
        int arg_lo = 1;
        for (int i = 2; i < j; ++i) {
            const Value d = C(j, i) - C(j + 1, i);
            if (d > lo) {
                lo = d;
                arg_lo = i;
            }
        }
        Value hi = C(j, j + 2) - C(j + 1, j + 2);
        int arg_hi = j + 2;
        for (int l = j + 3; l <= n; ++l) {
            const Value d = C(j, l) - C(j + 1, l);
            if (d < hi) {
                hi = d;
                arg_hi = l;
            }
        }
        if (lo > hi) return Verdict{false, {arg_lo, j, j + 1, arg_hi}};
    }
    return Verdict{};
}

/// Anti-Robinson condition: C(i,k) >= max(C(i,j), C(j,k)) for all i < j < k,
/// i.e. entries never decrease moving away from the diagonal.
inline Verdict check_anti_robinson(const SymmetricMatrix& C) {
    const int n = C.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                if (C(i, k) < C(i, j) || C(i, k) < C(j, k))
                    return Verdict{false, {i, j, k}};
    return Verdict{};
}

// Order-view variants: decide the condition for C reordered by `order`
// without materializing the permuted matrix.  `order[t]` is the 1-based
// index placed at position t+1.

inline bool demidenko_under(const SymmetricMatrix& C, std::span<const int> order) {
    const int n = static_cast<int>(order.size());
    for (int j = 2; j + 2 <= n; ++j) {
        const int a = order[j - 1];
        const int b = order[j];
        Value lo = C(a, order[0]) - C(b, order[0]);
        for (int i = 2; i < j; ++i) lo = std::max(lo, C(a, order[i - 1]) - C(b, order[i - 1]));
        Value hi = C(a, order[j + 1]) - C(b, order[j + 1]);
        for (int l = j + 3; l <= n; ++l) hi = std::min(hi, C(a, order[l - 1]) - C(b, order[l - 1]));
        if (lo > hi) return false;
    }
    return true;
}

inline bool anti_robinson_under(const SymmetricMatrix& C, std::span<const int> order) {
    const int n = static_cast<int>(order.size());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const Value ij = C(order[i - 1], order[j - 1]);
            for (int k = j + 1; k <= n; ++k) {
                const Value ik = C(order[i - 1], order[k - 1]);
                if (ik < ij || ik < C(order[j - 1], order[k - 1])) return false;
            }
        }
    return true;
}

}  // namespace demi
