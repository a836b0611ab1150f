#pragma once

// Recognition of permuted Anti-Robinson matrices.  The recognizer runs a
// similarity-first-search (SFS) multisweep: a breadth-first-style traversal
// that always visits the unvisited index most similar to the visited ones,
// repeated with tie-breaking driven by the previous sweep.  For a matrix
// that is a permuted Anti-Robinson matrix, some sweep among the first n-1
// produces a valid order; every returned order is re-verified, so a
// positive answer is unconditionally sound.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "demi/checkers.hpp"
#include "demi/core.hpp"

namespace demi {

struct ArOutcome {
    bool recognized = false;
    std::optional<Permutation> permutation;
};

struct ArConfig {
    // Inputs up to this order bypass the multisweep and use the exhaustive
    // scan instead.  The multisweep is complete on its own, so the default
    // keeps it in charge everywhere.
    int exhaustive_threshold = 0;
};

namespace detail {

// One SFS sweep.  `priority` lists all indices; earlier entries win ties.
// The next visited index is the one whose dissimilarities to the already
// visited indices form the lexicographically smallest vector, i.e. the one
// most similar to the visited set.  Implemented as ordered partition
// refinement: visiting p splits every block by the value C(p,.) ascending,
// stably, so the within-block order keeps encoding the tie-break priority.
inline std::vector<int> sfs_sweep(const SymmetricMatrix& C, const std::vector<int>& priority) {
    const int n = static_cast<int>(priority.size());
    std::vector<std::vector<int>> blocks{priority};
    std::vector<int> order;
    order.reserve(n);

    std::vector<std::vector<int>> next;
    std::vector<std::pair<Value, int>> keyed;
    while (!blocks.empty()) {
        const int p = blocks.front().front();
        order.push_back(p);
        blocks.front().erase(blocks.front().begin());
        if (blocks.front().empty()) blocks.erase(blocks.begin());

        next.clear();
        for (auto& block : blocks) {
            keyed.clear();
            keyed.reserve(block.size());
            for (int v : block) keyed.emplace_back(C(p, v), v);
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t start = 0;
            while (start < keyed.size()) {
                std::size_t end = start;
                while (end < keyed.size() && keyed[end].first == keyed[start].first) ++end;
                std::vector<int> group;
                group.reserve(end - start);
                for (std::size_t t = start; t < end; ++t) group.push_back(keyed[t].second);
                next.push_back(std::move(group));
                start = end;
            }
        }
        blocks = std::move(next);
        next.clear();
    }
    return order;
}

// Lexicographically smallest Anti-Robinson order, by exhaustive scan over
// n!/2 candidates (orders with first image > last image are reversals of
// scanned ones and are skipped).
inline std::optional<std::vector<int>> exhaustive_ar_order(const SymmetricMatrix& C) {
    const int n = C.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    if (n == 1) return perm;
    do {
        if (perm.front() > perm.back()) continue;
        if (anti_robinson_under(C, perm)) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

inline Permutation canonical_orientation(Permutation psi) {
    Permutation rev = reverse(psi);
    return rev.images() < psi.images() ? rev : psi;
}

inline Permutation verified_ar_permutation(const SymmetricMatrix& C, std::vector<int> order) {
    Permutation psi = canonical_orientation(Permutation::from_images(std::move(order)));
    if (!check_anti_robinson(apply(C, psi)).holds)
        throw std::logic_error("anti-Robinson self-verification failed");
    return psi;
}

}  // namespace detail

/// Complete and sound recognizer: returns an Anti-Robinson permutation for C
/// whenever one exists, canonicalized to the lexicographically smaller of
/// the order and its reversal, and re-verified before returning.
inline ArOutcome recognize_anti_robinson(const SymmetricMatrix& C, const ArConfig& cfg = {}) {
    const int n = C.size();
    if (n <= 2) return ArOutcome{true, Permutation::identity(n)};

    if (n <= cfg.exhaustive_threshold) {
        auto order = detail::exhaustive_ar_order(C);
        if (!order) return ArOutcome{};
        return ArOutcome{true, detail::verified_ar_permutation(C, std::move(*order))};
    }

    std::vector<int> priority(n);
    for (int i = 0; i < n; ++i) priority[i] = i + 1;

    // Each sweep is a deterministic function of the previous order, so a
    // repeated order means all later sweeps rerun already-checked orders.
    std::vector<std::vector<int>> seen;
    for (int sweep = 1; sweep <= n - 1; ++sweep) {
        std::vector<int> order = detail::sfs_sweep(C, priority);
        if (anti_robinson_under(C, order))
            return ArOutcome{true, detail::verified_ar_permutation(C, std::move(order))};
        if (std::find(seen.begin(), seen.end(), order) != seen.end()) break;
        seen.push_back(order);
        // Next sweep breaks ties in favor of the index visited latest.
        priority.assign(order.rbegin(), order.rend());
    }
    return ArOutcome{};
}

/// Reference oracle: exhaustive scan over n!/2 orders.  Same contract as
/// recognize_anti_robinson but refuses inputs above the size bound.
inline ArOutcome brute_force_ar(const SymmetricMatrix& C, int max_n = 8) {
    if (C.size() > max_n)
        throw std::invalid_argument("brute_force_ar: order " + std::to_string(C.size()) +
                                    " exceeds the bound " + std::to_string(max_n));
    if (C.size() <= 2) return ArOutcome{true, Permutation::identity(C.size())};
    auto order = detail::exhaustive_ar_order(C);
    if (!order) return ArOutcome{};
    return ArOutcome{true, detail::verified_ar_permutation(C, std::move(*order))};
}

}  // namespace demi
