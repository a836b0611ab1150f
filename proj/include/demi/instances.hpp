#pragma once

// Seeded generators of Anti-Robinson / Demidenko instances and the
// brute-force oracles that ground the test suites.  All randomness comes
// from SplitMix64 with fixed substreams, so a GenConfig pins the output
// bit-for-bit on every platform.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "demi/checkers.hpp"
#include "demi/core.hpp"
#include "demi/tsp.hpp"

namespace demi {

/// SplitMix64, seedable and portable.  Substreams are derived with
/// split(tag); the generators use fixed tags (0 gaps, 1 bumps, 2 symmetric
/// sums, 3 diagonal, 4 scrambling) so adding randomness to one part never
/// shifts another.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-enough draw in [0, bound); modulo bias is irrelevant at the
    /// bounds used here.
    std::uint64_t next_below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    Value next_value(Value lo, Value hi) {
        return lo + static_cast<Value>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    SplitMix64 split(std::uint64_t tag) const {
        SplitMix64 child(state_ ^ (0x632BE59BD9B4E019ULL + tag * 0x9E3779B97F4A7C15ULL));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

struct GenConfig {
    int n = 8;
    std::uint64_t seed = 1;
    Value value_lo = 0;
    Value value_hi = 9;
    int bumps = 0;
    bool symmetric_sum = false;
    bool scramble = false;
};

namespace detail {

inline void validate(const GenConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("generator: n must be >= 1");
    if (cfg.value_lo > cfg.value_hi) throw std::invalid_argument("generator: empty value range");
    if (cfg.bumps < 0) throw std::invalid_argument("generator: bumps must be >= 0");
}

/// Adds delta to every entry (k,l) with k <= p and l >= q (p < q); the
/// increment satisfies the Anti-Robinson condition, and the class is closed
/// under sums of such terms.
inline void add_bump(SymmetricMatrix& M, int p, int q, Value delta) {
    for (int k = 1; k <= p; ++k)
        for (int l = std::max(q, k + 1); l <= M.size(); ++l) M.set(k, l, M(k, l) + delta);
}

}  // namespace detail

/// Distances of n points on a line with nonnegative gaps drawn from the
/// value range; always Anti-Robinson.
inline SymmetricMatrix gen_line_metric(const GenConfig& cfg) {
    detail::validate(cfg);
    SplitMix64 rng = SplitMix64(cfg.seed).split(0);
    const Value lo = std::max<Value>(0, cfg.value_lo);
    const Value hi = std::max(lo, cfg.value_hi);

    std::vector<Value> pos(static_cast<std::size_t>(cfg.n));
    for (int i = 1; i < cfg.n; ++i) pos[i] = pos[i - 1] + rng.next_value(lo, hi);

    SymmetricMatrix M(cfg.n);
    for (int i = 1; i <= cfg.n; ++i)
        for (int j = i + 1; j <= cfg.n; ++j) M.set(i, j, pos[j - 1] - pos[i - 1]);
    return M;
}

/// Line metric plus `bumps` rectangular up-set bumps.  The output is
/// checked before returning; a failure would be a generator bug.
inline SymmetricMatrix gen_anti_robinson(const GenConfig& cfg) {
    detail::validate(cfg);
    SymmetricMatrix M = gen_line_metric(cfg);
    if (cfg.n >= 2) {
        SplitMix64 rng = SplitMix64(cfg.seed).split(1);
        for (int b = 0; b < cfg.bumps; ++b) {
            const int p = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.n - 1)));
            const int q = p + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.n - p)));
            const Value delta = 1 + rng.next_below(static_cast<std::uint64_t>(std::max<Value>(1, cfg.value_hi)));
            detail::add_bump(M, p, q, delta);
        }
    }
    if (!check_anti_robinson(M).holds)
        throw std::logic_error("gen_anti_robinson produced a non-Anti-Robinson matrix");
    return M;
}

/// Anti-Robinson base plus an optional symmetric row/column shift
/// u_i + u_j (cancels in the four-point sums) and a random diagonal.
/// With the shift on, the output usually leaves the Anti-Robinson class
/// while staying Demidenko.
inline SymmetricMatrix gen_demidenko(const GenConfig& cfg) {
    SymmetricMatrix M = gen_anti_robinson(cfg);
    if (cfg.symmetric_sum) {
        SplitMix64 rng = SplitMix64(cfg.seed).split(2);
        std::vector<Value> u(static_cast<std::size_t>(cfg.n));
        for (auto& v : u) v = rng.next_value(cfg.value_lo, cfg.value_hi);
        for (int i = 1; i <= cfg.n; ++i)
            for (int j = i + 1; j <= cfg.n; ++j) M.set(i, j, M(i, j) + u[i - 1] + u[j - 1]);
    }
    SplitMix64 diag = SplitMix64(cfg.seed).split(3);
    for (int i = 1; i <= cfg.n; ++i) M.set(i, i, diag.next_value(cfg.value_lo, cfg.value_hi));
    if (!check_demidenko(M).holds)
        throw std::logic_error("gen_demidenko produced a non-Demidenko matrix");
    return M;
}

/// Hides the structure behind a uniformly drawn permutation; returns the
/// scrambled matrix together with the permutation that was applied.
inline std::pair<SymmetricMatrix, Permutation> scramble(const SymmetricMatrix& C,
                                                        std::uint64_t seed) {
    SplitMix64 rng = SplitMix64(seed).split(4);
    std::vector<int> images(static_cast<std::size_t>(C.size()));
    for (int i = 0; i < C.size(); ++i) images[i] = i + 1;
    for (int i = C.size() - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(images[i], images[j]);
    }
    Permutation phi = Permutation::from_images(std::move(images));
    return {apply(C, phi), std::move(phi)};
}

enum class MatrixClass { Demidenko, AntiRobinson };

struct Instance {
    SymmetricMatrix matrix;
    std::optional<Permutation> hidden;  // scrambling permutation, if any
};

inline Instance generate_instance(const GenConfig& cfg, MatrixClass cls) {
    SymmetricMatrix base =
        cls == MatrixClass::Demidenko ? gen_demidenko(cfg) : gen_anti_robinson(cfg);
    if (!cfg.scramble) return Instance{std::move(base), std::nullopt};
    auto [scrambled, phi] = scramble(base, cfg.seed);
    return Instance{std::move(scrambled), std::move(phi)};
}

/// Ground-truth decision for permuted-Demidenko membership: scans n!/2
/// orders (reversals pruned) and returns the lexicographically first valid
/// permutation, if any.
inline std::optional<Permutation> oracle_permuted_demidenko(const SymmetricMatrix& C,
                                                            int max_n = 8) {
    const int n = C.size();
    if (n > max_n)
        throw std::invalid_argument("oracle_permuted_demidenko: order " + std::to_string(n) +
                                    " exceeds the bound " + std::to_string(max_n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    if (n == 1) return Permutation::identity(1);
    do {
        if (perm.front() > perm.back()) continue;
        if (demidenko_under(C, perm)) return Permutation::from_images(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// Exhaustive TSP minimum over (n-1)!/2 distinct tours (city 1 pinned
/// first, reflections pruned).  Ties keep the first tour in scan order.
inline Tour oracle_tsp(const SymmetricMatrix& C, int max_n = 10) {
    const int n = C.size();
    if (n > max_n)
        throw std::invalid_argument("oracle_tsp: order " + std::to_string(n) +
                                    " exceeds the bound " + std::to_string(max_n));
    if (n == 1) return Tour{Permutation::identity(1), C(1, 1)};

    std::vector<int> tail(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n - 1; ++i) tail[i] = i + 2;

    Value best = 0;
    std::vector<int> best_tail;
    do {
        if (n >= 3 && tail.front() > tail.back()) continue;
        Value cost = C(1, tail.front());
        for (std::size_t t = 0; t + 1 < tail.size(); ++t) cost += C(tail[t], tail[t + 1]);
        cost += C(tail.back(), 1);
        if (best_tail.empty() || cost < best) {
            best = cost;
            best_tail = tail;
        }
    } while (std::next_permutation(tail.begin(), tail.end()));

    std::vector<int> images{1};
    images.insert(images.end(), best_tail.begin(), best_tail.end());
    Tour tour{Permutation::from_images(std::move(images)), 0};
    tour.cost = tour_cost(C, tour.order);
    if (tour.cost != best) throw std::logic_error("oracle_tsp cost mismatch");
    return tour;
}

}  // namespace demi
