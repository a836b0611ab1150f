#pragma once

// Recognition of permuted Demidenko matrices.  For each anchor pair (p,q)
// the matrix is normalized so that row/column p becomes constant, a partial
// permutation with p first and q last is extended by the candidate search
// (argmin-set recursion plus Anti-Robinson recognition on submatrices), and
// a completed candidate is accepted only if the reordered matrix passes the
// O(n^2) Demidenko check.

#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "demi/ar_recognition.hpp"
#include "demi/checkers.hpp"
#include "demi/core.hpp"

namespace demi {

/// Normalization against row p: result(i,j) = C(i,j) - C(i,p) - C(p,j).
/// Row and column p of the result are constant with value -C(p,p), and the
/// Demidenko conditions are unaffected (the offsets cancel in every sum).
inline SymmetricMatrix normalize(const SymmetricMatrix& C, int p) {
    const int n = C.size();
    if (p < 1 || p > n) throw std::invalid_argument("normalize: index out of range");
    SymmetricMatrix out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) out.set(i, j, C(i, j) - C(i, p) - C(p, j));
    return out;
}

/// Minimum of the anchored sums over the free indices, with the argmin set
/// (ascending) and the remaining free indices (ascending).
struct MinSet {
    Value min_sum = 0;
    std::vector<int> argmin;  // every member attains min_sum exactly
    std::vector<int> others;

    bool empty() const { return argmin.empty(); }
};

/// Per-index accumulator for sum_{x<=r} Cn(i, pi(x)) - r * Cn(i, pi(n)).
/// Each newly fixed prefix slot contributes one addition per free index, so
/// a whole candidate search costs O(n^2) accumulator work.
class AnchoredSums {
public:
    explicit AnchoredSums(int n) : sums_(static_cast<std::size_t>(n) + 1, 0) {}

    int applied_prefix() const { return applied_; }
    Value sum_for(int i) const { return sums_[static_cast<std::size_t>(i)]; }

private:
    friend MinSet compute_min_set(const SymmetricMatrix&, const PartialPermutation&, AnchoredSums&);
    std::vector<Value> sums_;
    int applied_ = 0;
};

inline MinSet compute_min_set(const SymmetricMatrix& Cn, const PartialPermutation& pi,
                              AnchoredSums& acc) {
    const int n = pi.size();
    const int q = pi.at(n);
    std::vector<int> free = pi.free_indices();

    for (int x = acc.applied_ + 1; x <= pi.prefix_len(); ++x) {
        const int v = pi.at(x);
        for (int i : free) acc.sums_[static_cast<std::size_t>(i)] += Cn(i, v) - Cn(i, q);
    }
    acc.applied_ = pi.prefix_len();

    MinSet out;
    if (free.empty()) return out;  // base case; caller stops recursing

    Value best = acc.sum_for(free.front());
    for (int i : free) best = std::min(best, acc.sum_for(i));
    out.min_sum = best;
    for (int i : free)
        (acc.sum_for(i) == best ? out.argmin : out.others).push_back(i);
    return out;
}

/// Bordered matrix D for the strict middle case 1 < |K| < |free|: the inner
/// block is Cn[K]; the appended row/column carries the cross-sums
/// S_i = sum_{l in L} Cn(K_i, l) shifted by B = 1 + max inner |entry| +
/// max |S|, so border entries strictly dominate the inner block while
/// keeping the S-order.  Border diagonal is 0 (never read).
inline SymmetricMatrix build_border_matrix(const SymmetricMatrix& Cn, std::span<const int> K,
                                           std::span<const int> L) {
    const int k = static_cast<int>(K.size());
    if (k < 2 || L.empty())
        throw std::logic_error("build_border_matrix: needs 1 < |K| < |free|");

    SymmetricMatrix D(k + 1);
    Value max_inner = 0;
    for (int a = 1; a <= k; ++a)
        for (int b = a; b <= k; ++b) {
            const Value v = Cn(K[a - 1], K[b - 1]);
            D.set(a, b, v);
            if (b > a) max_inner = std::max(max_inner, v < 0 ? -v : v);
        }

    std::vector<Value> cross(static_cast<std::size_t>(k));
    Value max_cross = 0;
    for (int a = 1; a <= k; ++a) {
        Value s = 0;
        for (int l : L) s += Cn(K[a - 1], l);
        cross[a - 1] = s;
        max_cross = std::max(max_cross, s < 0 ? -s : s);
    }

    const Value shift = 1 + max_inner + max_cross;
    for (int a = 1; a <= k; ++a) D.set(a, k + 1, cross[a - 1] + shift);
    D.set(k + 1, k + 1, 0);
    return D;
}

/// Test instrumentation: one record per candidate-search step, taken right
/// after the min-set computation.
struct CandidateStep {
    std::vector<int> prefix;  // pi(1..r) at the time of the step
    int last;                 // pi(n)
    MinSet min_set;
    std::vector<std::pair<int, Value>> sums;  // (free index, accumulated sum)
};
using CandidateTrace = std::vector<CandidateStep>;

/// Extends pi to a full candidate permutation, or reports that no Demidenko
/// permutation with this prefix and last slot can exist.  A true result is
/// a candidate only; the caller still verifies the reordered matrix.
inline bool check_candidate(const SymmetricMatrix& Cn, PartialPermutation& pi,
                            const ArConfig& ar_cfg = {}, CandidateTrace* trace = nullptr) {
    AnchoredSums acc(pi.size());
    for (;;) {
        MinSet ms = compute_min_set(Cn, pi, acc);
        if (ms.empty()) return true;

        if (trace) {
            CandidateStep step;
            for (int x = 1; x <= pi.prefix_len(); ++x) step.prefix.push_back(pi.at(x));
            step.last = pi.at(pi.size());
            for (int i : ms.argmin) step.sums.emplace_back(i, acc.sum_for(i));
            for (int i : ms.others) step.sums.emplace_back(i, acc.sum_for(i));
            std::sort(step.sums.begin(), step.sums.end());
            step.min_set = ms;
            trace->push_back(std::move(step));
        }

        if (ms.argmin.size() == 1) {
            // Forced next slot.
            pi.fix_next(ms.argmin.front());
            continue;
        }

        if (ms.others.empty()) {
            // The argmin set is the whole free set: one Anti-Robinson
            // recognition on Cn[K] finishes the candidate.
            SymmetricMatrix sub = submatrix(Cn, ms.argmin);
            ArOutcome out = recognize_anti_robinson(sub, ar_cfg);
            if (!out.recognized) return false;
            const Permutation& psi = *out.permutation;
            for (int i = 1; i <= psi.size(); ++i) pi.fix_next(ms.argmin[psi(i) - 1]);
            return true;
        }

        // Strict middle case: recognize the bordered matrix, pin the border
        // vertex to the end, and fix the |K| slots in the recognized order.
        SymmetricMatrix D = build_border_matrix(Cn, ms.argmin, ms.others);
        ArOutcome out = recognize_anti_robinson(D, ar_cfg);
        if (!out.recognized) return false;
        Permutation psi = *out.permutation;
        const int border = static_cast<int>(ms.argmin.size()) + 1;
        if (psi(border) != border) {
            if (psi(1) == border)
                psi = reverse(psi);
            else
                return false;  // unreachable with dominant borders
        }
        for (int i = 1; i < border; ++i) pi.fix_next(ms.argmin[psi(i) - 1]);
    }
}

struct RecognitionReport {
    bool recognized = false;
    std::optional<Permutation> permutation;
    std::optional<std::pair<int, int>> anchor;
    long pairs_tried = 0;
    std::chrono::microseconds elapsed{0};
};

struct RecognitionConfig {
    int jobs = 1;
    // Scan only anchor pairs with p < q; sound because the Demidenko class
    // is closed under order reversal.  Off by default.
    bool halve_pairs = false;
    ArConfig ar;
};

namespace detail {

inline long pair_count(int n, bool halve) {
    return halve ? static_cast<long>(n) * (n - 1) / 2 : static_cast<long>(n) * (n - 1);
}

// 1-based position of (p,q) in the lexicographic scan order.
inline long pair_index(int n, int p, int q, bool halve) {
    if (halve) {
        long before = 0;
        for (int t = 1; t < p; ++t) before += n - t;
        return before + (q - p);
    }
    return static_cast<long>(p - 1) * (n - 1) + (q - (q > p ? 1 : 0));
}

// Runs the candidate search plus final verification for one anchor pair.
inline std::optional<Permutation> try_anchor(const SymmetricMatrix& C, const SymmetricMatrix& Cn,
                                             int p, int q, const ArConfig& ar_cfg) {
    PartialPermutation pi(C.size(), p, q);
    if (!check_candidate(Cn, pi, ar_cfg)) return std::nullopt;
    Permutation perm = pi.to_permutation();
    if (!check_demidenko(apply(C, perm)).holds) return std::nullopt;
    return perm;
}

}  // namespace detail

/// Decides whether C is a permuted Demidenko matrix and emits a Demidenko
/// permutation in the positive case.  The answer corresponds to the
/// lexicographically smallest successful anchor pair regardless of worker
/// count; pairs_tried is the scan position of that pair (or the total pair
/// count on failure).
inline RecognitionReport recognize_demidenko(const SymmetricMatrix& C,
                                             const RecognitionConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = C.size();
    RecognitionReport rep;

    auto finish = [&](RecognitionReport r) {
        r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - t0);
        return r;
    };

    if (n <= 3) {
        // Conditions are vacuous below order 4.
        rep.recognized = true;
        rep.permutation = Permutation::identity(n);
        return finish(std::move(rep));
    }

    const long total_pairs = detail::pair_count(n, cfg.halve_pairs);
    const long kNone = std::numeric_limits<long>::max();

    std::atomic<long> best_key{kNone};
    std::mutex best_mutex;
    std::optional<Permutation> best_perm;
    std::pair<int, int> best_anchor{0, 0};

    auto scan_row = [&](int p) {
        const SymmetricMatrix Cn = normalize(C, p);
        const int q_begin = cfg.halve_pairs ? p + 1 : 1;
        for (int q = q_begin; q <= n; ++q) {
            if (q == p) continue;
            const long key = detail::pair_index(n, p, q, cfg.halve_pairs);
            // Keys grow with q inside a row, so everything after a known
            // success can be dropped.
            if (key > best_key.load(std::memory_order_relaxed)) return;
            auto perm = detail::try_anchor(C, Cn, p, q, cfg.ar);
            if (!perm) continue;
            std::lock_guard<std::mutex> lock(best_mutex);
            if (key < best_key.load(std::memory_order_relaxed)) {
                best_key.store(key, std::memory_order_relaxed);
                best_perm = std::move(*perm);
                best_anchor = {p, q};
            }
        }
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (int p = 1; p <= n; ++p) {
            if (cfg.halve_pairs && p == n) break;
            const int first_q = cfg.halve_pairs ? p + 1 : (p == 1 ? 2 : 1);
            if (detail::pair_index(n, p, first_q, cfg.halve_pairs) >
                best_key.load(std::memory_order_relaxed))
                break;
            scan_row(p);
        }
    } else {
        std::atomic<int> next_p{1};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            try {
                for (;;) {
                    const int p = next_p.fetch_add(1);
                    if (p > n || (cfg.halve_pairs && p == n)) return;
                    const int first_q = cfg.halve_pairs ? p + 1 : (p == 1 ? 2 : 1);
                    if (detail::pair_index(n, p, first_q, cfg.halve_pairs) >
                        best_key.load(std::memory_order_relaxed))
                        return;
                    scan_row(p);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    const long key = best_key.load();
    if (key == kNone) {
        rep.pairs_tried = total_pairs;
        return finish(std::move(rep));
    }
    rep.recognized = true;
    rep.permutation = std::move(best_perm);
    rep.anchor = best_anchor;
    rep.pairs_tried = key;
    return finish(std::move(rep));
}

}  // namespace demi
