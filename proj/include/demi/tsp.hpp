#pragma once

// Exact TSP on Demidenko matrices.  The minimum-cost pyramidal tour is
// computed by the classic O(n^2) dynamic program over states F(i,j), i < j:
// two vertex-disjoint increasing paths from city 1 ending at i and j that
// together cover {1..j}.  On a Demidenko matrix that tour is a global
// optimum; otherwise it is optimal among pyramidal tours only.

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "demi/checkers.hpp"
#include "demi/core.hpp"
#include "demi/recognition.hpp"

namespace demi {

/// Cyclic tour cost: sum of C(pi(i), pi(i+1)) plus the closing edge
/// C(pi(n), pi(1)).
inline Value tour_cost(const SymmetricMatrix& C, const Permutation& pi) {
    if (C.size() != pi.size()) throw std::invalid_argument("tour_cost: size mismatch");
    const int n = C.size();
    Value cost = 0;
    for (int i = 1; i < n; ++i) cost += C(pi(i), pi(i + 1));
    cost += C(pi(n), pi(1));
    return cost;
}

struct Tour {
    Permutation order;
    Value cost;
};

/// Minimum-cost pyramidal tour.  Ties choose the smallest predecessor
/// index, making reconstruction deterministic.
inline Tour solve_pyramidal(const SymmetricMatrix& C) {
    const int n = C.size();
    if (n < 3) throw std::invalid_argument("solve_pyramidal: needs n >= 3");

    constexpr Value kInf = std::numeric_limits<Value>::max() / 4;
    std::vector<std::vector<Value>> F(static_cast<std::size_t>(n) + 1,
                                      std::vector<Value>(static_cast<std::size_t>(n) + 1, kInf));
    std::vector<int> choice(static_cast<std::size_t>(n) + 1, 0);  // argmin for state (j-1, j)

    F[1][2] = C(1, 2);
    for (int j = 2; j < n; ++j) {
        Value best = kInf;
        int arg = 0;
        for (int i = 1; i < j; ++i) {
            const Value cand = F[i][j] + C(i, j + 1);
            if (cand < best) {
                best = cand;
                arg = i;
            }
        }
        F[j][j + 1] = best;
        choice[j + 1] = arg;
        for (int i = 1; i < j; ++i) F[i][j + 1] = F[i][j] + C(j, j + 1);
    }

    Value best_cost = kInf;
    int end_city = 0;
    for (int i = 1; i < n; ++i) {
        const Value cand = F[i][n] + C(i, n);
        if (cand < best_cost) {
            best_cost = cand;
            end_city = i;
        }
    }

    // Walk the states backwards; parent[j] is the predecessor of j on its
    // increasing path.
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    int i = end_city, j = n;
    while (j > 2) {
        if (i == j - 1) {
            parent[j] = choice[j];
            i = choice[j];
        } else {
            parent[j] = j - 1;
        }
        --j;
    }
    parent[2] = 1;

    std::vector<char> with_n(static_cast<std::size_t>(n) + 1, 0);
    for (int x = n; x != 1; x = parent[x]) with_n[x] = 1;

    std::vector<int> images;
    images.reserve(static_cast<std::size_t>(n));
    images.push_back(1);
    for (int x = 2; x <= n; ++x)
        if (with_n[x]) images.push_back(x);
    for (int x = n; x >= 2; --x)
        if (!with_n[x]) images.push_back(x);

    Tour tour{Permutation::from_images(std::move(images)), 0};
    tour.cost = tour_cost(C, tour.order);
    if (tour.cost != best_cost) throw std::logic_error("pyramidal reconstruction mismatch");
    return tour;
}

/// Recognize-then-solve pipeline: Solved carries an exact optimal tour of C
/// whenever the recognition succeeds; there is no heuristic fallback.
struct TspOutcome {
    bool solved = false;
    std::optional<Tour> tour;
    bool certified = false;
};

inline TspOutcome solve_permuted_demidenko_tsp(const SymmetricMatrix& C,
                                               const RecognitionConfig& cfg = {}) {
    RecognitionReport rep = recognize_demidenko(C, cfg);
    if (!rep.recognized) return TspOutcome{};

    const Permutation& phi = *rep.permutation;
    Tour permuted = solve_pyramidal(apply(C, phi));
    Permutation order = compose(phi, permuted.order);
    const Value cost = tour_cost(C, order);
    if (cost != permuted.cost) throw std::logic_error("tour cost not preserved by composition");
    return TspOutcome{true, Tour{std::move(order), cost}, true};
}

}  // namespace demi
