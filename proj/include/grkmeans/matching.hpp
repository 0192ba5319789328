#ifndef GRKMEANS_MATCHING_HPP
#define GRKMEANS_MATCHING_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

/**
 * @file matching.hpp
 *
 * @brief Maximum-weight matching on small square count matrices.
 */

namespace grkmeans {

/// Square matrix of non-negative counts, row-major.
struct CountMatrix {
    std::size_t size = 0;
    std::vector<long> counts;

    long operator()(std::size_t r, std::size_t c) const { return counts[r * size + c]; }
    long& operator()(std::size_t r, std::size_t c) { return counts[r * size + c]; }
};

/**
 * Largest total of `counts(r, perm[r])` over all permutations, by enumeration.
 */
inline long max_matching_exhaustive(const CountMatrix& m) {
    std::vector<std::size_t> perm(m.size);
    std::iota(perm.begin(), perm.end(), 0);
    long best = std::numeric_limits<long>::min();
    do {
        long total = 0;
        for (std::size_t r = 0; r < m.size; ++r) total += m(r, perm[r]);
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m.size == 0 ? 0 : best;
}

/**
 * Largest total of `counts(r, perm[r])` over all permutations, by the
 * Hungarian algorithm (shortest augmenting paths with potentials, O(n^3))
 * applied to the negated counts.
 */
inline long max_matching_hungarian(const CountMatrix& m) {
    const std::size_t n = m.size;
    if (n == 0) return 0;
    // 1-based arrays; column 0 is the virtual source.
    const long inf = std::numeric_limits<long>::max() / 4;
    std::vector<long> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<long> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            const std::size_t r0 = match[col0];
            long delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const long cur = -m(r0 - 1, c - 1) - u[r0] - v[c];
                if (cur < minv[c]) {
                    minv[c] = cur;
                    way[c] = col0;
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    long total = 0;
    for (std::size_t c = 1; c <= n; ++c) {
        total += m(match[c] - 1, c - 1);
    }
    return total;
}

/**
 * Maximum matching total; enumerates for sizes up to 5, Hungarian above.
 */
inline long max_matching(const CountMatrix& m) {
    return m.size <= 5 ? max_matching_exhaustive(m) : max_matching_hungarian(m);
}

}

#endif
