#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/exact.hpp"
#include "qpg/partitions.hpp"
#include "qpg/tensor.hpp"

namespace qpg {

/**
 * Exact Weingarten data for the quantum permutation group at size N, degree k:
 * the non-crossing partitions of k points in canonical order, their Gram
 * matrix G(p,q) = N^{#blocks(join(p,q))}, and W = G^{-1} over Q.
 *
 * Degrees are capped at 6; beyond that the exact inverse is out of scope.
 */
struct WeingartenTable {
    int k = 0;
    int N = 0;
    std::vector<Partition> order;
    RatMatrix gram;
    RatMatrix wg;
};

inline constexpr int weingarten_degree_cap = 6;

inline const WeingartenTable& weingarten_table(int k, int N) {
    if (k < 0 || k > weingarten_degree_cap)
        throw domain_error("weingarten_table: degree must be in [0, 6]");
    if (N < 1) throw domain_error("weingarten_table: need N >= 1");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<WeingartenTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(k, N);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<WeingartenTable>();
    t->k = k;
    t->N = N;
    t->order = enumerate_partitions(k, true);
    t->gram = gram_matrix(t->order, N);
    auto inv = rat_inverse(t->gram);
    if (!inv) throw singular_gram_error(N, k);
    t->wg = std::move(*inv);
    auto [pos, inserted] = cache.emplace(key, std::move(t));
    (void)inserted;
    return *pos->second;
}

/**
 * Haar-state moment of a degree-k monomial in the standard generators:
 *   h(u_{r1 c1} ... u_{rk ck}) = sum_{p,q in NC(k)} delta_p(r) delta_q(c) W(p,q).
 * Indices are 0-based. Exact rational output.
 */
inline Rat haar_moment(int N, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw domain_error("haar_moment: row/column index length mismatch");
    int k = static_cast<int>(rows.size());
    for (int v : rows)
        if (v < 0 || v >= N) throw domain_error("haar_moment: row index out of range");
    for (int v : cols)
        if (v < 0 || v >= N) throw domain_error("haar_moment: column index out of range");
    const WeingartenTable& t = weingarten_table(k, N);
    int n = static_cast<int>(t.order.size());
    std::vector<int> dr(static_cast<size_t>(n)), dc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        dr[static_cast<size_t>(i)] = delta(t.order[static_cast<size_t>(i)], rows);
        dc[static_cast<size_t>(i)] = delta(t.order[static_cast<size_t>(i)], cols);
    }
    Rat sum = 0;
    for (int p = 0; p < n; ++p) {
        if (!dr[static_cast<size_t>(p)]) continue;
        for (int q = 0; q < n; ++q)
            if (dc[static_cast<size_t>(q)]) sum += t.wg.at(p, q);
    }
    return sum;
}

/**
 * Dimension of the fixed space of the k-th tensor power of the fundamental
 * representation: the Catalan number C_k once N >= 4 (the non-crossing
 * vectors are a basis there), and the exact Gram rank for N <= 3.
 */
inline int haar_fix_dimension(int k, int N) {
    if (k < 0 || k > weingarten_degree_cap)
        throw domain_error("haar_fix_dimension: degree must be in [0, 6]");
    if (N < 1) throw domain_error("haar_fix_dimension: need N >= 1");
    if (k == 0) return 1;
    if (N >= 4) return static_cast<int>(catalan(k));
    return rat_rank(gram_matrix(enumerate_partitions(k, true), N));
}

} // namespace qpg
