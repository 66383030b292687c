#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "qpg/errors.hpp"

namespace qpg {

/// r rows of an order-N Latin square: symbols 0..N-1, each exactly once per
/// row and at most once per column.
struct LatinRectangle {
    int N = 0;
    std::vector<std::vector<int>> cells;

    int row_count() const { return static_cast<int>(cells.size()); }
};

struct LatinSquare {
    int N = 0;
    std::vector<std::vector<int>> cells;

    int at(int i, int j) const { return cells[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
};

inline void validate_rectangle(const LatinRectangle& R) {
    if (R.N < 1) throw validation_error("Latin rectangle: need N >= 1");
    if (R.row_count() > R.N) throw validation_error("Latin rectangle: more rows than symbols");
    std::vector<std::vector<char>> col_used(static_cast<size_t>(R.N),
                                            std::vector<char>(static_cast<size_t>(R.N), 0));
    for (int i = 0; i < R.row_count(); ++i) {
        const auto& row = R.cells[static_cast<size_t>(i)];
        if (static_cast<int>(row.size()) != R.N)
            throw validation_error("Latin rectangle: row " + std::to_string(i) + " has wrong length");
        std::vector<char> used(static_cast<size_t>(R.N), 0);
        for (int j = 0; j < R.N; ++j) {
            int v = row[static_cast<size_t>(j)];
            if (v < 0 || v >= R.N)
                throw validation_error("Latin rectangle: symbol out of range at row " +
                                       std::to_string(i) + ", column " + std::to_string(j));
            if (used[static_cast<size_t>(v)])
                throw validation_error("Latin rectangle: repeated symbol in row " + std::to_string(i));
            used[static_cast<size_t>(v)] = 1;
            if (col_used[static_cast<size_t>(j)][static_cast<size_t>(v)])
                throw validation_error("Latin rectangle: repeated symbol in column " + std::to_string(j));
            col_used[static_cast<size_t>(j)][static_cast<size_t>(v)] = 1;
        }
    }
}

inline void validate_square(const LatinSquare& L) {
    LatinRectangle R{L.N, L.cells};
    validate_rectangle(R);
    if (R.row_count() != L.N) throw validation_error("Latin square: wrong number of rows");
}

namespace detail {

/// Maximum bipartite matching (columns to symbols) by augmenting paths,
/// scanning vertices in ascending order so the result is deterministic.
inline int kuhn_matching(const std::vector<std::vector<int>>& adj, int n_right,
                         std::vector<int>* match_left_out = nullptr) {
    int n_left = static_cast<int>(adj.size());
    std::vector<int> match_right(static_cast<size_t>(n_right), -1);
    std::vector<int> match_left(static_cast<size_t>(n_left), -1);
    std::vector<char> visited;
    auto try_augment = [&](auto&& self, int u) -> bool {
        for (int v : adj[static_cast<size_t>(u)]) {
            if (visited[static_cast<size_t>(v)]) continue;
            visited[static_cast<size_t>(v)] = 1;
            if (match_right[static_cast<size_t>(v)] < 0 || self(self, match_right[static_cast<size_t>(v)])) {
                match_right[static_cast<size_t>(v)] = u;
                match_left[static_cast<size_t>(u)] = v;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int u = 0; u < n_left; ++u) {
        visited.assign(static_cast<size_t>(n_right), 0);
        if (try_augment(try_augment, u)) ++matched;
    }
    if (match_left_out) *match_left_out = std::move(match_left);
    return matched;
}

/// Lexicographically least assignment of one symbol per column subject to
/// per-column allowed sets and all-distinct symbols; empty when infeasible.
/// Greedy with a matching feasibility check after each tentative choice.
inline std::vector<int> least_system_of_distinct(const std::vector<std::vector<char>>& allowed, int n_symbols) {
    int n_cols = static_cast<int>(allowed.size());
    std::vector<int> chosen(static_cast<size_t>(n_cols), -1);
    std::vector<char> taken(static_cast<size_t>(n_symbols), 0);
    auto feasible_rest = [&](int next_col) {
        std::vector<std::vector<int>> adj;
        for (int c = next_col; c < n_cols; ++c) {
            std::vector<int> opts;
            for (int v = 0; v < n_symbols; ++v)
                if (allowed[static_cast<size_t>(c)][static_cast<size_t>(v)] && !taken[static_cast<size_t>(v)])
                    opts.push_back(v);
            adj.push_back(std::move(opts));
        }
        return kuhn_matching(adj, n_symbols) == n_cols - next_col;
    };
    for (int c = 0; c < n_cols; ++c) {
        bool placed = false;
        for (int v = 0; v < n_symbols && !placed; ++v) {
            if (!allowed[static_cast<size_t>(c)][static_cast<size_t>(v)] || taken[static_cast<size_t>(v)]) continue;
            chosen[static_cast<size_t>(c)] = v;
            taken[static_cast<size_t>(v)] = 1;
            if (feasible_rest(c + 1)) {
                placed = true;
            } else {
                taken[static_cast<size_t>(v)] = 0;
                chosen[static_cast<size_t>(c)] = -1;
            }
        }
        if (!placed) return {};
    }
    return chosen;
}

} // namespace detail

/**
 * Completes an r x N Latin rectangle to a full square, appending one row at a
 * time. Each new row is the lexicographically least valid one, found greedily
 * with a bipartite matching feasibility check (Hall's condition guarantees a
 * completion always exists). Deterministic: equal inputs give equal squares.
 */
inline LatinSquare complete_rectangle(const LatinRectangle& R) {
    validate_rectangle(R);
    int N = R.N;
    std::vector<std::vector<char>> col_free(static_cast<size_t>(N),
                                            std::vector<char>(static_cast<size_t>(N), 1));
    for (const auto& row : R.cells)
        for (int j = 0; j < N; ++j) col_free[static_cast<size_t>(j)][static_cast<size_t>(row[static_cast<size_t>(j)])] = 0;
    LatinSquare L{N, R.cells};
    for (int i = R.row_count(); i < N; ++i) {
        std::vector<int> row = detail::least_system_of_distinct(col_free, N);
        if (row.empty()) throw validation_error("complete_rectangle: no completion exists (input invalid)");
        for (int j = 0; j < N; ++j) col_free[static_cast<size_t>(j)][static_cast<size_t>(row[static_cast<size_t>(j)])] = 0;
        L.cells.push_back(std::move(row));
    }
    return L;
}

/**
 * Order-N Latin square whose upper-left M x M block is the circulant
 * L(i, j) = (i - j) mod M. Requires 2M <= N: the first M rows are padded off
 * the corner with symbols >= M (lexicographically least valid fill) and the
 * rectangle is then completed row by row.
 */
inline LatinSquare circulant_corner_square(int N, int M) {
    if (M < 1 || 2 * M > N) throw domain_error("circulant_corner_square: need 1 <= M and 2M <= N");
    LatinRectangle R{N, {}};
    std::vector<std::vector<char>> col_free(static_cast<size_t>(N),
                                            std::vector<char>(static_cast<size_t>(N), 1));
    for (int i = 0; i < M; ++i) {
        std::vector<int> row(static_cast<size_t>(N), -1);
        for (int j = 0; j < M; ++j) row[static_cast<size_t>(j)] = ((i - j) % M + M) % M;
        // columns M..N-1 take symbols >= M, least valid choice
        std::vector<std::vector<char>> allowed;
        for (int j = M; j < N; ++j) {
            std::vector<char> a(static_cast<size_t>(N), 0);
            for (int v = M; v < N; ++v) a[static_cast<size_t>(v)] = col_free[static_cast<size_t>(j)][static_cast<size_t>(v)];
            allowed.push_back(std::move(a));
        }
        std::vector<int> fill = detail::least_system_of_distinct(allowed, N);
        if (fill.empty()) throw domain_error("circulant_corner_square: off-corner fill infeasible");
        for (int j = M; j < N; ++j) row[static_cast<size_t>(j)] = fill[static_cast<size_t>(j - M)];
        for (int j = 0; j < N; ++j) col_free[static_cast<size_t>(j)][static_cast<size_t>(row[static_cast<size_t>(j)])] = 0;
        R.cells.push_back(std::move(row));
    }
    return complete_rectangle(R);
}

/**
 * Order-N Latin square with upper-left 2 x 2 corner [[0, 1], [1, 0]]: row 0 is
 * the identity, row 1 swaps 0 and 1 and cycles the remaining symbols, and the
 * rectangle is completed. This is the standard seed for the rank-one corner
 * deformation. Requires N = 2 or N >= 4 (no order-3 square has this corner).
 */
inline LatinSquare corner_swap_square(int N) {
    if (N < 2 || N == 3) throw domain_error("corner_swap_square: need N = 2 or N >= 4");
    std::vector<int> r0(static_cast<size_t>(N));
    std::iota(r0.begin(), r0.end(), 0);
    if (N == 2) return LatinSquare{2, {{0, 1}, {1, 0}}};
    std::vector<int> r1(static_cast<size_t>(N));
    r1[0] = 1;
    r1[1] = 0;
    for (int j = 2; j < N - 1; ++j) r1[static_cast<size_t>(j)] = j + 1;
    r1[static_cast<size_t>(N - 1)] = 2;
    return complete_rectangle(LatinRectangle{N, {r0, r1}});
}

/// The N permutations sigma_t of a Latin square: sigma_t(j) = i where
/// L(i, j) = t. Each symbol's cells form a permutation matrix.
inline std::vector<std::vector<int>> row_permutations(const LatinSquare& L) {
    validate_square(L);
    std::vector<std::vector<int>> sigma(static_cast<size_t>(L.N),
                                        std::vector<int>(static_cast<size_t>(L.N), -1));
    for (int i = 0; i < L.N; ++i)
        for (int j = 0; j < L.N; ++j) sigma[static_cast<size_t>(L.at(i, j))][static_cast<size_t>(j)] = i;
    return sigma;
}

namespace detail {

inline std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < g.size(); ++i) h[i] = f[static_cast<size_t>(g[i])];
    return h;
}

/// Size of the permutation group generated by `gens` (BFS closure).
inline size_t generated_group_order(const std::vector<std::vector<int>>& gens) {
    std::vector<int> id(gens.empty() ? 0 : gens.front().size());
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::vector<std::vector<int>> frontier{id};
    auto known = [&](const std::vector<int>& p) {
        return std::find(elems.begin(), elems.end(), p) != elems.end();
    };
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                auto h = compose(g, e);
                if (!known(h)) {
                    elems.push_back(h);
                    next.push_back(std::move(h));
                }
            }
        frontier = std::move(next);
    }
    return elems.size();
}

} // namespace detail

/**
 * The first Latin square, in row-lexicographic enumeration order, whose row
 * permutations generate the full symmetric group S_N. Cayley tables never
 * qualify (they generate a group of order N), but generating squares appear
 * early in the enumeration for N >= 4. Search is capped at N <= 6.
 */
inline LatinSquare sn_generating_square(int N) {
    if (N < 4 || N > 6) throw domain_error("sn_generating_square: supported for 4 <= N <= 6");
    size_t target = 1;
    for (int i = 2; i <= N; ++i) target *= static_cast<size_t>(i);

    std::vector<std::vector<int>> rows;
    std::vector<std::vector<char>> col_free(static_cast<size_t>(N),
                                            std::vector<char>(static_cast<size_t>(N), 1));
    LatinSquare found{N, {}};
    auto search = [&](auto&& self) -> bool {
        if (static_cast<int>(rows.size()) == N) {
            LatinSquare L{N, rows};
            if (detail::generated_group_order(row_permutations(L)) == target) {
                found = L;
                return true;
            }
            return false;
        }
        // enumerate candidate rows in lexicographic order via backtracking
        std::vector<int> row(static_cast<size_t>(N), -1);
        std::vector<char> used(static_cast<size_t>(N), 0);
        auto rec = [&](auto&& rself, int col) -> bool {
            if (col == N) {
                rows.push_back(row);
                for (int j = 0; j < N; ++j)
                    col_free[static_cast<size_t>(j)][static_cast<size_t>(row[static_cast<size_t>(j)])] = 0;
                bool ok = self(self);
                for (int j = 0; j < N; ++j)
                    col_free[static_cast<size_t>(j)][static_cast<size_t>(row[static_cast<size_t>(j)])] = 1;
                rows.pop_back();
                return ok;
            }
            for (int v = 0; v < N; ++v) {
                if (used[static_cast<size_t>(v)] || !col_free[static_cast<size_t>(col)][static_cast<size_t>(v)]) continue;
                row[static_cast<size_t>(col)] = v;
                used[static_cast<size_t>(v)] = 1;
                if (rself(rself, col + 1)) return true;
                used[static_cast<size_t>(v)] = 0;
            }
            return false;
        };
        return rec(rec, 0);
    };
    if (!search(search)) throw domain_error("sn_generating_square: none found");
    return found;
}

} // namespace qpg
