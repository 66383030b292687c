#pragma once

// Test-only oracles: independent recomputations of library quantities by
// slower, more literal methods. Nothing here is used by the library.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "qpg/exact.hpp"
#include "qpg/latin.hpp"
#include "qpg/partitions.hpp"
#include "qpg/tensor.hpp"

namespace oracles {

inline std::vector<std::vector<int>> all_tuples(int N, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<size_t>(k), 0);
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && ++t[static_cast<size_t>(i)] == N) t[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

/// <xi_p, xi_q> by direct summation over every index tuple.
inline long gram_entry_direct(const qpg::Partition& p, const qpg::Partition& q, int N) {
    long count = 0;
    for (const auto& t : all_tuples(N, p.size()))
        if (qpg::delta(p, t) && qpg::delta(q, t)) ++count;
    return count;
}

/// Crossing detection by scanning all quadruples i < j < k < l.
inline bool is_noncrossing_brute(const qpg::Partition& p) {
    const auto rgs = p.rgs();
    int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    if (rgs[i] == rgs[k] && rgs[j] == rgs[l] && rgs[i] != rgs[j]) return false;
    return true;
}

/// Least-upper-bound property of a candidate join, checked against every
/// partition of the same ground set.
inline bool is_least_upper_bound(const qpg::Partition& p, const qpg::Partition& q,
                                 const qpg::Partition& j, const std::vector<qpg::Partition>& all) {
    if (!qpg::refines(p, j) || !qpg::refines(q, j)) return false;
    for (const auto& r : all)
        if (qpg::refines(p, r) && qpg::refines(q, r) && !qpg::refines(j, r)) return false;
    return true;
}

inline std::vector<std::vector<int>> all_permutations(int N) {
    std::vector<int> p(static_cast<size_t>(N));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// The averaging projector (1/N!) sum over permutations of sigma^{tensor k},
/// assembled entry by entry. Its rank is the classical fixed-space dimension.
inline Eigen::MatrixXcd averaging_projector(int N, int k) {
    long long dim = qpg::tensor_dim(N, k);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dim, dim);
    const auto perms = all_permutations(N);
    for (const auto& sigma : perms) {
        for (const auto& t : all_tuples(N, k)) {
            std::vector<int> img(t.size());
            for (size_t a = 0; a < t.size(); ++a) img[a] = sigma[static_cast<size_t>(t[a])];
            S(qpg::flat_index(img, N), qpg::flat_index(t, N)) += 1.0;
        }
    }
    return S / static_cast<double>(perms.size());
}

/// Rank of an exact orthogonal projection: its singular values are 0 or 1,
/// so count those above 1/2. A relative SVD cutoff would misread a zero
/// projection, where the residue is pure floating-point noise.
inline int projection_rank(const Eigen::MatrixXcd& P) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(P);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 0.5) ++r;
    return r;
}

inline int averaging_fix_dim(int N, int k) {
    return projection_rank(averaging_projector(N, k));
}

/**
 * Dense averaging over the full monomial group (permutations with modulus-s
 * phase columns) acting on colored tensor factors: factor t transforms with
 * the w_t-th entrywise power, so a basis tuple picks up the phase
 * omega^{sum_t w_t c_{j_t}} and permutes. The rank of the average is the
 * reflection-group fixed-space dimension.
 */
inline Eigen::MatrixXcd monomial_average_matrix(int N, const qpg::ColoredWord& w) {
    int k = w.size(), s = w.modulus;
    long long dim = qpg::tensor_dim(N, k);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dim, dim);
    const auto perms = all_permutations(N);
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<int> phases(static_cast<size_t>(N), 0);
    long long group_size = 0;
    while (true) {
        for (const auto& sigma : perms) {
            ++group_size;
            for (const auto& t : all_tuples(N, k)) {
                std::vector<int> img(t.size());
                int chi = 0;
                for (size_t a = 0; a < t.size(); ++a) {
                    img[a] = sigma[static_cast<size_t>(t[a])];
                    chi += w.letters[a] * phases[static_cast<size_t>(t[a])];
                }
                double ang = two_pi * static_cast<double>(chi % s) / static_cast<double>(s);
                S(qpg::flat_index(img, N), qpg::flat_index(t, N)) +=
                    std::complex<double>(std::cos(ang), std::sin(ang));
            }
        }
        int i = N - 1;
        while (i >= 0 && ++phases[static_cast<size_t>(i)] == s) phases[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
    }
    S /= static_cast<double>(group_size);
    return S;
}

inline int monomial_average_fix_dim(int N, const qpg::ColoredWord& w) {
    return projection_rank(monomial_average_matrix(N, w));
}

/// Closure of a permutation set under composition.
inline std::vector<std::vector<int>> permutation_closure(std::vector<std::vector<int>> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<std::vector<int>> group = gens;
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = group.size();
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                std::vector<int> c(group[a].size());
                for (size_t i = 0; i < c.size(); ++i)
                    c[i] = group[a][static_cast<size_t>(group[b][i])];
                if (!std::binary_search(group.begin(), group.begin() + static_cast<long>(n), c)) {
                    group.push_back(c);
                    grew = true;
                }
            }
        std::sort(group.begin(), group.end());
        group.erase(std::unique(group.begin(), group.end()), group.end());
    }
    return group;
}

/// Number of orbits of a permutation group acting diagonally on r-tuples,
/// by Burnside's count (1/|G|) sum of fix(g)^r.
inline long long burnside_tuple_orbits(const std::vector<std::vector<int>>& group, int r) {
    long long total = 0;
    for (const auto& g : group) {
        long long fixed = 0;
        for (size_t i = 0; i < g.size(); ++i)
            if (g[i] == static_cast<int>(i)) ++fixed;
        long long pw = 1;
        for (int t = 0; t < r; ++t) pw *= fixed;
        total += pw;
    }
    return total / static_cast<long long>(group.size());
}

/// A pseudorandom Latin square: the cyclic square composed with random row,
/// column and symbol permutations.
inline qpg::LatinSquare random_latin_square(int N, std::mt19937& rng) {
    std::vector<int> rows(static_cast<size_t>(N)), cols(static_cast<size_t>(N)), syms(static_cast<size_t>(N));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::iota(syms.begin(), syms.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::shuffle(syms.begin(), syms.end(), rng);
    qpg::LatinSquare L;
    L.N = N;
    L.cells.assign(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(N), 0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            L.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                syms[static_cast<size_t>((rows[static_cast<size_t>(i)] + cols[static_cast<size_t>(j)]) % N)];
    return L;
}

/// Every completion of a Latin rectangle, by exhaustive cellwise search.
/// Only usable for small N; the completions come out in lexicographic order.
inline void enumerate_completions(const qpg::LatinRectangle& R, std::vector<qpg::LatinSquare>& out) {
    int N = R.N;
    qpg::LatinSquare L;
    L.N = N;
    L.cells = R.cells;
    L.cells.resize(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(N), -1));
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == N) {
            out.push_back(L);
            return;
        }
        if (i < R.row_count()) {
            self(self, i + 1, 0);
            return;
        }
        int nj = (j + 1 == N) ? 0 : j + 1;
        int ni = (j + 1 == N) ? i + 1 : i;
        for (int v = 0; v < N; ++v) {
            bool ok = true;
            for (int a = 0; a < i && ok; ++a)
                if (L.cells[static_cast<size_t>(a)][static_cast<size_t>(j)] == v) ok = false;
            for (int b = 0; b < j && ok; ++b)
                if (L.cells[static_cast<size_t>(i)][static_cast<size_t>(b)] == v) ok = false;
            if (!ok) continue;
            L.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            self(self, ni, nj);
            L.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] = -1;
        }
    };
    rec(rec, 0, 0);
}

} // namespace oracles
