#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "qpg/config.hpp"
#include "qpg/errors.hpp"
#include "qpg/exact.hpp"
#include "qpg/partitions.hpp"

namespace qpg {

using Complex = std::complex<double>;

/// N^k with the configured entry cap enforced; throws resource_error when the
/// tensor space would be too large to materialize.
inline long long tensor_dim(int N, int k) {
    if (N < 1 || k < 0) throw domain_error("tensor_dim: need N >= 1, k >= 0");
    long long d = 1;
    for (int t = 0; t < k; ++t) {
        if (d > limits().tensor_entry_cap / N)
            throw resource_error("tensor space exceeds entry cap (raise QPERM_CAP to override)");
        d *= N;
    }
    return d;
}

/// Multi-indices are row-major with the first tensor slot most significant.
inline long long flat_index(const std::vector<int>& idx, int N) {
    long long off = 0;
    for (int v : idx) {
        if (v < 0 || v >= N) throw domain_error("flat_index: component out of range");
        off = off * N + v;
    }
    return off;
}

inline std::vector<int> unflat_index(long long off, int N, int k) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int t = k - 1; t >= 0; --t) {
        idx[static_cast<size_t>(t)] = static_cast<int>(off % N);
        off /= N;
    }
    return idx;
}

/**
 * Dense linear map (C^N)^{tensor k_in} -> (C^N)^{tensor k_out}, entries stored
 * row-major by (output index, input index). Integer scalars are used for
 * partition maps, which have 0/1 entries.
 */
template <typename Scalar>
struct TensorOp {
    int N = 1;
    int k_in = 0;
    int k_out = 0;
    std::vector<Scalar> entries;

    TensorOp() = default;
    TensorOp(int N_, int kin, int kout) : N(N_), k_in(kin), k_out(kout) {
        long long total = tensor_dim(N, k_in + k_out);
        entries.assign(static_cast<size_t>(total), Scalar(0));
    }

    long long in_dim() const { return tensor_dim(N, k_in); }
    long long out_dim() const { return tensor_dim(N, k_out); }

    Scalar& at(long long out, long long in) {
        return entries[static_cast<size_t>(out * in_dim() + in)];
    }
    const Scalar& at(long long out, long long in) const {
        return entries[static_cast<size_t>(out * in_dim() + in)];
    }
};

using IntTensor = TensorOp<long long>;

/**
 * The partition map T_p: (C^N)^{tensor k} -> (C^N)^{tensor l} for p a
 * partition of k+l points. Entry (j, i) is delta_p applied to the
 * concatenated index (i_1..i_k, j_1..j_l); the first k points of p label the
 * input slots. Only constant-on-blocks indices contribute, so the map is
 * filled by running one odometer over block values.
 */
inline IntTensor partition_map(const Partition& p, int k, int l, int N) {
    if (k < 0 || l < 0 || p.size() != k + l) throw domain_error("partition_map: p must partition k+l points");
    IntTensor T(N, k, l);
    const long long in_dim = T.in_dim();
    int nb = p.num_blocks();
    // weight of block b inside the flat offset of the concatenated index
    std::vector<long long> win(static_cast<size_t>(nb), 0), wout(static_cast<size_t>(nb), 0);
    const auto rgsv = p.rgs();
    for (int t = 0; t < k; ++t) {
        long long w = 1;
        for (int u = t + 1; u < k; ++u) w *= N;
        win[static_cast<size_t>(rgsv[static_cast<size_t>(t)])] += w;
    }
    for (int t = 0; t < l; ++t) {
        long long w = 1;
        for (int u = t + 1; u < l; ++u) w *= N;
        wout[static_cast<size_t>(rgsv[static_cast<size_t>(k + t)])] += w;
    }
    std::vector<int> val(static_cast<size_t>(nb), 0);
    while (true) {
        long long in = 0, out = 0;
        for (int b = 0; b < nb; ++b) {
            in += val[static_cast<size_t>(b)] * win[static_cast<size_t>(b)];
            out += val[static_cast<size_t>(b)] * wout[static_cast<size_t>(b)];
        }
        T.entries[static_cast<size_t>(out * in_dim + in)] = 1;
        int b = nb - 1;
        while (b >= 0 && ++val[static_cast<size_t>(b)] == N) {
            val[static_cast<size_t>(b)] = 0;
            --b;
        }
        if (b < 0) break;
    }
    return T;
}

/// The invariant vector xi_p = T_p^{0,k}: entries delta_p(j) over j in [N]^k.
inline IntTensor partition_vector(const Partition& p, int N) {
    return partition_map(p, 0, p.size(), N);
}

inline Eigen::VectorXcd to_eigen_vector(const IntTensor& v) {
    if (v.k_in != 0) throw domain_error("to_eigen_vector: not a vector");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(v.out_dim()));
    for (long long i = 0; i < v.out_dim(); ++i)
        out(static_cast<Eigen::Index>(i)) = Complex(static_cast<double>(v.entries[static_cast<size_t>(i)]), 0.0);
    return out;
}

inline Eigen::VectorXcd partition_vector_eigen(const Partition& p, int N) {
    return to_eigen_vector(partition_vector(p, N));
}

/**
 * Gram matrix of the family of invariant vectors: entry (p, q) equals
 * N^{#blocks of join(p, q)}, computed exactly. The identity with the direct
 * inner-product summation is checked by the test suite.
 */
inline RatMatrix gram_matrix(const std::vector<Partition>& family, int N) {
    int n = static_cast<int>(family.size());
    RatMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int e = int_pow(static_cast<unsigned long>(N),
                            static_cast<unsigned long>(join(family[static_cast<size_t>(i)],
                                                            family[static_cast<size_t>(j)])
                                                           .num_blocks()));
            g.at(i, j) = Rat(e);
            g.at(j, i) = g.at(i, j);
        }
    return g;
}

struct RankResult {
    int rank = 0;
    bool ambiguous = false; // some singular value fell within a factor 10 of the cutoff
};

/// Numerical rank: singular values above tol * sigma_max count. A value within
/// a factor of 10 of the cutoff on either side marks the result ambiguous.
inline RankResult svd_rank(const Eigen::MatrixXcd& M, double tol) {
    RankResult res;
    if (M.rows() == 0 || M.cols() == 0) return res;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    if (smax <= 0.0) return res;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double rel = sv(i) / smax;
        if (rel > tol) ++res.rank;
        if (rel > 0.1 * tol && rel < 10.0 * tol) res.ambiguous = true;
    }
    return res;
}

inline Eigen::MatrixXcd vectors_to_matrix(const std::vector<Eigen::VectorXcd>& vecs) {
    if (vecs.empty()) return Eigen::MatrixXcd();
    Eigen::MatrixXcd M(vecs.front().size(), static_cast<Eigen::Index>(vecs.size()));
    for (size_t c = 0; c < vecs.size(); ++c) {
        if (vecs[c].size() != M.rows()) throw domain_error("vectors_to_matrix: mixed ambient dimensions");
        M.col(static_cast<Eigen::Index>(c)) = vecs[c];
    }
    return M;
}

inline RankResult span_rank(const std::vector<Eigen::VectorXcd>& vecs, double tol) {
    return svd_rank(vectors_to_matrix(vecs), tol);
}

/// Exact rank over Q of a family of integer vectors (vectors as rows).
inline int span_rank_exact(const std::vector<IntTensor>& vecs) {
    if (vecs.empty()) return 0;
    long long cols = vecs.front().out_dim();
    std::vector<Int> data;
    data.reserve(vecs.size() * static_cast<size_t>(cols));
    for (const auto& v : vecs) {
        if (v.k_in != 0 || v.out_dim() != cols) throw domain_error("span_rank_exact: shape mismatch");
        for (long long i = 0; i < cols; ++i)
            data.emplace_back(static_cast<long>(v.entries[static_cast<size_t>(i)]));
    }
    return int_matrix_rank(static_cast<int>(vecs.size()), static_cast<int>(cols), std::move(data));
}

} // namespace qpg
