#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/partitions.hpp"
#include "qpg/subspace.hpp"
#include "qpg/tensor.hpp"

namespace qpg {

/// Corner embedding of the order-M object into the order-N one: the first M
/// coordinates carry the small object, the remaining N-M are left alone.
struct CornerEmbedding {
    int N = 0;
    int M = 0;
};

enum class Verdict { EQUAL, STRICTLY_LARGER, INCONCLUSIVE };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::EQUAL: return "EQUAL";
        case Verdict::STRICTLY_LARGER: return "STRICTLY_LARGER";
        default: return "INCONCLUSIVE";
    }
}

/**
 * Outcome of one generation test at a fixed degree (or color word): the
 * dimension of the joint fixed space of the two prospective generators
 * against the dimension of the full object's fixed space. EQUAL certifies
 * generation at this degree; STRICTLY_LARGER refutes it and carries a
 * witness basis of the defect; INCONCLUSIVE flags a tolerance-ambiguous rank.
 */
struct Certificate {
    std::string statement;
    int N = 0;
    int M = -1;        // corner size, when meaningful
    int s = -1;        // color modulus, when meaningful
    int k = -1;        // degree, when meaningful
    std::vector<int> word; // color word, when meaningful
    int dim_lhs = 0;
    int dim_rhs = 0;
    double tol = 0.0;
    std::string backend;
    Verdict verdict = Verdict::INCONCLUSIVE;
    Eigen::MatrixXcd witness; // defect basis, nonempty iff STRICTLY_LARGER
};

/**
 * Fixed space of the diagonal S_N action on (C^N)^{tensor k}: the span of all
 * partition vectors xi_p (Bell(k) many spanning vectors; the dimension is the
 * number of partitions with at most N blocks).
 */
inline Subspace classical_fix(int N, int k, double tol = 1e-8) {
    if (N < 1 || k < 0) throw domain_error("classical_fix: need N >= 1, k >= 0");
    tensor_dim(N, k);
    std::vector<Eigen::VectorXcd> vecs;
    for (const auto& p : enumerate_partitions(k))
        vecs.push_back(partition_vector_eigen(p, N));
    return subspace_from_spanning(vecs, tol);
}

namespace detail {

/**
 * Generators of the fixed space of the corner-embedded quantum object on
 * (C^N)^{tensor k}, optionally colored by a word w over Z_s.
 *
 * For every subset S of the slots, every placement of basis vectors
 * e_{M}..e_{N-1} on S (those coordinates are fixed by the corner action in
 * every color), and every admissible partition p of the remaining slots, one
 * generator places xi_p on the first M coordinates of the free slots.
 * Admissible means non-crossing for M >= 4 (quantum case), arbitrary for
 * M <= 3 (the quantum object is classical there); with colors, blocks must
 * in addition sum to zero mod s under the restriction of w.
 */
inline std::vector<Eigen::VectorXcd> corner_fix_generators(int N, int M, int k, const int* word,
                                                           int modulus) {
    if (M < 1 || M > N) throw domain_error("corner fix: need 1 <= M <= N");
    if (k < 0) throw domain_error("corner fix: need k >= 0");
    long long full = tensor_dim(N, k);
    bool quantum_corner = M >= 4;
    std::vector<Eigen::VectorXcd> out;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> trivial_slots, free_slots;
        for (int t = 0; t < k; ++t)
            ((mask >> t) & 1) ? trivial_slots.push_back(t) : free_slots.push_back(t);
        int f = static_cast<int>(free_slots.size());
        std::vector<Partition> parts = enumerate_partitions(f, quantum_corner);
        if (word) {
            ColoredWord sub(modulus, [&] {
                std::vector<int> l;
                for (int t : free_slots) l.push_back(word[t]);
                return l;
            }());
            std::vector<Partition> keep;
            for (const auto& p : parts)
                if (colored_admissible(p, sub)) keep.push_back(p);
            parts = std::move(keep);
        }
        // placements of high basis vectors on the trivial slots
        long long placements = 1;
        for (size_t t = 0; t < trivial_slots.size(); ++t) placements *= (N - M);
        if (!trivial_slots.empty() && N == M) placements = 0;
        for (long long pl = 0; pl < placements; ++pl) {
            std::vector<int> high(trivial_slots.size());
            long long rest = pl;
            for (size_t t = 0; t < trivial_slots.size(); ++t) {
                high[t] = M + static_cast<int>(rest % (N - M));
                rest /= (N - M);
            }
            for (const auto& p : parts) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full));
                int nb = p.num_blocks();
                std::vector<int> val(static_cast<size_t>(nb), 0);
                const auto rgsv = p.rgs();
                while (true) {
                    long long off = 0;
                    size_t hi = 0;
                    int fi = 0;
                    for (int t = 0; t < k; ++t) {
                        int component;
                        if ((mask >> t) & 1) component = high[hi++];
                        else component = val[static_cast<size_t>(rgsv[static_cast<size_t>(fi++)])];
                        off = off * N + component;
                    }
                    v(static_cast<Eigen::Index>(off)) += 1.0;
                    int b = nb - 1;
                    while (b >= 0 && ++val[static_cast<size_t>(b)] == M) {
                        val[static_cast<size_t>(b)] = 0;
                        --b;
                    }
                    if (b < 0) break;
                }
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

} // namespace detail

/**
 * Fixed space on (C^N)^{tensor k} of the corner-embedded quantum permutation
 * object of size M. Coordinates M..N-1 are fixed pointwise; on the corner the
 * fixed vectors of each tensor factor count are spanned by the non-crossing
 * partition vectors (all partition vectors when M <= 3, where quantum equals
 * classical).
 */
inline Subspace corner_quantum_fix(const CornerEmbedding& e, int k, double tol = 1e-8) {
    auto gens = detail::corner_fix_generators(e.N, e.M, k, nullptr, 1);
    Subspace s = subspace_from_spanning(gens, tol);
    s.ambient = static_cast<int>(tensor_dim(e.N, k));
    if (s.basis.rows() == 0) s.basis = Eigen::MatrixXcd(s.ambient, 0);
    return s;
}

/// Non-crossing span on (C^N)^{tensor k} with float rank and ambiguity flag.
inline RankResult nc_span_rank(int N, int k, double tol = 1e-8) {
    std::vector<Eigen::VectorXcd> vecs;
    for (const auto& p : enumerate_partitions(k, true))
        vecs.push_back(partition_vector_eigen(p, N));
    if (k == 0 || vecs.empty()) return RankResult{vecs.empty() ? 0 : 1, false};
    return span_rank(vecs, tol);
}

namespace detail {

inline Verdict settle(Certificate& c, bool ambiguous) {
    if (ambiguous) return c.verdict = Verdict::INCONCLUSIVE;
    if (c.dim_lhs == c.dim_rhs) return c.verdict = Verdict::EQUAL;
    if (c.dim_lhs > c.dim_rhs) return c.verdict = Verdict::STRICTLY_LARGER;
    throw std::logic_error("certificate: joint fixed space smaller than the generated span "
                           "(numerical failure)");
}

inline void attach_witness(Certificate& c, const Subspace& meet, const std::vector<Eigen::VectorXcd>& span_vecs,
                           double tol) {
    if (c.verdict != Verdict::STRICTLY_LARGER) return;
    Subspace span = subspace_from_spanning(span_vecs, tol);
    Eigen::MatrixXcd defect = project_out(span, meet.basis);
    c.witness = subspace_from_spanning(defect, tol).basis;
}

} // namespace detail

/**
 * Degree-k generation certificate for the pair (classical S_N, corner S_M):
 * the joint fixed space of the two subobjects against the non-crossing span,
 * which is the fixed space of the full quantum permutation object. The joint
 * space always contains the span, so the verdict is EQUAL or STRICTLY_LARGER
 * (or INCONCLUSIVE near tolerance). EQUAL at every degree up to a cutoff is
 * the per-degree evidence that the pair topologically generates.
 */
inline Certificate topgen_certificate(int N, int M, int k, double tol = 1e-8) {
    if (M < 1 || M > N) throw domain_error("topgen_certificate: need 1 <= M <= N");
    if (k < 0) throw domain_error("topgen_certificate: need k >= 0");
    Certificate c;
    c.statement = "topgen";
    c.N = N;
    c.M = M;
    c.k = k;
    c.tol = tol;
    c.backend = "float64/svd";
    Subspace cls = classical_fix(N, k, tol);
    Subspace cor = corner_quantum_fix({N, M}, k, tol);
    Subspace meet = intersect_subspaces(cls, cor, tol);
    RankResult nc = nc_span_rank(N, k, tol);
    c.dim_lhs = meet.dim();
    c.dim_rhs = nc.rank;
    detail::settle(c, meet.ambiguous || nc.ambiguous);
    std::vector<Eigen::VectorXcd> ncv;
    for (const auto& p : enumerate_partitions(k, true)) ncv.push_back(partition_vector_eigen(p, N));
    detail::attach_witness(c, meet, ncv, tol);
    return c;
}

enum class ClassicalGroup { symmetric, reflection };

/**
 * Fixed space of a classical group on the colored tensor factors
 * V^{(w_1)} x ... x V^{(w_k)} inside (C^N)^{tensor k}.
 *
 * For S_N the colors act trivially and this is classical_fix. For the
 * reflection group (monomial matrices with s-th roots of unity), averaging
 * over the diagonal torus kills every basis vector whose index kernel has a
 * block with letter sum != 0 mod s, and averaging over S_N then groups the
 * survivors into orbit sums: one basis vector per admissible partition with
 * at most N blocks. No dense group averaging is performed.
 */
inline Subspace reflection_classical_fix(ClassicalGroup g, int N, const ColoredWord& w,
                                         double tol = 1e-8) {
    int k = w.size();
    if (g == ClassicalGroup::symmetric) return classical_fix(N, k, tol);
    long long full = tensor_dim(N, k);
    std::vector<Eigen::VectorXcd> vecs;
    std::map<std::string, size_t> slot; // admissible kernel -> orbit sum vector
    for (const auto& p : enumerate_partitions(k)) {
        if (p.num_blocks() > N || !colored_admissible(p, w)) continue;
        slot[p.rgs_string()] = vecs.size();
        vecs.push_back(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full)));
    }
    for (long long off = 0; off < full; ++off) {
        auto it = slot.find(kernel_of_index(unflat_index(off, N, k)).rgs_string());
        if (it != slot.end()) vecs[it->second](static_cast<Eigen::Index>(off)) = 1.0;
    }
    Subspace s = subspace_from_spanning(vecs, tol);
    s.ambient = static_cast<int>(tensor_dim(N, k));
    if (s.basis.rows() == 0) s.basis = Eigen::MatrixXcd(s.ambient, 0);
    return s;
}

/// Corner-embedded quantum reflection fixed space: colored analogue of
/// corner_quantum_fix, with block letter sums taken mod s.
inline Subspace reflection_quantum_fix(const CornerEmbedding& e, const ColoredWord& w,
                                       double tol = 1e-8) {
    auto gens = detail::corner_fix_generators(e.N, e.M, w.size(), w.letters.data(), w.modulus);
    Subspace s = subspace_from_spanning(gens, tol);
    s.ambient = static_cast<int>(tensor_dim(e.N, w.size()));
    if (s.basis.rows() == 0) s.basis = Eigen::MatrixXcd(s.ambient, 0);
    return s;
}

inline RankResult colored_nc_span_rank(int N, const ColoredWord& w, double tol = 1e-8) {
    std::vector<Eigen::VectorXcd> vecs;
    for (const auto& p : enumerate_colored_nc(w)) vecs.push_back(partition_vector_eigen(p, N));
    if (vecs.empty()) return RankResult{0, false};
    if (w.size() == 0) return RankResult{1, false};
    return span_rank(vecs, tol);
}

/**
 * Colored generation certificate at word w: joint fixed space of classical
 * S_N and the corner-embedded quantum reflection object of size N-1, against
 * the colored non-crossing span (the fixed space of the full quantum
 * reflection object). With s = 1 this reduces to topgen_certificate at
 * degree |w| and M = N-1.
 */
inline Certificate reflection_topgen_certificate(int N, const ColoredWord& w, double tol = 1e-8) {
    if (N < 2) throw domain_error("reflection_topgen_certificate: need N >= 2");
    Certificate c;
    c.statement = "refl-topgen";
    c.N = N;
    c.M = N - 1;
    c.s = w.modulus;
    c.k = w.size();
    c.word = w.letters;
    c.tol = tol;
    c.backend = "float64/svd";
    Subspace cls = classical_fix(N, w.size(), tol);
    Subspace cor = reflection_quantum_fix({N, N - 1}, w, tol);
    Subspace meet = intersect_subspaces(cls, cor, tol);
    RankResult nc = colored_nc_span_rank(N, w, tol);
    c.dim_lhs = meet.dim();
    c.dim_rhs = nc.rank;
    detail::settle(c, meet.ambiguous || nc.ambiguous);
    std::vector<Eigen::VectorXcd> ncv;
    for (const auto& p : enumerate_colored_nc(w)) ncv.push_back(partition_vector_eigen(p, N));
    detail::attach_witness(c, meet, ncv, tol);
    return c;
}

inline nlohmann::ordered_json to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["statement"] = c.statement;
    nlohmann::ordered_json params;
    params["N"] = c.N;
    if (c.M >= 0) params["M"] = c.M;
    if (c.s >= 0) params["s"] = c.s;
    if (c.k >= 0) params["k"] = c.k;
    if (!c.word.empty() || c.s >= 0) params["word"] = c.word;
    j["params"] = params;
    j["dim_lhs"] = c.dim_lhs;
    j["dim_rhs"] = c.dim_rhs;
    j["verdict"] = verdict_str(c.verdict);
    j["tol"] = c.tol;
    j["backend"] = c.backend;
    j["witness_dim"] = static_cast<int>(c.witness.cols());
    if (c.witness.cols() > 0) {
        auto wit = nlohmann::ordered_json::array();
        for (Eigen::Index col = 0; col < c.witness.cols(); ++col) {
            auto v = nlohmann::ordered_json::array();
            for (Eigen::Index row = 0; row < c.witness.rows(); ++row)
                v.push_back(nlohmann::ordered_json::array(
                    {c.witness(row, col).real(), c.witness(row, col).imag()}));
            wit.push_back(v);
        }
        j["witness"] = wit;
    }
    return j;
}

} // namespace qpg
