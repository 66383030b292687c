#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <chrono>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qpg/config.hpp"
#include "qpg/errors.hpp"
#include "qpg/models.hpp"
#include "qpg/weingarten.hpp"

namespace qpg {

/// Normalized-trace state of a degree-r monomial in the model's entries:
/// tr(P_{r1 c1} ... P_{rk ck}) / d.
inline Complex model_state(const MagicUnitary& m, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw domain_error("model_state: index length mismatch");
    int d = m.fiber_dim();
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
    for (size_t t = 0; t < rows.size(); ++t)
        prod = prod * m.entry(rows[t], cols[t]);
    return prod.trace() / static_cast<double>(d);
}

/**
 * Level-r transfer matrix T[(i),(j)] = state(P_{i1 j1} ... P_{ir jr}) over
 * multi-indices in [N]^r. Powers of T are the level-r matrices of the
 * convolution powers of the state, so its eigenvalue-1 eigenspace is the
 * fixed space of the Hopf image at degree r. Assembled by depth-first
 * recursion over (i_t, j_t) pairs, reusing partial products.
 */
struct TransferMatrix {
    int N = 0;
    int r = 0;
    Eigen::MatrixXcd T;
};

inline TransferMatrix transfer_matrix(const MagicUnitary& m, int r) {
    if (r < 1) throw domain_error("transfer_matrix: need r >= 1");
    int N = m.size();
    long long dim = 1;
    for (int t = 0; t < r; ++t) {
        dim *= N;
        if (dim > limits().transfer_dim_cap)
            throw resource_error("transfer_matrix: N^r exceeds the transfer dimension cap");
    }
    int d = m.fiber_dim();
    TransferMatrix out;
    out.N = N;
    out.r = r;
    out.T = Eigen::MatrixXcd(dim, dim);
    std::vector<Eigen::MatrixXcd> stack(static_cast<size_t>(r + 1));
    stack[0] = Eigen::MatrixXcd::Identity(d, d);
    double dd = static_cast<double>(d);
    auto rec = [&](auto&& self, int depth, long long iflat, long long jflat) -> void {
        if (depth == r) {
            out.T(static_cast<Eigen::Index>(iflat), static_cast<Eigen::Index>(jflat)) =
                stack[static_cast<size_t>(r)].trace() / dd;
            return;
        }
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                stack[static_cast<size_t>(depth + 1)] = stack[static_cast<size_t>(depth)] * m.entry(i, j);
                self(self, depth + 1, iflat * N + i, jflat * N + j);
            }
    };
    rec(rec, 0, 0, 0);
    return out;
}

enum class FixMethod { eigen, cesaro };

/**
 * Dimension of the eigenvalue-1 eigenspace of a transfer matrix.
 *
 * eigen: count Schur eigenvalues with |lambda - 1| <= tol; an eigenvalue in
 * the annulus (tol, 100 tol) means the answer is not trustworthy and nullopt
 * is returned.
 *
 * cesaro: rank of the Cesaro averages (1/K) sum T^k, doubling K until the
 * average is numerically idempotent (the limit is an idempotent whose nonzero
 * singular values are >= 1, so a fixed 1/2 cutoff separates them); nullopt
 * when the average fails to settle within the iteration budget. Eigenvalues
 * closer to 1 than the budget's resolution (about 2^-24) count as fixed.
 */
inline std::optional<int> fixed_space_dim(const TransferMatrix& tm, double tol = 1e-8,
                                          FixMethod method = FixMethod::eigen) {
    const Eigen::MatrixXcd& T = tm.T;
    if (T.rows() != T.cols()) throw domain_error("fixed_space_dim: matrix not square");
    if (method == FixMethod::eigen) {
        Eigen::ComplexSchur<Eigen::MatrixXcd> schur(T, false);
        if (schur.info() != Eigen::Success) return std::nullopt;
        int dim = 0;
        bool ambiguous = false;
        for (Eigen::Index i = 0; i < T.rows(); ++i) {
            double dist = std::abs(schur.matrixT()(i, i) - Complex(1.0, 0.0));
            if (dist <= tol) ++dim;
            else if (dist < 100.0 * tol) ambiguous = true;
        }
        if (ambiguous) return std::nullopt;
        return dim;
    }
    Eigen::MatrixXcd avg = T;    // (1/K) sum_{k=1..K} T^k
    Eigen::MatrixXcd power = T;  // T^K
    auto rank_at_half = [](const Eigen::MatrixXcd& M) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
        int r = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 0.5) ++r;
        return r;
    };
    for (int it = 0; it < 24; ++it) {
        // Rank stability alone can mislead: an eigenvalue slightly below 1
        // keeps the early averages near full strength for many doublings.
        // The limit is a projection, so accept only a near-idempotent.
        double defect = (avg * avg - avg).norm() / std::max(1.0, avg.norm());
        if (defect <= 1e-3) return rank_at_half(avg);
        avg = 0.5 * (avg + power * avg);
        power = power * power;
    }
    return std::nullopt;
}

struct LevelRecord {
    int r = 0;
    int fixed_dim = 0;
    int target_dim = 0;
    int defect = 0;
    bool conclusive = true;
    double seconds = 0.0;
};

/**
 * Compares the model's fixed-space dimensions against the Haar fixed-space
 * dimensions level by level. fixed_dim can never be smaller than the target
 * (the Hopf image sits inside the full quantum group), so a positive defect
 * at some level r certifies the representation is not inner faithful;
 * matching dimensions up to r_max is evidence, not proof, in the other
 * direction.
 */
struct FaithfulnessReport {
    int N = 0;
    int r_max = 0;
    double tol = 0.0;
    std::vector<LevelRecord> levels;
    bool matches = false; // all conclusive levels match up to r_max
    int fails_at = 0;     // first level with positive defect, 0 if none
    bool conclusive = true;
};

inline FaithfulnessReport inner_faithfulness_report(const MagicUnitary& m, int r_max,
                                                    double tol = 1e-8,
                                                    FixMethod method = FixMethod::eigen) {
    if (r_max < 1) throw domain_error("inner_faithfulness_report: need r_max >= 1");
    FaithfulnessReport rep;
    rep.N = m.size();
    rep.r_max = r_max;
    rep.tol = tol;
    for (int r = 1; r <= r_max; ++r) {
        LevelRecord rec;
        rec.r = r;
        rec.target_dim = haar_fix_dimension(r, m.size());
        auto t0 = std::chrono::steady_clock::now();
        auto dim = fixed_space_dim(transfer_matrix(m, r), tol, method);
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!dim) {
            rec.conclusive = false;
            rep.conclusive = false;
            rep.levels.push_back(rec);
            continue;
        }
        rec.fixed_dim = *dim;
        rec.defect = rec.fixed_dim - rec.target_dim;
        if (rec.defect < 0)
            throw std::logic_error("inner_faithfulness_report: fixed space smaller than Haar target "
                                   "(numerical failure)");
        rep.levels.push_back(rec);
        if (rec.defect > 0 && rep.fails_at == 0) rep.fails_at = r;
    }
    rep.matches = rep.conclusive && rep.fails_at == 0;
    return rep;
}

} // namespace qpg
