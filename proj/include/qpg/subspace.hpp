#pragma once

#include <Eigen/Dense>

#include "qpg/errors.hpp"
#include "qpg/tensor.hpp"

namespace qpg {

/// A linear subspace of C^ambient carried by an orthonormal column basis.
/// `ambiguous` records whether any rank decision along the way was within a
/// factor of 10 of its tolerance; consumers turn that into INCONCLUSIVE.
struct Subspace {
    int ambient = 0;
    double tol = 1e-8;
    bool ambiguous = false;
    Eigen::MatrixXcd basis; // ambient x dim, orthonormal columns

    int dim() const { return static_cast<int>(basis.cols()); }
};

inline Subspace subspace_from_spanning(const Eigen::MatrixXcd& cols, double tol) {
    Subspace s;
    s.ambient = static_cast<int>(cols.rows());
    s.tol = tol;
    if (cols.cols() == 0 || cols.rows() == 0) {
        s.basis = Eigen::MatrixXcd(cols.rows(), 0);
        return s;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double smax = sv(0);
    if (smax <= 0.0) {
        s.basis = Eigen::MatrixXcd(cols.rows(), 0);
        return s;
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double rel = sv(i) / smax;
        if (rel > tol) ++rank;
        if (rel > 0.1 * tol && rel < 10.0 * tol) s.ambiguous = true;
    }
    s.basis = svd.matrixU().leftCols(rank);
    return s;
}

inline Subspace subspace_from_spanning(const std::vector<Eigen::VectorXcd>& vecs, double tol) {
    return subspace_from_spanning(vectors_to_matrix(vecs), tol);
}

/**
 * Intersection via principal angles: the singular values of A* B are the
 * cosines; directions with cos(theta) >= 1 - tol are common to both spaces.
 * Cosines in (1 - 10 tol, 1 - tol] mark the result ambiguous.
 */
inline Subspace intersect_subspaces(const Subspace& A, const Subspace& B, double tol) {
    if (A.ambient != B.ambient) throw domain_error("intersect_subspaces: ambient mismatch");
    Subspace s;
    s.ambient = A.ambient;
    s.tol = tol;
    s.ambiguous = A.ambiguous || B.ambiguous;
    if (A.dim() == 0 || B.dim() == 0) {
        s.basis = Eigen::MatrixXcd(A.ambient, 0);
        return s;
    }
    Eigen::MatrixXcd M = A.basis.adjoint() * B.basis;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int m = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) >= 1.0 - tol) ++m;
        if (sv(i) < 1.0 - tol && sv(i) > 1.0 - 10.0 * tol) s.ambiguous = true;
    }
    if (m == 0) {
        s.basis = Eigen::MatrixXcd(A.ambient, 0);
        return s;
    }
    Subspace renorm = subspace_from_spanning(Eigen::MatrixXcd(A.basis * svd.matrixU().leftCols(m)), tol);
    s.basis = renorm.basis;
    s.ambiguous = s.ambiguous || renorm.ambiguous;
    return s;
}

inline bool subspace_contains(const Subspace& S, const Eigen::VectorXcd& v, double tol) {
    if (v.size() != S.ambient) throw domain_error("subspace_contains: ambient mismatch");
    double nv = v.norm();
    if (nv == 0.0) return true;
    Eigen::VectorXcd resid = v - S.basis * (S.basis.adjoint() * v);
    return resid.norm() <= tol * nv;
}

/// Component of each column of M orthogonal to S.
inline Eigen::MatrixXcd project_out(const Subspace& S, const Eigen::MatrixXcd& M) {
    if (S.dim() == 0) return M;
    return M - S.basis * (S.basis.adjoint() * M);
}

} // namespace qpg
