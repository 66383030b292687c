#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpg/errors.hpp"

namespace qpg {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

/// "p/q" in lowest terms for proper fractions, plain "p" for integers.
inline std::string rat_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

inline double rat_double(const Rat& q) { return q.get_d(); }

/// Dense matrix over Q. Small and exact; used for Gram matrices, Weingarten
/// tables and exact rank checks. Not meant for large dimensions.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

    Rat& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
    const Rat& at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    RatMatrix mul(const RatMatrix& o) const {
        if (cols != o.rows) throw domain_error("RatMatrix::mul: shape mismatch");
        RatMatrix r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Rat& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != ((i == j) ? 1 : 0)) return false;
        return true;
    }

    friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// Rank over Q by fraction-preserving Gaussian elimination.
inline int rat_rank(RatMatrix m) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        for (int r = rank + 1; r < m.rows; ++r) {
            if (m.at(r, c) == 0) continue;
            Rat f = m.at(r, c) / m.at(rank, c);
            m.at(r, c) = 0;
            for (int j = c + 1; j < m.cols; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Exact inverse via Gauss-Jordan; nullopt when singular.
inline std::optional<RatMatrix> rat_inverse(const RatMatrix& src) {
    if (src.rows != src.cols) throw domain_error("rat_inverse: matrix not square");
    int n = src.rows;
    RatMatrix m = src;
    RatMatrix inv = RatMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        Rat d = m.at(c, c);
        for (int j = 0; j < n; ++j) {
            m.at(c, j) /= d;
            inv.at(c, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m.at(r, c) == 0) continue;
            Rat f = m.at(r, c);
            for (int j = 0; j < n; ++j) {
                m.at(r, j) -= f * m.at(c, j);
                inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

/// Rank of an integer matrix by Bareiss fraction-free elimination. Rows is
/// the outer index; data is row-major.
inline int int_matrix_rank(int rows, int cols, std::vector<Int> a) {
    auto at = [&](int r, int c) -> Int& {
        return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    };
    Int prev = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = c; j < cols; ++j) std::swap(at(piv, j), at(rank, j));
        const Int pv = at(rank, c);
        for (int r = rank + 1; r < rows; ++r) {
            const Int rc = at(r, c);
            for (int j = c + 1; j < cols; ++j) {
                Int num = pv * at(r, j) - rc * at(rank, j);
                mpz_divexact(at(r, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(r, c) = 0;
        }
        prev = pv;
        ++rank;
    }
    return rank;
}

} // namespace qpg
