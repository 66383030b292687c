#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/latin.hpp"
#include "qpg/tensor.hpp"

namespace qpg {

inline double spectral_norm(const Eigen::MatrixXcd& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

/**
 * An N x N array of d x d matrices expected to form a magic unitary: every
 * entry an orthogonal projection, every row and column summing to the
 * identity. Nothing is enforced on construction; `validate` reports how far
 * an array is from satisfying the axioms.
 */
class MagicUnitary {
public:
    MagicUnitary() = default;
    MagicUnitary(int N, int d)
        : N_(N), d_(d),
          p_(static_cast<size_t>(N) * static_cast<size_t>(N), Eigen::MatrixXcd::Zero(d, d)) {
        if (N < 1 || d < 1) throw domain_error("MagicUnitary: need N >= 1, d >= 1");
    }

    int size() const { return N_; }
    int fiber_dim() const { return d_; }

    Eigen::MatrixXcd& entry(int i, int j) { return p_[idx(i, j)]; }
    const Eigen::MatrixXcd& entry(int i, int j) const { return p_[idx(i, j)]; }

    std::string provenance;

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= N_ || j < 0 || j >= N_) throw domain_error("MagicUnitary: index out of range");
        return static_cast<size_t>(i) * static_cast<size_t>(N_) + static_cast<size_t>(j);
    }

    int N_ = 0;
    int d_ = 0;
    std::vector<Eigen::MatrixXcd> p_;
};

/**
 * A flat model: every entry is the rank-one projection onto a stored unit
 * vector xi_ij in C^N (fiber dimension equals N). The vectors are the
 * primary data; projections are derived on demand.
 */
class FlatModel {
public:
    FlatModel() = default;
    explicit FlatModel(int N)
        : N_(N), xi_(static_cast<size_t>(N) * static_cast<size_t>(N), Eigen::VectorXcd::Zero(N)) {
        if (N < 1) throw domain_error("FlatModel: need N >= 1");
    }

    int size() const { return N_; }

    Eigen::VectorXcd& vec(int i, int j) { return xi_[idx(i, j)]; }
    const Eigen::VectorXcd& vec(int i, int j) const { return xi_[idx(i, j)]; }

    Eigen::MatrixXcd projection(int i, int j) const {
        const Eigen::VectorXcd& x = vec(i, j);
        return x * x.adjoint();
    }

    MagicUnitary to_magic() const {
        MagicUnitary m(N_, N_);
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) m.entry(i, j) = projection(i, j);
        m.provenance = provenance;
        return m;
    }

    std::string provenance;

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= N_ || j < 0 || j >= N_) throw domain_error("FlatModel: index out of range");
        return static_cast<size_t>(i) * static_cast<size_t>(N_) + static_cast<size_t>(j);
    }

    int N_ = 0;
    std::vector<Eigen::VectorXcd> xi_;
};

struct ValidationCheck {
    std::string name;
    double worst = 0.0;
    bool pass = true;
    std::string detail; // worst offender, e.g. "row 3"
};

struct ValidationReport {
    bool ok = true;
    double tol = 0.0;
    std::vector<ValidationCheck> checks;
};

/// Deviation of the array from the magic unitary axioms, in spectral norm:
/// self-adjointness and idempotence per entry, and row/column sums against
/// the identity.
inline ValidationReport validate(const MagicUnitary& m, double tol = 1e-8) {
    ValidationReport rep;
    rep.tol = tol;
    int N = m.size(), d = m.fiber_dim();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    ValidationCheck sa{"self-adjoint", 0, true, ""}, idem{"idempotent", 0, true, ""};
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const auto& P = m.entry(i, j);
            if (P.rows() != d || P.cols() != d) throw domain_error("validate: fiber dimension mismatch");
            double dev = spectral_norm(P - P.adjoint());
            if (dev > sa.worst) {
                sa.worst = dev;
                sa.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
            dev = spectral_norm(P * P - P);
            if (dev > idem.worst) {
                idem.worst = dev;
                idem.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    ValidationCheck rows{"row sums", 0, true, ""}, cols{"column sums", 0, true, ""};
    for (int i = 0; i < N; ++i) {
        Eigen::MatrixXcd sr = Eigen::MatrixXcd::Zero(d, d), sc = Eigen::MatrixXcd::Zero(d, d);
        for (int j = 0; j < N; ++j) {
            sr += m.entry(i, j);
            sc += m.entry(j, i);
        }
        double dev = spectral_norm(sr - id);
        if (dev > rows.worst) {
            rows.worst = dev;
            rows.detail = "row " + std::to_string(i);
        }
        dev = spectral_norm(sc - id);
        if (dev > cols.worst) {
            cols.worst = dev;
            cols.detail = "column " + std::to_string(i);
        }
    }
    for (ValidationCheck* c : {&sa, &idem, &rows, &cols}) {
        c->pass = c->worst <= tol;
        rep.ok = rep.ok && c->pass;
        rep.checks.push_back(*c);
    }
    return rep;
}

inline ValidationReport validate(const FlatModel& m, double tol = 1e-8) {
    ValidationReport rep = validate(m.to_magic(), tol);
    ValidationCheck unit{"unit vectors", 0, true, ""};
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
            double dev = std::abs(m.vec(i, j).norm() - 1.0);
            if (dev > unit.worst) {
                unit.worst = dev;
                unit.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    unit.pass = unit.worst <= tol;
    rep.ok = rep.ok && unit.pass;
    rep.checks.push_back(unit);
    return rep;
}

/// Flat model of a Latin square: entry (i, j) projects onto basis vector
/// number L(i, j). The basis defaults to the standard one and must be
/// orthonormal.
inline FlatModel from_latin(const LatinSquare& L, const Eigen::MatrixXcd& basis = Eigen::MatrixXcd()) {
    validate_square(L);
    int N = L.N;
    Eigen::MatrixXcd B = basis;
    if (B.size() == 0) B = Eigen::MatrixXcd::Identity(N, N);
    if (B.rows() != N || B.cols() != N) throw domain_error("from_latin: basis must be N x N");
    if (spectral_norm(Eigen::MatrixXcd(B.adjoint() * B - Eigen::MatrixXcd::Identity(N, N))) > 1e-10)
        throw domain_error("from_latin: basis is not orthonormal");
    FlatModel m(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m.vec(i, j) = B.col(L.at(i, j));
    m.provenance = "from_latin(N=" + std::to_string(N) + ")";
    return m;
}

/// d = 1 model of a single permutation: entry (i, j) is 1 when sigma(j) = i.
inline MagicUnitary permutation_model(const std::vector<int>& sigma) {
    int N = static_cast<int>(sigma.size());
    MagicUnitary m(N, 1);
    std::vector<char> seen(static_cast<size_t>(N), 0);
    for (int j = 0; j < N; ++j) {
        int i = sigma[static_cast<size_t>(j)];
        if (i < 0 || i >= N || seen[static_cast<size_t>(i)])
            throw domain_error("permutation_model: not a permutation");
        seen[static_cast<size_t>(i)] = 1;
        m.entry(i, j)(0, 0) = 1.0;
    }
    m.provenance = "permutation_model(N=" + std::to_string(N) + ")";
    return m;
}

/**
 * Rotates the 2 x 2 corner of a flat Latin-type model. The corner must read
 * [[a, b], [b, a]] with orthogonal unit vectors a, b; it is replaced by
 * [[P_u, P_v], [P_v, P_u]] for u = (a+b)/sqrt(2), v = (a-b)/sqrt(2). Row and
 * column sums are untouched (P_u + P_v = P_a + P_b) while entries stop
 * commuting with the rest of the model. Exactly four entries change.
 */
inline FlatModel deform_corner_2x2(const FlatModel& m) {
    if (m.size() < 2) throw domain_error("deform_corner_2x2: need N >= 2");
    const Eigen::VectorXcd& a = m.vec(0, 0);
    const Eigen::VectorXcd& b = m.vec(0, 1);
    auto close = [](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
        return (x - y).norm() <= 1e-12;
    };
    if (!close(m.vec(1, 1), a) || !close(m.vec(1, 0), b) || close(a, b) ||
        std::abs(std::complex<double>(a.adjoint() * b)) > 1e-12)
        throw domain_error("deform_corner_2x2: corner is not [[a,b],[b,a]] with orthogonal a, b");
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd u = s * (a + b), v = s * (a - b);
    FlatModel out = m;
    out.vec(0, 0) = u;
    out.vec(1, 1) = u;
    out.vec(0, 1) = v;
    out.vec(1, 0) = v;
    out.provenance = "deform_corner_2x2(" + m.provenance + ")";
    return out;
}

/// Largest commutator norm over all pairs of entries.
inline double max_commutator_norm(const MagicUnitary& m) {
    int N = m.size();
    double worst = 0.0;
    for (int a = 0; a < N * N; ++a)
        for (int b = a + 1; b < N * N; ++b) {
            const auto& P = m.entry(a / N, a % N);
            const auto& Q = m.entry(b / N, b % N);
            worst = std::max(worst, spectral_norm(P * Q - Q * P));
        }
    return worst;
}

inline bool is_classical(const MagicUnitary& m, double tol = 1e-8) {
    return max_commutator_norm(m) <= tol;
}

inline bool is_classical(const FlatModel& m, double tol = 1e-8) {
    return is_classical(m.to_magic(), tol);
}

/**
 * Embeds an order-M flat model into the corner of an order-N one (2M <= N).
 * Outside the corner the entries project onto standard basis vectors laid
 * out by the circulant-corner Latin square, whose corner symbols are exactly
 * 0..M-1; inside the corner the inner model's vectors are zero-padded into
 * the span of the first M coordinates. Rows and columns still sum to the
 * identity, and the glued model is classical iff the inner one is.
 */
inline FlatModel glue_corner(const FlatModel& inner, int N) {
    int M = inner.size();
    LatinSquare L = circulant_corner_square(N, M); // also enforces 2M <= N
    FlatModel out(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
            if (i < M && j < M)
                x.head(M) = inner.vec(i, j);
            else
                x(L.at(i, j)) = 1.0;
            out.vec(i, j) = x;
        }
    out.provenance = "glue_corner(" + inner.provenance + ", N=" + std::to_string(N) + ")";
    return out;
}

/// Entrywise block-diagonal direct sum; all summands must share N.
inline MagicUnitary direct_sum(const std::vector<MagicUnitary>& parts) {
    if (parts.empty()) throw domain_error("direct_sum: no summands");
    int N = parts.front().size();
    int d = 0;
    for (const auto& p : parts) {
        if (p.size() != N) throw domain_error("direct_sum: size mismatch");
        d += p.fiber_dim();
    }
    MagicUnitary m(N, d);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int off = 0;
            for (const auto& p : parts) {
                int pd = p.fiber_dim();
                m.entry(i, j).block(off, off, pd, pd) = p.entry(i, j);
                off += pd;
            }
        }
    std::string prov = "direct_sum(";
    for (size_t t = 0; t < parts.size(); ++t) prov += (t ? ", " : "") + parts[t].provenance;
    m.provenance = prov + ")";
    return m;
}

// --- serialization ---------------------------------------------------------

inline nlohmann::ordered_json complex_json(const Complex& z) {
    return nlohmann::ordered_json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw validation_error("model file: complex entry must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline nlohmann::ordered_json to_json(const FlatModel& m) {
    nlohmann::ordered_json j;
    j["N"] = m.size();
    j["d"] = m.size();
    j["flat"] = true;
    j["provenance"] = m.provenance;
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int jj = 0; jj < m.size(); ++jj) {
            auto vec = nlohmann::ordered_json::array();
            for (int t = 0; t < m.size(); ++t) vec.push_back(complex_json(m.vec(i, jj)(t)));
            row.push_back(vec);
        }
        rows.push_back(row);
    }
    j["vectors"] = rows;
    return j;
}

inline nlohmann::ordered_json to_json(const MagicUnitary& m) {
    nlohmann::ordered_json j;
    j["N"] = m.size();
    j["d"] = m.fiber_dim();
    j["flat"] = false;
    j["provenance"] = m.provenance;
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int jj = 0; jj < m.size(); ++jj) {
            auto mat = nlohmann::ordered_json::array();
            for (int r = 0; r < m.fiber_dim(); ++r) {
                auto mrow = nlohmann::ordered_json::array();
                for (int c = 0; c < m.fiber_dim(); ++c) mrow.push_back(complex_json(m.entry(i, jj)(r, c)));
                mat.push_back(mrow);
            }
            row.push_back(mat);
        }
        rows.push_back(row);
    }
    j["matrices"] = rows;
    return j;
}

using AnyModel = std::variant<FlatModel, MagicUnitary>;

inline MagicUnitary to_magic(const AnyModel& m) {
    if (std::holds_alternative<FlatModel>(m)) return std::get<FlatModel>(m).to_magic();
    return std::get<MagicUnitary>(m);
}

inline AnyModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("flat"))
        throw validation_error("model file: missing N or flat field");
    int N = j["N"].get<int>();
    if (N < 1) throw validation_error("model file: N must be positive");
    std::string prov = j.value("provenance", std::string());
    if (j["flat"].get<bool>()) {
        if (!j.contains("vectors")) throw validation_error("model file: flat model without vectors");
        const auto& rows = j["vectors"];
        if (static_cast<int>(rows.size()) != N) throw validation_error("model file: wrong vector row count");
        FlatModel m(N);
        m.provenance = prov;
        for (int i = 0; i < N; ++i) {
            if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != N)
                throw validation_error("model file: wrong vector column count");
            for (int jj = 0; jj < N; ++jj) {
                const auto& vec = rows[static_cast<size_t>(i)][static_cast<size_t>(jj)];
                if (static_cast<int>(vec.size()) != N) throw validation_error("model file: wrong vector length");
                for (int t = 0; t < N; ++t) m.vec(i, jj)(t) = complex_from_json(vec[static_cast<size_t>(t)]);
            }
        }
        return m;
    }
    if (!j.contains("d") || !j.contains("matrices"))
        throw validation_error("model file: matrix model without d or matrices");
    int d = j["d"].get<int>();
    if (d < 1) throw validation_error("model file: d must be positive");
    const auto& rows = j["matrices"];
    if (static_cast<int>(rows.size()) != N) throw validation_error("model file: wrong matrix row count");
    MagicUnitary m(N, d);
    m.provenance = prov;
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != N)
            throw validation_error("model file: wrong matrix column count");
        for (int jj = 0; jj < N; ++jj) {
            const auto& mat = rows[static_cast<size_t>(i)][static_cast<size_t>(jj)];
            if (static_cast<int>(mat.size()) != d) throw validation_error("model file: wrong matrix size");
            for (int r = 0; r < d; ++r) {
                const auto& mrow = mat[static_cast<size_t>(r)];
                if (static_cast<int>(mrow.size()) != d) throw validation_error("model file: wrong matrix size");
                for (int c = 0; c < d; ++c) m.entry(i, jj)(r, c) = complex_from_json(mrow[static_cast<size_t>(c)]);
            }
        }
    }
    return m;
}

} // namespace qpg
