#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qpg/invariants.hpp"

using qpg::ColoredWord;
using qpg::Subspace;
using qpg::Verdict;

namespace {

long long partitions_with_at_most(int k, int max_blocks) {
    long long n = 0;
    for (const auto& p : qpg::enumerate_partitions(k))
        if (p.num_blocks() <= max_blocks) ++n;
    return n;
}

/// Independent count for the corner fixed space: choose which slots carry a
/// high basis vector (factor (N-M) each) and an admissible partition of the
/// rest (non-crossing for a quantum corner of size >= 4, arbitrary below).
long long corner_fix_count(int N, int M, int k) {
    long long total = 0;
    for (int mask = 0; mask < (1 << k); ++mask) {
        int j = 0;
        for (int t = 0; t < k; ++t) j += (mask >> t) & 1;
        long long ways = 1;
        for (int t = 0; t < j; ++t) ways *= (N - M);
        int f = k - j;
        long long inner = (M >= 4) ? qpg::catalan(f) : partitions_with_at_most(f, M);
        total += ways * inner;
    }
    return total;
}

} // namespace

TEST_CASE("classical fixed space equals the symmetric-group average", "[invariants]") {
    for (int N : {2, 3, 4}) {
        for (int k = 0; k <= 4; ++k) {
            auto fix = qpg::classical_fix(N, k);
            CHECK(fix.dim() == partitions_with_at_most(k, N));
            auto S = oracles::averaging_projector(N, k);
            CHECK(oracles::averaging_fix_dim(N, k) == fix.dim());
            for (int c = 0; c < fix.dim(); ++c)
                CHECK((S * fix.basis.col(c) - fix.basis.col(c)).norm() <= 1e-9);
        }
    }
    CHECK(qpg::classical_fix(6, 3).dim() == oracles::averaging_fix_dim(6, 3));
    CHECK(qpg::classical_fix(6, 5).dim() == qpg::bell(5)); // N >= k: all partitions
    CHECK_THROWS_AS(qpg::classical_fix(0, 2), qpg::domain_error);
}

TEST_CASE("corner fixed-space dimensions", "[invariants]") {
    CHECK(qpg::corner_quantum_fix({5, 4}, 2).dim() == 5);
    CHECK(qpg::corner_quantum_fix({4, 3}, 4).dim() == 51);
    for (int k = 0; k <= 3; ++k) {
        CHECK(qpg::corner_quantum_fix({5, 4}, k).dim() == corner_fix_count(5, 4, k));
        CHECK(qpg::corner_quantum_fix({6, 4}, k).dim() == corner_fix_count(6, 4, k));
        CHECK(qpg::corner_quantum_fix({4, 3}, k).dim() == corner_fix_count(4, 3, k));
        CHECK(qpg::corner_quantum_fix({6, 5}, k).dim() == corner_fix_count(6, 5, k));
    }
    // full-size corner: the fixed space is exactly the non-crossing span
    CHECK(qpg::corner_quantum_fix({4, 4}, 3).dim() == qpg::catalan(3));
    CHECK_THROWS_AS(qpg::corner_quantum_fix({3, 4}, 2), qpg::domain_error);
}

TEST_CASE("subspace primitives", "[invariants]") {
    // two planes in C^3 meeting in a line
    Eigen::MatrixXcd A(3, 2), B(3, 2);
    A << 1, 0, 0, 1, 0, 0; // span{e0, e1}
    B << 0, 0, 1, 0, 0, 1; // span{e1, e2}
    auto SA = qpg::subspace_from_spanning(A, 1e-10);
    auto SB = qpg::subspace_from_spanning(B, 1e-10);
    auto meet = qpg::intersect_subspaces(SA, SB, 1e-10);
    REQUIRE(meet.dim() == 1);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
    e1(1) = 1.0;
    CHECK(qpg::subspace_contains(meet, e1, 1e-8));
    CHECK_FALSE(qpg::subspace_contains(SA, Eigen::VectorXcd::Ones(3), 1e-8));

    // rank collapse of dependent spanning vectors
    Eigen::MatrixXcd C(3, 3);
    C << 1, 2, 3, 0, 0, 0, 1, 2, 3;
    CHECK(qpg::subspace_from_spanning(C, 1e-10).dim() == 1);

    auto resid = qpg::project_out(SA, e1);
    CHECK(resid.norm() <= 1e-12);
    CHECK_THROWS_AS(qpg::intersect_subspaces(SA, qpg::subspace_from_spanning(Eigen::MatrixXcd(2, 1), 1e-8), 1e-8),
                    qpg::domain_error);
}

TEST_CASE("generation certificates for the symmetric pair", "[invariants]") {
    // N = 5, M = 4: equality at every degree up to 4
    const int catalan_dims[] = {1, 1, 2, 5, 14};
    for (int k = 0; k <= 4; ++k) {
        auto c = qpg::topgen_certificate(5, 4, k);
        CHECK(c.statement == "topgen");
        CHECK(c.verdict == Verdict::EQUAL);
        CHECK(c.dim_lhs == catalan_dims[k]);
        CHECK(c.dim_rhs == catalan_dims[k]);
        CHECK(c.witness.cols() == 0);
    }
    for (int k = 0; k <= 3; ++k) CHECK(qpg::topgen_certificate(6, 5, k).verdict == Verdict::EQUAL);

    CHECK_THROWS_AS(qpg::topgen_certificate(4, 5, 2), qpg::domain_error);
    CHECK_THROWS_AS(qpg::topgen_certificate(5, 4, -1), qpg::domain_error);
}

TEST_CASE("small corner fails at degree 4 with a crossing witness", "[invariants]") {
    auto c = qpg::topgen_certificate(4, 3, 4);
    CHECK(c.verdict == Verdict::STRICTLY_LARGER);
    CHECK(c.dim_lhs == 15);
    CHECK(c.dim_rhs == 14);
    REQUIRE(c.witness.cols() == 1);

    Eigen::VectorXcd w = c.witness.col(0);
    CHECK(std::abs(w.norm() - 1.0) <= 1e-10);

    // the witness lies in both fixed spaces and misses the non-crossing span
    auto cls = qpg::classical_fix(4, 4);
    auto cor = qpg::corner_quantum_fix({4, 3}, 4);
    CHECK(qpg::subspace_contains(cls, w, 1e-7));
    CHECK(qpg::subspace_contains(cor, w, 1e-7));
    std::vector<Eigen::VectorXcd> ncv;
    for (const auto& p : qpg::enumerate_partitions(4, true))
        ncv.push_back(qpg::partition_vector_eigen(p, 4));
    auto nc = qpg::subspace_from_spanning(ncv, 1e-8);
    CHECK((nc.basis.adjoint() * w).norm() <= 1e-7);

    // it is the residual direction of the crossing partition vector
    Eigen::VectorXcd xi = qpg::partition_vector_eigen(qpg::Partition::from_rgs_string("0101"), 4);
    Eigen::VectorXcd resid = qpg::project_out(nc, xi);
    REQUIRE(resid.norm() > 1e-6);
    resid.normalize();
    CHECK(std::abs(std::abs(std::complex<double>(w.adjoint() * resid)) - 1.0) <= 1e-7);
}

TEST_CASE("reflection classical fixed spaces match dense monomial averaging", "[invariants]") {
    struct Case { int N; int s; std::vector<int> w; };
    const Case cases[] = {
        {2, 2, {1, 1}}, {2, 2, {1, 0}}, {3, 2, {1, 1}}, {3, 2, {0, 0}},
        {3, 3, {1, 2}}, {3, 3, {1, 1}}, {2, 3, {1, 2, 0}}, {3, 2, {1, 1, 0}},
    };
    for (const auto& t : cases) {
        ColoredWord w(t.s, t.w);
        auto fix = qpg::reflection_classical_fix(qpg::ClassicalGroup::reflection, t.N, w);
        auto S = oracles::monomial_average_matrix(t.N, w);
        CHECK(fix.dim() == oracles::projection_rank(S));
        for (int c = 0; c < fix.dim(); ++c)
            CHECK((S * fix.basis.col(c) - fix.basis.col(c)).norm() <= 1e-9);
    }
    // the hallmark small case: one invariant direction for the pair (1,1)
    CHECK(qpg::reflection_classical_fix(qpg::ClassicalGroup::reflection, 2, ColoredWord(2, {1, 1})).dim() == 1);
    // the symmetric variant ignores colors
    CHECK(qpg::reflection_classical_fix(qpg::ClassicalGroup::symmetric, 3, ColoredWord(2, {1, 1})).dim() ==
          qpg::classical_fix(3, 2).dim());
}

TEST_CASE("colored certificates at modulus one reduce to the plain ones", "[invariants]") {
    for (int k = 0; k <= 3; ++k) {
        auto plain = qpg::topgen_certificate(5, 4, k);
        auto colored = qpg::reflection_topgen_certificate(5, ColoredWord(1, std::vector<int>(static_cast<size_t>(k), 0)));
        CHECK(colored.statement == "refl-topgen");
        CHECK(colored.M == 4);
        CHECK(colored.dim_lhs == plain.dim_lhs);
        CHECK(colored.dim_rhs == plain.dim_rhs);
        CHECK(colored.verdict == plain.verdict);
    }
}

TEST_CASE("colored certificates at N = 6", "[invariants]") {
    struct Expect { std::vector<int> w; int dim; };
    const Expect table[] = {
        {{}, 1}, {{0}, 1}, {{1}, 0},
        {{0, 0}, 2}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 1},
        {{1, 1, 0}, 2}, {{1, 0, 1}, 2}, {{0, 1, 1}, 2}, {{1, 1, 1}, 0},
    };
    for (const auto& t : table) {
        auto c = qpg::reflection_topgen_certificate(6, ColoredWord(2, t.w));
        CHECK(c.verdict == Verdict::EQUAL);
        CHECK(c.dim_lhs == t.dim);
        CHECK(c.dim_rhs == t.dim);
        CHECK(c.s == 2);
        CHECK(c.word == t.w);
    }
    CHECK_THROWS_AS(qpg::reflection_topgen_certificate(1, ColoredWord(2, {1})), qpg::domain_error);
}

TEST_CASE("colored certificate at N = 5 is internally consistent", "[invariants]") {
    // No equality claim is frozen here; the pair may or may not generate at
    // this size. The certificate must still be conclusive and well-formed.
    auto c = qpg::reflection_topgen_certificate(5, ColoredWord(2, {1, 1}));
    CHECK(c.verdict != Verdict::INCONCLUSIVE);
    CHECK(c.dim_lhs >= c.dim_rhs);
    CHECK(static_cast<int>(c.witness.cols()) == c.dim_lhs - c.dim_rhs);
}

TEST_CASE("certificates serialize with their parameters", "[invariants]") {
    auto j = qpg::to_json(qpg::topgen_certificate(5, 4, 2));
    CHECK(j["statement"] == "topgen");
    CHECK(j["params"]["N"] == 5);
    CHECK(j["params"]["M"] == 4);
    CHECK(j["params"]["k"] == 2);
    CHECK_FALSE(j["params"].contains("s"));
    CHECK(j["dim_lhs"] == 2);
    CHECK(j["dim_rhs"] == 2);
    CHECK(j["verdict"] == "EQUAL");
    CHECK(j["backend"] == "float64/svd");
    CHECK(j["witness_dim"] == 0);
    CHECK_FALSE(j.contains("witness"));

    auto jw = qpg::to_json(qpg::topgen_certificate(4, 3, 4));
    CHECK(jw["verdict"] == "STRICTLY_LARGER");
    CHECK(jw["witness_dim"] == 1);
    REQUIRE(jw.contains("witness"));
    CHECK(jw["witness"].size() == 1);
    CHECK(jw["witness"][0].size() == 256);

    auto jr = qpg::to_json(qpg::reflection_topgen_certificate(6, ColoredWord(2, {1, 1})));
    CHECK(jr["params"]["s"] == 2);
    CHECK(jr["params"]["word"] == nlohmann::json::array({1, 1}));

    CHECK(std::string(qpg::verdict_str(Verdict::EQUAL)) == "EQUAL");
    CHECK(std::string(qpg::verdict_str(Verdict::STRICTLY_LARGER)) == "STRICTLY_LARGER");
    CHECK(std::string(qpg::verdict_str(Verdict::INCONCLUSIVE)) == "INCONCLUSIVE");
}
