#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "qpg/partitions.hpp"

using qpg::Partition;

TEST_CASE("partition enumeration counts", "[partitions]") {
    const long long bell_ref[] = {1, 1, 2, 5, 15, 52, 203, 877};
    const long long catalan_ref[] = {1, 1, 2, 5, 14, 42, 132, 429};
    for (int k = 0; k <= 7; ++k) {
        CHECK(qpg::bell(k) == bell_ref[k]);
        CHECK(qpg::catalan(k) == catalan_ref[k]);
        CHECK(static_cast<long long>(qpg::enumerate_partitions(k).size()) == bell_ref[k]);
        CHECK(static_cast<long long>(qpg::enumerate_partitions(k, true).size()) == catalan_ref[k]);
    }
    CHECK(qpg::catalan(10) == 16796);
    CHECK(qpg::bell(10) == 115975);
}

TEST_CASE("enumeration is sorted and duplicate-free", "[partitions]") {
    for (int k = 1; k <= 5; ++k) {
        auto all = qpg::enumerate_partitions(k);
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
}

TEST_CASE("RGS round trips", "[partitions]") {
    for (int k = 0; k <= 5; ++k) {
        for (const auto& p : qpg::enumerate_partitions(k)) {
            CHECK(Partition::from_rgs(p.rgs()) == p);
            CHECK(Partition::from_rgs_string(p.rgs_string()) == p);
        }
    }
    auto p = Partition::from_rgs_string("01021");
    CHECK(p.num_blocks() == 3);
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 2}, {1, 4}, {3}});
    CHECK(p.block_of(4) == 1);
}

TEST_CASE("constructor canonicalizes and validates", "[partitions]") {
    Partition p(4, {{3, 1}, {2, 0}});
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
    CHECK(p.rgs_string() == "0101");

    CHECK_THROWS_AS(Partition(3, {{0, 1}}), qpg::domain_error);          // not covering
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), qpg::domain_error);  // repeated element
    CHECK_THROWS_AS(Partition(3, {{0, 1, 2, 3}}), qpg::domain_error);    // out of range
    CHECK_THROWS_AS(Partition::from_rgs({0, 2}), qpg::domain_error);     // growth violated
    CHECK_THROWS_AS(Partition::from_rgs_string("0#"), qpg::domain_error);
}

TEST_CASE("refinement order basics", "[partitions]") {
    auto singletons = Partition::from_rgs_string("0123");
    auto one_block = Partition::from_rgs_string("0000");
    for (const auto& p : qpg::enumerate_partitions(4)) {
        CHECK(qpg::refines(singletons, p));
        CHECK(qpg::refines(p, one_block));
        CHECK(qpg::refines(p, p));
    }
    CHECK(qpg::refines(Partition::from_rgs_string("0102"), Partition::from_rgs_string("0100")));
    CHECK_FALSE(qpg::refines(Partition::from_rgs_string("0100"), Partition::from_rgs_string("0102")));
}

TEST_CASE("join is the least upper bound", "[partitions]") {
    auto all = qpg::enumerate_partitions(4);
    for (const auto& p : all)
        for (const auto& q : all) {
            auto j = qpg::join(p, q);
            CHECK(oracles::is_least_upper_bound(p, q, j, all));
            CHECK(j == qpg::join(q, p));
        }
}

TEST_CASE("non-crossing test agrees with quadruple scan", "[partitions]") {
    for (int k = 0; k <= 7; ++k)
        for (const auto& p : qpg::enumerate_partitions(k))
            CHECK(qpg::is_noncrossing(p) == oracles::is_noncrossing_brute(p));
    CHECK_FALSE(qpg::is_noncrossing(Partition::from_rgs_string("0101")));
    CHECK(qpg::is_noncrossing(Partition::from_rgs_string("0110")));
}

TEST_CASE("delta and kernels", "[partitions]") {
    // ker groups positions with equal values
    CHECK(qpg::kernel_of_index({5, 7, 5, 2}) == Partition(4, {{0, 2}, {1}, {3}}));

    // delta_p(i) == [p refines ker(i)], and delta factors through joins
    auto all = qpg::enumerate_partitions(4);
    for (const auto& t : oracles::all_tuples(3, 4)) {
        auto ker = qpg::kernel_of_index(t);
        for (const auto& p : all) {
            CHECK(qpg::delta(p, t) == (qpg::refines(p, ker) ? 1 : 0));
            for (const auto& q : all)
                CHECK(qpg::delta(qpg::join(p, q), t) == (qpg::delta(p, t) & qpg::delta(q, t)));
        }
    }
}

TEST_CASE("colored words and admissibility", "[partitions]") {
    qpg::ColoredWord w(2, {1, 1});
    CHECK(qpg::colored_admissible(Partition::from_rgs_string("00"), w));
    CHECK_FALSE(qpg::colored_admissible(Partition::from_rgs_string("01"), w));

    // letters reduce mod s on construction
    CHECK(qpg::ColoredWord(3, {4, -1, 3}).letters == std::vector<int>{1, 2, 0});
    CHECK_THROWS_AS(qpg::ColoredWord(0, {1}), qpg::domain_error);

    // modulus 1 imposes no constraint
    for (int k = 0; k <= 6; ++k) {
        qpg::ColoredWord trivial(1, std::vector<int>(static_cast<size_t>(k), 0));
        CHECK(qpg::enumerate_colored_nc(trivial).size() == qpg::enumerate_partitions(k, true).size());
    }

    // filtered enumeration matches a direct filter
    qpg::ColoredWord w4(2, {1, 1, 1, 1});
    std::vector<Partition> direct;
    for (const auto& p : qpg::enumerate_partitions(4, true))
        if (qpg::colored_admissible(p, w4)) direct.push_back(p);
    CHECK(qpg::enumerate_colored_nc(w4) == direct);
    // even block sizes only: the 4-block plus the two non-crossing pairings
    CHECK(direct.size() == 3);
}
