#include <doctest.h>

#include <cmath>

#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"
#include "qfc/table.hpp"

using namespace qfc;

TEST_SUITE_BEGIN("table");

TEST_CASE("entries for the ternary alphabet") {
    const auto t = ConstructionTable::build(3, 6, 6);
    CHECK(t.at(1, 1) == 3);
    CHECK(t.at(2, 1) == 6);
    CHECK(t.at(3, 1) == 24);
    CHECK(t.at(4, 1) == 96);
    CHECK(t.at(2, 2) == 4);
    CHECK(t.at(3, 2) == 12);
    CHECK(t.at(3, 3) == 8);
    CHECK(t.at(2, 3) == 0);
    CHECK(t.at(4, 3) == 24);
    CHECK(t.at(1, 5) == 1);
    CHECK_THROWS_AS(t.at(7, 1), IndexOutOfRange);
    CHECK_THROWS_AS(t.at(1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(ConstructionTable::build(2, 4, 4), UnsupportedAlphabet);
}

TEST_CASE("column states read bottom-up") {
    const auto t = ConstructionTable::build(3, 4, 4);
    CHECK(t.column_state(2, 1) == State({6, 3}));
    CHECK(t.column_state(2, 2) == State({4, 1}));
    CHECK(t.column_state(1, 1) == State({3}));
    CHECK(t.column_state(3, 1) == State({24, 6, 3}));
}

TEST_CASE("witness partitions reproduce the worked-example rounds") {
    const auto t = ConstructionTable::build(3, 4, 8);
    const Partition p21 = t.partition(2, 1);
    for (const auto& part : p21.parts) CHECK(part == std::vector<Int>{2, 1});
    const Reduction r21 = reduce(t.column_state(2, 1), p21);
    for (const auto& x : r21.states) CHECK(x == t.column_state(2, 2));

    const Partition p22 = t.partition(2, 2);
    CHECK(p22.parts[0] == std::vector<Int>{0, 1});
    CHECK(p22.parts[1] == std::vector<Int>{2, 0});
    CHECK(p22.parts[2] == std::vector<Int>{2, 0});
    const Reduction r22 = reduce(t.column_state(2, 2), p22);
    CHECK(r22.states[0] == State({0, 1}));
    CHECK(r22.states[1] == State({3, 0}));

    const Reduction r32 = reduce(t.column_state(3, 2), t.partition(3, 2));
    CHECK(r32.states[0] == t.column_state(3, 3));
    CHECK(r32.states[1] == embed(t.column_state(2, 1), 1));
    CHECK(check_reduction(t.column_state(3, 2), r32));
}

TEST_CASE("verify_table passes on a small ternary table") {
    const auto report = verify_table(ConstructionTable::build(3, 6, 6));
    CHECK_MESSAGE(report.ok(), report.summary());
}

TEST_CASE("verify_table checks cover the claimed identities") {
    const auto t = ConstructionTable::build(4, 5, 5);
    const auto report = verify_table(t);
    CHECK_MESSAGE(report.ok(), report.summary());
    // alternate form of the recurrence on all stored indices
    for (int i = 1; i + 1 <= t.m_max(); ++i)
        for (int k = 2; k + 1 <= t.k_max(); ++k)
            CHECK(Int(3) * t.at(i, k - 1) + t.at(i + 1, k + 1) ==
                  t.at(i + 1, k) + Int(3) * t.at(i, k));
}

TEST_CASE("achievable block length") {
    CHECK(achievable_blocklength(3, 0, 3).n == 1);
    CHECK(achievable_blocklength(3, 0, 3).i == 1);
    CHECK(achievable_blocklength(6, 1, 3).n == 5);
    CHECK(achievable_blocklength(6, 1, 3).i == 2);
    CHECK(achievable_blocklength(9, 1, 3).n == 7);
    CHECK(achievable_blocklength(9, 1, 3).i == 3);
    CHECK(achievable_blocklength(24, 1, 3).n == 7);
    CHECK_THROWS_AS(achievable_blocklength(5, 1, 2), UnsupportedAlphabet);
}

TEST_CASE("domination wiring behind the achievability argument") {
    for (auto [m, e] : std::vector<std::pair<Int, int>>{{3, 0}, {6, 1}, {9, 1}, {24, 1}, {4, 2}, {100, 2}}) {
        const auto ach = achievable_blocklength(m, e, 3);
        const auto t = ConstructionTable::build(3, e + ach.i, 2);
        CHECK(dominates_componentwise(embed(initial_state(m, e), ach.i - 1),
                                      t.column_state(e + ach.i, 1)));
    }
}

TEST_CASE("first-column rate approaches the construction line") {
    // log_q A(i,1) / (2(e+i)-1) against (1-2f) log_q(q-1) at matching f = e/n
    for (int q : {3, 5}) {
        for (double f : {0.1, 0.25, 0.4}) {
            const int i = 400;
            const int e = static_cast<int>(std::round(f * (2 * i - 1) / (1 - 2 * f)));
            const int n = 2 * (e + i) - 1;
            const double lq = std::log(static_cast<double>(q));
            // log_q A(i,1) = 1 + (2i-3) log_q(q-1) + log_q(q-2)
            const double log_a =
                1.0 + (2.0 * i - 3.0) * std::log(static_cast<double>(q - 1)) / lq +
                std::log(static_cast<double>(q - 2)) / lq;
            const double rate = log_a / n;
            const double line = (1.0 - 2.0 * static_cast<double>(e) / n) *
                                std::log(static_cast<double>(q - 1)) / lq;
            CHECK(std::abs(rate - line) / line < 0.05);
        }
    }
}

TEST_SUITE_END();
