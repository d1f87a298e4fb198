#include <doctest.h>

#include "helpers.hpp"
#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"
#include "qfc/sim.hpp"
#include "qfc/solver.hpp"

using namespace qfc;

TEST_SUITE_BEGIN("sim");

TEST_CASE("silent adversary always decodes") {
    const FeedbackCode code = test::worked_example_code();
    for (Int theta = 0; theta < 9; ++theta) {
        auto silent = make_silent_adversary();
        const Transcript t = simulate(code, *silent, theta);
        CHECK(t.ok);
        CHECK(t.errors == 0);
        CHECK(*t.decoded == theta);
    }
}

TEST_CASE("the worked example's one-error run") {
    const FeedbackCode code = test::worked_example_code();
    auto scripted = make_scripted_adversary({2, 1, 1, 0});
    const Transcript t = simulate(code, *scripted, 4);
    CHECK(t.sent == std::vector<int>{1, 1, 1, 0});
    CHECK(t.received == std::vector<int>{2, 1, 1, 0});
    CHECK(t.errors == 1);
    CHECK(t.error_positions == std::vector<int>{0});
    CHECK(*t.decoded == 4);
    CHECK(t.ok);
    CHECK(transcript_line(t) == "4,1-1-1-0,2-1-1-0,1,4,true");
}

TEST_CASE("budgeted adversaries cannot beat a verified code") {
    const FeedbackCode code = test::worked_example_code();
    for (Int theta = 0; theta < 9; ++theta) {
        auto greedy = make_greedy_adversary(theta);
        const Transcript tg = simulate(code, *greedy, theta);
        CHECK(tg.ok);
        CHECK(tg.errors <= code.e);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto random = make_random_adversary(seed);
            const Transcript tr = simulate(code, *random, theta);
            CHECK(tr.ok);
            CHECK(tr.errors <= code.e);
        }
    }
}

TEST_CASE("identical seeds give identical transcripts") {
    const FeedbackCode code = test::worked_example_code();
    auto a = make_random_adversary(42);
    auto b = make_random_adversary(42);
    const Transcript ta = simulate(code, *a, 5);
    const Transcript tb = simulate(code, *b, 5);
    CHECK(ta.received == tb.received);
    CHECK(ta.sent == tb.sent);
}

TEST_CASE("feedback causality: sent symbols replay from the received prefix") {
    const FeedbackCode code = test::worked_example_code();
    auto greedy = make_greedy_adversary(7);
    const Transcript t = simulate(code, *greedy, 7);
    for (size_t i = 0; i < t.sent.size(); ++i) {
        const std::vector<int> prefix(t.received.begin(),
                                      t.received.begin() + static_cast<long>(i));
        CHECK(encode_step(code, t.theta, prefix) == t.sent[i]);
    }
}

TEST_CASE("exhaustive verification of the worked example") {
    const VerifyOutcome outcome = exhaustive_verify(test::worked_example_code());
    CHECK(outcome.ok);
    // 9 messages x (1 + 4*2) adaptive paths
    CHECK(outcome.leaves == 81);
}

TEST_CASE("path-count identity per message") {
    const FeedbackCode code = build_from_table(6, 1, 3);
    const VerifyOutcome outcome = exhaustive_verify(code);
    CHECK(outcome.ok);
    const Int per_message = volume(initial_state(1, code.e), code.n, code.q);
    CHECK(Int(outcome.leaves) == per_message * code.M);
}

TEST_CASE("thread-parallel verification is equivalent") {
    const FeedbackCode code = test::worked_example_code();
    const VerifyOutcome seq = exhaustive_verify(code, 10'000'000, 1);
    const VerifyOutcome par = exhaustive_verify(code, 10'000'000, 4);
    CHECK(seq.ok == par.ok);
    CHECK(seq.leaves == par.leaves);
}

TEST_CASE("fault injection yields a concrete counterexample") {
    const VerifyOutcome outcome = exhaustive_verify(test::corrupted_code());
    CHECK_FALSE(outcome.ok);
    REQUIRE(outcome.counterexample.has_value());
    CHECK(outcome.counterexample->theta == 0);
    CHECK_FALSE(outcome.counterexample->ok);
}

TEST_CASE("leaf cap is enforced up front") {
    const FeedbackCode code = test::worked_example_code();
    CHECK_THROWS_AS(exhaustive_verify(code, 10), BudgetExceeded);
}

TEST_SUITE_END();
