#include "qfc/sim.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"

namespace qfc {

std::string transcript_line(const Transcript& t) {
    auto join = [](const std::vector<int>& symbols) {
        std::string out;
        for (size_t i = 0; i < symbols.size(); ++i) {
            if (i) out += '-';
            out += std::to_string(symbols[i]);
        }
        return out;
    };
    std::string line = t.theta.str();
    line += ',' + join(t.sent);
    line += ',' + join(t.received);
    line += ',' + std::to_string(t.errors);
    line += ',' + (t.decoded ? t.decoded->str() : std::string("none"));
    line += ',' + std::string(t.ok ? "true" : "false");
    return line;
}

namespace {

struct SilentAdversary final : Adversary {
    int corrupt(int alpha, const std::vector<int>&, const std::vector<int>&,
                const CodeRunner&) override {
        return alpha;
    }
};

struct GreedyAdversary final : Adversary {
    Int theta;
    int budget = 0;
    int spent = 0;
    explicit GreedyAdversary(Int t) : theta(std::move(t)) {}

    void begin(const FeedbackCode& code) override {
        budget = code.e;
        spent = 0;
    }

    int corrupt(int alpha, const std::vector<int>&, const std::vector<int>&,
                const CodeRunner& view) override {
        if (spent >= budget) return alpha;
        // Answer that keeps the most live competitors of theta; ties go to
        // the smallest symbol.
        int best = alpha;
        Int best_competitors = -1;
        const int q = view.node_partition().q();
        for (int beta = 0; beta < q; ++beta) {
            CodeRunner probe = view;
            probe.advance(beta);
            const Int competitors = probe.alive_total() - (probe.is_alive(theta) ? 1 : 0);
            if (competitors > best_competitors) {
                best_competitors = competitors;
                best = beta;
            }
        }
        if (best != alpha) ++spent;
        return best;
    }
};

struct RandomAdversary final : Adversary {
    std::mt19937_64 rng;
    int budget = 0;
    int spent = 0;
    explicit RandomAdversary(std::uint64_t seed) : rng(seed) {}

    void begin(const FeedbackCode& code) override {
        budget = code.e;
        spent = 0;
    }

    int corrupt(int alpha, const std::vector<int>&, const std::vector<int>&,
                const CodeRunner& view) override {
        if (spent >= budget) return alpha;
        const int q = view.node_partition().q();
        std::uniform_int_distribution<int> pick(0, q - 1);
        const int beta = pick(rng);
        if (beta != alpha) ++spent;
        return beta;
    }
};

struct ScriptedAdversary final : Adversary {
    std::vector<int> received;
    explicit ScriptedAdversary(std::vector<int> r) : received(std::move(r)) {}

    int corrupt(int, const std::vector<int>& sent, const std::vector<int>&,
                const CodeRunner&) override {
        return received.at(sent.size() - 1);
    }
};

}  // namespace

std::unique_ptr<Adversary> make_silent_adversary() { return std::make_unique<SilentAdversary>(); }
std::unique_ptr<Adversary> make_greedy_adversary(const Int& theta) {
    return std::make_unique<GreedyAdversary>(theta);
}
std::unique_ptr<Adversary> make_random_adversary(std::uint64_t seed) {
    return std::make_unique<RandomAdversary>(seed);
}
std::unique_ptr<Adversary> make_scripted_adversary(std::vector<int> received) {
    return std::make_unique<ScriptedAdversary>(std::move(received));
}

Transcript simulate(const FeedbackCode& code, Adversary& adversary, const Int& theta) {
    adversary.begin(code);
    Transcript t;
    t.theta = theta;
    CodeRunner runner(code);
    for (int round = 0; round < code.n; ++round) {
        const int alpha = runner.part_of(theta);
        t.sent.push_back(alpha);
        const int beta = adversary.corrupt(alpha, t.sent, t.received, runner);
        t.received.push_back(beta);
        if (beta != alpha) {
            t.error_positions.push_back(round);
            ++t.errors;
        }
        runner.advance(beta);
    }
    if (auto survivor = runner.unique_real_survivor()) t.decoded = *survivor;
    t.ok = t.decoded && *t.decoded == theta;
    return t;
}

namespace {

// All adaptive output branches for one message; returns false on the first
// failing leaf, filling the counterexample.
bool verify_message(const FeedbackCode& code, const Int& theta, int errors_left,
                    CodeRunner& runner, std::vector<int>& sent, std::vector<int>& received,
                    std::uint64_t& leaves, Transcript* counterexample) {
    if (static_cast<int>(received.size()) == code.n) {
        ++leaves;
        auto survivor = runner.unique_real_survivor();
        if (survivor && *survivor == theta) return true;
        if (counterexample) {
            counterexample->theta = theta;
            counterexample->sent = sent;
            counterexample->received = received;
            counterexample->errors = code.e - errors_left;
            for (size_t i = 0; i < sent.size(); ++i)
                if (sent[i] != received[i])
                    counterexample->error_positions.push_back(static_cast<int>(i));
            counterexample->decoded = survivor;
            counterexample->ok = false;
        }
        return false;
    }
    const int alpha = runner.part_of(theta);
    sent.push_back(alpha);
    for (int beta = 0; beta < code.q; ++beta) {
        const int cost = beta == alpha ? 0 : 1;
        if (cost > errors_left) continue;
        CodeRunner branch = runner;
        branch.advance(beta);
        received.push_back(beta);
        const bool ok = verify_message(code, theta, errors_left - cost, branch, sent, received,
                                       leaves, counterexample);
        received.pop_back();
        if (!ok) {
            sent.pop_back();
            return false;
        }
    }
    sent.pop_back();
    return true;
}

}  // namespace

VerifyOutcome exhaustive_verify(const FeedbackCode& code, std::uint64_t leaf_cap, int threads) {
    // The leaf count is known in advance: per message, one unflipped branch
    // and q-1 flipped ones per round give sum_{l<=e} C(n,l)(q-1)^l adaptive
    // paths -- the volume of a one-element state.
    const Int per_message = volume(initial_state(1, code.e), code.n, code.q);
    const Int planned = per_message * code.M;
    if (planned > leaf_cap)
        throw BudgetExceeded("exhaustive_verify: " + planned.str() + " leaves exceed the cap of " +
                             std::to_string(leaf_cap));

    const std::uint64_t message_count = code.M.convert_to<std::uint64_t>();
    threads = std::max(1, std::min<int>(threads, static_cast<int>(message_count)));

    struct Slice {
        bool ok = true;
        std::uint64_t leaves = 0;
        std::optional<Transcript> counterexample;  // smallest failing theta in the slice
    };
    std::vector<Slice> slices(static_cast<size_t>(threads));

    auto work = [&](int slot) {
        Slice& slice = slices[static_cast<size_t>(slot)];
        for (std::uint64_t m = static_cast<std::uint64_t>(slot); m < message_count;
             m += static_cast<std::uint64_t>(threads)) {
            const Int theta = m;
            std::uint64_t leaves = 0;
            Transcript counterexample;
            bool ok;
            try {
                CodeRunner runner(code);
                std::vector<int> sent, received;
                ok = verify_message(code, theta, code.e, runner, sent, received, leaves,
                                    &counterexample);
                // Self-check of the enumeration against the volume identity.
                if (ok && Int(leaves) != per_message) {
                    ok = false;
                    counterexample.theta = theta;
                    counterexample.ok = false;
                }
            } catch (const Error&) {
                // Ledger/policy divergence or ambiguous decode inside a
                // corrupted code counts as a failed verification.
                ok = false;
                counterexample.theta = theta;
                counterexample.ok = false;
            }
            slice.leaves += leaves;
            if (!ok) {
                slice.ok = false;
                slice.counterexample = counterexample;
                break;
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int slot = 0; slot < threads; ++slot) pool.emplace_back(work, slot);
        for (auto& th : pool) th.join();
    }

    VerifyOutcome outcome;
    outcome.ok = true;
    for (const Slice& slice : slices) {
        outcome.leaves += slice.leaves;
        if (!slice.ok) {
            outcome.ok = false;
            if (slice.counterexample &&
                (!outcome.counterexample ||
                 slice.counterexample->theta < outcome.counterexample->theta)) {
                outcome.counterexample = slice.counterexample;
            }
        }
    }
    return outcome;
}

}  // namespace qfc
