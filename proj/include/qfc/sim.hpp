#ifndef QFC_SIM_HPP
#define QFC_SIM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfc/codec.hpp"
#include "qfc/ints.hpp"

namespace qfc {

// One channel use end to end.
struct Transcript {
    Int theta;
    std::vector<int> sent;      // alpha_1..alpha_n
    std::vector<int> received;  // beta_1..beta_n
    std::vector<int> error_positions;
    int errors = 0;
    std::optional<Int> decoded;  // absent when no unique survivor
    bool ok = false;
};

/// "theta,sent,received,errors,decoded,ok" with symbols '-'-joined and
/// decoded rendered as "none" when decoding failed.
std::string transcript_line(const Transcript& t);

// An adversary chooses each received symbol from the sent symbol, the full
// transcript so far and the code's public policy (omniscient, worst case).
// It may depend on nothing later than that, which is what makes the feedback
// model causal. Budgeted kinds never exceed e alterations.
class Adversary {
  public:
    virtual ~Adversary() = default;
    /// Called once per simulation before the first round; budgeted kinds read
    /// the code's error budget here and reset their spend.
    virtual void begin(const FeedbackCode&) {}
    virtual int corrupt(int alpha, const std::vector<int>& sent,
                        const std::vector<int>& received, const CodeRunner& view) = 0;
};

/// Delivers every symbol unchanged.
std::unique_ptr<Adversary> make_silent_adversary();

/// Spends its budget greedily on the answer that keeps the most live
/// competitors of theta. A cheap counterexample finder; completeness comes
/// only from exhaustive_verify.
std::unique_ptr<Adversary> make_greedy_adversary(const Int& theta);

/// Uniform choice among the answers the remaining budget allows.
std::unique_ptr<Adversary> make_random_adversary(std::uint64_t seed);

/// Plays back a fixed received word (budget not enforced; for scripted
/// replays and fault injection).
std::unique_ptr<Adversary> make_scripted_adversary(std::vector<int> received);

/// Run the full n-round exchange of message theta through the adversary and
/// decode. Deterministic given the adversary (and its seed).
Transcript simulate(const FeedbackCode& code, Adversary& adversary, const Int& theta);

struct VerifyOutcome {
    bool ok = false;
    std::uint64_t leaves = 0;  // adaptive paths checked, all messages
    std::optional<Transcript> counterexample;
};

/// Depth-first enumeration of every adaptive adversary path within the error
/// budget (one unflipped branch and q-1 flipped ones per round), for every
/// message: decode must return the message at every leaf. The per-message
/// leaf count equals sum_{l<=e} C(n,l)(q-1)^l -- exactly the volume of a
/// one-element state -- and that identity is re-checked on every run. Throws
/// BudgetExceeded up front when messages x paths would exceed leaf_cap.
/// Thread-parallel over messages; the outcome is independent of thread count
/// (failures are reported for the smallest theta, earliest path).
VerifyOutcome exhaustive_verify(const FeedbackCode& code, std::uint64_t leaf_cap = 10'000'000,
                                int threads = 1);

}  // namespace qfc

#endif
