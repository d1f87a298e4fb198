#ifndef QFC_CODEC_HPP
#define QFC_CODEC_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfc/ints.hpp"
#include "qfc/solver.hpp"
#include "qfc/state.hpp"
#include "qfc/table.hpp"

namespace qfc {

// Policy kinds: a solver-built strategy tree, or the table construction
// followed along its (m,k) trajectory.
struct TreePolicy {
    StrategyTree root;
};
struct TablePolicy {
    ConstructionTable table;
    int start_m = 0;  // trajectory starts at (start_m, 1)
    int i = 0;        // first-column row covering M
};
using Policy = std::variant<TreePolicy, TablePolicy>;

// Explicit element-level assignment for one node: q lists of real message
// ids. Only meaningful at nodes where no dummy slots are alive.
using ExplicitParts = std::vector<std::vector<Int>>;

// An executable feedback code. Real messages are 0..M-1; any surplus
// capacity of the policy root is filled with indistinguishable dummy slots
// that participate in partitions but can never be decoded. A real message
// lives at capacity e inside the policy's budget E, i.e. it starts with E-e
// phantom votes. Immutable after construction; encoding and decoding are
// pure, so concurrent simulations are safe.
struct FeedbackCode {
    Int M;
    int e = 0;              // promised error budget
    int n = 0;              // block length
    int q = 0;
    int policy_budget = 0;  // E, budget of the policy root
    Policy policy;
    // Element assignments pinned at specific transcript prefixes, overriding
    // the default fill rule there.
    std::map<std::vector<int>, ExplicitParts> overrides;
};

/// Wrap a strategy tree as a code for M messages with promised budget e
/// (default: the tree's own budget). The root must componentwise dominate the
/// embedded fresh state for M messages; surplus slots become dummies.
FeedbackCode build_from_strategy(StrategyTree tree, const Int& M, int e = -1);

/// Code from the table construction: picks (n, i) via achievable_blocklength,
/// loads M real messages at capacity e of column_state(e+i, 1) and fills the
/// rest with dummies. Each round applies the table's witness partition;
/// answer 0 after a k>=2 question moves the trajectory to (m, k+1), any other
/// answer to (m-1, k-1). Throws UnsupportedAlphabet for q = 2.
FeedbackCode build_from_table(const Int& M, int e, int q);

/// Pin an explicit element assignment at one node. The transcript addresses
/// the node; parts must cover exactly the live real messages there with class
/// counts matching the node's partition, and no dummies may be alive.
void add_assignment_override(FeedbackCode& code, std::vector<int> transcript,
                             ExplicitParts parts);

// Step-by-step executor: tracks the per-message vote ledger and the policy
// cursor along one transcript. Copyable, so adversarial searches can fork it.
class CodeRunner {
  public:
    explicit CodeRunner(const FeedbackCode& code);

    int rounds_done() const { return static_cast<int>(transcript_.size()); }
    const std::vector<int>& transcript() const { return transcript_; }

    /// Ledger class counts as a state of the policy budget. Kept equal to the
    /// state reached by reducing the policy root along the transcript; the
    /// mismatch check runs on every advance.
    State class_state() const;

    /// The partition asked at the current node, at policy dimension.
    Partition node_partition() const;

    /// Part index holding message theta under the current assignment; the
    /// deterministic fallback for an already-eliminated message is part 0.
    int part_of(const Int& theta) const;

    bool is_alive(const Int& theta) const;
    Int alive_total() const;       // live reals + dummies
    Int alive_real_count() const;  // live reals

    /// Apply answer beta: every live element outside part beta gains a vote;
    /// capacity-0 elements outside part beta die.
    void advance(int beta);

    /// After n rounds: the live real message if it is unique, else nullopt.
    std::optional<Int> unique_real_survivor() const;

  private:
    struct ClassBucket {
        std::vector<Int> reals;  // ascending ids
        Int dummies = 0;
    };
    // Part of each live element at the current node; reals listed ascending
    // per class with dummies after them, parts filled p^0 first.
    std::vector<std::vector<std::pair<Int, int>>> real_parts() const;
    const ExplicitParts* override_here() const;

    const FeedbackCode* code_;
    std::vector<ClassBucket> classes_;  // index = remaining capacity
    std::vector<int> transcript_;
    const StrategyTree* tree_node_ = nullptr;  // tree policy cursor
    int m_ = 0, k_ = 0;                        // table policy cursor
};

/// alpha_i: the symbol the encoder sends for message theta after having seen
/// the given feedback. Pure function of (theta, transcript).
int encode_step(const FeedbackCode& code, const Int& theta, const std::vector<int>& transcript);

/// Replay the policy against the received word, tally votes and return the
/// unique surviving real message. Correct whenever at most e symbols were
/// altered; throws NoUniqueSurvivor otherwise rather than guessing.
Int decode(const FeedbackCode& code, const std::vector<int>& received);

/// Rate accounting: exact rational "k/n" when M = q^k, else the log-real
/// value of log_q(M)/n.
std::string rate_string(const FeedbackCode& code);

}  // namespace qfc

#endif
