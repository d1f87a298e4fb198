#ifndef QFC_SOLVER_HPP
#define QFC_SOLVER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfc/ints.hpp"
#include "qfc/state.hpp"

namespace qfc {

// A full questioning strategy: every internal node carries the partition to
// ask, with exactly q children (one per answer) whose states equal
// reduce(state, partition). Leaves sit at n = 0 and hold at most one
// surviving candidate, so every root-to-leaf path has exactly n rounds.
struct StrategyTree {
    State state;
    int n = 0;
    std::optional<Partition> partition;  // absent at leaves
    std::vector<StrategyTree> children;  // size q, or empty at leaves
};

/// Check every StrategyTree invariant at every node: reduction validity,
/// child bookkeeping, leaf condition, uniform depth. On failure returns false
/// and, if diagnostic is non-null, a path to the offending node.
bool verify_strategy(const StrategyTree& t, int q, std::string* diagnostic = nullptr);

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t cache_hits = 0;
};

struct SolveVerdict {
    bool winning = false;
    std::optional<StrategyTree> strategy;  // populated by solve_with_strategy
    SolveStats stats;
};

// Exact decision procedure for winnable states, by memoized search over
// partitions. Successor enumeration is canonical up to relabeling of the q
// answers (parts kept in non-increasing lexicographic order of their count
// vectors); the winning condition is symmetric in the answers, so this loses
// nothing. Sound shortcuts: states with at most one candidate win; budget-0
// states win iff c_0 <= q^n; a volume-bound violation loses; cached verdicts
// are reused under tail-sum domination (winning side) and componentwise
// anti-domination (losing side).
//
// Verdicts are always exact. Running out of the node budget raises
// BudgetExceeded, never returns a guess. Not safe for concurrent use; build
// one solver per thread.
class Solver {
  public:
    struct Options {
        std::uint64_t node_budget = 10'000'000;
        bool pruning = true;           // volume-bound and volume-mass cuts
        bool domination_cache = true;  // order-based cache reuse
    };

    explicit Solver(int q, Options options = {});

    int q() const { return q_; }
    const Options& options() const { return options_; }

    /// Exact verdict for "c is winnable with n questions".
    SolveVerdict is_winning(const State& c, int n);

    /// Verdict plus, for winning states, a full strategy tree.
    SolveVerdict solve_with_strategy(const State& c, int n);

    /// A witness strategy for a winning state: at every node, the first
    /// winning partition in enumeration order. Deterministic. Throws
    /// NotWinning when the state is losing.
    StrategyTree extract_strategy(const State& c, int n);

    /// Largest M such that M messages are decodable with n questions and
    /// error budget e; binary search over M (winnability is monotone in M).
    Int max_messages(int e, int n);

  private:
    struct Key {
        std::vector<Int> counts;
        int n;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const;
    };

    bool solve(const State& c, int n);
    bool search_partitions(const State& c, int n);
    StrategyTree build_tree(const State& c, int n);
    const std::vector<Int>& volume_weights(int n, int dim);
    Int state_volume(const State& c, int n);
    void note_descent();

    int q_;
    Options options_;
    std::uint64_t nodes_ = 0;
    std::uint64_t cache_hits_ = 0;
    std::unordered_map<Key, bool, KeyHash> memo_;
    // Decided states bucketed by (n, dimension) for order-based reuse.
    std::map<std::pair<int, int>, std::vector<std::vector<Int>>> winning_bucket_;
    std::map<std::pair<int, int>, std::vector<std::vector<Int>>> losing_bucket_;
    std::map<int, std::vector<Int>> weights_;  // prefix volume weights per n
    std::vector<Int> pow_q_;                   // q^0, q^1, ...
};

}  // namespace qfc

#endif
