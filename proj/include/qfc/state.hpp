#ifndef QFC_STATE_HPP
#define QFC_STATE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qfc/ints.hpp"

namespace qfc {

// A game state: counts[i] is the number of candidate messages that can still
// absorb i more wrong answers. The dimension is always exactly e+1 where e is
// the error budget; leading zeros are stored, never elided. The sentinel
// counts[e+1] = 0 is implicit and never stored.
//
// All values are immutable; every operation below is a pure function.
class State {
  public:
    explicit State(std::vector<Int> counts);

    int budget() const { return static_cast<int>(counts_.size()) - 1; }
    int dimension() const { return static_cast<int>(counts_.size()); }
    const Int& count(int i) const { return counts_[static_cast<size_t>(i)]; }
    const std::vector<Int>& counts() const { return counts_; }

    Int total() const;
    bool singlet() const { return total() == 1; }

    bool operator==(const State&) const = default;

  private:
    std::vector<Int> counts_;
};

/// Fresh state for a message space of size M and error budget e: all M
/// candidates at full capacity. Rejects M = 0.
State initial_state(const Int& M, int budget);

// A q-way split of a state: exactly q vectors p^0..p^{q-1}, each of the
// state's dimension, with non-negative entries. Row sums are validated
// against a concrete state by is_partition_of.
struct Partition {
    std::vector<std::vector<Int>> parts;

    int q() const { return static_cast<int>(parts.size()); }
    int dimension() const { return parts.empty() ? 0 : static_cast<int>(parts.front().size()); }
};

bool is_partition_of(const Partition& p, const State& c);

// The q successor states x^0..x^{q-1} of one question.
struct Reduction {
    std::vector<State> states;

    int q() const { return static_cast<int>(states.size()); }
};

/// Apply one question: answer j leaves part j untouched and charges one vote
/// to every element of the other parts, so
///   x^j_e = p^j_e,   x^j_i = p^j_i + sum_{j' != j} p^{j'}_{i+1}  (i < e).
/// Rejects partitions whose column sums do not match c or with fewer than two
/// parts.
Reduction reduce(const State& c, const Partition& p);

/// Successor of a single part: x as above, a function of (c, p^j) only.
State reduce_child(const State& c, const std::vector<Int>& part);

/// Recover the unique partition mapped onto the given successors by one
/// question, via top-down back-substitution:
///   p^j_e = x^j_e,   p^j_i = x^j_i - sum_{j' != j} p^{j'}_{i+1}.
/// Entries are integral by construction; throws
/// NonIntegralOrNegativePartition when any entry comes out negative (the
/// successors are then not reachable from any state by one question).
Partition invert_reduction(const Reduction& xs);

/// True iff xs is reachable from c by one question: the column-sum identity
/// sum_j x^j = c + (q-1)Tc must hold and back-substitution must yield a
/// non-negative partition. Returns false on violation, never throws.
bool check_reduction(const State& c, const Reduction& xs);

/// Drop the bottom count, shifting every capacity down one: budget e-1,
/// counts'[i] = counts[i+1]. Rejects budget-0 states.
State translate(const State& c);

/// Same game with a larger nominal budget: counts'[i] = counts[i] for i <= e,
/// zero above. An element with capacity i keeps capacity i.
State embed(const State& c, int extra);

/// True iff c_i <= d_i for all i. Equal budgets required.
bool dominates_componentwise(const State& c, const State& d);

/// True iff sum_{i=k}^{e} c_i <= sum_{i=k}^{e} d_i for every k. Equal budgets
/// required. Implied by componentwise domination.
bool dominates_tailsum(const State& c, const State& d);

// Text form used by the CLI and tests: bottom-up comma list "c0,c1,...,ce".
// Note this is the reverse of the top-down rendering used in most write-ups.
std::string to_string(const State& c);
State parse_state(std::string_view text);

// Partition literal: q state literals joined by '|'.
std::string to_string(const Partition& p);
Partition parse_partition(std::string_view text);

}  // namespace qfc

#endif
