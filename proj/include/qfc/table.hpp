#ifndef QFC_TABLE_HPP
#define QFC_TABLE_HPP

#include <string>
#include <utility>
#include <vector>

#include "qfc/ints.hpp"
#include "qfc/solver.hpp"
#include "qfc/state.hpp"

namespace qfc {

// The recursive construction table, materialized densely up to (m_max,
// k_max), 1-based indices. First row is (q, 1, 1, ...); the first two columns
// follow explicit geometric laws and everything else the recurrence
//   A(m,k) = A(m,k-1) + (q-1) A(m-1,k-1) - (q-1) A(m-1,k-2).
// Column prefixes read as states (column_state) are winnable with 2m-k
// questions, with explicit witness partitions (partition). The first column
// meets the volume bound with equality.
//
// Built once, then immutable; concurrent reads are safe.
class ConstructionTable {
  public:
    /// q >= 3 (the construction degenerates at q = 2), m_max >= 1, k_max >= 2.
    static ConstructionTable build(int q, int m_max, int k_max);

    int q() const { return q_; }
    int m_max() const { return m_max_; }
    int k_max() const { return k_max_; }

    /// Entry A(m,k), 1-based.
    const Int& at(int m, int k) const;

    /// Column k cut at row m, as a state of budget m-1: counts[i] = A(m-i, k),
    /// so the single top entry A(1,k) sits at full capacity.
    State column_state(int m, int k) const;

    /// The explicit witness partition of column_state(m,k). For k = 1 every
    /// part is A-bar(m,1)/q; for k >= 2 part 0 takes the lone top element plus
    /// a 1/q share of the deep rows, the other parts take 1/(q-1) shares of
    /// rows 2..k and 1/q shares below. All divisions are exact by the table's
    /// divisibility laws; a failed division is an internal consistency error.
    Partition partition(int m, int k) const;

    /// Smallest stored-or-grown row index i with M <= A(i,1).
    static int first_column_index(const Int& M, int q);

  private:
    ConstructionTable() = default;
    int q_ = 0;
    int m_max_ = 0;
    int k_max_ = 0;
    std::vector<std::vector<Int>> rows_;  // rows_[m-1][k-1]
};

struct TableCheck {
    std::string name;
    bool ok = true;
    std::string detail;  // first failure, if any
};

struct TableReport {
    std::vector<TableCheck> checks;
    bool ok() const;
    std::string summary() const;
};

/// Verify every structural property of the table: (a) divisibility by q-1 and
/// q where the laws claim it; (b) diagonal and geometric laws; (c) the zero
/// region; (d) exact volume-bound saturation of the first column; (e) the
/// witness partition of every cell reduces to the claimed children; (f) the
/// chain of (e) bottoms out in singlets, cross-checked against the solver for
/// every cell with 2m-k <= solver_horizon.
TableReport verify_table(const ConstructionTable& t, int solver_horizon = 4,
                         std::uint64_t solver_node_budget = 10'000'000);

struct AchievableBlocklength {
    int n = 0;  // block length achieved by the table construction
    int i = 0;  // first-column row covering M
};

/// Block length the table construction achieves for M messages and budget e:
/// i is the smallest row with M <= A(i,1) and n = 2(e+i) - 1. The embedded
/// initial state is componentwise dominated by column_state(e+i, 1), which is
/// winnable with n questions. Asymptotically optimal along the construction
/// line, not finite-optimal. Throws UnsupportedAlphabet for q = 2.
AchievableBlocklength achievable_blocklength(const Int& M, int e, int q);

/// CSV dump with 1-based m,k headers.
void write_table_csv(std::ostream& out, const ConstructionTable& t);

}  // namespace qfc

#endif
