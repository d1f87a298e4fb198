#ifndef QFC_TEST_HELPERS_HPP
#define QFC_TEST_HELPERS_HPP

#include <map>
#include <tuple>
#include <vector>

#include "qfc/codec.hpp"
#include "qfc/solver.hpp"
#include "qfc/state.hpp"

namespace qfc::test {

// Independent winnability oracle: plain recursion over ALL ordered q-part
// splits (no canonicalization, no bounds, no shortcuts), with its own
// reduction arithmetic on machine integers. Only memoization is shared
// between calls, so the oracle stays independent of the solver's search path.
using SmallState = std::vector<long long>;
using OracleMemo = std::map<std::tuple<SmallState, int, int>, bool>;
bool oracle_winning(const SmallState& c, int n, int q, OracleMemo& memo);

// The worked 9-message example over the ternary alphabet (M = 9, e = 1,
// n = 4): the class-level strategy tree
//   [0,9] -(0,3|0,3|0,3)-> [6,3] -(2,1|2,1|2,1)-> [4,1]
//   -(0,1|2,0|2,0)-> {[0,1], [3,0], [3,0]} -> singlets
// and the code with the element assignments of that example pinned along the
// answer path 2,1,1,0 (messages A..I are ids 0..8, the transmitted one is
// E = 4).
StrategyTree worked_example_tree();
FeedbackCode worked_example_code();

// A deliberately broken code: one round, three answers, but both messages in
// the same part, so decoding is ambiguous at every leaf.
FeedbackCode corrupted_code();

}  // namespace qfc::test

#endif
