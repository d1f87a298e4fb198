#ifndef QFC_SERIALIZE_HPP
#define QFC_SERIALIZE_HPP

#include <string>

#include "qfc/codec.hpp"
#include "qfc/solver.hpp"

namespace qfc {

// Strategy document: {"state": [...], "n": .., "q": .., "partition":
// [[...] x q], "children": [...]}, recursively; leaves carry no partition or
// children. Keys and arrays in exactly that order, so output is byte-stable.
std::string strategy_to_json(const StrategyTree& t, int q, int indent = 2);
StrategyTree strategy_from_json(const std::string& text);

// Code document: policy (tree inline, table by shape), message-space and
// budget metadata, rate string, and any pinned assignments.
std::string code_to_json(const FeedbackCode& code, int indent = 2);
FeedbackCode code_from_json(const std::string& text);

}  // namespace qfc

#endif
