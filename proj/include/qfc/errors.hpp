#ifndef QFC_ERRORS_HPP
#define QFC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violations on plain arguments (M = 0, q < 2, bad grid, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// Vectors that should agree in dimension do not.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Back-substitution produced a negative part entry: the given child states
// are not reachable from any state by one question.
struct NonIntegralOrNegativePartition : Error {
    using Error::Error;
};

// Operation requires an alphabet the construction does not cover (q = 2 for
// the table construction and the translation curve).
struct UnsupportedAlphabet : Error {
    using Error::Error;
};

// Strategy extraction requested for a state the solver decided is losing.
struct NotWinning : Error {
    using Error::Error;
};

// Configured node/leaf budget exhausted. Always an explicit failure, never a
// wrong answer.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Code construction: policy root does not cover the requested message space.
struct RootMismatch : Error {
    using Error::Error;
};

// Decoding ended with zero or more than one live real message.
struct NoUniqueSurvivor : Error {
    using Error::Error;
};

// Internal consistency failures of the recursive table.
struct NegativeEntry : Error {
    using Error::Error;
};
struct NonExactDivision : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

}  // namespace qfc

#endif
