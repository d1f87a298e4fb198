#ifndef QFC_INTS_HPP
#define QFC_INTS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qfc {

// Exact integer type used for all counts, volumes and table entries.
// Table entries grow like (q-1)^(2m) and message spaces like q^k, so
// fixed-width integers are not an option anywhere counts appear.
using Int = boost::multiprecision::cpp_int;

/// q^n for n >= 0.
Int ipow(const Int& base, int exp);

/// Binomial coefficient, exact. Returns 0 for k < 0 or k > n.
Int binomial(int n, int k);

/// Floor of log_base(value) for value >= 1, base >= 2.
int floor_log(const Int& value, int base);

std::string to_string(const Int& v);

}  // namespace qfc

#endif
