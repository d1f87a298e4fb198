#include "qfc/ints.hpp"

#include <vector>

#include "qfc/errors.hpp"

namespace qfc {

Int ipow(const Int& base, int exp) {
    if (exp < 0) throw InvalidArgument("ipow: negative exponent");
    Int result = 1;
    Int b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Int binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    // Pascal row n, truncated at k; exact at every step.
    std::vector<Int> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) row[static_cast<size_t>(j)] += row[static_cast<size_t>(j) - 1];
    }
    return row[static_cast<size_t>(k)];
}

int floor_log(const Int& value, int base) {
    if (value < 1 || base < 2) throw InvalidArgument("floor_log: value >= 1 and base >= 2 required");
    int log = 0;
    Int power = base;
    while (power <= value) {
        ++log;
        power *= base;
    }
    return log;
}

std::string to_string(const Int& v) { return v.str(); }

}  // namespace qfc
