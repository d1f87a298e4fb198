#include "qfc/state.hpp"

#include <algorithm>
#include <sstream>

#include "qfc/errors.hpp"

namespace qfc {

State::State(std::vector<Int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidArgument("state: dimension must be at least 1 (budget 0)");
    for (const Int& c : counts_) {
        if (c < 0) throw InvalidArgument("state: negative count");
    }
}

Int State::total() const {
    Int sum = 0;
    for (const Int& c : counts_) sum += c;
    return sum;
}

State initial_state(const Int& M, int budget) {
    if (M < 1) throw InvalidArgument("initial_state: M >= 1 required");
    if (budget < 0) throw InvalidArgument("initial_state: budget >= 0 required");
    std::vector<Int> counts(static_cast<size_t>(budget) + 1, 0);
    counts.back() = M;
    return State(std::move(counts));
}

bool is_partition_of(const Partition& p, const State& c) {
    if (p.q() < 2) return false;
    const int dim = c.dimension();
    for (const auto& part : p.parts) {
        if (static_cast<int>(part.size()) != dim) return false;
        for (const Int& v : part)
            if (v < 0) return false;
    }
    for (int i = 0; i < dim; ++i) {
        Int sum = 0;
        for (const auto& part : p.parts) sum += part[static_cast<size_t>(i)];
        if (sum != c.count(i)) return false;
    }
    return true;
}

State reduce_child(const State& c, const std::vector<Int>& part) {
    const int e = c.budget();
    if (static_cast<int>(part.size()) != e + 1)
        throw DimensionMismatch("reduce_child: part dimension mismatch");
    std::vector<Int> x(static_cast<size_t>(e) + 1);
    // sum_{j' != j} p^{j'}_{i+1} = c_{i+1} - p^j_{i+1}
    for (int i = 0; i < e; ++i)
        x[static_cast<size_t>(i)] =
            part[static_cast<size_t>(i)] + c.count(i + 1) - part[static_cast<size_t>(i) + 1];
    x[static_cast<size_t>(e)] = part[static_cast<size_t>(e)];
    return State(std::move(x));
}

Reduction reduce(const State& c, const Partition& p) {
    if (p.q() < 2) throw InvalidArgument("reduce: at least two parts required");
    if (!is_partition_of(p, c))
        throw InvalidArgument("reduce: parts do not sum to the state");
    Reduction out;
    out.states.reserve(static_cast<size_t>(p.q()));
    for (const auto& part : p.parts) out.states.push_back(reduce_child(c, part));
    return out;
}

Partition invert_reduction(const Reduction& xs) {
    const int q = xs.q();
    if (q < 2) throw DimensionMismatch("invert_reduction: at least two states required");
    const int dim = xs.states.front().dimension();
    for (const State& x : xs.states)
        if (x.dimension() != dim) throw DimensionMismatch("invert_reduction: unequal dimensions");
    const int e = dim - 1;

    Partition p;
    p.parts.assign(static_cast<size_t>(q), std::vector<Int>(static_cast<size_t>(dim)));
    std::vector<Int> level_sum(static_cast<size_t>(dim), 0);  // sum_j p^j_i, filled top-down
    for (int j = 0; j < q; ++j) {
        p.parts[static_cast<size_t>(j)][static_cast<size_t>(e)] = xs.states[static_cast<size_t>(j)].count(e);
        level_sum[static_cast<size_t>(e)] += p.parts[static_cast<size_t>(j)][static_cast<size_t>(e)];
    }
    for (int i = e - 1; i >= 0; --i) {
        for (int j = 0; j < q; ++j) {
            Int value = xs.states[static_cast<size_t>(j)].count(i) -
                        (level_sum[static_cast<size_t>(i) + 1] -
                         p.parts[static_cast<size_t>(j)][static_cast<size_t>(i) + 1]);
            if (value < 0)
                throw NonIntegralOrNegativePartition(
                    "invert_reduction: states not reachable by one question");
            level_sum[static_cast<size_t>(i)] += value;
            p.parts[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::move(value);
        }
    }
    return p;
}

bool check_reduction(const State& c, const Reduction& xs) {
    const int q = xs.q();
    if (q < 2) return false;
    const int dim = c.dimension();
    for (const State& x : xs.states)
        if (x.dimension() != dim) return false;
    // sum_j x^j = c + (q-1) Tc, with the implicit top sentinel zero
    for (int i = 0; i < dim; ++i) {
        Int sum = 0;
        for (const State& x : xs.states) sum += x.count(i);
        Int expected = c.count(i);
        if (i + 1 < dim) expected += Int(q - 1) * c.count(i + 1);
        if (sum != expected) return false;
    }
    try {
        invert_reduction(xs);
    } catch (const NonIntegralOrNegativePartition&) {
        return false;
    }
    return true;
}

State translate(const State& c) {
    if (c.budget() < 1) throw InvalidArgument("translate: budget >= 1 required");
    std::vector<Int> counts(c.counts().begin() + 1, c.counts().end());
    return State(std::move(counts));
}

State embed(const State& c, int extra) {
    if (extra < 0) throw InvalidArgument("embed: extra >= 0 required");
    std::vector<Int> counts = c.counts();
    counts.resize(counts.size() + static_cast<size_t>(extra), 0);
    return State(std::move(counts));
}

bool dominates_componentwise(const State& c, const State& d) {
    if (c.dimension() != d.dimension())
        throw DimensionMismatch("dominates_componentwise: unequal budgets");
    for (int i = 0; i < c.dimension(); ++i)
        if (c.count(i) > d.count(i)) return false;
    return true;
}

bool dominates_tailsum(const State& c, const State& d) {
    if (c.dimension() != d.dimension()) throw DimensionMismatch("dominates_tailsum: unequal budgets");
    Int tail_c = 0, tail_d = 0;
    for (int k = c.budget(); k >= 0; --k) {
        tail_c += c.count(k);
        tail_d += d.count(k);
        if (tail_c > tail_d) return false;
    }
    return true;
}

std::string to_string(const State& c) {
    std::string out;
    for (int i = 0; i < c.dimension(); ++i) {
        if (i) out += ',';
        out += c.count(i).str();
    }
    return out;
}

namespace {

std::vector<Int> parse_counts(std::string_view text) {
    std::vector<Int> counts;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw InvalidArgument("state literal: empty count");
        try {
            counts.emplace_back(token);
        } catch (const std::exception&) {
            throw InvalidArgument("state literal: bad count '" + token + "'");
        }
        if (counts.back() < 0) throw InvalidArgument("state literal: negative count");
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
        } else if (ch == ' ' || ch == '\t') {
            continue;
        } else {
            token += ch;
        }
    }
    flush();
    return counts;
}

}  // namespace

State parse_state(std::string_view text) { return State(parse_counts(text)); }

std::string to_string(const Partition& p) {
    std::string out;
    for (int j = 0; j < p.q(); ++j) {
        if (j) out += '|';
        for (size_t i = 0; i < p.parts[static_cast<size_t>(j)].size(); ++i) {
            if (i) out += ',';
            out += p.parts[static_cast<size_t>(j)][i].str();
        }
    }
    return out;
}

Partition parse_partition(std::string_view text) {
    Partition p;
    size_t start = 0;
    while (true) {
        size_t bar = text.find('|', start);
        std::string_view piece =
            bar == std::string_view::npos ? text.substr(start) : text.substr(start, bar - start);
        p.parts.push_back(parse_counts(piece));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    if (p.q() < 2) throw InvalidArgument("partition literal: at least two parts required");
    const size_t dim = p.parts.front().size();
    for (const auto& part : p.parts)
        if (part.size() != dim) throw DimensionMismatch("partition literal: unequal part dimensions");
    return p;
}

}  // namespace qfc
