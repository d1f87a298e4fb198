#include "qfc/solver.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>

#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"

namespace qfc {

namespace {

// v <= u in the flattened lexicographic order (index 0 first).
bool lex_le(const std::vector<Int>& v, const std::vector<Int>& u) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] != u[i]) return v[i] < u[i];
    }
    return true;
}

// Enumerate vectors v with 0 <= v <= rem componentwise and, when cap is
// given, v <=lex *cap, in descending lexicographic order. Visitor returns
// true to stop the whole enumeration.
template <typename Visit>
bool descend_vectors(const std::vector<Int>& rem, const std::vector<Int>* cap,
                     std::vector<Int>& v, size_t i, bool tight, Visit&& visit) {
    if (i == rem.size()) return visit(v);
    Int hi = rem[i];
    if (tight && cap && (*cap)[i] < hi) hi = (*cap)[i];
    for (Int val = hi; val >= 0; --val) {
        v[i] = val;
        const bool next_tight = tight && cap && val == (*cap)[i];
        if (descend_vectors(rem, cap, v, i + 1, next_tight, visit)) return true;
        if (val == 0) break;
    }
    return false;
}

}  // namespace

size_t Solver::KeyHash::operator()(const Key& k) const {
    size_t seed = std::hash<int>{}(k.n);
    for (const Int& c : k.counts) boost::hash_combine(seed, c);
    return seed;
}

Solver::Solver(int q, Options options) : q_(q), options_(options) {
    if (q < 2) throw InvalidArgument("solver: q >= 2 required");
    pow_q_.push_back(1);
}

const std::vector<Int>& Solver::volume_weights(int n, int dim) {
    auto& w = weights_[n];
    if (static_cast<int>(w.size()) < dim) {
        w.assign(static_cast<size_t>(dim), 0);
        Int acc = 0;
        Int term = 1;
        for (int l = 0; l < dim; ++l) {
            if (l > 0) term = (l > n) ? Int(0) : term * (n - l + 1) / l * (q_ - 1);
            acc += term;
            w[static_cast<size_t>(l)] = acc;
        }
    }
    return w;
}

Int Solver::state_volume(const State& c, int n) {
    const auto& w = volume_weights(n, c.dimension());
    Int v = 0;
    for (int i = 0; i < c.dimension(); ++i) v += c.count(i) * w[static_cast<size_t>(i)];
    return v;
}

void Solver::note_descent() {
    if (++nodes_ > options_.node_budget)
        throw BudgetExceeded("solver: node budget of " + std::to_string(options_.node_budget) +
                             " exhausted");
}

bool Solver::solve(const State& c, int n) {
    note_descent();
    if (c.total() <= 1) return true;  // includes the n = 0 winning base case
    if (n <= 0) return false;
    const Int& qn = [&]() -> const Int& {
        while (static_cast<int>(pow_q_.size()) <= n) pow_q_.push_back(pow_q_.back() * q_);
        return pow_q_[static_cast<size_t>(n)];
    }();
    if (c.dimension() == 1) return c.count(0) <= qn;

    Key key{c.counts(), n};
    if (auto it = memo_.find(key); it != memo_.end()) {
        ++cache_hits_;
        return it->second;
    }

    if (options_.pruning && state_volume(c, n) > qn) {
        memo_.emplace(std::move(key), false);
        return false;
    }

    const auto bucket_key = std::make_pair(n, c.dimension());
    if (options_.domination_cache) {
        if (auto it = winning_bucket_.find(bucket_key); it != winning_bucket_.end()) {
            for (const auto& d : it->second) {
                // c tail-sum dominated by a known winner wins as well.
                Int tc = 0, td = 0;
                bool dominated = true;
                for (int k = c.budget(); k >= 0; --k) {
                    tc += c.count(k);
                    td += d[static_cast<size_t>(k)];
                    if (tc > td) {
                        dominated = false;
                        break;
                    }
                }
                if (dominated) {
                    ++cache_hits_;
                    memo_.emplace(std::move(key), true);
                    return true;
                }
            }
        }
        if (auto it = losing_bucket_.find(bucket_key); it != losing_bucket_.end()) {
            for (const auto& d : it->second) {
                // c componentwise above a known loser loses as well.
                bool above = true;
                for (int k = 0; k <= c.budget(); ++k) {
                    if (c.count(k) < d[static_cast<size_t>(k)]) {
                        above = false;
                        break;
                    }
                }
                if (above) {
                    ++cache_hits_;
                    memo_.emplace(std::move(key), false);
                    return false;
                }
            }
        }
    }

    const bool winning = search_partitions(c, n, nullptr);
    memo_.emplace(std::move(key), winning);
    if (options_.domination_cache) {
        (winning ? winning_bucket_ : losing_bucket_)[bucket_key].push_back(c.counts());
    }
    return winning;
}

// Part-major search over canonical partitions (parts non-increasing in
// flattened lex order). A candidate part is explored only if its successor is
// winning, which prunes whole families of partitions at once; the volume-mass
// cut discards prefixes whose remaining successors could not all stay under
// q^{n-1}. Neither cut can skip the first fully-winning partition in
// enumeration order, so extraction stays deterministic. On success with
// `found` non-null, the partition is copied out.
bool Solver::search_partitions(const State& c, int n, std::vector<std::vector<Int>>* found) {
    const int dim = c.dimension();
    std::vector<Int> rem = c.counts();
    std::vector<std::vector<Int>> parts;
    parts.reserve(static_cast<size_t>(q_));  // keeps &parts.back() stable below
    const Int child_cap = [&] {
        while (static_cast<int>(pow_q_.size()) <= n) pow_q_.push_back(pow_q_.back() * q_);
        return pow_q_[static_cast<size_t>(n - 1)];
    }();
    Int rem_volume = options_.pruning ? state_volume(c, n) : Int(0);

    auto place = [&](auto&& self, int j) -> bool {
        if (j == q_ - 1) {
            if (!lex_le(rem, parts.back())) return false;
            if (!solve(reduce_child(c, rem), n - 1)) return false;
            if (found) {
                *found = parts;
                found->push_back(rem);
            }
            return true;
        }
        const std::vector<Int>* cap = j > 0 ? &parts.back() : nullptr;
        std::vector<Int> scratch(static_cast<size_t>(dim));  // per level; inner levels use their own
        return descend_vectors(rem, cap, scratch, 0, cap != nullptr, [&](const std::vector<Int>& v) {
            State child = reduce_child(c, v);
            Int child_volume = 0;
            if (options_.pruning) {
                child_volume = state_volume(child, n - 1);
                const Int after = rem_volume - child_volume;
                if (after < 0 || after > Int(q_ - 1 - j) * child_cap) return false;
            }
            if (!solve(child, n - 1)) return false;
            for (int i = 0; i < dim; ++i) rem[static_cast<size_t>(i)] -= v[static_cast<size_t>(i)];
            rem_volume -= child_volume;
            parts.push_back(v);
            const bool done = self(self, j + 1);
            parts.pop_back();
            rem_volume += child_volume;
            for (int i = 0; i < dim; ++i) rem[static_cast<size_t>(i)] += v[static_cast<size_t>(i)];
            return done;
        });
    };
    return place(place, 0);
}

SolveVerdict Solver::is_winning(const State& c, int n) {
    if (n < 0) throw InvalidArgument("is_winning: n >= 0 required");
    nodes_ = 0;
    cache_hits_ = 0;
    SolveVerdict verdict;
    verdict.winning = solve(c, n);
    verdict.stats = {nodes_, cache_hits_};
    return verdict;
}

StrategyTree Solver::build_tree(const State& c, int n) {
    StrategyTree node{c, n, std::nullopt, {}};
    if (n == 0) return node;  // callers guarantee total <= 1 here
    std::vector<std::vector<Int>> parts;
    if (!search_partitions(c, n, &parts))
        throw Error("extract_strategy: no winning partition for a winning state");
    Partition p{std::move(parts)};
    Reduction xs = reduce(c, p);
    node.partition = std::move(p);
    node.children.reserve(static_cast<size_t>(q_));
    for (State& x : xs.states) node.children.push_back(build_tree(x, n - 1));
    return node;
}

StrategyTree Solver::extract_strategy(const State& c, int n) {
    if (n < 0) throw InvalidArgument("extract_strategy: n >= 0 required");
    nodes_ = 0;
    cache_hits_ = 0;
    if (!solve(c, n)) throw NotWinning("extract_strategy: state is losing at n = " + std::to_string(n));
    return build_tree(c, n);
}

SolveVerdict Solver::solve_with_strategy(const State& c, int n) {
    SolveVerdict verdict = is_winning(c, n);
    if (verdict.winning) {
        verdict.strategy = build_tree(c, n);
        verdict.stats = {nodes_, cache_hits_};
    }
    return verdict;
}

Int Solver::max_messages(int e, int n) {
    if (e < 0 || n < 0) throw InvalidArgument("max_messages: e, n >= 0 required");
    nodes_ = 0;
    cache_hits_ = 0;
    // Volume bound on the fresh state caps the search range.
    const Int w = volume_weights(n, e + 1).back();
    Int hi = ipow(q_, n) / w;
    if (hi < 1) hi = 1;
    Int lo = 1;  // a single message always wins
    while (lo < hi) {
        Int mid = lo + (hi - lo + 1) / 2;
        if (solve(initial_state(mid, e), n))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

namespace {

bool fail(std::string* diagnostic, const std::string& path, const std::string& why) {
    if (diagnostic) *diagnostic = path + ": " + why;
    return false;
}

bool verify_node(const StrategyTree& t, int q, const std::string& path, std::string* diagnostic) {
    if (t.children.empty()) {
        if (t.partition) return fail(diagnostic, path, "leaf carries a partition");
        if (t.n != 0) return fail(diagnostic, path, "leaf above depth 0");
        if (t.state.total() > 1) return fail(diagnostic, path, "leaf with more than one survivor");
        return true;
    }
    if (!t.partition) return fail(diagnostic, path, "internal node without partition");
    if (static_cast<int>(t.children.size()) != q)
        return fail(diagnostic, path, "internal node without exactly q children");
    if (t.n < 1) return fail(diagnostic, path, "internal node at depth 0");
    Reduction xs;
    try {
        xs = reduce(t.state, *t.partition);
    } catch (const Error& err) {
        return fail(diagnostic, path, std::string("invalid partition: ") + err.what());
    }
    for (int j = 0; j < q; ++j) {
        const auto& child = t.children[static_cast<size_t>(j)];
        if (child.state != xs.states[static_cast<size_t>(j)])
            return fail(diagnostic, path, "child " + std::to_string(j) + " state mismatch");
        if (child.n != t.n - 1)
            return fail(diagnostic, path, "child " + std::to_string(j) + " depth mismatch");
        if (!verify_node(child, q, path + "/" + std::to_string(j), diagnostic)) return false;
    }
    return true;
}

}  // namespace

bool verify_strategy(const StrategyTree& t, int q, std::string* diagnostic) {
    if (q < 2) return fail(diagnostic, "root", "q >= 2 required");
    return verify_node(t, q, "root", diagnostic);
}

}  // namespace qfc
