#include "helpers.hpp"

#include <numeric>

namespace qfc::test {

namespace {

void compositions(long long total, int parts, std::vector<long long>& current,
                  std::vector<std::vector<long long>>& out) {
    if (parts == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (long long first = 0; first <= total; ++first) {
        current.push_back(first);
        compositions(total - first, parts - 1, current, out);
        current.pop_back();
    }
}

}  // namespace

bool oracle_winning(const SmallState& c, int n, int q, OracleMemo& memo) {
    const long long total = std::accumulate(c.begin(), c.end(), 0LL);
    if (total <= 1) return true;
    if (n == 0) return false;
    const auto key = std::make_tuple(c, n, q);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int e = static_cast<int>(c.size()) - 1;
    std::vector<std::vector<std::vector<long long>>> per_level(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        std::vector<long long> scratch;
        compositions(c[i], q, scratch, per_level[i]);
    }

    bool winning = false;
    std::vector<size_t> pick(c.size(), 0);
    while (!winning) {
        // children of this ordered partition
        bool all_children_win = true;
        for (int j = 0; j < q && all_children_win; ++j) {
            SmallState x(c.size());
            for (int i = 0; i <= e; ++i) {
                const long long pji = per_level[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]
                                               [static_cast<size_t>(j)];
                if (i == e) {
                    x[static_cast<size_t>(i)] = pji;
                } else {
                    const long long pj_next =
                        per_level[static_cast<size_t>(i) + 1][pick[static_cast<size_t>(i) + 1]]
                                 [static_cast<size_t>(j)];
                    x[static_cast<size_t>(i)] = pji + (c[static_cast<size_t>(i) + 1] - pj_next);
                }
            }
            all_children_win = oracle_winning(x, n - 1, q, memo);
        }
        if (all_children_win) winning = true;
        // odometer over the per-level composition choices
        size_t level = 0;
        while (level < c.size()) {
            if (++pick[level] < per_level[level].size()) break;
            pick[level] = 0;
            ++level;
        }
        if (level == c.size()) break;
    }
    memo.emplace(key, winning);
    return winning;
}

namespace {

StrategyTree leaf(std::vector<Int> counts) {
    return StrategyTree{State(std::move(counts)), 0, std::nullopt, {}};
}

StrategyTree node(std::vector<Int> counts, int n, std::vector<std::vector<Int>> parts,
                  std::vector<StrategyTree> children) {
    return StrategyTree{State(std::move(counts)), n, Partition{std::move(parts)},
                        std::move(children)};
}

}  // namespace

StrategyTree worked_example_tree() {
    auto singles = node({3, 0}, 1, {{1, 0}, {1, 0}, {1, 0}}, {leaf({1, 0}), leaf({1, 0}), leaf({1, 0})});
    auto lone = node({0, 1}, 1, {{0, 1}, {0, 0}, {0, 0}}, {leaf({0, 1}), leaf({1, 0}), leaf({1, 0})});
    auto third = node({4, 1}, 2, {{0, 1}, {2, 0}, {2, 0}}, {lone, singles, singles});
    auto second = node({6, 3}, 3, {{2, 1}, {2, 1}, {2, 1}}, {third, third, third});
    return node({0, 9}, 4, {{0, 3}, {0, 3}, {0, 3}}, {second, second, second});
}

FeedbackCode worked_example_code() {
    FeedbackCode code = build_from_strategy(worked_example_tree(), 9);
    // Assignments of the worked example along the answer path 2,1,1,0.
    add_assignment_override(code, {}, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    add_assignment_override(code, {2}, {{6, 0, 3}, {7, 1, 4}, {8, 2, 5}});
    add_assignment_override(code, {2, 1}, {{7}, {1, 4}, {6, 8}});
    add_assignment_override(code, {2, 1, 1}, {{4}, {1}, {7}});
    return code;
}

FeedbackCode corrupted_code() {
    // Both messages ride in part 0 forever; every leaf keeps two survivors.
    StrategyTree bad{State({2}), 1, Partition{{{2}, {0}, {0}}},
                     {StrategyTree{State({2}), 0, std::nullopt, {}},
                      StrategyTree{State({0}), 0, std::nullopt, {}},
                      StrategyTree{State({0}), 0, std::nullopt, {}}}};
    return build_from_strategy(std::move(bad), 2, 0);
}

}  // namespace qfc::test
