#include "qfc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfc/errors.hpp"

namespace qfc {

namespace {

constexpr Int kMaxMaterializedMessages = 1'000'000;

int derive_q(const StrategyTree& t) {
    if (!t.children.empty()) return static_cast<int>(t.children.size());
    return -1;
}

const State& policy_root_state(const FeedbackCode& code, State& storage) {
    if (const auto* tree = std::get_if<TreePolicy>(&code.policy)) return tree->root.state;
    const auto& table = std::get<TablePolicy>(code.policy);
    storage = table.table.column_state(table.start_m, 1);
    return storage;
}

}  // namespace

FeedbackCode build_from_strategy(StrategyTree tree, const Int& M, int e) {
    if (M < 1) throw InvalidArgument("build_from_strategy: M >= 1 required");
    const int E = tree.state.budget();
    if (e < 0) e = E;
    if (e > E) throw RootMismatch("build_from_strategy: promised budget exceeds the root's");
    const int q = derive_q(tree);
    if (q < 2 && tree.n > 0)
        throw InvalidArgument("build_from_strategy: cannot derive q from a strategy without questions");
    // Root must cover M fresh messages at capacity e (plus phantom votes).
    if (!dominates_componentwise(embed(initial_state(M, e), E - e), tree.state))
        throw RootMismatch("build_from_strategy: root does not dominate the fresh state for M messages");
    FeedbackCode code;
    code.M = M;
    code.e = e;
    code.n = tree.n;
    code.q = q < 2 ? 2 : q;
    code.policy_budget = E;
    code.policy = TreePolicy{std::move(tree)};
    return code;
}

FeedbackCode build_from_table(const Int& M, int e, int q) {
    if (M < 1) throw InvalidArgument("build_from_table: M >= 1 required");
    const AchievableBlocklength ach = achievable_blocklength(M, e, q);
    const int m0 = e + ach.i;
    FeedbackCode code;
    code.M = M;
    code.e = e;
    code.n = ach.n;
    code.q = q;
    code.policy_budget = m0 - 1;
    // k climbs to at most 2m along any trajectory.
    code.policy = TablePolicy{ConstructionTable::build(q, m0, 2 * m0), m0, ach.i};
    return code;
}

CodeRunner::CodeRunner(const FeedbackCode& code) : code_(&code) {
    if (code.M > kMaxMaterializedMessages)
        throw InvalidArgument("code runner: message space too large to materialize");
    State storage(std::vector<Int>{0});
    const State& root = policy_root_state(code, storage);
    classes_.assign(static_cast<size_t>(code.policy_budget) + 1, ClassBucket{});
    for (int i = 0; i <= code.policy_budget; ++i)
        classes_[static_cast<size_t>(i)].dummies = root.count(i);
    auto& home = classes_[static_cast<size_t>(code.e)];
    home.dummies -= code.M;
    for (Int id = 0; id < code.M; ++id) home.reals.push_back(id);
    if (const auto* tree = std::get_if<TreePolicy>(&code.policy)) {
        tree_node_ = &tree->root;
    } else {
        m_ = std::get<TablePolicy>(code.policy).start_m;
        k_ = 1;
    }
}

State CodeRunner::class_state() const {
    std::vector<Int> counts(classes_.size());
    for (size_t i = 0; i < classes_.size(); ++i)
        counts[i] = Int(classes_[i].reals.size()) + classes_[i].dummies;
    return State(std::move(counts));
}

Partition CodeRunner::node_partition() const {
    if (rounds_done() >= code_->n) throw InvalidArgument("code runner: transcript already complete");
    if (tree_node_) {
        if (!tree_node_->partition) throw Error("code runner: strategy node without partition");
        return *tree_node_->partition;
    }
    const auto& table = std::get<TablePolicy>(code_->policy);
    Partition p = table.table.partition(m_, k_);
    const int dim = static_cast<int>(classes_.size());
    for (auto& part : p.parts) part.resize(static_cast<size_t>(dim), 0);
    return p;
}

const ExplicitParts* CodeRunner::override_here() const {
    auto it = code_->overrides.find(transcript_);
    return it == code_->overrides.end() ? nullptr : &it->second;
}

std::vector<std::vector<std::pair<Int, int>>> CodeRunner::real_parts() const {
    const Partition p = node_partition();
    const int q = code_->q;
    std::vector<std::vector<std::pair<Int, int>>> out(classes_.size());

    if (const ExplicitParts* ov = override_here()) {
        if (static_cast<int>(ov->size()) != q) throw Error("code runner: override with wrong part count");
        for (size_t i = 0; i < classes_.size(); ++i) {
            if (classes_[i].dummies != 0)
                throw Error("code runner: explicit assignment at a node with live dummies");
        }
        for (int j = 0; j < q; ++j) {
            for (const Int& id : (*ov)[static_cast<size_t>(j)]) {
                bool placed = false;
                for (size_t i = 0; i < classes_.size(); ++i) {
                    const auto& reals = classes_[i].reals;
                    if (std::binary_search(reals.begin(), reals.end(), id)) {
                        out[i].emplace_back(id, j);
                        placed = true;
                        break;
                    }
                }
                if (!placed) throw Error("code runner: override names a dead message");
            }
        }
        // Every live real must be covered and class counts must match the
        // node partition.
        for (size_t i = 0; i < classes_.size(); ++i) {
            if (out[i].size() != classes_[i].reals.size())
                throw Error("code runner: override does not cover the live messages");
            std::vector<Int> per_part(static_cast<size_t>(q), 0);
            for (const auto& [id, j] : out[i]) ++per_part[static_cast<size_t>(j)];
            for (int j = 0; j < q; ++j)
                if (per_part[static_cast<size_t>(j)] != p.parts[static_cast<size_t>(j)][i])
                    throw Error("code runner: override class counts differ from the partition");
        }
        return out;
    }

    // Default assignment: within each class, ascending ids with dummies after
    // the reals, filling part 0 first, then part 1, and so on.
    for (size_t i = 0; i < classes_.size(); ++i) {
        const auto& reals = classes_[i].reals;
        size_t pos = 0;
        for (int j = 0; j < q && pos < reals.size(); ++j) {
            Int quota = p.parts[static_cast<size_t>(j)][i];
            while (quota > 0 && pos < reals.size()) {
                out[i].emplace_back(reals[pos], j);
                ++pos;
                --quota;
            }
        }
        if (pos != reals.size()) throw Error("code runner: partition does not cover the live messages");
    }
    return out;
}

int CodeRunner::part_of(const Int& theta) const {
    const auto assignment = real_parts();
    for (const auto& klass : assignment) {
        for (const auto& [id, j] : klass)
            if (id == theta) return j;
    }
    return 0;  // deterministic fallback for an eliminated message
}

bool CodeRunner::is_alive(const Int& theta) const {
    for (const auto& bucket : classes_)
        if (std::binary_search(bucket.reals.begin(), bucket.reals.end(), theta)) return true;
    return false;
}

Int CodeRunner::alive_total() const {
    Int sum = 0;
    for (const auto& bucket : classes_) sum += Int(bucket.reals.size()) + bucket.dummies;
    return sum;
}

Int CodeRunner::alive_real_count() const {
    Int sum = 0;
    for (const auto& bucket : classes_) sum += Int(bucket.reals.size());
    return sum;
}

void CodeRunner::advance(int beta) {
    if (beta < 0 || beta >= code_->q) throw InvalidArgument("code runner: symbol outside the alphabet");
    const Partition p = node_partition();
    const auto assignment = real_parts();
    const int q = code_->q;

    std::vector<ClassBucket> next(classes_.size());
    for (size_t i = 0; i < classes_.size(); ++i) {
        // Reals move by their assigned part; dummies by the per-part counts
        // left over after the reals.
        std::vector<Int> dummy_per_part(static_cast<size_t>(q), 0);
        std::vector<Int> reals_per_part(static_cast<size_t>(q), 0);
        for (const auto& [id, j] : assignment[i]) ++reals_per_part[static_cast<size_t>(j)];
        for (int j = 0; j < q; ++j)
            dummy_per_part[static_cast<size_t>(j)] =
                p.parts[static_cast<size_t>(j)][i] - reals_per_part[static_cast<size_t>(j)];
        for (const auto& [id, j] : assignment[i]) {
            const int dest = (j == beta) ? static_cast<int>(i) : static_cast<int>(i) - 1;
            if (dest >= 0) next[static_cast<size_t>(dest)].reals.push_back(id);
        }
        for (int j = 0; j < q; ++j) {
            const int dest = (j == beta) ? static_cast<int>(i) : static_cast<int>(i) - 1;
            if (dest >= 0) next[static_cast<size_t>(dest)].dummies += dummy_per_part[static_cast<size_t>(j)];
        }
    }
    for (auto& bucket : next) std::sort(bucket.reals.begin(), bucket.reals.end());
    classes_ = std::move(next);
    transcript_.push_back(beta);

    State expected(std::vector<Int>{0});
    if (tree_node_) {
        tree_node_ = &tree_node_->children[static_cast<size_t>(beta)];
        expected = tree_node_->state;
    } else {
        const auto& table = std::get<TablePolicy>(code_->policy);
        if (k_ == 1) {
            k_ = 2;
        } else if (beta == 0) {
            ++k_;
        } else {
            --m_;
            --k_;
        }
        expected = m_ >= 1 ? embed(table.table.column_state(m_, k_),
                                   static_cast<int>(classes_.size()) - m_)
                           : State(std::vector<Int>(classes_.size(), 0));
    }
    // The vote ledger and the policy state must stay in lockstep; this is the
    // strategy/code equivalence, checked on every round.
    if (class_state() != expected) throw Error("code runner: vote ledger diverged from the policy state");
}

std::optional<Int> CodeRunner::unique_real_survivor() const {
    std::optional<Int> survivor;
    for (const auto& bucket : classes_) {
        for (const Int& id : bucket.reals) {
            if (survivor) return std::nullopt;
            survivor = id;
        }
    }
    return survivor;
}

void add_assignment_override(FeedbackCode& code, std::vector<int> transcript, ExplicitParts parts) {
    if (static_cast<int>(transcript.size()) >= code.n)
        throw InvalidArgument("assignment override: transcript as long as the block");
    if (static_cast<int>(parts.size()) != code.q)
        throw InvalidArgument("assignment override: exactly q parts required");
    for (auto& part : parts) std::sort(part.begin(), part.end());
    code.overrides[transcript] = std::move(parts);
    // Validate by replaying to the node; real_parts throws on inconsistency.
    try {
        CodeRunner runner(code);
        for (int beta : transcript) runner.advance(beta);
        (void)runner.part_of(0);
    } catch (...) {
        code.overrides.erase(transcript);
        throw;
    }
}

int encode_step(const FeedbackCode& code, const Int& theta, const std::vector<int>& transcript) {
    if (theta < 0 || theta >= code.M) throw InvalidArgument("encode_step: theta outside the message space");
    if (static_cast<int>(transcript.size()) >= code.n)
        throw InvalidArgument("encode_step: transcript already complete");
    CodeRunner runner(code);
    for (int beta : transcript) runner.advance(beta);
    return runner.part_of(theta);
}

Int decode(const FeedbackCode& code, const std::vector<int>& received) {
    if (static_cast<int>(received.size()) != code.n)
        throw InvalidArgument("decode: exactly n symbols required");
    CodeRunner runner(code);
    for (int beta : received) runner.advance(beta);
    if (auto survivor = runner.unique_real_survivor()) return *survivor;
    throw NoUniqueSurvivor("decode: zero or several live messages (adversary beyond budget, or invalid code)");
}

std::string rate_string(const FeedbackCode& code) {
    const int k = floor_log(code.M, code.q);
    if (ipow(code.q, k) == code.M) return std::to_string(k) + "/" + std::to_string(code.n);
    const double log_real =
        std::log(code.M.convert_to<double>()) / std::log(static_cast<double>(code.q));
    std::ostringstream out;
    out.precision(6);
    out << (log_real / code.n);
    return out.str();
}

}  // namespace qfc
