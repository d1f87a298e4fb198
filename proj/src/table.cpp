#include "qfc/table.hpp"

#include <ostream>
#include <sstream>

#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"

namespace qfc {

ConstructionTable ConstructionTable::build(int q, int m_max, int k_max) {
    if (q < 3) throw UnsupportedAlphabet("construction table: q >= 3 required (first column degenerates at q = 2)");
    if (m_max < 1 || k_max < 2) throw InvalidArgument("construction table: m_max >= 1, k_max >= 2 required");

    ConstructionTable t;
    t.q_ = q;
    t.m_max_ = m_max;
    t.k_max_ = k_max;
    t.rows_.assign(static_cast<size_t>(m_max), std::vector<Int>(static_cast<size_t>(k_max), 0));
    auto cell = [&](int m, int k) -> Int& {
        return t.rows_[static_cast<size_t>(m) - 1][static_cast<size_t>(k) - 1];
    };

    cell(1, 1) = q;
    for (int k = 2; k <= k_max; ++k) cell(1, k) = 1;
    const Int geometric = Int(q - 1) * (q - 1);
    if (m_max >= 2) {
        cell(2, 1) = Int(q) * (q - 1) * (q - 2);
        cell(2, 2) = geometric;
    }
    if (m_max >= 3) cell(3, 2) = Int(q) * (q - 1) * (q - 1) * (q - 2);
    for (int m = 3; m <= m_max; ++m) cell(m, 1) = geometric * cell(m - 1, 1);
    for (int m = 4; m <= m_max; ++m) cell(m, 2) = geometric * cell(m - 1, 2);
    for (int m = 2; m <= m_max; ++m) {
        for (int k = 3; k <= k_max; ++k) {
            Int value = cell(m, k - 1) + Int(q - 1) * cell(m - 1, k - 1) - Int(q - 1) * cell(m - 1, k - 2);
            if (value < 0)
                throw NegativeEntry("construction table: negative entry at (" + std::to_string(m) +
                                    "," + std::to_string(k) + ")");
            cell(m, k) = std::move(value);
        }
    }
    return t;
}

const Int& ConstructionTable::at(int m, int k) const {
    if (m < 1 || m > m_max_ || k < 1 || k > k_max_)
        throw IndexOutOfRange("construction table: (" + std::to_string(m) + "," + std::to_string(k) +
                              ") outside " + std::to_string(m_max_) + "x" + std::to_string(k_max_));
    return rows_[static_cast<size_t>(m) - 1][static_cast<size_t>(k) - 1];
}

State ConstructionTable::column_state(int m, int k) const {
    std::vector<Int> counts(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) counts[static_cast<size_t>(i)] = at(m - i, k);
    return State(std::move(counts));
}

namespace {

Int exact_div(const Int& value, int divisor, const char* what) {
    if (value % divisor != 0)
        throw NonExactDivision(std::string("construction table: ") + what + " division not exact");
    return value / divisor;
}

}  // namespace

Partition ConstructionTable::partition(int m, int k) const {
    if (m < 1 || m > m_max_ || k < 1 || k > k_max_)
        throw IndexOutOfRange("construction table partition: index outside table");
    Partition p;
    p.parts.assign(static_cast<size_t>(q_), std::vector<Int>(static_cast<size_t>(m), 0));
    if (k == 1) {
        for (int i = 1; i <= m; ++i) {
            Int share = exact_div(at(i, 1), q_, "1/q");
            for (int j = 0; j < q_; ++j) p.parts[static_cast<size_t>(j)][static_cast<size_t>(m - i)] = share;
        }
        return p;
    }
    // Part 0 isolates the lone top element and takes a 1/q share of the deep
    // rows; the other parts share rows 2..k by 1/(q-1) and the deep rows by 1/q.
    p.parts[0][static_cast<size_t>(m) - 1] = 1;
    for (int i = 2; i <= std::min(k, m); ++i) {
        Int share = exact_div(at(i, k), q_ - 1, "1/(q-1)");
        for (int j = 1; j < q_; ++j) p.parts[static_cast<size_t>(j)][static_cast<size_t>(m - i)] = share;
    }
    for (int i = k + 1; i <= m; ++i) {
        Int share = exact_div(at(i, k), q_, "1/q");
        for (int j = 0; j < q_; ++j) p.parts[static_cast<size_t>(j)][static_cast<size_t>(m - i)] = share;
    }
    return p;
}

int ConstructionTable::first_column_index(const Int& M, int q) {
    if (q < 3) throw UnsupportedAlphabet("first_column_index: q >= 3 required");
    if (M < 1) throw InvalidArgument("first_column_index: M >= 1 required");
    if (M <= q) return 1;
    // A(i,1) = q (q-1)^(2i-3) (q-2) for i >= 2, growing by (q-1)^2 per row.
    Int value = Int(q) * (q - 1) * (q - 2);
    int i = 2;
    while (value < M) {
        value *= Int(q - 1) * (q - 1);
        ++i;
    }
    return i;
}

AchievableBlocklength achievable_blocklength(const Int& M, int e, int q) {
    if (e < 0) throw InvalidArgument("achievable_blocklength: e >= 0 required");
    if (q == 2)
        throw UnsupportedAlphabet(
            "achievable_blocklength: the construction covers q >= 3 only (at q = 2 it caps M at 2)");
    const int i = ConstructionTable::first_column_index(M, q);
    return AchievableBlocklength{2 * (e + i) - 1, i};
}

bool TableReport::ok() const {
    for (const auto& check : checks)
        if (!check.ok) return false;
    return true;
}

std::string TableReport::summary() const {
    std::ostringstream out;
    for (const auto& check : checks) {
        out << (check.ok ? "ok   " : "FAIL ") << check.name;
        if (!check.ok && !check.detail.empty()) out << " (" << check.detail << ")";
        out << '\n';
    }
    return out.str();
}

TableReport verify_table(const ConstructionTable& t, int solver_horizon,
                         std::uint64_t solver_node_budget) {
    const int q = t.q();
    const int m_max = t.m_max();
    const int k_max = t.k_max();
    // Wide enough that every stored cell's k+1 child exists and that chains
    // from stored cells (k grows up to 2m before bottoming out) stay inside.
    const ConstructionTable ext = ConstructionTable::build(q, m_max, std::max(k_max + 1, 2 * m_max + 1));

    TableReport report;
    auto add = [&](const std::string& name) -> TableCheck& {
        report.checks.push_back(TableCheck{name, true, ""});
        return report.checks.back();
    };
    auto fail = [](TableCheck& check, const std::string& detail) {
        if (check.ok) {
            check.ok = false;
            check.detail = detail;
        }
    };
    auto cellname = [](int m, int k) { return "(" + std::to_string(m) + "," + std::to_string(k) + ")"; };

    TableCheck& divisibility = add("divisibility: (q-1) | A(m,k) for m,k >= 2; q | A(m,k) for m > k >= 2");
    for (int m = 2; m <= m_max; ++m) {
        for (int k = 2; k <= k_max; ++k) {
            if (t.at(m, k) % (q - 1) != 0) fail(divisibility, "q-1 at " + cellname(m, k));
            if (m > k && t.at(m, k) % q != 0) fail(divisibility, "q at " + cellname(m, k));
        }
    }

    TableCheck& laws = add("diagonal and geometric laws for k >= 3");
    for (int k = 3; k <= k_max; ++k) {
        if (k <= m_max && t.at(k, k) != ipow(q - 1, k)) fail(laws, "A(k,k) at k=" + std::to_string(k));
        if (k + 1 <= m_max && t.at(k + 1, k) != Int(q) * ipow(q - 1, k) * (q - 2))
            fail(laws, "A(k+1,k) at k=" + std::to_string(k));
        for (int m = k + 2; m <= m_max; ++m)
            if (t.at(m, k) != Int(q - 1) * (q - 1) * t.at(m - 1, k))
                fail(laws, "geometric law at " + cellname(m, k));
    }

    TableCheck& zeros = add("zero region: A(m,k) = 0 for k >= 3, 2 <= m < k");
    for (int k = 3; k <= k_max; ++k)
        for (int m = 2; m < std::min(k, m_max + 1); ++m)
            if (t.at(m, k) != 0) fail(zeros, cellname(m, k));

    TableCheck& saturation = add("first column saturates the volume bound: V_{2m-1} = q^{2m-1}");
    for (int m = 1; m <= m_max; ++m)
        if (volume(t.column_state(m, 1), 2 * m - 1, q) != ipow(q, 2 * m - 1))
            fail(saturation, "m=" + std::to_string(m));

    TableCheck& reductions = add("witness partitions reduce every cell to the claimed children");
    for (int m = 1; m <= m_max; ++m) {
        for (int k = 1; k <= k_max; ++k) {
            const State c = t.column_state(m, k);
            Reduction got;
            try {
                got = reduce(c, t.partition(m, k));
            } catch (const Error& err) {
                fail(reductions, cellname(m, k) + ": " + err.what());
                continue;
            }
            std::vector<State> expected;
            if (k == 1) {
                expected.assign(static_cast<size_t>(q), ext.column_state(m, 2));
            } else {
                expected.push_back(ext.column_state(m, k + 1));
                // A(0,k) = 0: the answer-j child of a one-row cell is empty.
                State lower = m >= 2 ? embed(ext.column_state(m - 1, k - 1), 1)
                                     : State(std::vector<Int>{0});
                expected.insert(expected.end(), static_cast<size_t>(q - 1), lower);
            }
            if (got.states != expected) {
                fail(reductions, cellname(m, k) + ": children mismatch");
                continue;
            }
            if (!check_reduction(c, got)) fail(reductions, cellname(m, k) + ": check_reduction");
        }
    }

    TableCheck& winnable = add("column states are winnable in 2m-k questions (chain + solver cross-check)");
    // Composition of the per-cell reductions, made executable: a cell is
    // chain-winnable when its trajectory (k=1 -> (m,2); k>=2 -> (m,k+1) and
    // (m-1,k-1)) reaches singlets with the witness reductions valid at every
    // step. Memoized over (m,k); chains from stored cells stay inside ext.
    std::map<std::pair<int, int>, bool> chain;
    auto chain_winnable = [&](auto&& self, int m, int k) -> bool {
        if (m == 0) return true;  // empty child of a one-row cell
        const auto key = std::make_pair(m, k);
        if (auto it = chain.find(key); it != chain.end()) return it->second;
        const State c = ext.column_state(m, k);
        bool ok;
        if (2 * m - k <= 0) {
            ok = c.total() <= 1;
        } else if (k == 1) {
            const Reduction got = reduce(c, ext.partition(m, 1));
            ok = check_reduction(c, got);
            for (const State& x : got.states) ok = ok && x == ext.column_state(m, 2);
            ok = ok && self(self, m, 2);
        } else {
            const Reduction got = reduce(c, ext.partition(m, k));
            ok = check_reduction(c, got) && got.states.front() == ext.column_state(m, k + 1);
            const State lower =
                m >= 2 ? embed(ext.column_state(m - 1, k - 1), 1) : State(std::vector<Int>{0});
            for (int j = 1; j < q; ++j) ok = ok && got.states[static_cast<size_t>(j)] == lower;
            ok = ok && self(self, m, k + 1) && self(self, m - 1, k - 1);
        }
        chain.emplace(key, ok);
        return ok;
    };
    Solver solver(q, Solver::Options{solver_node_budget, true, true});
    for (int m = 1; m <= m_max; ++m) {
        for (int k = 1; k <= k_max; ++k) {
            const int n = 2 * m - k;
            if (n < 0) {
                // Beyond the diagonal the chain has bottomed out already.
                if (!t.column_state(m, k).singlet()) fail(winnable, cellname(m, k) + ": expected singlet");
                continue;
            }
            if (!chain_winnable(chain_winnable, m, k))
                fail(winnable, cellname(m, k) + ": reduction chain does not bottom out in singlets");
            if (n <= solver_horizon) {
                if (!solver.is_winning(t.column_state(m, k), n).winning)
                    fail(winnable, cellname(m, k) + ": solver says losing at n=" + std::to_string(n));
            }
        }
    }

    return report;
}

void write_table_csv(std::ostream& out, const ConstructionTable& t) {
    out << "m\\k";
    for (int k = 1; k <= t.k_max(); ++k) out << ',' << k;
    out << '\n';
    for (int m = 1; m <= t.m_max(); ++m) {
        out << m;
        for (int k = 1; k <= t.k_max(); ++k) out << ',' << t.at(m, k);
        out << '\n';
    }
}

}  // namespace qfc
