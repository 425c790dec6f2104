#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "homtop/errors.hpp"
#include "homtop/graph.hpp"
#include "homtop/identity.hpp"

namespace homtop {

struct SearchBudget {
    std::uint64_t max_nodes = 10'000'000;
    std::uint64_t max_millis = 60'000;
    std::size_t max_classes = 2000;
    std::uint64_t max_raw_tuples = 2'000'000;
    std::uint64_t max_adjacency_steps = 100'000'000;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    std::uint64_t wall_ms = 0;
};

enum class SearchStatus { Sat, Unsat, Timeout };

inline std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Sat: return "SAT";
        case SearchStatus::Unsat: return "UNSAT";
        default: return "TIMEOUT";
    }
}

// TIMEOUT means the budget ran out; it never certifies absence.
struct SearchOutcome {
    SearchStatus status = SearchStatus::Timeout;
    std::optional<PolymorphismTable> table;  // engaged iff Sat
    SearchStats stats;
    std::uint64_t seed = 0;
    std::size_t class_count = 0;
};

namespace detail {

struct TimeoutSignal {};

// Roots are the smallest member, so class ids come out in tuple order.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

}

// Searches for a polymorphism of h satisfying sys. Identity
// instantiations are contracted into tuple classes first; the classes
// then form a binary CSP (values adjacent across every componentwise
// adjacent pair) solved by AC-3 with MRV backtracking. The search is
// deterministic; the seed is only recorded in the outcome.
inline SearchOutcome search_polymorphism(const Graph& h, const IdentitySystem& sys,
                                         const SearchBudget& budget = {},
                                         std::uint64_t seed = 0) {
    const int hn = h.n();
    const int n = sys.arity;
    if (hn == 0) throw std::invalid_argument("search: empty graph");
    if (hn > 64)
        throw BudgetError("vertex-limit",
                          "graph has " + std::to_string(hn) + " vertices; the limit is 64");

    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(hn);
        if (total > budget.max_raw_tuples)
            throw BudgetError("raw-tuples", "tuple space " + std::to_string(hn) + "^" +
                                                std::to_string(n) + " exceeds " +
                                                std::to_string(budget.max_raw_tuples));
    }
    const auto nv = static_cast<int>(sys.variables.size());
    std::uint64_t instantiations = 1;
    for (int i = 0; i < nv; ++i) {
        instantiations *= static_cast<std::uint64_t>(hn);
        if (instantiations > budget.max_adjacency_steps)
            throw BudgetError("identity-instantiations",
                              "identity instantiation space exceeds " +
                                  std::to_string(budget.max_adjacency_steps));
    }

    const auto start = std::chrono::steady_clock::now();
    auto wall_ms = [&]() {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    };

    SearchOutcome out;
    out.seed = seed;

    detail::UnionFind uf(total);
    for (const auto& [lhs, rhs] : sys.identities) {
        std::vector<int> assign(nv, 0);
        while (true) {
            std::uint64_t li = 0, ri = 0;
            for (int i = 0; i < n; ++i) {
                li = li * hn + static_cast<std::uint64_t>(assign[lhs[i]]);
                ri = ri * hn + static_cast<std::uint64_t>(assign[rhs[i]]);
            }
            uf.unite(li, ri);
            int i = nv - 1;
            while (i >= 0 && assign[i] == hn - 1) assign[i--] = 0;
            if (i < 0) break;
            ++assign[i];
        }
    }

    std::vector<int> class_of(total, -1);
    std::vector<std::uint64_t> class_rep;
    for (std::uint64_t i = 0; i < total; ++i) {
        auto r = uf.find(i);
        if (class_of[r] < 0 && r == i) {
            class_of[i] = static_cast<int>(class_rep.size());
            class_rep.push_back(i);
        } else {
            class_of[i] = class_of[r];
        }
    }
    const auto class_count = class_rep.size();
    out.class_count = class_count;
    if (class_count > budget.max_classes)
        throw BudgetError("class-count", std::to_string(class_count) +
                                             " tuple classes exceed " +
                                             std::to_string(budget.max_classes));

    std::vector<int> pinned(class_count, -1);
    if (sys.idempotent) {
        for (int v = 0; v < hn; ++v) {
            std::uint64_t idx = 0;
            for (int i = 0; i < n; ++i) idx = idx * hn + static_cast<std::uint64_t>(v);
            int c = class_of[idx];
            if (pinned[c] >= 0 && pinned[c] != v) {
                // two diagonals collapsed into one class: no idempotent
                // operation can satisfy the identities
                out.status = SearchStatus::Unsat;
                out.stats.wall_ms = wall_ms();
                return out;
            }
            pinned[c] = v;
        }
    }

    std::vector<std::vector<int>> nbrs(hn);
    for (int v = 0; v < hn; ++v)
        for (int w = 0; w < hn; ++w)
            if (h.adjacent(v, w)) nbrs[v].push_back(w);

    std::unordered_set<std::uint64_t> pair_keys;
    std::uint64_t steps = 0;
    std::vector<int> tup(n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        bool any = true;
        for (int i = n - 1; i >= 0; --i) {
            tup[i] = static_cast<int>(rest % hn);
            rest /= hn;
            if (nbrs[tup[i]].empty()) any = false;
        }
        if (!any) continue;
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            if (++steps > budget.max_adjacency_steps)
                throw BudgetError("adjacency-steps", "componentwise adjacency enumeration exceeds " +
                                                         std::to_string(budget.max_adjacency_steps));
            std::uint64_t oidx = 0;
            for (int i = 0; i < n; ++i)
                oidx = oidx * hn + static_cast<std::uint64_t>(nbrs[tup[i]][pick[i]]);
            std::uint64_t a = class_of[idx], b = class_of[oidx];
            if (a > b) std::swap(a, b);
            pair_keys.insert((a << 32) | b);
            int i = n - 1;
            while (i >= 0 && pick[i] + 1 == nbrs[tup[i]].size()) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    }
    std::vector<std::pair<int, int>> constraints(pair_keys.size());
    std::transform(pair_keys.begin(), pair_keys.end(), constraints.begin(), [](std::uint64_t k) {
        return std::pair<int, int>(static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu));
    });
    std::sort(constraints.begin(), constraints.end());

    const std::uint64_t full = hn == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << hn) - 1);
    std::uint64_t loop_mask = 0;
    for (int v = 0; v < hn; ++v)
        if (h.adjacent(v, v)) loop_mask |= std::uint64_t{1} << v;

    std::vector<std::uint64_t> dom(class_count, full);
    std::vector<std::vector<int>> adj(class_count);
    for (auto [a, b] : constraints) {
        if (a == b) {
            // a class componentwise adjacent to itself needs a looped value
            dom[a] &= loop_mask;
        } else {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    for (std::size_t c = 0; c < class_count; ++c)
        if (pinned[c] >= 0) dom[c] &= std::uint64_t{1} << pinned[c];
    for (std::size_t c = 0; c < class_count; ++c)
        if (dom[c] == 0) {
            out.status = SearchStatus::Unsat;
            out.stats.wall_ms = wall_ms();
            return out;
        }

    auto check_clock = [&]() {
        if (wall_ms() > budget.max_millis) throw detail::TimeoutSignal{};
    };

    // revise dom[a] against dom[b]; -1 wipeout, 1 shrunk, 0 unchanged
    auto revise = [&](int a, int b) -> int {
        std::uint64_t d = dom[a], nd = 0;
        while (d) {
            const int x = std::countr_zero(d);
            d &= d - 1;
            if (h.neighbours_mask(x) & dom[b]) nd |= std::uint64_t{1} << x;
        }
        if (nd == dom[a]) return 0;
        dom[a] = nd;
        ++out.stats.propagations;
        if ((out.stats.propagations & 0xfff) == 0) check_clock();
        return nd == 0 ? -1 : 1;
    };

    // AC-3; seeds are the variables whose domains just changed (empty
    // means run over every arc)
    auto ac3 = [&](const std::vector<int>& seeds) -> bool {
        std::deque<std::pair<int, int>> work;
        if (seeds.empty()) {
            for (auto [a, b] : constraints)
                if (a != b) {
                    work.emplace_back(a, b);
                    work.emplace_back(b, a);
                }
        } else {
            for (int s : seeds)
                for (int c : adj[s]) work.emplace_back(c, s);
        }
        while (!work.empty()) {
            auto [a, b] = work.front();
            work.pop_front();
            const int r = revise(a, b);
            if (r < 0) return false;
            if (r > 0)
                for (int c : adj[a])
                    if (c != b) work.emplace_back(c, a);
        }
        return true;
    };

    auto solve = [&](auto&& self) -> bool {
        int best = -1, best_size = 65;
        for (std::size_t c = 0; c < class_count; ++c) {
            const int s = std::popcount(dom[c]);
            if (s >= 2 && s < best_size) {
                best = static_cast<int>(c);
                best_size = s;
            }
        }
        if (best < 0) return true;
        std::uint64_t values = dom[best];
        while (values) {
            const int v = std::countr_zero(values);
            values &= values - 1;
            if (++out.stats.nodes > budget.max_nodes) throw detail::TimeoutSignal{};
            if ((out.stats.nodes & 0xff) == 0) check_clock();
            auto saved = dom;
            dom[best] = std::uint64_t{1} << v;
            if (ac3({best}) && self(self)) return true;
            dom = std::move(saved);
        }
        return false;
    };

    try {
        if (!ac3({})) {
            out.status = SearchStatus::Unsat;
            out.stats.wall_ms = wall_ms();
            return out;
        }
        if (!solve(solve)) {
            out.status = SearchStatus::Unsat;
            out.stats.wall_ms = wall_ms();
            return out;
        }
    } catch (const detail::TimeoutSignal&) {
        out.status = SearchStatus::Timeout;
        out.stats.wall_ms = wall_ms();
        return out;
    }

    PolymorphismTable t;
    t.h = h;
    t.arity = n;
    t.table.resize(total);
    for (std::uint64_t idx = 0; idx < total; ++idx)
        t.table[idx] = std::countr_zero(dom[class_of[idx]]);
    const auto vr = verify_polymorphism(t, sys);
    if (!vr.ok)
        throw std::logic_error("search produced an invalid table: " +
                               vr.counterexample->describe());
    out.status = SearchStatus::Sat;
    out.table = std::move(t);
    out.stats.wall_ms = wall_ms();
    return out;
}

}
