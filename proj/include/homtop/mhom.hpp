#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homtop/errors.hpp"
#include "homtop/graph.hpp"
#include "homtop/identity.hpp"
#include "homtop/poset.hpp"

namespace homtop {

// Multivalued homomorphism g -> h: a nonempty vertex set of h per
// vertex of g such that every edge maps to a complete edge product.
struct Multihom {
    std::vector<std::uint64_t> sets;

    bool operator==(const Multihom& o) const { return sets == o.sets; }
    bool operator<(const Multihom& o) const { return sets < o.sets; }
};

// a <= b pointwise as sets
inline bool multihom_leq(const Multihom& a, const Multihom& b) {
    for (std::size_t u = 0; u < a.sets.size(); ++u)
        if (a.sets[u] & ~b.sets[u]) return false;
    return true;
}

struct MhomPoset {
    Graph g, h;
    std::vector<Multihom> elements;  // lexicographic by set masks
    Poset poset;
};

inline std::optional<int> find_element(const MhomPoset& mp, const Multihom& m) {
    auto it = std::lower_bound(mp.elements.begin(), mp.elements.end(), m);
    if (it == mp.elements.end() || !(*it == m)) return std::nullopt;
    return static_cast<int>(it - mp.elements.begin());
}

// Enumerates every multihom from g (connected) into h and orders them
// pointwise by inclusion.
inline MhomPoset build_mhom(const Graph& g, const Graph& h, std::size_t max_elements = 100000) {
    if (g.n() == 0) throw std::invalid_argument("mhom: the source graph is empty");
    if (!is_connected(g)) throw std::invalid_argument("mhom: the source graph must be connected");
    if (h.n() == 0 || h.n() > 64)
        throw std::invalid_argument("mhom: the target graph must have 1..64 vertices");
    const int gn = g.n();
    const int hn = h.n();
    const std::uint64_t full =
        hn == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << hn) - 1);

    // common neighbourhood of a vertex set of h
    auto cn = [&](std::uint64_t mask) {
        std::uint64_t out = full;
        while (mask) {
            const int x = std::countr_zero(mask);
            mask &= mask - 1;
            out &= h.neighbours_mask(x);
        }
        return out;
    };

    // breadth-first vertex order so each placement sees an assigned neighbour
    std::vector<int> order;
    {
        std::vector<char> seen(gn, 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            const auto& nb = g.neighbours(u);
            for (auto w = nb.find_first(); w != boost::dynamic_bitset<>::npos;
                 w = nb.find_next(w))
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(static_cast<int>(w));
                }
        }
    }

    MhomPoset mp;
    mp.g = g;
    mp.h = h;
    std::vector<std::uint64_t> current(gn, 0);
    std::vector<char> assigned(gn, 0);
    auto enumerate = [&](auto&& self, std::size_t pos) -> void {
        if (pos == order.size()) {
            mp.elements.push_back(Multihom{current});
            if (mp.elements.size() > max_elements)
                throw BudgetError("mhom-elements", "more than " + std::to_string(max_elements) +
                                                       " multihoms");
            return;
        }
        const int u = order[pos];
        std::uint64_t allowed = full;
        const auto& nb = g.neighbours(u);
        for (auto w = nb.find_first(); w != boost::dynamic_bitset<>::npos; w = nb.find_next(w))
            if (assigned[w] && static_cast<int>(w) != u) allowed &= cn(current[w]);
        const bool looped = g.adjacent(u, u);
        assigned[u] = 1;
        std::uint64_t s = allowed;
        while (s) {
            if (!looped || (s & ~cn(s)) == 0) {
                current[u] = s;
                self(self, pos + 1);
            }
            s = (s - 1) & allowed;
        }
        assigned[u] = 0;
        current[u] = 0;
    };
    enumerate(enumerate, 0);

    // edge product invariant, rechecked against the original edge list
    for (const auto& m : mp.elements)
        for (auto [u, v] : g.edges()) {
            std::uint64_t a = m.sets[u];
            while (a) {
                const int x = std::countr_zero(a);
                a &= a - 1;
                if (m.sets[v] & ~h.neighbours_mask(x))
                    throw std::logic_error("mhom: enumerated element violates an edge product");
            }
        }

    std::sort(mp.elements.begin(), mp.elements.end());
    const int n = static_cast<int>(mp.elements.size());
    std::vector<boost::dynamic_bitset<>> rows(n, boost::dynamic_bitset<>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (multihom_leq(mp.elements[i], mp.elements[j])) rows[i].set(j);
    mp.poset = Poset(std::move(rows));
    return mp;
}

inline void require_single_edge_source(const MhomPoset& mp, const char* what) {
    const std::vector<std::pair<int, int>> expect{{0, 1}};
    if (mp.g.n() != 2 || !(mp.g.edges() == expect))
        throw std::invalid_argument(std::string(what) + ": the source graph must be a single edge");
}

struct FlipReport {
    MonotoneMap map;               // swaps the two coordinates
    std::vector<int> fixed_elements;
};

// The coordinate swap on mhom(edge, h); an order automorphism whose
// fixed points are exactly the looped common images.
inline FlipReport flip(const MhomPoset& mp) {
    require_single_edge_source(mp, "flip");
    FlipReport report;
    report.map.values.resize(mp.elements.size());
    for (std::size_t i = 0; i < mp.elements.size(); ++i) {
        Multihom swapped{{mp.elements[i].sets[1], mp.elements[i].sets[0]}};
        auto j = find_element(mp, swapped);
        if (!j) throw std::logic_error("flip: the element family is not swap closed");
        report.map.values[i] = *j;
        if (*j == static_cast<int>(i)) report.fixed_elements.push_back(static_cast<int>(i));
    }
    if (!is_monotone(mp.poset, mp.poset, report.map.values))
        throw std::logic_error("flip: the swap is not monotone");
    return report;
}

struct EdgeFlipWitness {
    std::pair<int, int> edge;  // edge of h whose two orientations connect
    std::vector<int> path;     // comparability path between the orientations
};

// Finds an edge (u, v) of h whose singleton orientations ({u},{v}) and
// ({v},{u}) share a comparability component, together with a shortest
// comparability path. Loops give the one-point path. Absent for loopless
// graphs with bipartite components.
inline std::optional<EdgeFlipWitness> edge_flip_witness(const MhomPoset& mp) {
    require_single_edge_source(mp, "edge_flip_witness");
    auto element_index = [&](int a, int b) {
        Multihom m{{std::uint64_t{1} << a, std::uint64_t{1} << b}};
        auto idx = find_element(mp, m);
        if (!idx) throw std::logic_error("edge_flip_witness: missing singleton orientation");
        return *idx;
    };
    for (auto [u, v] : mp.h.edges())
        if (u == v) return EdgeFlipWitness{{u, u}, {element_index(u, u)}};
    const int n = static_cast<int>(mp.elements.size());
    for (auto [u, v] : mp.h.edges()) {
        const int source = element_index(u, v);
        const int goal = element_index(v, u);
        std::vector<int> parent(n, -1);
        std::deque<int> queue{source};
        parent[source] = source;
        while (!queue.empty() && parent[goal] < 0) {
            const int x = queue.front();
            queue.pop_front();
            for (int y = 0; y < n; ++y)
                if (parent[y] < 0 && x != y && mp.poset.comparable(x, y)) {
                    parent[y] = x;
                    queue.push_back(y);
                }
        }
        if (parent[goal] >= 0) {
            std::vector<int> path{goal};
            while (path.back() != source) path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return EdgeFlipWitness{{u, v}, std::move(path)};
        }
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<std::pair<std::vector<int>, std::vector<int>>> edge_counterexample(
    const PolymorphismTable& t) {
    const int hn = t.h.n();
    std::vector<std::vector<int>> nbrs(hn);
    for (int v = 0; v < hn; ++v)
        for (int w = 0; w < hn; ++w)
            if (t.h.adjacent(v, w)) nbrs[v].push_back(w);
    for (std::uint64_t idx = 0; idx < t.tuple_count(); ++idx) {
        auto tup = t.tuple_at(idx);
        bool any = true;
        for (int i = 0; i < t.arity; ++i)
            if (nbrs[tup[i]].empty()) any = false;
        if (!any) continue;
        std::vector<std::size_t> pick(t.arity, 0);
        while (true) {
            std::vector<int> other(t.arity);
            for (int i = 0; i < t.arity; ++i) other[i] = nbrs[tup[i]][pick[i]];
            if (!t.h.adjacent(t.table[idx], t.value(other))) return std::make_pair(tup, other);
            int i = t.arity - 1;
            while (i >= 0 && pick[i] + 1 == nbrs[tup[i]].size()) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    }
    return std::nullopt;
}

inline std::string tuple_text(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

}

// Pointwise set image of a polymorphism table along multihoms; every
// image is again a multihom, so apply() resolves back to an element.
class InducedOperation {
  public:
    InducedOperation(const MhomPoset& mp, PolymorphismTable f) : mp_(&mp), f_(std::move(f)) {
        f_.validate_shape();
        if (!(f_.h == mp.h))
            throw std::invalid_argument("induced operation: table graph differs from the target");
        if (auto bad = detail::edge_counterexample(f_))
            throw std::invalid_argument(
                "induced operation: not a polymorphism, adjacent tuples " +
                detail::tuple_text(bad->first) + " and " + detail::tuple_text(bad->second) +
                " map to non-adjacent values");
    }

    int arity() const { return f_.arity; }

    Multihom image(const std::vector<int>& args) const {
        if (static_cast<int>(args.size()) != f_.arity)
            throw std::invalid_argument("induced operation: wrong argument count");
        const int gn = mp_->g.n();
        const int hn = f_.h.n();
        Multihom out;
        out.sets.assign(gn, 0);
        std::vector<std::vector<int>> bits(f_.arity);
        for (int u = 0; u < gn; ++u) {
            for (int p = 0; p < f_.arity; ++p) {
                bits[p].clear();
                std::uint64_t s = mp_->elements[args[p]].sets[u];
                while (s) {
                    bits[p].push_back(std::countr_zero(s));
                    s &= s - 1;
                }
            }
            std::vector<std::size_t> pick(f_.arity, 0);
            while (true) {
                std::uint64_t idx = 0;
                for (int p = 0; p < f_.arity; ++p)
                    idx = idx * hn + static_cast<std::uint64_t>(bits[p][pick[p]]);
                out.sets[u] |= std::uint64_t{1} << f_.table[idx];
                int p = f_.arity - 1;
                while (p >= 0 && pick[p] + 1 == bits[p].size()) pick[p--] = 0;
                if (p < 0) break;
                ++pick[p];
            }
        }
        return out;
    }

    std::optional<int> apply(const std::vector<int>& args) const {
        return find_element(*mp_, image(args));
    }

  private:
    const MhomPoset* mp_;
    PolymorphismTable f_;
};

inline InducedOperation induce_on_mhom(const PolymorphismTable& f, const MhomPoset& mp) {
    return InducedOperation(mp, f);
}

struct SubTaylorViolation {
    enum class Kind { Closure, Diagonal, Pattern } kind;
    int coordinate = 0;         // 1-based, Pattern only
    std::vector<int> elements;  // element indices of the offending tuple or pair

    std::string describe() const {
        switch (kind) {
            case Kind::Closure:
                return "image of " + detail::tuple_text(elements) + " is not a multihom";
            case Kind::Diagonal:
                return "diagonal image of element " + std::to_string(elements.at(0)) +
                       " does not dominate it";
            default:
                return "pattern inequality fails at coordinate " + std::to_string(coordinate) +
                       " on " + detail::tuple_text(elements);
        }
    }
};

struct SubTaylorReport {
    bool exhaustive = true;
    std::uint64_t tuples_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t diagonals_checked = 0;
    std::uint64_t seed = 0;
    std::vector<SubTaylorViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Checks the induced operations against the weakened Taylor laws on the
// multihom poset: closed images, inflationary diagonal, and per
// coordinate i the binary trace s_i sitting below both substituted
// applications of t. Small instances are swept exhaustively; larger
// ones get seeded random tuples, every diagonal, and the full pair
// sweep whenever it fits the budget. Violations are reported, never
// thrown.
inline SubTaylorReport verify_sub_taylor(const SubTaylorWitness& w, const MhomPoset& mp,
                                         std::uint64_t budget = 100000,
                                         std::uint64_t seed = 0) {
    validate_sub_taylor_witness(w);
    if (!(w.t_table.h == mp.h))
        throw std::invalid_argument("verify_sub_taylor: witness graph differs from the target");
    const int n = w.arity;
    const int N = static_cast<int>(mp.elements.size());
    SubTaylorReport report;
    report.seed = seed;
    if (N == 0) return report;

    InducedOperation it(mp, w.t_table);
    std::vector<InducedOperation> is;
    is.reserve(n);
    for (int i = 0; i < n; ++i) is.emplace_back(mp, w.s_tables[i]);

    std::uint64_t space = 1;
    bool fits = true;
    for (int i = 0; i < n; ++i) {
        space *= static_cast<std::uint64_t>(N);
        if (space > budget) {
            fits = false;
            break;
        }
    }
    report.exhaustive = fits;

    auto check_closure = [&](const std::vector<int>& tup) {
        ++report.tuples_checked;
        if (!it.apply(tup))
            report.violations.push_back(
                {SubTaylorViolation::Kind::Closure, 0, tup});
    };
    auto check_pair = [&](int a, int b) {
        ++report.pairs_checked;
        for (int i = 0; i < n; ++i) {
            auto sv = is[i].apply({a, b});
            std::vector<int> ta(n), tb(n);
            for (int p = 0; p < n; ++p) {
                ta[p] = w.alpha[i][p] == 1 ? a : b;
                tb[p] = w.beta[i][p] == 1 ? a : b;
            }
            auto va = it.apply(ta);
            auto vb = it.apply(tb);
            if (!sv || !va || !vb) {
                report.violations.push_back(
                    {SubTaylorViolation::Kind::Closure, i + 1, {a, b}});
                continue;
            }
            if (!mp.poset.leq(*sv, *va) || !mp.poset.leq(*sv, *vb))
                report.violations.push_back(
                    {SubTaylorViolation::Kind::Pattern, i + 1, {a, b}});
        }
    };

    if (fits) {
        std::vector<int> tup(n, 0);
        while (true) {
            check_closure(tup);
            int i = n - 1;
            while (i >= 0 && tup[i] == N - 1) tup[i--] = 0;
            if (i < 0) break;
            ++tup[i];
        }
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) check_pair(a, b);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dist(0, N - 1);
        const bool pairs_fit =
            static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(N) <= budget;
        for (std::uint64_t r = 0; r < budget; ++r) {
            std::vector<int> tup(n);
            for (int i = 0; i < n; ++i) tup[i] = dist(rng);
            check_closure(tup);
            if (!pairs_fit) check_pair(tup[0], tup[1]);
        }
        if (pairs_fit)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) check_pair(a, b);
    }

    for (int m = 0; m < N; ++m) {
        ++report.diagonals_checked;
        std::vector<int> diag(n, m);
        auto img = it.apply(diag);
        if (!img) {
            report.violations.push_back({SubTaylorViolation::Kind::Closure, 0, diag});
        } else if (!mp.poset.leq(m, *img)) {
            report.violations.push_back({SubTaylorViolation::Kind::Diagonal, 0, {m}});
        }
    }
    return report;
}

}
