#pragma once

// Brute-force oracles and small-case enumeration shared by the test
// binaries. Everything here is deliberately naive.

#include <cstdint>
#include <random>
#include <vector>

#include "homtop/graph.hpp"
#include "homtop/poset.hpp"

namespace testsupport {

using homtop::Graph;

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

// All loopless graphs on n labelled vertices.
inline std::vector<Graph> all_loopless_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<int, int>> e;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask >> b & 1) e.push_back(slots[b]);
        out.emplace_back(n, std::move(e));
    }
    return out;
}

// g with loops added on every subset of vertices (2^n variants, the
// loopless original included as the empty subset).
inline std::vector<Graph> loop_variants(const Graph& g) {
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
        auto e = g.edges();
        for (int v = 0; v < g.n(); ++v)
            if (mask >> v & 1) e.emplace_back(v, v);
        out.emplace_back(g.n(), std::move(e));
    }
    return out;
}

inline bool oracle_two_colourable(const Graph& g) {
    const int n = g.n();
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (((c >> u) & 1) == ((c >> v) & 1)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return n == 0;
}

inline bool is_hom(const Graph& g, const Graph& h, const std::vector<int>& f) {
    for (auto [u, v] : g.edges())
        if (!h.adjacent(f[u], f[v])) return false;
    return true;
}

// All homomorphisms g -> h by exhausting h.n()^g.n() maps.
inline std::vector<std::vector<int>> all_homomorphisms(const Graph& g, const Graph& h) {
    std::vector<std::vector<int>> out;
    std::vector<int> f(g.n(), 0);
    if (g.n() == 0) return {f};
    if (h.n() == 0) return {};
    while (true) {
        if (is_hom(g, h, f)) out.push_back(f);
        int i = g.n() - 1;
        while (i >= 0 && f[i] == h.n() - 1) f[i--] = 0;
        if (i < 0) break;
        ++f[i];
    }
    return out;
}

inline bool oracle_is_core(const Graph& g) {
    for (const auto& f : all_homomorphisms(g, g)) {
        std::vector<char> hit(g.n(), 0);
        for (int v : f) hit[v] = 1;
        for (int v = 0; v < g.n(); ++v)
            if (!hit[v]) return false;
    }
    return true;
}

// Random loopless graph, edge probability ~1/2.
inline Graph random_graph(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() & 1) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

// Random poset on k elements: random DAG edges i<j with probability p,
// then transitive closure.
inline homtop::Poset random_poset(int k, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (coin(rng) < p) rel.emplace_back(i, j);
    return homtop::Poset::from_relation(k, rel);
}

}
