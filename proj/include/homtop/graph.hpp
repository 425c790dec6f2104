#pragma once

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homtop/errors.hpp"

namespace homtop {

// Finite undirected graph, loops allowed, no multi-edges. Vertices are
// 0..n-1; edges are kept normalized (u <= v), sorted and unique.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
        if (n < 0) throw std::invalid_argument("graph: negative vertex count");
        for (auto& [u, v] : edge_list) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edge_list.begin(), edge_list.end());
        edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
        edges_ = std::move(edge_list);
        adj_.assign(n_, boost::dynamic_bitset<>(n_));
        for (auto [u, v] : edges_) {
            adj_[u].set(v);
            adj_[v].set(u);
        }
    }

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const boost::dynamic_bitset<>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].count()); }

    // Neighbourhood as a bitmask; requires n <= 64.
    std::uint64_t neighbours_mask(int v) const {
        std::uint64_t m = 0;
        for (int w = 0; w < n_; ++w)
            if (adj_[v].test(w)) m |= std::uint64_t{1} << w;
        return m;
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<boost::dynamic_bitset<>> adj_;
};

enum class GraphFormat { EdgeList, Graph6 };

// Smallest looped vertex, if any.
inline std::optional<int> has_loop(const Graph& g) {
    for (auto [u, v] : g.edges())
        if (u == v) return u;
    return std::nullopt;
}

struct BipartiteCertificate {
    bool bipartite = true;
    // Bipartite case: the two colour classes (ascending; together they
    // cover 0..n-1, isolated vertices land in part0).
    std::vector<int> part0, part1;
    // Non-bipartite case: closed walk, first == last, odd edge count.
    std::vector<int> odd_closed_walk;
};

// BFS 2-colouring per component; deterministic (roots and neighbour
// scans ascending). A loop yields the length-1 walk (v, v).
inline BipartiteCertificate is_bipartite(const Graph& g) {
    BipartiteCertificate cert;
    if (auto lv = has_loop(g)) {
        cert.bipartite = false;
        cert.odd_closed_walk = {*lv, *lv};
        return cert;
    }
    const int n = g.n();
    std::vector<int> colour(n, -1), parent(n, -1), depth(n, 0);
    for (int root = 0; root < n; ++root) {
        if (colour[root] != -1) continue;
        colour[root] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w = 0; w < n; ++w) {
                if (!g.adjacent(u, w)) continue;
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    q.push(w);
                } else if (colour[w] == colour[u]) {
                    // Walk root..u, then w..root reversed; depths have equal
                    // parity so the edge count depth(u)+1+depth(w) is odd.
                    std::vector<int> up, wp;
                    for (int x = u; x != -1; x = parent[x]) up.push_back(x);
                    for (int x = w; x != -1; x = parent[x]) wp.push_back(x);
                    std::reverse(up.begin(), up.end());
                    cert.bipartite = false;
                    cert.odd_closed_walk = std::move(up);
                    cert.odd_closed_walk.insert(cert.odd_closed_walk.end(), wp.begin(), wp.end());
                    return cert;
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        (colour[v] == 1 ? cert.part1 : cert.part0).push_back(v);
    return cert;
}

inline bool validate_bipartite_certificate(const Graph& g, const BipartiteCertificate& cert) {
    if (cert.bipartite) {
        std::vector<int> seen(g.n(), 0);
        for (int v : cert.part0) seen[v] += 1;
        for (int v : cert.part1) seen[v] += 2;
        for (int v = 0; v < g.n(); ++v)
            if (seen[v] != 1 && seen[v] != 2) return false;
        for (auto [u, v] : g.edges())
            if (seen[u] == seen[v]) return false;
        return true;
    }
    const auto& w = cert.odd_closed_walk;
    if (w.size() < 2 || w.front() != w.back()) return false;
    if ((w.size() - 1) % 2 == 0) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!g.adjacent(w[i], w[i + 1])) return false;
    return true;
}

inline bool is_connected(const Graph& g) {
    const int n = g.n();
    if (n <= 1) return true;
    std::vector<char> vis(n, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w = 0; w < n; ++w)
            if (g.adjacent(u, w) && !vis[w]) {
                vis[w] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == n;
}

// Induced subgraph on `vertices` (ascending), renumbered 0..k-1.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> pos(g.n(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (pos[u] != -1 && pos[v] != -1) edges.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<int>(vertices.size()), std::move(edges));
}

// First homomorphism g -> h in lexicographic order (vertices of g
// ascending, images ascending), or nullopt.
inline std::optional<std::vector<int>> find_homomorphism(const Graph& g, const Graph& h) {
    std::vector<int> img(g.n(), -1);
    // adjacency lists of g once, for the partial checks
    auto consistent = [&](int v, int target) {
        if (g.adjacent(v, v) && !h.adjacent(target, target)) return false;
        for (int u = 0; u < v; ++u)
            if (g.adjacent(u, v) && !h.adjacent(img[u], target)) return false;
        return true;
    };
    int v = 0;
    if (g.n() == 0) return std::vector<int>{};
    if (h.n() == 0) return std::nullopt;
    while (true) {
        int start = img[v] + 1;
        img[v] = -1;
        int chosen = -1;
        for (int t = start; t < h.n(); ++t)
            if (consistent(v, t)) {
                chosen = t;
                break;
            }
        if (chosen == -1) {
            if (v == 0) return std::nullopt;
            --v;
        } else {
            img[v] = chosen;
            if (v + 1 == g.n()) return img;
            ++v;
        }
    }
}

struct CoreResult {
    Graph core;                      // induced on core_vertices, renumbered
    std::vector<int> core_vertices;  // original labels, ascending
    std::vector<int> retraction;     // V(g) -> V(core); fixes the core pointwise
};

// Repeatedly strips one vertex at a time via a non-surjective
// endomorphism until none exists. Deterministic: candidate excluded
// vertices ascending, homomorphism search lexicographic-first.
inline CoreResult compute_core(const Graph& g, int max_vertices = 8) {
    if (g.n() > max_vertices)
        throw BudgetError("core-max-vertices",
                          "core computation limited to " + std::to_string(max_vertices) +
                              " vertices, got " + std::to_string(g.n()));
    std::vector<int> keep(g.n());
    std::iota(keep.begin(), keep.end(), 0);
    // retraction from V(g) into `keep`, as positions within keep
    std::vector<int> retr(g.n());
    std::iota(retr.begin(), retr.end(), 0);

    Graph cur = g;
    bool shrunk = true;
    while (shrunk && !keep.empty()) {
        shrunk = false;
        for (std::size_t drop = 0; drop < keep.size(); ++drop) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < keep.size(); ++i)
                if (i != drop) sub.push_back(static_cast<int>(i));
            Graph target = induced_subgraph(cur, sub);
            auto f = find_homomorphism(cur, target);
            if (!f) continue;
            // compose: retr values are positions in cur; f sends those to
            // positions in target, which is cur restricted to sub
            for (int& r : retr) r = (*f)[r];
            std::vector<int> nk;
            for (int i : sub) nk.push_back(keep[i]);
            keep = std::move(nk);
            cur = std::move(target);
            shrunk = true;
            break;
        }
    }

    // retr restricted to the core is an automorphism; compose with its
    // inverse power so the core is fixed pointwise
    const int k = static_cast<int>(keep.size());
    std::vector<int> alpha(k);
    std::vector<int> pos_in_keep(g.n(), -1);
    for (int i = 0; i < k; ++i) pos_in_keep[keep[i]] = i;
    for (int i = 0; i < k; ++i) alpha[i] = retr[keep[i]];
    // order of alpha
    std::vector<int> delta(k);
    std::iota(delta.begin(), delta.end(), 0);
    std::vector<int> power = alpha;
    while (true) {
        bool ident = true;
        for (int i = 0; i < k; ++i)
            if (power[i] != i) {
                ident = false;
                break;
            }
        if (ident) break;
        delta = power;  // alpha^(m-1) once power reaches alpha^m = id
        std::vector<int> next(k);
        for (int i = 0; i < k; ++i) next[i] = alpha[power[i]];
        power = std::move(next);
    }
    // delta = alpha^(m-1) where m = order(alpha): delta(alpha(i)) == i
    std::vector<int> fixed_retr(g.n());
    for (int v = 0; v < g.n(); ++v) fixed_retr[v] = delta[retr[v]];

    CoreResult res;
    res.core = cur;
    res.core_vertices = keep;
    res.retraction = std::move(fixed_retr);
    return res;
}

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace detail

// Edge list: one "u v" pair per line, `#` starts a comment, blank lines
// skipped. Labels are arbitrary non-negative integers, renumbered to
// 0..n-1 in sorted label order.
inline Graph parse_edge_list(const std::string& text) {
    constexpr unsigned long long label_cap = 1000000000ULL;
    std::vector<std::pair<unsigned long long, unsigned long long>> raw;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected two vertex labels, got " +
                                 std::to_string(tok.size()) + " tokens",
                             lineno);
        unsigned long long lab[2];
        for (int i = 0; i < 2; ++i) {
            if (!detail::all_digits(tok[i]))
                throw ParseError("line " + std::to_string(lineno) + ": malformed vertex label '" +
                                     tok[i] + "'",
                                 lineno);
            errno = 0;
            lab[i] = std::strtoull(tok[i].c_str(), nullptr, 10);
            if (errno == ERANGE || lab[i] > label_cap)
                throw ParseError("line " + std::to_string(lineno) + ": vertex index overflow", lineno);
        }
        raw.emplace_back(lab[0], lab[1]);
    }
    std::vector<unsigned long long> labels;
    for (auto [u, v] : raw) {
        labels.push_back(u);
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::map<unsigned long long, int> id;
    for (std::size_t i = 0; i < labels.size(); ++i) id[labels[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : raw) edges.emplace_back(id[u], id[v]);
    return Graph(static_cast<int>(labels.size()), std::move(edges));
}

inline std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

// graph6: loopless simple graphs; upper triangle x(i,j) for j=1..n-1,
// i<j, packed MSB-first into 6-bit groups, each offset by 63.
inline Graph parse_graph6(const std::string& input) {
    std::string s = input;
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s.erase(0, header.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    if (s.empty()) throw ParseError("graph6: empty input", 0);
    auto byte_at = [&](std::size_t i) -> int {
        if (i >= s.size()) throw ParseError("graph6: truncated input at byte " + std::to_string(i), static_cast<long>(i));
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126)
            throw ParseError("graph6: invalid byte " + std::to_string(int(c)) + " at offset " + std::to_string(i),
                             static_cast<long>(i));
        return c - 63;
    };
    std::size_t pos = 0;
    long long n;
    if (static_cast<unsigned char>(s[0]) == 126) {
        if (s.size() >= 2 && static_cast<unsigned char>(s[1]) == 126) {
            n = 0;
            for (int i = 0; i < 6; ++i) n = (n << 6) | byte_at(2 + i);
            pos = 8;
        } else {
            n = 0;
            for (int i = 0; i < 3; ++i) n = (n << 6) | byte_at(1 + i);
            pos = 4;
        }
    } else {
        n = byte_at(0);
        pos = 1;
    }
    if (n > 1000000) throw ParseError("graph6: vertex count overflow", 0);
    const long long bits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
    if (s.size() - pos < need)
        throw ParseError("graph6: truncated input at byte " + std::to_string(s.size()),
                         static_cast<long>(s.size()));
    if (s.size() - pos > need)
        throw ParseError("graph6: trailing garbage at byte " + std::to_string(pos + need),
                         static_cast<long>(pos + need));
    std::vector<std::pair<int, int>> edges;
    long long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            int group = byte_at(pos + static_cast<std::size_t>(bit / 6));
            int b = (group >> (5 - bit % 6)) & 1;
            if (b) edges.emplace_back(i, j);
            ++bit;
        }
    // padding bits must be zero
    for (; bit < static_cast<long long>(need) * 6; ++bit) {
        int group = byte_at(pos + static_cast<std::size_t>(bit / 6));
        if ((group >> (5 - bit % 6)) & 1)
            throw ParseError("graph6: nonzero padding at byte " + std::to_string(pos + bit / 6),
                             static_cast<long>(pos + bit / 6));
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_graph6(const Graph& g) {
    if (has_loop(g)) throw std::invalid_argument("graph6 cannot represent loops");
    const int n = g.n();
    std::string s;
    if (n <= 62) {
        s.push_back(static_cast<char>(n + 63));
    } else {
        s.push_back(126);
        s.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        s.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        s.push_back(static_cast<char>((n & 63) + 63));
    }
    const long long bits = static_cast<long long>(n) * (n - 1) / 2;
    std::vector<int> groups(static_cast<std::size_t>((bits + 5) / 6), 0);
    long long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (g.adjacent(i, j)) groups[static_cast<std::size_t>(bit / 6)] |= 1 << (5 - bit % 6);
            ++bit;
        }
    for (int gr : groups) s.push_back(static_cast<char>(gr + 63));
    return s;
}

inline Graph parse_graph(const std::string& text, GraphFormat format) {
    return format == GraphFormat::EdgeList ? parse_edge_list(text) : parse_graph6(text);
}

}
