#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homtop/errors.hpp"

namespace homtop {

// Finite poset on elements 0..k-1. Stores the full reflexive order as
// bitset rows; construction validates reflexivity, antisymmetry and
// transitivity.
class Poset {
public:
    Poset() = default;

    explicit Poset(std::vector<boost::dynamic_bitset<>> leq_rows)
        : k_(static_cast<int>(leq_rows.size())), up_(std::move(leq_rows)) {
        for (int i = 0; i < k_; ++i) {
            if (static_cast<int>(up_[i].size()) != k_)
                throw std::invalid_argument("poset: ragged relation matrix");
            if (!up_[i].test(i)) throw std::invalid_argument("poset: relation not reflexive");
        }
        for (int i = 0; i < k_; ++i)
            for (int j = i + 1; j < k_; ++j)
                if (up_[i].test(j) && up_[j].test(i))
                    throw std::invalid_argument("poset: relation not antisymmetric");
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                if (i != j && up_[i].test(j) && !up_[j].is_subset_of(up_[i]))
                    throw std::invalid_argument("poset: relation not transitive");
        down_.assign(k_, boost::dynamic_bitset<>(k_));
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                if (up_[i].test(j)) down_[j].set(i);
    }

    // Strict pairs (a, b) meaning a < b; the transitive closure is taken.
    // Throws if the pairs close into a cycle.
    static Poset from_relation(int k, const std::vector<std::pair<int, int>>& strict_pairs) {
        std::vector<boost::dynamic_bitset<>> rows(k, boost::dynamic_bitset<>(k));
        for (int i = 0; i < k; ++i) rows[i].set(i);
        for (auto [a, b] : strict_pairs) {
            if (a < 0 || a >= k || b < 0 || b >= k)
                throw std::invalid_argument("poset: relation element out of range");
            if (a == b) throw std::invalid_argument("poset: strict relation cannot be reflexive");
            rows[a].set(b);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (i != j && rows[i].test(j) && !rows[j].is_subset_of(rows[i])) {
                        rows[i] |= rows[j];
                        changed = true;
                    }
        }
        return Poset(std::move(rows));
    }

    static Poset antichain(int k) {
        std::vector<boost::dynamic_bitset<>> rows(k, boost::dynamic_bitset<>(k));
        for (int i = 0; i < k; ++i) rows[i].set(i);
        return Poset(std::move(rows));
    }

    int size() const { return k_; }
    bool leq(int a, int b) const { return up_[a].test(b); }
    bool less(int a, int b) const { return a != b && up_[a].test(b); }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
    const boost::dynamic_bitset<>& up_set(int a) const { return up_[a]; }
    const boost::dynamic_bitset<>& down_set(int a) const { return down_[a]; }

    Poset induced(const std::vector<int>& elements) const {
        const int m = static_cast<int>(elements.size());
        std::vector<boost::dynamic_bitset<>> rows(m, boost::dynamic_bitset<>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (leq(elements[i], elements[j])) rows[i].set(j);
        return Poset(std::move(rows));
    }

    bool operator==(const Poset& other) const { return k_ == other.k_ && up_ == other.up_; }

private:
    int k_ = 0;
    std::vector<boost::dynamic_bitset<>> up_, down_;
};

// b covers a: a < b with nothing strictly between.
inline std::vector<std::vector<int>> upper_covers(const Poset& p) {
    const int k = p.size();
    std::vector<std::vector<int>> cov(k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (!p.less(a, b)) continue;
            bool between = false;
            for (int c = 0; c < k && !between; ++c)
                if (c != a && c != b && p.less(a, c) && p.less(c, b)) between = true;
            if (!between) cov[a].push_back(b);
        }
    return cov;
}

inline std::vector<std::vector<int>> lower_covers(const Poset& p) {
    const int k = p.size();
    std::vector<std::vector<int>> cov(k);
    auto up = upper_covers(p);
    for (int a = 0; a < k; ++a)
        for (int b : up[a]) cov[b].push_back(a);
    for (auto& v : cov) std::sort(v.begin(), v.end());
    return cov;
}

enum class CoverKind { UniqueUpper, UniqueLower };

struct IrreducibleElement {
    int element;
    CoverKind kind;  // UniqueUpper preferred when both apply
    int witness;     // the unique cover
};

// Elements with exactly one upper cover or exactly one lower cover,
// ascending, each listed once.
inline std::vector<IrreducibleElement> irreducible_elements(const Poset& p) {
    auto up = upper_covers(p);
    auto down = lower_covers(p);
    std::vector<IrreducibleElement> out;
    for (int a = 0; a < p.size(); ++a) {
        if (up[a].size() == 1)
            out.push_back({a, CoverKind::UniqueUpper, up[a][0]});
        else if (down[a].size() == 1)
            out.push_back({a, CoverKind::UniqueLower, down[a][0]});
    }
    return out;
}

struct RemovalStep {
    int element;  // original index
    CoverKind kind;
    int witness;  // original index of the unique cover at removal time
};

struct DismantleTrace {
    std::vector<RemovalStep> steps;
    Poset residual;
    std::vector<int> residual_elements;  // residual index -> original index
    std::vector<int> index_map;          // original index -> residual index or -1
};

// Greedy removal of irreducible elements, smallest original index
// first, until none remains.
inline DismantleTrace dismantle(const Poset& p) {
    const int k = p.size();
    std::vector<int> alive(k);
    for (int i = 0; i < k; ++i) alive[i] = i;
    DismantleTrace trace;
    while (true) {
        Poset cur = p.induced(alive);
        auto irr = irreducible_elements(cur);
        if (irr.empty()) break;
        const auto& pick = irr.front();  // alive is ascending, so this is the smallest index
        trace.steps.push_back({alive[pick.element], pick.kind, alive[pick.witness]});
        alive.erase(alive.begin() + pick.element);
    }
    trace.residual = p.induced(alive);
    trace.residual_elements = alive;
    trace.index_map.assign(k, -1);
    for (std::size_t i = 0; i < alive.size(); ++i) trace.index_map[alive[i]] = static_cast<int>(i);
    return trace;
}

// Components of the comparability graph, each ascending, ordered by
// smallest element.
inline std::vector<std::vector<int>> connected_components(const Poset& p) {
    const int k = p.size();
    std::vector<int> comp(k, -1);
    int nc = 0;
    for (int root = 0; root < k; ++root) {
        if (comp[root] != -1) continue;
        comp[root] = nc;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            auto nbrs = p.up_set(a) | p.down_set(a);
            for (int b = 0; b < k; ++b)
                if (nbrs.test(b) && comp[b] == -1) {
                    comp[b] = nc;
                    q.push(b);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int a = 0; a < k; ++a) out[comp[a]].push_back(a);
    return out;
}

struct MonotoneMap {
    std::vector<int> values;
};

inline bool is_monotone(const Poset& src, const Poset& dst, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != src.size()) return false;
    for (int a = 0; a < src.size(); ++a) {
        if (f[a] < 0 || f[a] >= dst.size()) return false;
        for (int b = 0; b < src.size(); ++b)
            if (src.leq(a, b) && !dst.leq(f[a], f[b])) return false;
    }
    return true;
}

inline MonotoneMap make_monotone_map(const Poset& src, const Poset& dst, std::vector<int> values) {
    if (!is_monotone(src, dst, values))
        throw std::invalid_argument("monotone map validation failed");
    return MonotoneMap{std::move(values)};
}

// All monotone maps src -> dst in lexicographic order. `forced` pins
// chosen positions (-1 = free). Intended for small posets; callers
// guard the size.
inline std::vector<std::vector<int>> all_monotone_maps(const Poset& src, const Poset& dst,
                                                       const std::vector<int>& forced = {}) {
    const int k = src.size();
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> pin(k, -1);
    if (!forced.empty()) {
        if (static_cast<int>(forced.size()) != k)
            throw std::invalid_argument("forced assignment size mismatch");
        pin = forced;
    }
    std::vector<int> f(k, -1);
    int i = 0;
    while (i >= 0) {
        int start = f[i] + 1;
        f[i] = -1;
        int chosen = -1;
        for (int t = start; t < dst.size(); ++t) {
            if (pin[i] != -1 && t != pin[i]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                if (src.leq(j, i) && !dst.leq(f[j], t)) ok = false;
                if (src.leq(i, j) && !dst.leq(t, f[j])) ok = false;
            }
            if (ok) {
                chosen = t;
                break;
            }
        }
        if (chosen == -1) {
            --i;
        } else {
            f[i] = chosen;
            if (i + 1 == k) {
                out.push_back(f);
            } else {
                ++i;
            }
        }
    }
    return out;
}

inline std::vector<std::vector<int>> all_monotone_self_maps(const Poset& p) {
    return all_monotone_maps(p, p);
}

struct RamifiedCertificate {
    bool ramified;
    std::vector<IrreducibleElement> irreducibles;  // empty iff ramified
    bool lemma_agreement;  // ramified iff every self-map component holding an automorphism is a singleton
    std::size_t monotone_map_count;
    std::size_t automorphism_count;
};

// Cross-checks the cover-based ramified test against the self-map
// poset: an automorphism sits in a singleton component exactly when no
// other monotone self-map is pointwise comparable to it.
inline RamifiedCertificate is_ramified_certified(const Poset& p, int max_size = 6) {
    if (p.size() > max_size)
        throw BudgetError("ramified-max-size",
                          "self-map enumeration limited to " + std::to_string(max_size) + " elements");
    RamifiedCertificate cert;
    cert.irreducibles = irreducible_elements(p);
    cert.ramified = cert.irreducibles.empty();

    auto maps = all_monotone_self_maps(p);
    cert.monotone_map_count = maps.size();
    cert.automorphism_count = 0;
    bool all_singleton = true;
    const int k = p.size();
    auto pointwise_comparable = [&](const std::vector<int>& f, const std::vector<int>& g) {
        bool le = true, ge = true;
        for (int a = 0; a < k; ++a) {
            if (!p.leq(f[a], g[a])) le = false;
            if (!p.leq(g[a], f[a])) ge = false;
            if (!le && !ge) return false;
        }
        return true;
    };
    for (const auto& f : maps) {
        std::vector<char> hit(k, 0);
        bool bij = true;
        for (int v : f) {
            if (hit[v]) {
                bij = false;
                break;
            }
            hit[v] = 1;
        }
        if (!bij) continue;
        ++cert.automorphism_count;
        if (all_singleton)
            for (const auto& g : maps)
                if (g != f && pointwise_comparable(f, g)) {
                    all_singleton = false;
                    break;
                }
    }
    cert.lemma_agreement = (cert.ramified == all_singleton);
    return cert;
}

// Text format: first line the element count, then strict relations
// "i < j" one per line; `#` comments and blank lines allowed; the
// transitive closure is applied on load.
inline Poset parse_poset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    std::optional<int> k;
    std::vector<std::pair<int, int>> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (!k) {
            if (tok.size() != 1)
                throw ParseError("line " + std::to_string(lineno) + ": expected the element count", lineno);
            try {
                k = std::stoi(tok[0]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": malformed element count", lineno);
            }
            if (*k < 0) throw ParseError("line " + std::to_string(lineno) + ": negative element count", lineno);
            continue;
        }
        if (tok.size() != 3 || tok[1] != "<")
            throw ParseError("line " + std::to_string(lineno) + ": expected 'i < j'", lineno);
        int a, b;
        try {
            a = std::stoi(tok[0]);
            b = std::stoi(tok[2]);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": malformed element index", lineno);
        }
        if (a < 0 || a >= *k || b < 0 || b >= *k)
            throw ParseError("line " + std::to_string(lineno) + ": element index out of range", lineno);
        pairs.emplace_back(a, b);
    }
    if (!k) throw ParseError("poset text: missing element count", 0);
    try {
        return Poset::from_relation(*k, pairs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("poset text: ") + e.what(), 0);
    }
}

// Serializes the cover relation; closure on load restores the rest.
inline std::string serialize_poset(const Poset& p) {
    std::string out = std::to_string(p.size()) + "\n";
    auto up = upper_covers(p);
    for (int a = 0; a < p.size(); ++a)
        for (int b : up[a]) out += std::to_string(a) + " < " + std::to_string(b) + "\n";
    return out;
}

}
