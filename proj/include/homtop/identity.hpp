#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homtop/errors.hpp"
#include "homtop/graph.hpp"

namespace homtop {

// A system of linear identities for one n-ary operation symbol: each
// identity equates two applications t(v_1..v_n) = t(w_1..w_n) over the
// named variables.
struct IdentitySystem {
    std::string name;  // preset name or "custom"
    int arity = 0;
    std::vector<std::string> variables;
    // per identity: lhs/rhs as length-arity vectors of variable indices
    std::vector<std::pair<std::vector<int>, std::vector<int>>> identities;
    bool idempotent = true;
};

inline IdentitySystem make_identity_system(
    std::string name, int arity, std::vector<std::string> variables,
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& identities,
    bool idempotent) {
    IdentitySystem sys;
    sys.name = std::move(name);
    sys.arity = arity;
    sys.variables = std::move(variables);
    sys.idempotent = idempotent;
    if (arity <= 0) throw std::invalid_argument("identity system: arity must be positive");
    std::map<std::string, int> var_id;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
        if (var_id.count(sys.variables[i]))
            throw std::invalid_argument("identity system: duplicate variable '" + sys.variables[i] + "'");
        var_id[sys.variables[i]] = static_cast<int>(i);
    }
    for (const auto& [lhs, rhs] : identities) {
        if (static_cast<int>(lhs.size()) != arity || static_cast<int>(rhs.size()) != arity)
            throw std::invalid_argument("identity system: identity length differs from arity");
        std::vector<int> l, r;
        for (const auto& side : {&lhs, &rhs})
            for (const auto& sym : *side)
                if (!var_id.count(sym))
                    throw std::invalid_argument("identity system: undeclared variable '" + sym + "'");
        for (const auto& s : lhs) l.push_back(var_id[s]);
        for (const auto& s : rhs) r.push_back(var_id[s]);
        sys.identities.emplace_back(std::move(l), std::move(r));
    }
    return sys;
}

// s(a,r,e,a) = s(r,a,r,e)
inline IdentitySystem siggers4() {
    return make_identity_system("siggers4", 4, {"a", "r", "e"},
                                {{{"a", "r", "e", "a"}, {"r", "a", "r", "e"}}}, true);
}

// s(x,y,z,x,y,z) = s(y,x,z,x,z,y); coordinates 3 and 4 never separate,
// so a Taylor witness derivation fails there (projections satisfy it)
inline IdentitySystem siggers6_paper() {
    return make_identity_system("siggers6-paper", 6, {"x", "y", "z"},
                                {{{"x", "y", "z", "x", "y", "z"}, {"y", "x", "z", "x", "z", "y"}}},
                                true);
}

// s(x,y,x,z,y,z) = s(y,x,z,x,z,y)
inline IdentitySystem siggers6_corrected() {
    return make_identity_system("siggers6-corrected", 6, {"x", "y", "z"},
                                {{{"x", "y", "x", "z", "y", "z"}, {"y", "x", "z", "x", "z", "y"}}},
                                true);
}

inline IdentitySystem identity_preset(const std::string& name) {
    if (name == "siggers4") return siggers4();
    if (name == "siggers6-paper") return siggers6_paper();
    if (name == "siggers6-corrected") return siggers6_corrected();
    throw std::invalid_argument("unknown identity preset '" + name + "'");
}

// Total n-ary operation on V(h), row-major: the tuple (t_1..t_n) lives
// at index sum t_i * n^(arity-1-i).
struct PolymorphismTable {
    Graph h;
    int arity = 0;
    std::vector<int> table;

    std::uint64_t tuple_count() const {
        std::uint64_t c = 1;
        for (int i = 0; i < arity; ++i) c *= static_cast<std::uint64_t>(h.n());
        return c;
    }
    std::uint64_t tuple_index(const std::vector<int>& t) const {
        std::uint64_t idx = 0;
        for (int x : t) idx = idx * h.n() + static_cast<std::uint64_t>(x);
        return idx;
    }
    std::vector<int> tuple_at(std::uint64_t idx) const {
        std::vector<int> t(arity);
        for (int i = arity - 1; i >= 0; --i) {
            t[i] = static_cast<int>(idx % h.n());
            idx /= h.n();
        }
        return t;
    }
    int value(const std::vector<int>& t) const { return table[tuple_index(t)]; }

    void validate_shape() const {
        if (arity <= 0) throw std::invalid_argument("table: arity must be positive");
        if (h.n() == 0) throw std::invalid_argument("table: empty graph");
        if (table.size() != tuple_count()) throw std::invalid_argument("table: wrong size");
        for (int v : table)
            if (v < 0 || v >= h.n()) throw std::invalid_argument("table: value out of range");
    }
};

struct PolyCounterexample {
    enum class Kind { Edge, Idempotence, Identity } kind;
    // Edge: componentwise-adjacent tuples whose values are not adjacent.
    // Identity: the instantiated lhs/rhs tuples with different values.
    std::vector<int> tuple_a, tuple_b;
    int identity_index = -1;       // Identity only
    std::vector<int> assignment;   // Identity only: value per variable
    int vertex = -1;               // Idempotence only

    std::string describe() const {
        auto tup = [](const std::vector<int>& t) {
            std::string s = "(";
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
            return s + ")";
        };
        switch (kind) {
            case Kind::Edge:
                return "adjacent tuples " + tup(tuple_a) + " and " + tup(tuple_b) +
                       " map to non-adjacent values";
            case Kind::Idempotence:
                return "t" + tup(std::vector<int>(tuple_a.size(), vertex)) + " != " +
                       std::to_string(vertex);
            default:
                return "identity " + std::to_string(identity_index) + " fails at " + tup(tuple_a) +
                       " vs " + tup(tuple_b);
        }
    }
};

struct VerifyResult {
    bool ok = true;
    std::optional<PolyCounterexample> counterexample;
};

// Checks edge preservation, idempotence (when the system demands it)
// and every identity; stops at the first counterexample.
inline VerifyResult verify_polymorphism(const PolymorphismTable& t, const IdentitySystem& sys) {
    t.validate_shape();
    if (t.arity != sys.arity) throw std::invalid_argument("table arity differs from system arity");
    const int hn = t.h.n();
    const std::uint64_t total = t.tuple_count();

    std::vector<std::vector<int>> nbrs(hn);
    for (int v = 0; v < hn; ++v)
        for (int w = 0; w < hn; ++w)
            if (t.h.adjacent(v, w)) nbrs[v].push_back(w);

    for (std::uint64_t idx = 0; idx < total; ++idx) {
        auto tup = t.tuple_at(idx);
        // odometer over componentwise neighbours
        std::vector<std::size_t> pick(t.arity, 0);
        bool any = true;
        for (int i = 0; i < t.arity; ++i)
            if (nbrs[tup[i]].empty()) any = false;
        while (any) {
            std::vector<int> other(t.arity);
            for (int i = 0; i < t.arity; ++i) other[i] = nbrs[tup[i]][pick[i]];
            if (!t.h.adjacent(t.table[idx], t.value(other)))
                return {false, PolyCounterexample{PolyCounterexample::Kind::Edge, tup, other, -1, {}, -1}};
            int i = t.arity - 1;
            while (i >= 0 && pick[i] + 1 == nbrs[tup[i]].size()) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    }
    if (sys.idempotent)
        for (int v = 0; v < hn; ++v) {
            std::vector<int> diag(t.arity, v);
            if (t.value(diag) != v)
                return {false, PolyCounterexample{PolyCounterexample::Kind::Idempotence, diag, {}, -1, {}, v}};
        }
    const int nv = static_cast<int>(sys.variables.size());
    for (std::size_t ii = 0; ii < sys.identities.size(); ++ii) {
        const auto& [lhs, rhs] = sys.identities[ii];
        std::vector<int> assign(nv, 0);
        while (true) {
            std::vector<int> lt(t.arity), rt(t.arity);
            for (int i = 0; i < t.arity; ++i) {
                lt[i] = assign[lhs[i]];
                rt[i] = assign[rhs[i]];
            }
            if (t.value(lt) != t.value(rt))
                return {false, PolyCounterexample{PolyCounterexample::Kind::Identity, lt, rt,
                                                  static_cast<int>(ii), assign, -1}};
            int i = nv - 1;
            while (i >= 0 && assign[i] == hn - 1) assign[i--] = 0;
            if (i < 0) break;
            ++assign[i];
        }
    }
    return {};
}

// Witness that t behaves as a Taylor operation: per coordinate i two
// patterns alpha_i, beta_i: [n] -> {1,2} with alpha_i(i) != beta_i(i),
// and binary tables s_i with
//   s_i(x1,x2) = t(x_{alpha_i(1)},…) = t(x_{beta_i(1)},…).
struct SubTaylorWitness {
    int arity = 0;
    std::vector<std::vector<int>> alpha, beta;  // [arity][arity], entries 1 or 2
    PolymorphismTable t_table;
    std::vector<PolymorphismTable> s_tables;
};

inline void validate_sub_taylor_witness(const SubTaylorWitness& w) {
    const int n = w.arity;
    if (static_cast<int>(w.alpha.size()) != n || static_cast<int>(w.beta.size()) != n)
        throw std::invalid_argument("witness: pattern count differs from arity");
    if (w.t_table.arity != n) throw std::invalid_argument("witness: t_table arity mismatch");
    if (static_cast<int>(w.s_tables.size()) != n)
        throw std::invalid_argument("witness: need one s_table per coordinate");
    const int hn = w.t_table.h.n();
    for (int i = 0; i < n; ++i) {
        for (int v : w.alpha[i])
            if (v != 1 && v != 2) throw std::invalid_argument("witness: pattern value not in {1,2}");
        for (int v : w.beta[i])
            if (v != 1 && v != 2) throw std::invalid_argument("witness: pattern value not in {1,2}");
        if (w.alpha[i][i] == w.beta[i][i])
            throw std::invalid_argument("witness: alpha_i(i) == beta_i(i) at coordinate " +
                                        std::to_string(i + 1));
        if (w.s_tables[i].arity != 2 || !(w.s_tables[i].h == w.t_table.h))
            throw std::invalid_argument("witness: s_table shape mismatch");
        for (int x1 = 0; x1 < hn; ++x1)
            for (int x2 = 0; x2 < hn; ++x2) {
                std::vector<int> ta(n), tb(n);
                for (int p = 0; p < n; ++p) {
                    ta[p] = w.alpha[i][p] == 1 ? x1 : x2;
                    tb[p] = w.beta[i][p] == 1 ? x1 : x2;
                }
                int s = w.s_tables[i].value({x1, x2});
                if (w.t_table.value(ta) != s || w.t_table.value(tb) != s)
                    throw std::invalid_argument("witness: s_" + std::to_string(i + 1) +
                                                " disagrees with the substituted t");
            }
    }
}

// Coordinates (1-based) where no identity separates lhs from rhs; such
// coordinates admit no Taylor pattern.
inline std::vector<int> taylor_pattern_failures(const IdentitySystem& sys) {
    std::vector<int> failed;
    for (int i = 0; i < sys.arity; ++i) {
        bool found = false;
        for (const auto& [lhs, rhs] : sys.identities)
            if (lhs[i] != rhs[i]) found = true;
        if (!found) failed.push_back(i + 1);
    }
    return failed;
}

struct TaylorDerivation {
    std::optional<SubTaylorWitness> witness;  // engaged iff failed_coordinates empty
    std::vector<int> failed_coordinates;      // 1-based
    struct CoordinateChoice {
        int identity_index;
        std::vector<int> substitution;  // per variable: 1 or 2
    };
    std::vector<std::optional<CoordinateChoice>> choices;  // per coordinate
};

// For each coordinate picks an identity whose sides differ there and
// substitutes its variables into {x1, x2}; the s_i tables are read off
// the polymorphism table.
inline TaylorDerivation derive_taylor_witness(const IdentitySystem& sys,
                                              const PolymorphismTable& t) {
    t.validate_shape();
    if (t.arity != sys.arity) throw std::invalid_argument("table arity differs from system arity");
    TaylorDerivation out;
    out.choices.resize(sys.arity);
    const int n = sys.arity;
    const int hn = t.h.n();
    std::vector<std::vector<int>> alpha(n), beta(n);
    for (int i = 0; i < n; ++i) {
        int which = -1;
        for (std::size_t j = 0; j < sys.identities.size() && which < 0; ++j)
            if (sys.identities[j].first[i] != sys.identities[j].second[i])
                which = static_cast<int>(j);
        if (which < 0) {
            out.failed_coordinates.push_back(i + 1);
            continue;
        }
        const auto& [lhs, rhs] = sys.identities[which];
        // lhs[i] -> x1, rhs[i] -> x2, every other variable -> x1
        std::vector<int> subst(sys.variables.size(), 1);
        subst[lhs[i]] = 1;
        subst[rhs[i]] = 2;
        alpha[i].resize(n);
        beta[i].resize(n);
        for (int p = 0; p < n; ++p) {
            alpha[i][p] = subst[lhs[p]];
            beta[i][p] = subst[rhs[p]];
        }
        out.choices[i] = TaylorDerivation::CoordinateChoice{which, subst};
    }
    if (!out.failed_coordinates.empty()) return out;

    SubTaylorWitness w;
    w.arity = n;
    w.alpha = std::move(alpha);
    w.beta = std::move(beta);
    w.t_table = t;
    for (int i = 0; i < n; ++i) {
        PolymorphismTable s;
        s.h = t.h;
        s.arity = 2;
        s.table.resize(static_cast<std::size_t>(hn) * hn);
        for (int x1 = 0; x1 < hn; ++x1)
            for (int x2 = 0; x2 < hn; ++x2) {
                std::vector<int> ta(n);
                for (int p = 0; p < n; ++p) ta[p] = w.alpha[i][p] == 1 ? x1 : x2;
                s.table[static_cast<std::size_t>(x1) * hn + x2] = t.value(ta);
            }
        w.s_tables.push_back(std::move(s));
    }
    validate_sub_taylor_witness(w);
    out.witness = std::move(w);
    return out;
}

// Composes a table on `a` with a homomorphic equivalence a <-> b,
// giving a table on `b` satisfying the same linear identities. Note:
// idempotence survives only when from_b then to_b is the identity, so
// the result is generally not a Taylor witness for b.
inline PolymorphismTable transport_polymorphism(const PolymorphismTable& t, const Graph& b,
                                                const std::vector<int>& b_to_a,
                                                const std::vector<int>& a_to_b) {
    t.validate_shape();
    if (static_cast<int>(b_to_a.size()) != b.n() || static_cast<int>(a_to_b.size()) != t.h.n())
        throw std::invalid_argument("transport: map sizes mismatch");
    for (auto [u, v] : b.edges())
        if (!t.h.adjacent(b_to_a[u], b_to_a[v]))
            throw std::invalid_argument("transport: b_to_a is not a homomorphism");
    for (auto [u, v] : t.h.edges())
        if (!b.adjacent(a_to_b[u], a_to_b[v]))
            throw std::invalid_argument("transport: a_to_b is not a homomorphism");
    PolymorphismTable out;
    out.h = b;
    out.arity = t.arity;
    out.table.resize(out.tuple_count());
    for (std::uint64_t idx = 0; idx < out.tuple_count(); ++idx) {
        auto tup = out.tuple_at(idx);
        std::vector<int> mapped(t.arity);
        for (int i = 0; i < t.arity; ++i) mapped[i] = b_to_a[tup[i]];
        out.table[idx] = a_to_b[t.value(mapped)];
    }
    return out;
}

}
