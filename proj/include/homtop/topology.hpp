#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homtop/errors.hpp"
#include "homtop/poset.hpp"
#include "homtop/snf.hpp"

namespace homtop {

// Abstract simplicial complex on vertices 0..vertex_count-1. Faces are
// grouped by dimension; every face is an ascending vertex list and each
// dimension is sorted lexicographically.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Takes any face list, closes it downward.
    static SimplicialComplex from_faces(int vertex_count, const std::vector<std::vector<int>>& face_list) {
        std::set<std::vector<int>> closed;
        for (auto face : face_list) {
            std::sort(face.begin(), face.end());
            if (face.empty()) throw std::invalid_argument("complex: empty face");
            if (std::adjacent_find(face.begin(), face.end()) != face.end())
                throw std::invalid_argument("complex: repeated vertex in face");
            if (face.front() < 0 || face.back() >= vertex_count)
                throw std::invalid_argument("complex: face vertex out of range");
            // all nonempty subsets
            const std::size_t m = face.size();
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
                std::vector<int> sub;
                for (std::size_t b = 0; b < m; ++b)
                    if (mask >> b & 1) sub.push_back(face[b]);
                closed.insert(std::move(sub));
            }
        }
        SimplicialComplex c;
        c.vertex_count_ = vertex_count;
        for (const auto& f : closed) {
            const int d = static_cast<int>(f.size()) - 1;
            if (d >= static_cast<int>(c.faces_.size())) c.faces_.resize(d + 1);
            c.faces_[d].push_back(f);
        }
        // std::set iterates lex within equal sizes already, but the mix of
        // sizes interleaves; re-sort per dimension
        for (auto& dim : c.faces_) std::sort(dim.begin(), dim.end());
        return c;
    }

    int vertex_count() const { return vertex_count_; }
    int max_dim() const { return static_cast<int>(faces_.size()) - 1; }
    const std::vector<std::vector<int>>& faces(int d) const { return faces_[d]; }
    std::size_t face_count(int d) const {
        return d >= 0 && d <= max_dim() ? faces_[d].size() : 0;
    }
    std::vector<std::size_t> face_counts() const {
        std::vector<std::size_t> out;
        for (const auto& dim : faces_) out.push_back(dim.size());
        return out;
    }
    long long face_index(int d, const std::vector<int>& f) const {
        if (d < 0 || d > max_dim()) return -1;
        auto it = std::lower_bound(faces_[d].begin(), faces_[d].end(), f);
        if (it == faces_[d].end() || *it != f) return -1;
        return it - faces_[d].begin();
    }

    friend SimplicialComplex order_complex(const Poset&, int, std::size_t);

private:
    int vertex_count_ = 0;
    std::vector<std::vector<std::vector<int>>> faces_;
};

// Faces are the chains of p. Every chain is reached exactly once by
// extending upward in the order; stored faces are index-sorted. Chains
// longer than max_dim+1 are not enumerated when max_dim >= 0.
inline SimplicialComplex order_complex(const Poset& p, int max_dim = -1,
                                       std::size_t max_faces = 1000000) {
    const int k = p.size();
    const std::size_t cap = max_dim >= 0 ? static_cast<std::size_t>(max_dim) + 1
                                         : static_cast<std::size_t>(k);
    SimplicialComplex c;
    c.vertex_count_ = k;
    std::vector<std::vector<int>> above(k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (p.less(a, b)) above[a].push_back(b);
    std::size_t total = 0;
    std::vector<int> chain;
    auto record = [&](const std::vector<int>& ch) {
        if (++total > max_faces)
            throw BudgetError("order-complex-faces",
                              "order complex exceeds " + std::to_string(max_faces) + " faces");
        std::vector<int> face = ch;
        std::sort(face.begin(), face.end());
        const int d = static_cast<int>(face.size()) - 1;
        if (d >= static_cast<int>(c.faces_.size())) c.faces_.resize(d + 1);
        c.faces_[d].push_back(std::move(face));
    };
    auto dfs = [&](auto&& self, int last) -> void {
        record(chain);
        if (chain.size() == cap) return;
        for (int nxt : above[last]) {
            chain.push_back(nxt);
            self(self, nxt);
            chain.pop_back();
        }
    };
    for (int e = 0; e < k; ++e) {
        chain = {e};
        dfs(dfs, e);
    }
    for (auto& dim : c.faces_) std::sort(dim.begin(), dim.end());
    return c;
}

inline long long euler_characteristic(const SimplicialComplex& c) {
    long long chi = 0;
    for (int d = 0; d <= c.max_dim(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.face_count(d));
    return chi;
}

// Boundary matrix from d-faces to (d-1)-faces; signs alternate over the
// ascending vertex positions. Zero-dimensional boundaries are empty.
inline IntMatrix boundary_matrix(const SimplicialComplex& c, int d) {
    const int nrows = static_cast<int>(c.face_count(d - 1));
    const int ncols = static_cast<int>(c.face_count(d));
    IntMatrix m(nrows, ncols);
    if (d <= 0) return m;
    for (int col = 0; col < ncols; ++col) {
        const auto& face = c.faces(d)[col];
        for (std::size_t i = 0; i < face.size(); ++i) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < face.size(); ++j)
                if (j != i) sub.push_back(face[j]);
            long long row = c.face_index(d - 1, sub);
            if (row < 0) throw std::logic_error("complex not downward closed");
            m.at(static_cast<int>(row), col) = (i % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

namespace detail {

// d(d(face)) must cancel symbolically for every stored face.
inline void assert_boundary_squares_to_zero(const SimplicialComplex& c, int d) {
    if (d < 2) return;
    for (const auto& face : c.faces(d)) {
        std::map<std::vector<int>, long long> acc;
        for (std::size_t i = 0; i < face.size(); ++i) {
            const long long si = (i % 2 == 0) ? 1 : -1;
            std::vector<int> sub;
            for (std::size_t j = 0; j < face.size(); ++j)
                if (j != i) sub.push_back(face[j]);
            for (std::size_t ii = 0; ii < sub.size(); ++ii) {
                std::vector<int> sub2;
                for (std::size_t jj = 0; jj < sub.size(); ++jj)
                    if (jj != ii) sub2.push_back(sub[jj]);
                acc[sub2] += si * ((ii % 2 == 0) ? 1 : -1);
            }
        }
        for (const auto& [sub2, coeff] : acc)
            if (coeff != 0) throw std::logic_error("boundary of boundary is nonzero");
    }
}

}  // namespace detail

struct HomologyGroup {
    int dimension = 0;
    long long betti = 0;
    std::vector<bigint> torsion;  // invariant factors > 1, divisibility chain
};

// Unreduced integral simplicial homology through dimension up_to.
// Dimensions above max_dim come out zero.
inline std::vector<HomologyGroup> homology(const SimplicialComplex& c, int up_to) {
    if (up_to < 0) throw std::invalid_argument("homology: negative dimension");
    std::vector<SmithResult> snf(up_to + 2);
    for (int d = 1; d <= up_to + 1; ++d) {
        if (d > c.max_dim()) break;
        detail::assert_boundary_squares_to_zero(c, d);
        snf[d] = smith_normal_form(boundary_matrix(c, d));
    }
    std::vector<HomologyGroup> out;
    for (int d = 0; d <= up_to; ++d) {
        HomologyGroup g;
        g.dimension = d;
        const long long nd = static_cast<long long>(c.face_count(d));
        const int rank_d = d >= 1 && d <= c.max_dim() ? snf[d].rank : 0;
        const int rank_d1 = d + 1 <= c.max_dim() ? snf[d + 1].rank : 0;
        g.betti = nd - rank_d - rank_d1;
        if (d + 1 <= c.max_dim())
            for (const auto& f : snf[d + 1].factors)
                if (f > 1) g.torsion.push_back(f);
        out.push_back(std::move(g));
    }
    return out;
}

// Hopf trace over the simplicial chain map induced by the vertex map f.
// f must send faces to faces; a degenerate image contributes zero, a
// setwise-fixed face contributes its permutation sign.
inline long long lefschetz_number(const SimplicialComplex& c, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != c.vertex_count())
        throw std::invalid_argument("lefschetz: vertex map has wrong size");
    for (int v : f)
        if (v < 0 || v >= c.vertex_count())
            throw std::invalid_argument("lefschetz: vertex map value out of range");
    long long total = 0;
    for (int d = 0; d <= c.max_dim(); ++d) {
        const long long sign_d = (d % 2 == 0) ? 1 : -1;
        for (const auto& face : c.faces(d)) {
            std::vector<int> image;
            for (int v : face) image.push_back(f[v]);
            std::vector<int> sorted = image;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            const int id = static_cast<int>(sorted.size()) - 1;
            if (c.face_index(id, sorted) < 0) {
                std::string msg = "vertex map is not simplicial: face {";
                for (std::size_t i = 0; i < face.size(); ++i)
                    msg += (i ? "," : "") + std::to_string(face[i]);
                msg += "} maps outside the complex";
                throw std::invalid_argument(msg);
            }
            if (sorted != face) continue;  // degenerate or moved: trace 0
            // parity of the permutation the map induces on the face
            std::vector<int> perm;
            for (int v : image)
                perm.push_back(static_cast<int>(
                    std::lower_bound(face.begin(), face.end(), v) - face.begin()));
            int inversions = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) ++inversions;
            total += sign_d * ((inversions % 2 == 0) ? 1 : -1);
        }
    }
    return total;
}

enum class Verdict { Contractible, NotContractible, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Contractible: return "CONTRACTIBLE";
        case Verdict::NotContractible: return "NOT_CONTRACTIBLE";
        default: return "UNKNOWN";
    }
}

struct ComponentVerdict {
    std::vector<int> elements;  // original poset indices, ascending
    Verdict verdict = Verdict::Unknown;
    std::size_t dismantle_steps = 0;
    int residual_size = 0;
    std::optional<int> witness_dimension;          // NotContractible only
    std::vector<HomologyGroup> residual_homology;  // when homology ran
    std::string reason;                            // Unknown only
};

struct ContractibilityOptions {
    int max_hom_dim = 2;
    std::size_t max_faces = 1000000;
};

// Per connected component: dismantling to a point certifies
// contractible; nontrivial residual homology within the computed range
// certifies not contractible; anything else stays unknown.
inline std::vector<ComponentVerdict> contractibility_verdicts(const Poset& p,
                                                              ContractibilityOptions opts = {}) {
    std::vector<ComponentVerdict> out;
    for (const auto& comp : connected_components(p)) {
        ComponentVerdict cv;
        cv.elements = comp;
        Poset sub = p.induced(comp);
        DismantleTrace tr = dismantle(sub);
        cv.dismantle_steps = tr.steps.size();
        cv.residual_size = tr.residual.size();
        if (tr.residual.size() == 1) {
            cv.verdict = Verdict::Contractible;
            out.push_back(std::move(cv));
            continue;
        }
        try {
            SimplicialComplex cx = order_complex(tr.residual, opts.max_hom_dim + 1, opts.max_faces);
            cv.residual_homology = homology(cx, opts.max_hom_dim);
            if (cv.residual_homology[0].betti != 1)
                throw std::logic_error("dismantled component residual is disconnected");
            for (int d = 1; d <= opts.max_hom_dim; ++d) {
                const auto& g = cv.residual_homology[d];
                if (g.betti != 0 || !g.torsion.empty()) {
                    cv.verdict = Verdict::NotContractible;
                    cv.witness_dimension = d;
                    break;
                }
            }
            if (cv.verdict != Verdict::NotContractible) {
                cv.verdict = Verdict::Unknown;
                cv.reason = "homology trivial through dimension " +
                            std::to_string(opts.max_hom_dim) + " but the residual does not dismantle";
            }
        } catch (const BudgetError& e) {
            cv.verdict = Verdict::Unknown;
            cv.reason = std::string("budget exceeded: ") + e.what();
        }
        out.push_back(std::move(cv));
    }
    return out;
}

}
