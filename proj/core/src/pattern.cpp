#include "phg/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace phg {

namespace {

constexpr int kMaxDensityEdges = 20;  // 2^f subgraph enumeration cap

// Vertex masks per edge plus a spanned-set table over all edge subsets.
struct SubsetTable {
    int f;
    std::vector<std::uint64_t> edge_mask;  // per edge, bitmask of vertices
    std::vector<std::uint64_t> span;       // per subset, union of vertex masks

    explicit SubsetTable(const Hypergraph& g) {
        if (g.n() > 64) throw std::domain_error("pattern ops support at most 64 vertices");
        if (g.edge_count() > kMaxDensityEdges)
            throw std::domain_error("pattern ops support at most " +
                                    std::to_string(kMaxDensityEdges) + " edges");
        f = static_cast<int>(g.edge_count());
        edge_mask.resize(f);
        for (int i = 0; i < f; ++i) {
            std::uint64_t m = 0;
            for (Vertex v : g.edge(i)) m |= std::uint64_t{1} << v;
            edge_mask[i] = m;
        }
        span.assign(std::size_t{1} << f, 0);
        for (std::uint32_t s = 1; s < span.size(); ++s) {
            std::uint32_t low = s & (~s + 1);
            span[s] = span[s ^ low] | edge_mask[std::countr_zero(low)];
        }
    }
};

// Ascending edge-index list of a mask, for the lexicographic tie-break.
std::vector<int> mask_indices(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

Hypergraph subgraph_of(const Hypergraph& g, std::uint32_t mask, std::uint64_t span_mask) {
    std::vector<Vertex> verts;
    for (int v = 0; v < 64; ++v)
        if (span_mask >> v & 1) verts.push_back(v);
    std::vector<Vertex> relabel(g.n(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) relabel[verts[i]] = static_cast<Vertex>(i);
    std::vector<std::vector<Vertex>> edges;
    for (int i : mask_indices(mask)) {
        std::vector<Vertex> e;
        for (Vertex v : g.edge(i)) e.push_back(relabel[v]);
        edges.push_back(std::move(e));
    }
    return Hypergraph(g.k(), static_cast<int>(verts.size()), edges);
}

}  // namespace

Pattern::Pattern(Hypergraph h) : g(std::move(h)) {
    if (g.k() < 2) throw std::invalid_argument("Pattern: k must be at least 2");
}

Pattern Pattern::single_edge(int k) {
    std::vector<Vertex> e(k);
    for (int i = 0; i < k; ++i) e[i] = i;
    return Pattern(Hypergraph(k, k, {e}));
}

Pattern Pattern::complete(int k, int b) { return Pattern(Hypergraph::complete(k, b)); }

Pattern Pattern::complete_minus_edge(int k, int b) {
    auto full = Hypergraph::complete(k, b);
    std::vector<std::vector<Vertex>> edges;
    for (std::int64_t i = 0; i + 1 < full.edge_count(); ++i) {
        auto e = full.edge(i);
        edges.emplace_back(e.begin(), e.end());
    }
    return Pattern(Hypergraph(k, b, edges));
}

Pattern Pattern::fano_plane() {
    return Pattern(Hypergraph(3, 7,
                              {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                               {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}));
}

DStarResult d_star(const Pattern& f) {
    if (f.f() == 0) throw std::domain_error("d_star: pattern has no edges");
    SubsetTable t(f.g);
    std::uint32_t best_mask = 0;
    int best_v = 0;
    std::int64_t best_e = 0;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << t.f); ++s) {
        int v = std::popcount(t.span[s]);
        std::int64_t e = std::popcount(s);
        // e/(v-1) versus best_e/(best_v-1)
        if (best_mask != 0) {
            auto lhs = e * static_cast<std::int64_t>(best_v - 1);
            auto rhs = best_e * static_cast<std::int64_t>(v - 1);
            if (lhs < rhs) continue;
            if (lhs == rhs) {
                if (v > best_v) continue;
                if (v == best_v && mask_indices(best_mask) <= mask_indices(s)) continue;
            }
        }
        best_mask = s;
        best_v = v;
        best_e = e;
    }
    DStarResult r{DensityRatio(best_e, best_v - 1), subgraph_of(f.g, best_mask, t.span[best_mask]),
                  best_mask, best_v, best_e};
    return r;
}

PhiResult phi_log(const Pattern& f, int n, double log_p) {
    if (f.f() == 0) throw std::domain_error("phi: pattern has no edges");
    if (n < 1) throw std::domain_error("phi: n must be positive");
    SubsetTable t(f.g);
    double ln_n = std::log(static_cast<double>(n));
    PhiResult best;
    bool have = false;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << t.f); ++s) {
        int v = std::popcount(t.span[s]);
        std::int64_t e = std::popcount(s);
        double val = v * ln_n + static_cast<double>(e) * log_p;
        if (!have || val < best.log_value) {
            best = {val, s, {v, e}};
            have = true;
        }
    }
    return best;
}

PhiResult phi_min_exact(const Pattern& f, int n, const ProbForm& p) {
    if (f.f() == 0) throw std::domain_error("phi: pattern has no edges");
    if (n < 1) throw std::domain_error("phi: n must be positive");
    SubsetTable t(f.g);
    PhiResult best;
    double best_log = 0.0;
    bool have = false;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << t.f); ++s) {
        PhiTerm term{std::popcount(t.span[s]), std::popcount(s)};
        double val = phi_term_log(n, p, term);
        if (have && val > best_log + 1e-9) continue;
        if (!have || val < best_log - 1e-9 ||
            compare_phi_terms(n, p, term, best.term) == Cmp::less) {
            best = {val, s, term};
            best_log = val;
            have = true;
        }
    }
    best.log_value = phi_term_log(n, p, best.term);
    return best;
}

bool phi_at_least_cn(const Pattern& f, int n, const ProbForm& p, const Rational& c) {
    if (f.f() == 0) throw std::domain_error("phi: pattern has no edges");
    if (n < 1) throw std::domain_error("phi: n must be positive");
    SubsetTable t(f.g);
    // Sufficient test without big integers when p = c n^{-t} and c >= 1:
    // the term is c^e n^{v - e t} with e >= 1, so c^e >= c and it clears
    // c n as soon as v - 1 >= e t. Anything else takes the exact route.
    bool fast_ok = p.root == 1 && p.base == c && c >= Rational(1);
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << t.f); ++s) {
        PhiTerm term{std::popcount(t.span[s]), std::popcount(s)};
        if (fast_ok) {
            Rational need = Rational(term.v - 1) - Rational(term.e) * p.n_exp;
            if (need.num >= 0) continue;
        }
        if (compare_phi_term_to(n, p, term, c, 1) == Cmp::less) return false;
    }
    return true;
}

bool is_strictly_balanced(const Pattern& f) {
    if (f.f() == 0) throw std::domain_error("is_strictly_balanced: pattern has no edges");
    SubsetTable t(f.g);
    std::uint32_t full = (std::uint32_t{1} << t.f) - 1;
    if (std::popcount(t.span[full]) != f.b()) return false;  // isolated vertex
    std::int64_t fe = f.f();
    std::int64_t fv = f.b();
    for (std::uint32_t s = 1; s < full; ++s) {
        int v = std::popcount(t.span[s]);
        std::int64_t e = std::popcount(s);
        // require e/(v-1) < fe/(fv-1)
        if (e * (fv - 1) >= fe * static_cast<std::int64_t>(v - 1)) return false;
    }
    return true;
}

bool link_is_partite(const Pattern& f, Vertex v) {
    auto link = f.g.link(v);
    int classes = f.k() - 1;
    if (classes == 1) return true;  // one class, one vertex per edge
    if (link.edge_count() == 0) return true;
    int n = link.n();
    if (n > 24) throw std::domain_error("link_is_partite: link too large");

    // Assign classes vertex by vertex; an edge with k-1 distinct classes is
    // exactly a rainbow edge, so it suffices to forbid same-class pairs
    // inside an edge. Class symmetry is broken by capping fresh labels.
    std::vector<int> colour(n, -1);
    std::vector<std::vector<std::int64_t>> edges_at(n);
    for (std::int64_t i = 0; i < link.edge_count(); ++i)
        for (Vertex w : link.edge(i)) edges_at[w].push_back(i);

    auto conflict = [&](Vertex w) {
        for (std::int64_t ei : edges_at[w])
            for (Vertex u : link.edge(ei))
                if (u != w && colour[u] == colour[w]) return true;
        return false;
    };
    auto solve = [&](auto&& self, Vertex w, int used) -> bool {
        if (w == n) return true;
        int cap = std::min(classes - 1, used);
        for (int c = 0; c <= cap; ++c) {
            colour[w] = c;
            if (!conflict(w) && self(self, w + 1, std::max(used, c + 1))) return true;
        }
        colour[w] = -1;
        return false;
    };
    return solve(solve, 0, 0);
}

bool alpha_is_zero(const Pattern& f) {
    for (Vertex v = 0; v < f.b(); ++v)
        if (link_is_partite(f, v)) return true;
    return false;
}

Pattern glue_at(const Pattern& f1, const Pattern& f2, Vertex v1, Vertex v2) {
    if (f1.k() != f2.k()) throw std::invalid_argument("glue_at: uniformities differ");
    if (v1 < 0 || v1 >= f1.b() || v2 < 0 || v2 >= f2.b())
        throw std::invalid_argument("glue_at: glue vertex out of range");
    int b1 = f1.b();
    std::vector<Vertex> relabel(f2.b());
    Vertex next = static_cast<Vertex>(b1);
    for (Vertex v = 0; v < f2.b(); ++v) relabel[v] = (v == v2) ? v1 : next++;
    std::vector<std::vector<Vertex>> edges;
    for (std::int64_t i = 0; i < f1.g.edge_count(); ++i) {
        auto e = f1.g.edge(i);
        edges.emplace_back(e.begin(), e.end());
    }
    for (std::int64_t i = 0; i < f2.g.edge_count(); ++i) {
        std::vector<Vertex> e;
        for (Vertex v : f2.g.edge(i)) e.push_back(relabel[v]);
        edges.push_back(std::move(e));
    }
    return Pattern(Hypergraph(f1.k(), b1 + f2.b() - 1, edges));
}

bool phi_union_bound_check(const Pattern& f1, const Pattern& f2, Vertex v1, Vertex v2, int n,
                           const ProbForm& p) {
    auto united = glue_at(f1, f2, v1, v2);
    PhiTerm tu = phi_min_exact(united, n, p).term;
    PhiTerm t1 = phi_min_exact(f1, n, p).term;
    PhiTerm t2 = phi_min_exact(f2, n, p).term;
    PhiTerm prod{t1.v + t2.v - 1, t1.e + t2.e};  // phi1 phi2 / n
    PhiTerm rhs = t1;
    if (compare_phi_terms(n, p, t2, rhs) == Cmp::less) rhs = t2;
    if (compare_phi_terms(n, p, prod, rhs) == Cmp::less) rhs = prod;
    return compare_phi_terms(n, p, tu, rhs) != Cmp::less;
}

GluedFamilyMember assemble_glued(const Pattern& f,
                                 const std::vector<std::pair<Vertex, Vertex>>& attach) {
    int b = f.b();
    if (static_cast<int>(attach.size()) != b)
        throw std::invalid_argument("assemble_glued: need exactly b petals");
    std::vector<bool> used(b, false);
    for (auto [c, u] : attach) {
        if (c < 0 || c >= b || u < 0 || u >= b)
            throw std::invalid_argument("assemble_glued: attach vertex out of range");
        // Petals are pairwise disjoint, so no two may share a center vertex.
        if (used[c]) throw std::invalid_argument("assemble_glued: repeated center vertex");
        used[c] = true;
    }
    std::vector<std::vector<Vertex>> edges;
    for (std::int64_t i = 0; i < f.g.edge_count(); ++i) {
        auto e = f.g.edge(i);
        edges.emplace_back(e.begin(), e.end());
    }
    GluedFamilyMember member{Hypergraph::empty(f.k(), 0), {}, {}};
    for (Vertex v = 0; v < b; ++v) member.center.push_back(v);
    Vertex next = static_cast<Vertex>(b);
    for (int i = 0; i < b; ++i) {
        auto [c, u] = attach[i];
        std::vector<Vertex> relabel(b);
        std::vector<Vertex> petal_vertices;
        for (Vertex v = 0; v < b; ++v) {
            relabel[v] = (v == u) ? c : next++;
            petal_vertices.push_back(relabel[v]);
        }
        for (std::int64_t ei = 0; ei < f.g.edge_count(); ++ei) {
            std::vector<Vertex> e;
            for (Vertex v : f.g.edge(ei)) e.push_back(relabel[v]);
            edges.push_back(std::move(e));
        }
        std::sort(petal_vertices.begin(), petal_vertices.end());
        member.petals.push_back(std::move(petal_vertices));
    }
    member.graph = Hypergraph(f.k(), b * b, edges);
    return member;
}

}  // namespace phg
