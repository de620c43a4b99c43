#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "phg/exact.hpp"
#include "phg/hypergraph.hpp"
#include "phg/rational.hpp"

namespace phg {

// Exact subgraph density ratio e'/(v'-1); comparisons never touch floats.
using DensityRatio = Rational;

// A small k-graph to be tiled. Target size is desk scale: at most 64
// vertices and at most 20 edges for the density computations.
struct Pattern {
    Hypergraph g;

    explicit Pattern(Hypergraph h);

    int k() const { return g.k(); }
    int b() const { return g.n(); }
    std::int64_t f() const { return g.edge_count(); }

    static Pattern single_edge(int k);
    static Pattern complete(int k, int b);
    static Pattern complete_minus_edge(int k, int b);
    static Pattern fano_plane();
};

// Maximizer of e'/(v'-1) over subgraphs with at least two vertices.
struct DStarResult {
    DensityRatio value;
    Hypergraph maximizer;          // J, relabeled to its spanned vertices
    std::uint32_t edge_mask = 0;   // chosen edges as indices into the pattern
    int s = 0;                     // vertices of J
    std::int64_t j = 0;            // edges of J
};

DStarResult d_star(const Pattern& f);

// Minimum of n^{v'} p^{e'} over nonempty-edge subgraphs, reported in log
// scale together with the minimizing subgraph.
struct PhiResult {
    double log_value = 0.0;
    std::uint32_t edge_mask = 0;
    PhiTerm term;  // v', e' of the minimizer
};

PhiResult phi_log(const Pattern& f, int n, double log_p);

// Same minimum with symbolic p, decided by exact arithmetic.
PhiResult phi_min_exact(const Pattern& f, int n, const ProbForm& p);

// Exact decision of "min over subgraphs of n^{v'} p^{e'} >= c * n".
bool phi_at_least_cn(const Pattern& f, int n, const ProbForm& p, const Rational& c);

bool is_strictly_balanced(const Pattern& f);

// Can V(link of v) be split into k-1 classes so that every link edge has
// exactly one vertex in each class?
bool link_is_partite(const Pattern& f, Vertex v);

// True iff some vertex has a partite link (the degenerate-exponent regime).
bool alpha_is_zero(const Pattern& f);

// Two patterns sharing exactly one vertex: v2 of f2 is identified with v1 of
// f1, the rest of f2 is relabeled above f1's vertices.
Pattern glue_at(const Pattern& f1, const Pattern& f2, Vertex v1, Vertex v2);

// Exact check of the union lower bound
//   phi(F1 u F2) >= min(phi(F1), phi(F2), phi(F1) phi(F2) / n)
// for the single-shared-vertex union; the edge sets split cleanly and the
// shared vertex is counted at most once, so this is expected always true.
bool phi_union_bound_check(const Pattern& f1, const Pattern& f2, Vertex v1, Vertex v2, int n,
                           const ProbForm& p);

// One member of the glued family: a center copy of F plus b petal copies,
// each petal sharing exactly one vertex with the center.
struct GluedFamilyMember {
    Hypergraph graph;                       // on b^2 vertices, (b+1) f edges
    std::vector<Vertex> center;             // the b center vertices (0..b-1)
    std::vector<std::vector<Vertex>> petals;  // vertex sets of the b petals
};

// attach[i] = (center vertex of petal i, vertex of F identified with it).
// Center vertices must be pairwise distinct so that petals stay disjoint.
GluedFamilyMember assemble_glued(const Pattern& f,
                                 const std::vector<std::pair<Vertex, Vertex>>& attach);

}  // namespace phg
