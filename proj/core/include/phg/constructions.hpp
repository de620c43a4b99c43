#pragma once

#include <cstdint>

#include "phg/exact.hpp"
#include "phg/hypergraph.hpp"
#include "phg/pattern.hpp"
#include "phg/rational.hpp"

namespace phg {

// Host whose edges are exactly the k-sets meeting the side A. Keeping A
// small gives large minimum vertex degree while every matching stays
// confined to at most |A| edges.
struct SplitHost {
    Hypergraph graph;
    VertexSet side_a;
    VertexSet side_b;
    Rational eta;                    // |A| / n
    std::int64_t min_vertex_degree;  // C(n-1,k-1) - C((1-eta)n-1,k-1)
};

// eta must be in (0,1] with eta*n integral.
SplitHost build_split_host(int n, int k, const Rational& eta);

// Every edge uses an A-vertex, so a matching covers at most k|A| vertices
// (and never more than n).
std::int64_t matching_cover_bound(const SplitHost& host);

// Split host with |A| = max(1, floor(n/(3k omega))) and edge probability
// (1/2) ln(omega) / C(n-1,k-1). At this scale the host alone blocks all
// large matchings and the random part still leaves isolated vertices.
struct CounterexampleSetup {
    SplitHost host;
    double p;
    double omega;
};

CounterexampleSetup sublinear_counterexample(int n, int k, double omega);

// n (1-p)^{C(n-1,k-1)}: expected number of vertices meeting no random edge.
double isolated_vertex_expectation(int n, int k, double p);

// Probability pinning the densest-subgraph copy scale at theta n / (2b):
// with the maximizer J on s vertices and j edges, p = (theta/2b)^{1/j}
// n^{-(s-1)/j} gives n^s p^j = (theta/2b) n exactly.
struct PinnedScale {
    ProbForm p;
    DStarResult dstar;     // supplies s and j
    Rational coefficient;  // theta / (2b)
    bool identity_holds;   // n^s p^j == coefficient * n under exact arithmetic
};

PinnedScale pin_copy_scale(const Pattern& f, int n, const Rational& theta);

}  // namespace phg
