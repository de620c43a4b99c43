#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phg/bitset.hpp"

namespace phg {

using Vertex = std::int32_t;

// Sorted duplicate-free vertex list.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> v);
    static VertexSet interval(Vertex lo, Vertex hi);  // [lo, hi)

    std::span<const Vertex> items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    bool contains(Vertex v) const;
    Vertex operator[](std::size_t i) const { return items_[i]; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> items_;
};

// Immutable k-uniform hypergraph on vertex set [0, n). Edges are kept as a
// flat array of ascending k-tuples in lexicographic order; that array is the
// source of truth. Per-vertex incidence bitsets over edge indices are built
// alongside as an accelerator when their footprint is reasonable.
class Hypergraph {
public:
    // Edges may arrive in any order; each is sorted and the list is
    // canonicalized. Duplicate edges or invalid vertices are rejected.
    Hypergraph(int k, int n, const std::vector<std::vector<Vertex>>& edges);

    static Hypergraph empty(int k, int n);
    static Hypergraph complete(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(flat_.size()) / k_; }

    std::span<const Vertex> edge(std::int64_t i) const {
        return {flat_.data() + i * k_, static_cast<std::size_t>(k_)};
    }
    bool contains_edge(std::span<const Vertex> e) const;  // e must be ascending

    // Number of edges containing every vertex of s; 1 <= |s| <= k-1.
    std::int64_t degree(std::span<const Vertex> s) const;
    std::int64_t degree(std::initializer_list<Vertex> s) const {
        return degree(std::span<const Vertex>(s.begin(), s.size()));
    }

    // Minimum of degree over all d-subsets of the vertex set.
    std::int64_t min_degree(int d) const;

    // Subgraph induced on s, relabeled order-preservingly to [0, |s|).
    Hypergraph induced(std::span<const Vertex> s) const;

    // (k-|s|)-graph of edge remainders {e \ s : s subset of e}, on the
    // remaining n-|s| vertices, relabeled order-preservingly.
    Hypergraph link(std::span<const Vertex> s) const;
    Hypergraph link(Vertex v) const { return link({&v, 1}); }

    // Spanning subgraph keeping exactly the edges through v.
    Hypergraph star_subgraph(Vertex v) const;

    bool has_incidence_bitsets() const { return !incidence_.empty(); }

    bool operator==(const Hypergraph& o) const {
        return k_ == o.k_ && n_ == o.n_ && flat_ == o.flat_;
    }

private:
    int k_;
    int n_;
    std::vector<Vertex> flat_;
    std::vector<Bitset> incidence_;  // vertex -> bitset over edge indices

    struct canonical_tag {};
    Hypergraph(canonical_tag, int k, int n, std::vector<Vertex> flat);
    void build_incidence();
    friend Hypergraph union_of(const Hypergraph&, const Hypergraph&);
};

// Union of edge sets; both graphs must share k and n.
Hypergraph union_of(const Hypergraph& a, const Hypergraph& b);

}  // namespace phg
