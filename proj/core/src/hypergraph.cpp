#include "phg/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "phg/comb.hpp"

namespace phg {

namespace {

constexpr std::uint64_t kEnumGuard = 10'000'000;      // largest enumerable family
constexpr std::uint64_t kIncidenceBudgetBits = 1ull << 31;  // 256 MiB of bitsets

void check_vertex(Vertex v, int n) {
    if (v < 0 || v >= n)
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range [0," +
                                    std::to_string(n - 1) + "]");
}

// Compares two ascending k-tuples lexicographically.
bool tuple_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

VertexSet::VertexSet(std::vector<Vertex> v) : items_(std::move(v)) {
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
        throw std::invalid_argument("VertexSet: duplicate vertex");
}

VertexSet VertexSet::interval(Vertex lo, Vertex hi) {
    VertexSet s;
    for (Vertex v = lo; v < hi; ++v) s.items_.push_back(v);
    return s;
}

bool VertexSet::contains(Vertex v) const {
    return std::binary_search(items_.begin(), items_.end(), v);
}

Hypergraph::Hypergraph(canonical_tag, int k, int n, std::vector<Vertex> flat)
    : k_(k), n_(n), flat_(std::move(flat)) {
    build_incidence();
}

Hypergraph::Hypergraph(int k, int n, const std::vector<std::vector<Vertex>>& edges)
    : k_(k), n_(n) {
    // k = 1 arises as the link of a (k-1)-set and is a legal degenerate case.
    if (k < 1) throw std::invalid_argument("Hypergraph: k must be positive");
    if (n < 0) throw std::invalid_argument("Hypergraph: negative n");
    std::vector<std::vector<Vertex>> sorted;
    sorted.reserve(edges.size());
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("Hypergraph: edge arity " + std::to_string(e.size()) +
                                        " does not match k=" + std::to_string(k));
        std::vector<Vertex> s(e);
        std::sort(s.begin(), s.end());
        for (int i = 0; i < k; ++i) {
            check_vertex(s[i], n);
            if (i > 0 && s[i] == s[i - 1])
                throw std::invalid_argument("Hypergraph: repeated vertex in edge");
        }
        sorted.push_back(std::move(s));
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("Hypergraph: duplicate edge");
    flat_.reserve(sorted.size() * k);
    for (const auto& e : sorted) flat_.insert(flat_.end(), e.begin(), e.end());
    build_incidence();
}

void Hypergraph::build_incidence() {
    std::uint64_t m = edge_count();
    if (n_ == 0 || m == 0) return;
    if (static_cast<std::uint64_t>(n_) * ((m + 63) / 64 * 64) > kIncidenceBudgetBits) return;
    incidence_.assign(n_, Bitset(m));
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
        for (Vertex v : edge(i)) incidence_[v].set(i);
}

Hypergraph Hypergraph::empty(int k, int n) {
    return Hypergraph(k, n, std::vector<std::vector<Vertex>>{});
}

Hypergraph Hypergraph::complete(int k, int n) {
    if (k < 1) throw std::invalid_argument("complete: k must be positive");
    if (binom_capped(n, k, kEnumGuard) > kEnumGuard)
        throw std::invalid_argument("complete: C(n,k) exceeds the enumeration guard");
    std::vector<Vertex> flat;
    if (n >= k) {
        for_each_subset(n, k, [&](std::span<const std::int32_t> s) {
            flat.insert(flat.end(), s.begin(), s.end());
        });
    }
    return Hypergraph(canonical_tag{}, k, n, std::move(flat));
}

bool Hypergraph::contains_edge(std::span<const Vertex> e) const {
    if (static_cast<int>(e.size()) != k_) return false;
    std::int64_t lo = 0, hi = edge_count();
    while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        auto me = edge(mid);
        if (std::equal(me.begin(), me.end(), e.begin(), e.end())) return true;
        if (tuple_less(me, e)) lo = mid + 1; else hi = mid;
    }
    return false;
}

std::int64_t Hypergraph::degree(std::span<const Vertex> s) const {
    if (s.empty() || static_cast<int>(s.size()) > k_ - 1)
        throw std::invalid_argument("degree: |S| must lie in [1, k-1]");
    std::vector<Vertex> q(s.begin(), s.end());
    std::sort(q.begin(), q.end());
    for (std::size_t i = 0; i < q.size(); ++i) {
        check_vertex(q[i], n_);
        if (i > 0 && q[i] == q[i - 1]) throw std::invalid_argument("degree: repeated vertex");
    }
    if (!incidence_.empty()) {
        if (q.size() == 1) return incidence_[q[0]].count();
        Bitset acc = incidence_[q[0]];
        for (std::size_t i = 1; i + 1 < q.size(); ++i) acc &= incidence_[q[i]];
        return Bitset::and_count(acc, incidence_[q.back()]);
    }
    std::int64_t d = 0;
    for (std::int64_t i = 0; i < edge_count(); ++i) {
        auto e = edge(i);
        if (std::includes(e.begin(), e.end(), q.begin(), q.end())) ++d;
    }
    return d;
}

std::int64_t Hypergraph::min_degree(int d) const {
    if (d < 1 || d > k_ - 1) throw std::invalid_argument("min_degree: d must lie in [1, k-1]");
    if (n_ < d) throw std::invalid_argument("min_degree: fewer than d vertices");
    if (binom_capped(n_, d, kEnumGuard) > kEnumGuard)
        throw std::invalid_argument("min_degree: C(n,d) exceeds the enumeration guard");
    std::int64_t best = -1;
    for_each_subset(n_, d, [&](std::span<const std::int32_t> s) {
        std::int64_t dg = degree(s);
        if (best < 0 || dg < best) best = dg;
        return best != 0;  // a zero-degree set cannot be beaten
    });
    return best;
}

Hypergraph Hypergraph::induced(std::span<const Vertex> s) const {
    std::vector<Vertex> keep(s.begin(), s.end());
    std::sort(keep.begin(), keep.end());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        check_vertex(keep[i], n_);
        if (i > 0 && keep[i] == keep[i - 1])
            throw std::invalid_argument("induced: repeated vertex");
    }
    std::vector<Vertex> relabel(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<Vertex>(i);
    std::vector<Vertex> flat;
    std::vector<Vertex> img(k_);
    for (std::int64_t i = 0; i < edge_count(); ++i) {
        auto e = edge(i);
        bool inside = true;
        for (int j = 0; j < k_; ++j) {
            if (relabel[e[j]] < 0) { inside = false; break; }
            img[j] = relabel[e[j]];
        }
        if (inside) flat.insert(flat.end(), img.begin(), img.end());
    }
    return Hypergraph(canonical_tag{}, k_, static_cast<int>(keep.size()), std::move(flat));
}

Hypergraph Hypergraph::link(std::span<const Vertex> s) const {
    if (s.empty() || static_cast<int>(s.size()) > k_ - 1)
        throw std::invalid_argument("link: |S| must lie in [1, k-1]");
    std::vector<Vertex> q(s.begin(), s.end());
    std::sort(q.begin(), q.end());
    for (std::size_t i = 0; i < q.size(); ++i) {
        check_vertex(q[i], n_);
        if (i > 0 && q[i] == q[i - 1]) throw std::invalid_argument("link: repeated vertex");
    }
    std::vector<Vertex> relabel(n_, -1);
    Vertex next = 0;
    std::size_t qi = 0;
    for (Vertex v = 0; v < n_; ++v) {
        if (qi < q.size() && q[qi] == v) { ++qi; continue; }
        relabel[v] = next++;
    }
    int rk = k_ - static_cast<int>(q.size());
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> rest;
    for (std::int64_t i = 0; i < edge_count(); ++i) {
        auto e = edge(i);
        if (!std::includes(e.begin(), e.end(), q.begin(), q.end())) continue;
        rest.clear();
        for (Vertex v : e)
            if (!std::binary_search(q.begin(), q.end(), v)) rest.push_back(relabel[v]);
        out.push_back(rest);
    }
    return Hypergraph(rk, next, out);
}

Hypergraph Hypergraph::star_subgraph(Vertex v) const {
    check_vertex(v, n_);
    std::vector<Vertex> flat;
    for (std::int64_t i = 0; i < edge_count(); ++i) {
        auto e = edge(i);
        if (std::binary_search(e.begin(), e.end(), v))
            flat.insert(flat.end(), e.begin(), e.end());
    }
    return Hypergraph(canonical_tag{}, k_, n_, std::move(flat));
}

Hypergraph union_of(const Hypergraph& a, const Hypergraph& b) {
    if (a.k() != b.k())
        throw std::invalid_argument("union_of: uniformities differ");
    if (a.n() != b.n())
        throw std::invalid_argument("union_of: vertex counts differ");
    int k = a.k();
    std::vector<Vertex> flat;
    flat.reserve(a.flat_.size() + b.flat_.size());
    std::int64_t i = 0, j = 0;
    while (i < a.edge_count() || j < b.edge_count()) {
        if (j == b.edge_count()) {
            auto e = a.edge(i++);
            flat.insert(flat.end(), e.begin(), e.end());
        } else if (i == a.edge_count()) {
            auto e = b.edge(j++);
            flat.insert(flat.end(), e.begin(), e.end());
        } else {
            auto ea = a.edge(i), eb = b.edge(j);
            if (std::equal(ea.begin(), ea.end(), eb.begin(), eb.end())) {
                flat.insert(flat.end(), ea.begin(), ea.end());
                ++i; ++j;
            } else if (tuple_less(ea, eb)) {
                flat.insert(flat.end(), ea.begin(), ea.end());
                ++i;
            } else {
                flat.insert(flat.end(), eb.begin(), eb.end());
                ++j;
            }
        }
    }
    return Hypergraph(Hypergraph::canonical_tag{}, k, a.n(), std::move(flat));
}

}  // namespace phg
