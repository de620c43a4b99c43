#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "phg/comb.hpp"
#include "phg/hypergraph.hpp"
#include "phg/khg_io.hpp"

using namespace phg;

namespace {

std::vector<std::vector<Vertex>> all_ksets(int n, int k) {
    std::vector<std::vector<Vertex>> out;
    for_each_subset(n, k, [&](std::span<const std::int32_t> s) {
        out.emplace_back(s.begin(), s.end());
    });
    return out;
}

Hypergraph random_graph(int k, int n, double p, std::mt19937_64& rng) {
    std::vector<std::vector<Vertex>> edges;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& e : all_ksets(n, k))
        if (u(rng) < p) edges.push_back(e);
    return Hypergraph(k, n, edges);
}

// Independent of the library's degree path: plain scan over edge tuples.
std::int64_t scan_degree(const Hypergraph& h, std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    std::int64_t d = 0;
    for (std::int64_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++d;
    }
    return d;
}

const std::vector<std::vector<Vertex>> k43_minus = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};

}  // namespace

TEST_CASE("construction canonicalizes and validates") {
    Hypergraph h(3, 5, {{4, 2, 0}, {1, 2, 3}});
    CHECK(h.edge_count() == 2);
    CHECK(h.edge(0)[0] == 0);
    CHECK(h.edge(0)[2] == 4);
    CHECK(h.contains_edge(std::vector<Vertex>{0, 2, 4}));
    CHECK_FALSE(h.contains_edge(std::vector<Vertex>{0, 1, 2}));

    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 2}, {2, 1, 0}}), std::invalid_argument);
}

TEST_CASE("degree on K_5^(3) and a split host") {
    auto k5 = Hypergraph::complete(3, 5);
    CHECK(k5.edge_count() == 10);
    for (Vertex v = 0; v < 5; ++v) CHECK(k5.degree({v}) == 6);
    CHECK(k5.degree({0, 1}) == 3);

    // All triples of [0,6) meeting {0,1}; the pair {2,3} lies in exactly the
    // two edges {0,2,3} and {1,2,3}.
    std::vector<std::vector<Vertex>> edges;
    for (auto& e : all_ksets(6, 3))
        if (e[0] <= 1) edges.push_back(e);
    Hypergraph split(3, 6, edges);
    CHECK(split.degree({2, 3}) == 2);

    CHECK_THROWS_AS(k5.degree(std::vector<Vertex>{}), std::invalid_argument);
    CHECK_THROWS_AS(k5.degree({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(k5.degree({0, 0}), std::invalid_argument);
}

TEST_CASE("min_degree") {
    auto k4 = Hypergraph::complete(3, 4);
    CHECK(k4.min_degree(1) == 3);
    CHECK(k4.min_degree(2) == 2);
    CHECK(Hypergraph::empty(3, 6).min_degree(2) == 0);
    CHECK_THROWS_AS(k4.min_degree(0), std::invalid_argument);
    CHECK_THROWS_AS(k4.min_degree(3), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph::empty(4, 2).min_degree(3), std::invalid_argument);
}

TEST_CASE("bitset degree equals naive scan on random instances") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        int n = k + 1 + static_cast<int>(rng() % (20 - k));
        auto h = random_graph(k, n, 0.3, rng);
        REQUIRE(h.has_incidence_bitsets() == (h.edge_count() > 0));
        int d = 1 + static_cast<int>(rng() % (k - 1));
        std::vector<Vertex> s;
        while (static_cast<int>(s.size()) < d) {
            Vertex v = static_cast<Vertex>(rng() % n);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        CHECK(h.degree(s) == scan_degree(h, s));
    }
}

TEST_CASE("vertex degrees sum to k times edge count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        int n = k + 2 + static_cast<int>(rng() % 10);
        auto h = random_graph(k, n, 0.4, rng);
        std::int64_t total = 0;
        for (Vertex v = 0; v < n; ++v) total += h.degree({v});
        CHECK(total == h.k() * h.edge_count());
    }
}

TEST_CASE("induced relabels order-preservingly") {
    Hypergraph h(3, 6, {{1, 3, 4}, {0, 1, 2}, {3, 4, 5}});
    auto sub = h.induced(std::vector<Vertex>{1, 3, 4});
    CHECK(sub.n() == 3);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.edge(0)[0] == 0);
    CHECK(sub.edge(0)[1] == 1);
    CHECK(sub.edge(0)[2] == 2);

    auto none = h.induced(std::vector<Vertex>{});
    CHECK(none.n() == 0);
    CHECK(none.edge_count() == 0);
}

TEST_CASE("induced commutes with union") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        int k = 2 + static_cast<int>(rng() % 2);
        int n = 8;
        auto a = random_graph(k, n, 0.3, rng);
        auto b = random_graph(k, n, 0.3, rng);
        std::vector<Vertex> s{0, 2, 3, 5, 7};
        auto lhs = union_of(a, b).induced(s);
        auto rhs = union_of(a.induced(s), b.induced(s));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("link of a vertex in K_4^(3) minus an edge") {
    Hypergraph h(3, 4, k43_minus);
    auto l0 = h.link(0);
    CHECK(l0.k() == 2);
    CHECK(l0.n() == 3);
    CHECK(l0.edge_count() == 3);  // triangle on the other three vertices
    auto l1 = h.link(1);
    CHECK(l1.edge_count() == 2);

    auto pair_link = h.link(std::vector<Vertex>{0, 1});
    CHECK(pair_link.k() == 1);
    CHECK(pair_link.edge_count() == 2);
}

TEST_CASE("link edge count equals degree") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        int n = k + 2 + static_cast<int>(rng() % 8);
        auto h = random_graph(k, n, 0.5, rng);
        Vertex v = static_cast<Vertex>(rng() % n);
        CHECK(h.link(v).edge_count() == h.degree({v}));
    }
}

TEST_CASE("star subgraph keeps exactly the edges through v") {
    Hypergraph h(3, 4, k43_minus);
    auto s0 = h.star_subgraph(0);
    CHECK(s0.n() == 4);
    CHECK(s0.edge_count() == 3);
    auto s3 = h.star_subgraph(3);
    CHECK(s3.edge_count() == 2);
    for (std::int64_t i = 0; i < s3.edge_count(); ++i) {
        auto e = s3.edge(i);
        CHECK(std::binary_search(e.begin(), e.end(), Vertex{3}));
    }
}

TEST_CASE("union deduplicates and validates") {
    Hypergraph a(3, 5, {{0, 1, 2}, {1, 2, 3}});
    Hypergraph b(3, 5, {{1, 2, 3}, {2, 3, 4}});
    auto u = union_of(a, b);
    CHECK(u.edge_count() == 3);
    CHECK_THROWS_AS(union_of(a, Hypergraph::empty(3, 6)), std::invalid_argument);
    CHECK_THROWS_AS(union_of(a, Hypergraph::empty(4, 5)), std::invalid_argument);
}

TEST_CASE("khg round trip") {
    std::mt19937_64 rng(5150);
    auto h = random_graph(3, 9, 0.4, rng);
    std::stringstream ss;
    write_khg(h, ss);
    auto h2 = read_khg(ss);
    CHECK(h == h2);
}

TEST_CASE("khg parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        std::stringstream ss(text);
        try {
            read_khg(ss);
            FAIL("expected parse error");
        } catch (const KhgParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("3 5\n", 1);
    expect_error("3 5 1\n0 1\n", 2);
    expect_error("3 5 1\n0 1 9\n", 2);
    expect_error("3 5 2\n0 1 2\n", 3);
    expect_error("3 5 2\n0 1 2\n2 1 0\n", 3);
    expect_error("3 5 2\n0 1 2\n0 1 2\n", 3);
    expect_error("3 5 1\n0 x 2\n", 2);
}

TEST_CASE("vertex sets sort and reject duplicates") {
    VertexSet s(std::vector<Vertex>{3, 1, 2});
    CHECK(s.size() == 3);
    CHECK(s[0] == 1);
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(0));
    CHECK_THROWS_AS(VertexSet(std::vector<Vertex>{1, 1}), std::invalid_argument);
    CHECK(VertexSet::interval(2, 5).size() == 3);
}

TEST_CASE("combinatorics helpers") {
    CHECK(binom(30, 3) == 4060);
    CHECK(binom(0, 0) == 1);
    CHECK(binom_capped(100, 50, 1000) == 1001);
    CHECK_THROWS_AS(binom(200, 100), std::overflow_error);

    // Colex rank runs 0..C(n,k)-1 over the colex enumeration.
    std::vector<std::int32_t> t{0, 1, 2};
    std::uint64_t expect = 0;
    do {
        CHECK(colex_rank(t) == expect);
        ++expect;
    } while (next_colex(t, 6));
    CHECK(expect == binom(6, 3));
}
