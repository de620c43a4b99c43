#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "phg/exact.hpp"
#include "phg/hypergraph.hpp"
#include "phg/pattern.hpp"

using namespace phg;

namespace {

// Test-side density oracle: walks edge subsets by recursion over plain
// edge lists and tracks spans with std::set, nothing shared with the
// library's bitmask tables.
struct OracleBest {
    long long e = 0;
    long long vm1 = 1;  // v - 1
};

bool ratio_greater(long long e1, long long v1, long long e2, long long v2) {
    return static_cast<__int128>(e1) * v2 > static_cast<__int128>(e2) * v1;
}

OracleBest oracle_d_star(const Hypergraph& g) {
    OracleBest best{0, 1};
    bool have = false;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int next) -> void {
        if (next == g.edge_count()) {
            if (chosen.empty()) return;
            std::set<Vertex> span;
            for (int i : chosen) {
                auto e = g.edge(i);
                span.insert(e.begin(), e.end());
            }
            long long e = chosen.size();
            long long vm1 = static_cast<long long>(span.size()) - 1;
            if (!have || ratio_greater(e, vm1, best.e, best.vm1)) {
                best = {e, vm1};
                have = true;
            }
            return;
        }
        self(self, next + 1);
        chosen.push_back(next);
        self(self, next + 1);
        chosen.pop_back();
    };
    rec(rec, 0);
    return best;
}

double oracle_phi_log(const Hypergraph& g, int n, double log_p) {
    double best = 0.0;
    bool have = false;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int next) -> void {
        if (next == g.edge_count()) {
            if (chosen.empty()) return;
            std::set<Vertex> span;
            for (int i : chosen) {
                auto e = g.edge(i);
                span.insert(e.begin(), e.end());
            }
            double val = static_cast<double>(span.size()) * std::log(static_cast<double>(n)) +
                         static_cast<double>(chosen.size()) * log_p;
            if (!have || val < best) {
                best = val;
                have = true;
            }
            return;
        }
        self(self, next + 1);
        chosen.push_back(next);
        self(self, next + 1);
        chosen.pop_back();
    };
    rec(rec, 0);
    return best;
}

// Plain exhaustive class-assignment check, no symmetry breaking.
bool oracle_partite(const Hypergraph& link, int classes) {
    if (link.edge_count() == 0) return true;
    int n = link.n();
    std::vector<int> cls(n, 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= classes;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
            cls[i] = static_cast<int>(c % classes);
            c /= classes;
        }
        bool ok = true;
        for (std::int64_t i = 0; ok && i < link.edge_count(); ++i) {
            std::set<int> seen;
            for (Vertex v : link.edge(i)) seen.insert(cls[v]);
            ok = static_cast<int>(seen.size()) == link.k();
        }
        if (ok) return true;
    }
    return false;
}

Hypergraph random_pattern(int k, int n, int m, std::mt19937_64& rng) {
    std::vector<std::vector<Vertex>> pool;
    std::vector<Vertex> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<bool> pick(n);
    std::fill(pick.begin(), pick.begin() + k, true);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<Vertex> e;
        for (int i = 0; i < n; ++i)
            if (pick[i]) e.push_back(i);
        pool.push_back(e);
    } while (std::next_permutation(pick.begin(), pick.end()));
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), m));
    return Hypergraph(k, n, pool);
}

Hypergraph permute_vertices(const Hypergraph& g, const std::vector<Vertex>& perm) {
    std::vector<std::vector<Vertex>> edges;
    for (std::int64_t i = 0; i < g.edge_count(); ++i) {
        std::vector<Vertex> e;
        for (Vertex v : g.edge(i)) e.push_back(perm[v]);
        edges.push_back(std::move(e));
    }
    return Hypergraph(g.k(), g.n(), edges);
}

Pattern triangle() { return Pattern::complete(2, 3); }

}  // namespace

TEST_CASE("d_star frozen values") {
    CHECK(d_star(triangle()).value == Rational(3, 2));
    CHECK(d_star(Pattern::single_edge(3)).value == Rational(1, 2));
    CHECK(d_star(Pattern::single_edge(5)).value == Rational(1, 4));
    CHECK(d_star(Pattern::complete(3, 4)).value == Rational(4, 3));
    CHECK(d_star(Pattern::complete_minus_edge(3, 4)).value == Rational(1));
    CHECK(d_star(Pattern::complete(3, 5)).value == Rational(5, 2));
    CHECK(d_star(Pattern::complete(2, 6)).value == Rational(3));
    CHECK(d_star(Pattern::fano_plane()).value == Rational(7, 6));
}

TEST_CASE("d_star maximizer and tie-break") {
    auto full = d_star(Pattern::complete_minus_edge(3, 4));
    CHECK(full.s == 4);
    CHECK(full.j == 3);
    CHECK(full.maximizer == Pattern::complete_minus_edge(3, 4).g);

    // Two triangles sharing one vertex: both triangles and their union sit
    // at 3/2, the smallest subgraph with lowest edge indices must win.
    auto bow = glue_at(triangle(), triangle(), 0, 0);
    auto r = d_star(bow);
    CHECK(r.value == Rational(3, 2));
    CHECK(r.s == 3);
    CHECK(r.j == 3);
    // canonical edge order of the bow is 01,02,03,04,12,34
    CHECK(r.edge_mask == 0b010011u);
    CHECK(r.maximizer == triangle().g);

    auto again = d_star(bow);
    CHECK(again.edge_mask == r.edge_mask);
}

TEST_CASE("d_star agrees with subset-recursion oracle") {
    std::vector<Hypergraph> cases = {
        triangle().g,
        Pattern::single_edge(2).g,
        Pattern::single_edge(4).g,
        Pattern::complete(3, 4).g,
        Pattern::complete_minus_edge(3, 4).g,
        Pattern::complete(3, 5).g,
        Pattern::fano_plane().g,
        Hypergraph(2, 3, {{0, 1}, {1, 2}}),
        glue_at(triangle(), triangle(), 0, 0).g,
    };
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 12; ++i) cases.push_back(random_pattern(3, 6, 8, rng));
    for (int i = 0; i < 6; ++i) cases.push_back(random_pattern(2, 7, 10, rng));
    for (const auto& g : cases) {
        if (g.edge_count() == 0) continue;
        auto got = d_star(Pattern(g));
        auto want = oracle_d_star(g);
        CHECK(got.value == Rational(want.e, want.vm1));
    }
}

TEST_CASE("d_star invariant under vertex relabeling") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        auto g = random_pattern(3, 6, 7, rng);
        if (g.edge_count() == 0) continue;
        std::vector<Vertex> perm(g.n());
        for (int v = 0; v < g.n(); ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(d_star(Pattern(g)).value == d_star(Pattern(permute_vertices(g, perm))).value);
    }
}

TEST_CASE("d_star guards") {
    CHECK_THROWS_AS(d_star(Pattern(Hypergraph::empty(3, 5))), std::domain_error);
    CHECK_THROWS_AS(d_star(Pattern::complete(3, 7)), std::domain_error);  // 35 edges
    CHECK_THROWS_AS(Pattern(Hypergraph(1, 3, {{0}, {1}})), std::invalid_argument);
}

TEST_CASE("phi_log frozen value and tie") {
    // Triangle at n=100, p=0.1: the single edge and the whole triangle both
    // give n^2 p = n^3 p^3 = 1000; the scan keeps the first minimizer.
    auto r = phi_log(triangle(), 100, std::log(0.1));
    CHECK(r.log_value == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
    CHECK(r.edge_mask == 1u);
    CHECK(r.term.v == 2);
    CHECK(r.term.e == 1);
}

TEST_CASE("phi_log agrees with subset-recursion oracle") {
    std::mt19937_64 rng(99);
    std::vector<Hypergraph> cases = {triangle().g, Pattern::complete(3, 4).g,
                                     Pattern::fano_plane().g};
    for (int i = 0; i < 10; ++i) cases.push_back(random_pattern(3, 6, 8, rng));
    std::uniform_real_distribution<double> logp(-8.0, -0.05);
    for (const auto& g : cases) {
        if (g.edge_count() == 0) continue;
        for (int n : {5, 40, 1000}) {
            double lp = logp(rng);
            auto got = phi_log(Pattern(g), n, lp);
            CHECK(got.log_value == doctest::Approx(oracle_phi_log(g, n, lp)).epsilon(1e-9));
        }
    }
}

TEST_CASE("phi_min_exact resolves ties exactly") {
    // p = n^{-1/2} puts the edge and the triangle at n^{3/2} exactly; the
    // first subset must be kept even though doubles cannot separate them.
    auto p = ProbForm::root_power(Rational(1), 1, Rational(1, 2));
    auto r = phi_min_exact(triangle(), 10000, p);
    CHECK(r.edge_mask == 1u);
    CHECK(r.term.v == 2);
    CHECK(r.term.e == 1);

    // p = n^{-3/5} tips the balance to the full triangle.
    auto r2 = phi_min_exact(triangle(), 100, ProbForm::root_power(Rational(1), 1, Rational(3, 5)));
    CHECK(r2.term.v == 3);
    CHECK(r2.term.e == 3);

    // Plain rational probability matches the double-scale computation.
    auto r3 = phi_min_exact(triangle(), 100, ProbForm::plain(Rational(1, 10)));
    CHECK(r3.log_value == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
    CHECK(r3.edge_mask == 1u);
}

TEST_CASE("phi threshold: above the critical exponent phi grows linearly") {
    // p = c n^{-1/d*} with c >= 1 keeps every subgraph term at c n or above.
    for (const auto& pat : {triangle(), Pattern::complete(3, 4), Pattern::fano_plane()}) {
        auto ds = d_star(pat).value;
        Rational inv(ds.den, ds.num);
        for (int c : {1, 2, 5}) {
            for (int n : {10, 100, 1000}) {
                CHECK(phi_at_least_cn(pat, n, ProbForm::power(Rational(c), inv), Rational(c)));
            }
        }
    }
}

TEST_CASE("phi threshold: below the critical exponent the bound fails") {
    // Triangle with p = n^{-1}: the full subgraph term is n^3 p^3 = 1 < n.
    CHECK_FALSE(phi_at_least_cn(triangle(), 100, ProbForm::power(Rational(1), Rational(1)),
                                Rational(1)));
    // Slightly steeper than n^{-1/d*} already fails for large n.
    CHECK_FALSE(phi_at_least_cn(triangle(), 1000,
                                ProbForm::power(Rational(1), Rational(7, 10)), Rational(1)));
}

TEST_CASE("phi_at_least_cn exact path with radical coefficient") {
    // p = 2^{1/2} n^{-2/3} on the triangle: every term clears n itself.
    auto p = ProbForm::root_power(Rational(2), 2, Rational(2, 3));
    CHECK(phi_at_least_cn(triangle(), 100, p, Rational(1)));
    // Against 3n the full triangle term 2^{3/2} n falls short.
    CHECK_FALSE(phi_at_least_cn(triangle(), 100, p, Rational(3)));
}

TEST_CASE("strict balance") {
    CHECK(is_strictly_balanced(triangle()));
    CHECK(is_strictly_balanced(Pattern::complete(3, 4)));
    CHECK(is_strictly_balanced(Pattern::complete_minus_edge(3, 4)));
    CHECK(is_strictly_balanced(Pattern::fano_plane()));
    CHECK(is_strictly_balanced(Pattern::single_edge(3)));
    // A path ties its own edge density, so it is balanced but not strictly.
    CHECK_FALSE(is_strictly_balanced(Pattern(Hypergraph(2, 3, {{0, 1}, {1, 2}}))));
    // Isolated vertices never belong to a strictly balanced pattern.
    CHECK_FALSE(is_strictly_balanced(Pattern(Hypergraph(2, 4, {{0, 1}, {1, 2}}))));
    // Two triangles at a shared vertex tie the triangle density.
    CHECK_FALSE(is_strictly_balanced(glue_at(triangle(), triangle(), 0, 0)));
}

TEST_CASE("link partiteness frozen cases") {
    auto kme = Pattern::complete_minus_edge(3, 4);
    // Vertex 0 sits in all three edges; its link is a triangle.
    CHECK_FALSE(link_is_partite(kme, 0));
    // Vertex 1 lies in 012 and 013 only; its link is a path.
    CHECK(link_is_partite(kme, 1));
    CHECK(link_is_partite(kme, 2));
    CHECK(link_is_partite(kme, 3));

    for (Vertex v = 0; v < 5; ++v) CHECK_FALSE(link_is_partite(Pattern::complete(3, 5), v));
    for (Vertex v = 0; v < 7; ++v) CHECK(link_is_partite(Pattern::fano_plane(), v));
    CHECK(link_is_partite(Pattern::single_edge(4), 0));

    // Link of 0 is a 4-cycle: even cycles split, odd ones do not.
    Pattern even_link(Hypergraph(3, 5, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4}}));
    CHECK(link_is_partite(even_link, 0));
    Pattern odd_link(Hypergraph(3, 4, {{0, 1, 2}, {0, 2, 3}, {0, 1, 3}}));
    CHECK_FALSE(link_is_partite(odd_link, 0));
}

TEST_CASE("link partiteness agrees with exhaustive assignment oracle") {
    std::mt19937_64 rng(314159);
    std::vector<Hypergraph> cases = {Pattern::complete(3, 5).g, Pattern::fano_plane().g,
                                     Pattern::complete_minus_edge(3, 4).g,
                                     Pattern::complete(4, 5).g};
    for (int i = 0; i < 10; ++i) cases.push_back(random_pattern(3, 6, 8, rng));
    for (int i = 0; i < 4; ++i) cases.push_back(random_pattern(4, 6, 6, rng));
    for (const auto& g : cases) {
        Pattern pat(g);
        for (Vertex v = 0; v < g.n(); ++v) {
            CHECK(link_is_partite(pat, v) == oracle_partite(g.link(v), g.k() - 1));
        }
    }
}

TEST_CASE("alpha_is_zero") {
    CHECK(alpha_is_zero(Pattern::single_edge(3)));
    CHECK(alpha_is_zero(Pattern::fano_plane()));
    CHECK(alpha_is_zero(Pattern::complete_minus_edge(3, 4)));
    CHECK_FALSE(alpha_is_zero(Pattern::complete(3, 5)));
    CHECK_FALSE(alpha_is_zero(Pattern::complete(3, 4)));
    // For k=2 every link is 1-uniform and one class always works.
    CHECK(alpha_is_zero(triangle()));
    CHECK(alpha_is_zero(Pattern::complete(2, 6)));
}

TEST_CASE("alpha invariance under relabeling") {
    std::mt19937_64 rng(27182);
    for (int i = 0; i < 8; ++i) {
        auto g = random_pattern(3, 6, 7, rng);
        std::vector<Vertex> perm(g.n());
        for (int v = 0; v < g.n(); ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(alpha_is_zero(Pattern(g)) == alpha_is_zero(Pattern(permute_vertices(g, perm))));
    }
}

TEST_CASE("glue_at shape") {
    auto bow = glue_at(triangle(), triangle(), 0, 0);
    CHECK(bow.k() == 2);
    CHECK(bow.b() == 5);
    CHECK(bow.f() == 6);
    CHECK_THROWS_AS(glue_at(triangle(), Pattern::single_edge(3), 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(glue_at(triangle(), triangle(), 3, 0), std::invalid_argument);
}

TEST_CASE("union lower bound for one-vertex overlaps") {
    auto p1 = ProbForm::plain(Rational(1, 5));
    CHECK(phi_union_bound_check(triangle(), triangle(), 0, 0, 50, p1));
    auto p2 = ProbForm::root_power(Rational(1, 2), 1, Rational(1, 3));
    CHECK(phi_union_bound_check(Pattern::complete(3, 4), Pattern::complete(3, 4), 0, 0, 30, p2));
    CHECK(phi_union_bound_check(Pattern::single_edge(3), Pattern::complete(3, 4), 2, 1, 12, p2));

    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> nd(5, 200);
    std::uniform_int_distribution<int> cd(1, 9);
    for (int i = 0; i < 20; ++i) {
        auto g1 = random_pattern(3, 5, 5, rng);
        auto g2 = random_pattern(3, 5, 5, rng);
        if (g1.edge_count() == 0 || g2.edge_count() == 0) continue;
        auto p = ProbForm::power(Rational(cd(rng), 10), Rational(cd(rng), 10));
        CHECK(phi_union_bound_check(Pattern(g1), Pattern(g2), 1, 2, nd(rng), p));
    }
}

TEST_CASE("glued family member shape") {
    auto f = Pattern::complete(3, 4);
    auto m = assemble_glued(f, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(m.graph.n() == 16);
    CHECK(m.graph.edge_count() == 20);  // (b+1) f
    CHECK(m.center == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(m.petals.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(m.petals[i].size() == 4);
        // Each petal meets the center in exactly its attach vertex.
        std::vector<Vertex> inter;
        std::set_intersection(m.petals[i].begin(), m.petals[i].end(), m.center.begin(),
                              m.center.end(), std::back_inserter(inter));
        CHECK(inter == std::vector<Vertex>{static_cast<Vertex>(i)});
        for (int l = 0; l < i; ++l) {
            std::vector<Vertex> both;
            std::set_intersection(m.petals[i].begin(), m.petals[i].end(), m.petals[l].begin(),
                                  m.petals[l].end(), std::back_inserter(both));
            CHECK(both.empty());
        }
    }
    // Attachment at varying pattern vertices is equally legal.
    auto m2 = assemble_glued(f, {{0, 3}, {1, 2}, {2, 1}, {3, 0}});
    CHECK(m2.graph.edge_count() == 20);
    CHECK_THROWS_AS(assemble_glued(f, {{0, 0}, {0, 1}, {2, 0}, {3, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_glued(f, {{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_glued(f, {{0, 0}, {1, 0}, {2, 0}, {4, 0}}), std::invalid_argument);
}

TEST_CASE("glued member keeps the critical density of its pattern") {
    auto f = Pattern::complete(3, 4);
    auto m = assemble_glued(f, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    auto r = d_star(Pattern(m.graph));
    CHECK(r.value == Rational(4, 3));
    // With p = c n^{-1/d*} the member's expected-copies scale still clears
    // c n for every subgraph, which is what the union argument needs.
    for (int c : {1, 3}) {
        CHECK(phi_at_least_cn(Pattern(m.graph), 500, ProbForm::power(Rational(c), Rational(3, 4)),
                              Rational(c)));
    }
}
