#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phg/factor.hpp"
#include "phg/hypergraph.hpp"
#include "phg/pattern.hpp"
#include "phg/random_models.hpp"
#include "phg/rational.hpp"

namespace phg {

// b disjoint b-vertex blocks plus the diagonal formed by their last entries.
// Block entries are positional: blocks[i][j] is the j-th vertex of block i+1,
// and blocks[i].back() is the block's diagonal member.
struct AbsorberStructure {
    std::vector<std::vector<Vertex>> blocks;
    std::vector<Vertex> labelling;  // s_1..s_b, aligned with blocks

    std::vector<Vertex> diagonal() const;
    std::vector<Vertex> span() const;  // sorted union of the blocks
};

// True iff both H[A] and H[A u S] have F-factors. Throws on |S| != b, empty
// A, |A| not divisible by b, or A meeting S; throws when the factor search
// gives up on a budget.
bool is_absorber(const Hypergraph& h, const VertexSet& s, const VertexSet& a, const Pattern& f,
                 const FactorOptions& opt = {});

// The 2b+1 spanned-copy conditions for the labelling stored in the
// structure: each H[A_i], each H[{s_i} u (A_i \ {v_i^b})], and H[diagonal].
bool is_simple_absorber(const Hypergraph& h, const AbsorberStructure& st, const Pattern& f);

// Convenience sweep over all b! labellings of s against fixed blocks.
bool is_simple_absorber_any_labelling(const Hypergraph& h, const VertexSet& s,
                                      const std::vector<std::vector<Vertex>>& blocks,
                                      const Pattern& f);

// Root choice for the two-phase search: prefer vertices whose link is
// (k-1)-partite, then the highest total rooted-copy count in the host, then
// the smallest index.
Vertex absorber_root(const Pattern& f, const Hypergraph& host);

struct SimpleAbsorberOptions {
    std::int64_t step_budget = 2'000'000;
};

// Two-phase search. Phase 1 walks the host only: for each s_i it embeds the
// star of the root onto fresh vertices with the root at s_i, and reserves one
// extra fresh vertex per block for the diagonal. Phase 2 demands that the
// combined graph supply a full copy of F on every block (diagonal vertex in
// the root's role) and one on the diagonal itself. Returns a structure that
// passes is_simple_absorber on the combined graph, or nothing.
std::optional<AbsorberStructure> find_simple_absorber(const PerturbedInstance& inst,
                                                      const VertexSet& s, const Pattern& f,
                                                      const VertexSet& forbidden = VertexSet(),
                                                      const SimpleAbsorberOptions& opt = {});

// Bipartite graph on (X_m u Y_m, Z_m) with |X_m| = m + beta m, |Y_m| = 2m,
// |Z_m| = 3m. Left indices [0, x_size) are X_m, then Y_m; right indices are
// Z_m.
struct TemplateGraph {
    int m = 0;
    Rational beta;
    std::vector<std::pair<int, int>> edges;  // (left, z), kept sorted unique

    int x_size() const { return m + beta.times_int(m); }
    int y_size() const { return 2 * m; }
    int z_size() const { return 3 * m; }
    int left_size() const { return x_size() + y_size(); }
    int max_degree() const;
    void add_edge(int l, int z);
};

TemplateGraph complete_template(int m, const Rational& beta);

// Exhaustive check that every m-subset of X_m leaves a matching saturating
// Z_m. Guarded by the number of subsets; oversized inputs throw.
bool template_verify(const TemplateGraph& b);

// Random degree-capped bipartite graphs until one verifies.
std::optional<TemplateGraph> template_search(int m, const Rational& beta, int delta_cap,
                                             const SeededSampler& s, int attempts,
                                             int* attempts_used = nullptr);

struct AbsorbingConstants {
    Rational rho, q, beta, xi;

    // q = rho/(1300 b^2), beta = q^(b-1) rho/8, xi = beta q/(2(1+beta)(b-1)).
    static AbsorbingConstants from_rho(const Rational& rho, int b);
    bool derived_from_rho(int b) const;
};

// Completions of rooted copies at one vertex: each member D is a (b-1)-set
// with {v} u D spanning a copy of F. Stored flat to keep big families cheap.
struct RootedFamily {
    int arity = 0;
    std::vector<Vertex> flat;

    std::size_t size() const { return arity == 0 ? 0 : flat.size() / arity; }
    std::span<const Vertex> member(std::size_t i) const {
        return {flat.data() + i * arity, static_cast<std::size_t>(arity)};
    }
    void push(std::span<const Vertex> d) { flat.insert(flat.end(), d.begin(), d.end()); }
};

// families[v] lists completions at v in ascending member order. With
// disjoint=true only a greedy pairwise-disjoint subfamily is kept, which is
// the certifiable count of rooted copies meeting only at v.
std::vector<RootedFamily> build_rooted_families(const Hypergraph& h, const Pattern& f,
                                                bool disjoint,
                                                std::size_t cap_per_vertex = 100'000);

struct StageRecord {
    std::string stage;
    std::string detail;
    bool ok = true;
};

struct AbsorbingSet {
    std::vector<Vertex> x, y, z;  // z in consecutive (b-1)-blocks
    int m = 0;
    int b = 0;
    AbsorbingConstants constants;
    TemplateGraph templ;
    std::vector<std::vector<Vertex>> edge_sets;  // A_e aligned with templ.edges
    std::vector<RootedFamily> restricted;        // per-vertex families inside X
    int retries = 0;

    std::span<const Vertex> z_block(int i) const {
        return {z.data() + static_cast<std::size_t>(i) * (b - 1),
                static_cast<std::size_t>(b - 1)};
    }
    std::vector<Vertex> members() const;  // sorted A = X u Y u Z u all A_e
    std::size_t size() const;
};

struct BuildOptions {
    int x_retries = 50;
    VertexSet v0;                                       // kept out of X
    const TemplateGraph* template_override = nullptr;   // must verify
    // The allocation bound 4bm + 100 b^2 |Z_m| <= rho n / 2 is always
    // recorded; it aborts the build only when the constants match from_rho or under
    // this flag.
    bool enforce_accounting = false;
    std::int64_t candidates_per_edge = 500;
    std::int64_t dry_run_budget = 200'000;
};

struct BuildOutcome {
    std::optional<AbsorbingSet> set;
    std::string failed_stage;  // "X-concentration", "family shortfall", "template",
                               // "allocation", "constants-too-large"; empty on success
    std::string detail;
    std::vector<StageRecord> trace;

    bool ok() const { return set.has_value(); }
};

BuildOutcome build_absorbing_set(const Hypergraph& h, const Pattern& f,
                                 const AbsorbingConstants& constants,
                                 const std::vector<RootedFamily>& families,
                                 const SeededSampler& sampler, const BuildOptions& opt = {});

// Swallows R into the absorbing set: removes a bm-subset Q of X covered
// together with R by rooted copies, rebuilds the rest from the template
// matching and the per-edge absorbers, and returns the verified F-factor of
// H[A u R]. Throws on precondition violations.
Tiling absorb(const Hypergraph& h, const Pattern& f, const AbsorbingSet& a, const VertexSet& r);

}  // namespace phg
