#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phg/hypergraph.hpp"
#include "phg/pattern.hpp"

namespace phg {

// Injective vertex map; position = pattern vertex, value = host vertex.
struct Embedding {
    std::vector<Vertex> map;
    bool operator==(const Embedding&) const = default;
};

// Vertex-disjoint pattern copies.
struct Tiling {
    std::vector<Embedding> copies;
};

// Calls fn for every labeled embedding of f into h, in lexicographic order
// of the image tuple. fn returning false stops the walk, as does reaching
// limit when limit >= 0. Returns the number of embeddings delivered.
std::int64_t enumerate_embeddings(const Pattern& f, const Hypergraph& h,
                                  const std::function<bool(const Embedding&)>& fn,
                                  std::int64_t limit = -1);

std::vector<Embedding> collect_embeddings(const Pattern& f, const Hypergraph& h,
                                          std::int64_t limit = -1);

// Pinned variant: pin[i] >= 0 forces pattern vertex i onto that host
// vertex, -1 leaves it free.
std::int64_t enumerate_embeddings(const Pattern& f, const Hypergraph& h,
                                  const std::vector<Vertex>& pin,
                                  const std::function<bool(const Embedding&)>& fn,
                                  std::int64_t limit = -1);

// First embedding of f onto exactly the ascending vertex set img, if any.
std::optional<Embedding> find_embedding_onto(const Pattern& f, const Hypergraph& h,
                                             const std::vector<Vertex>& img);

// Labeled embeddings of the star of v (all pattern vertices, only edges
// through v) that send v to w.
std::int64_t count_rooted(const Pattern& f, Vertex v, const Hypergraph& h, Vertex w);

enum class FactorStatus { yes, no, unknown };

struct FactorResult {
    FactorStatus status = FactorStatus::unknown;
    std::optional<Tiling> witness;  // present exactly when status is yes
    std::string reason;             // "divisibility" or "budget" when not decided by search
    std::int64_t nodes = 0;
};

struct FactorOptions {
    std::int64_t node_budget = 20'000'000;
};

// Exact factor decision by cover search over deduplicated copy images.
// Branches on the uncovered vertex in fewest remaining copies (smallest
// index on ties), which forces singleton choices before anything else.
// Budget exhaustion reports unknown, never a false negative.
FactorResult has_factor(const Pattern& f, const Hypergraph& h, const FactorOptions& opt = {});

// Independent yes/no decision by enumerating all partitions of the vertex
// set into b-blocks and testing each block for a pattern copy under some
// ordering. Shares no machinery with has_factor. Guarded to n <= 12.
bool brute_force_oracle(const Pattern& f, const Hypergraph& h);

// Definition check of a delivered tiling: injectivity, pairwise disjoint
// images, every pattern edge landing on a host edge; with require_perfect
// the copies must cover every host vertex.
bool verify_tiling(const Pattern& f, const Hypergraph& h, const Tiling& t, bool require_perfect);

enum class TilingMode { exact, heuristic };

// Largest number of disjoint copies. Exact mode is branch-and-bound with a
// n <= 15 guard; heuristic mode is first-fit greedy plus copy-swap local
// search and never overshoots the exact optimum.
Tiling max_tiling(const Pattern& f, const Hypergraph& h, TilingMode mode);

struct GreedyResult {
    Tiling tiling;
    VertexSet uncovered;
};

// Repeatedly removes the first embedding found inside the uncovered set,
// stopping once fewer than max(leftover, b) vertices remain uncovered or no
// further copy exists.
GreedyResult greedy_tiling(const Pattern& f, const Hypergraph& h, std::int64_t leftover);

// Exact count of labeled copies of j in h.
std::int64_t copy_count_statistic(const Pattern& j, const Hypergraph& h);

// n (n-1) ... (n-s+1) p^j, the first-moment scale matched by the count.
double expected_labeled_copies(int n, double p, int s, std::int64_t j);

}  // namespace phg
