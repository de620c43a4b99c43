#include "phg/factor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace phg {

namespace {

constexpr std::int64_t kCopyGuard = 10'000'000;  // labeled embeddings per collection

// Pattern edges grouped by their largest vertex, so assigning vertex i
// closes exactly the edges completed at that point.
struct EmbedPlan {
    int b;
    std::vector<std::vector<std::vector<Vertex>>> closing;

    explicit EmbedPlan(const Hypergraph& pat) : b(pat.n()), closing(pat.n()) {
        for (std::int64_t i = 0; i < pat.edge_count(); ++i) {
            auto e = pat.edge(i);
            closing[e.back()].emplace_back(e.begin(), e.end());
        }
    }
};

// Ascending-candidate DFS over injective maps; pin[i] >= 0 forces an image.
// yield returns false to stop the whole walk; the return value mirrors it.
template <typename Yield>
bool embed_dfs(const EmbedPlan& plan, const Hypergraph& h, const std::vector<Vertex>& pin,
               std::vector<Vertex>& map, std::vector<char>& used, int i, Yield&& yield) {
    if (i == plan.b) return yield(map);
    Vertex lo = 0, hi = static_cast<Vertex>(h.n());
    if (pin[i] >= 0) {
        lo = pin[i];
        hi = pin[i] + 1;
    }
    std::vector<Vertex> image;
    for (Vertex w = lo; w < hi; ++w) {
        if (used[w]) continue;
        map[i] = w;
        bool ok = true;
        for (const auto& e : plan.closing[i]) {
            image.clear();
            for (Vertex u : e) image.push_back(map[u]);
            std::sort(image.begin(), image.end());
            if (!h.contains_edge(image)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        used[w] = 1;
        bool cont = embed_dfs(plan, h, pin, map, used, i + 1, yield);
        used[w] = 0;
        if (!cont) return false;
    }
    return true;
}

template <typename Yield>
void walk_embeddings(const Hypergraph& pat, const Hypergraph& h, const std::vector<Vertex>& pin,
                     Yield&& yield) {
    if (pat.n() > h.n()) return;
    EmbedPlan plan(pat);
    std::vector<Vertex> map(pat.n(), -1);
    std::vector<char> used(h.n(), 0);
    embed_dfs(plan, h, pin, map, used, 0, yield);
}

// Sorted b-sets spanning at least one copy, with per-vertex membership.
struct CopyTable {
    std::vector<std::vector<Vertex>> images;
    std::vector<std::vector<std::int32_t>> at;
};

CopyTable collect_copies(const Pattern& f, const Hypergraph& h) {
    std::vector<std::vector<Vertex>> images;
    std::int64_t seen = 0;
    walk_embeddings(f.g, h, std::vector<Vertex>(f.b(), -1), [&](const std::vector<Vertex>& map) {
        if (++seen > kCopyGuard) throw std::domain_error("factor: copy enumeration exceeds guard");
        std::vector<Vertex> img(map);
        std::sort(img.begin(), img.end());
        images.push_back(std::move(img));
        return true;
    });
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    CopyTable t;
    t.images = std::move(images);
    t.at.resize(h.n());
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(t.images.size()); ++c)
        for (Vertex v : t.images[c]) t.at[v].push_back(c);
    return t;
}

// One embedding of f onto exactly the vertex set img (ascending).
Embedding embedding_onto(const Pattern& f, const Hypergraph& h, const std::vector<Vertex>& img) {
    auto sub = h.induced(img);
    Embedding out;
    walk_embeddings(f.g, sub, std::vector<Vertex>(f.b(), -1), [&](const std::vector<Vertex>& map) {
        out.map.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) out.map[i] = img[map[i]];
        return false;
    });
    if (out.map.empty()) throw std::logic_error("factor: copy image lost its embedding");
    return out;
}

enum class SearchOutcome { found, exhausted, aborted };

struct CoverSearch {
    const CopyTable& t;
    int n;
    std::int64_t budget;
    std::int64_t nodes = 0;
    std::vector<char> covered;
    std::vector<char> alive;
    std::vector<int> count;  // alive copies through each vertex
    std::vector<std::int32_t> chosen;

    CoverSearch(const CopyTable& table, int n_, std::int64_t budget_)
        : t(table), n(n_), budget(budget_), covered(n_, 0),
          alive(t.images.size(), 1), count(n_, 0) {
        for (const auto& img : t.images)
            for (Vertex v : img) ++count[v];
    }

    SearchOutcome run() {
        if (++nodes > budget) return SearchOutcome::aborted;
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (covered[v]) continue;
            if (pick < 0 || count[v] < count[pick]) pick = v;
        }
        if (pick < 0) return SearchOutcome::found;
        if (count[pick] == 0) return SearchOutcome::exhausted;
        for (std::int32_t c : t.at[pick]) {
            if (!alive[c]) continue;
            std::vector<std::int32_t> undo;
            for (Vertex u : t.images[c]) covered[u] = 1;
            for (Vertex u : t.images[c]) {
                for (std::int32_t d : t.at[u]) {
                    if (!alive[d]) continue;
                    alive[d] = 0;
                    undo.push_back(d);
                    for (Vertex x : t.images[d]) --count[x];
                }
            }
            chosen.push_back(c);
            SearchOutcome r = run();
            if (r != SearchOutcome::exhausted) return r;
            chosen.pop_back();
            for (std::int32_t d : undo) {
                alive[d] = 1;
                for (Vertex x : t.images[d]) ++count[x];
            }
            for (Vertex u : t.images[c]) covered[u] = 0;
        }
        return SearchOutcome::exhausted;
    }
};

}  // namespace

std::int64_t enumerate_embeddings(const Pattern& f, const Hypergraph& h,
                                  const std::function<bool(const Embedding&)>& fn,
                                  std::int64_t limit) {
    std::int64_t delivered = 0;
    walk_embeddings(f.g, h, std::vector<Vertex>(f.b(), -1), [&](const std::vector<Vertex>& map) {
        if (limit >= 0 && delivered >= limit) return false;
        ++delivered;
        return fn(Embedding{map});
    });
    if (limit >= 0) delivered = std::min(delivered, limit);
    return delivered;
}

std::vector<Embedding> collect_embeddings(const Pattern& f, const Hypergraph& h,
                                          std::int64_t limit) {
    std::vector<Embedding> out;
    enumerate_embeddings(
        f, h,
        [&](const Embedding& e) {
            out.push_back(e);
            return true;
        },
        limit);
    return out;
}

std::int64_t enumerate_embeddings(const Pattern& f, const Hypergraph& h,
                                  const std::vector<Vertex>& pin,
                                  const std::function<bool(const Embedding&)>& fn,
                                  std::int64_t limit) {
    if (static_cast<int>(pin.size()) != f.b())
        throw std::invalid_argument("enumerate_embeddings: pin length must match the pattern");
    std::int64_t delivered = 0;
    walk_embeddings(f.g, h, pin, [&](const std::vector<Vertex>& map) {
        if (limit >= 0 && delivered >= limit) return false;
        ++delivered;
        return fn(Embedding{map});
    });
    if (limit >= 0) delivered = std::min(delivered, limit);
    return delivered;
}

std::optional<Embedding> find_embedding_onto(const Pattern& f, const Hypergraph& h,
                                             const std::vector<Vertex>& img) {
    if (static_cast<int>(img.size()) != f.b()) return std::nullopt;
    auto sub = h.induced(img);
    std::optional<Embedding> out;
    walk_embeddings(f.g, sub, std::vector<Vertex>(f.b(), -1), [&](const std::vector<Vertex>& map) {
        Embedding e;
        e.map.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) e.map[i] = img[map[i]];
        out = std::move(e);
        return false;
    });
    return out;
}

std::int64_t count_rooted(const Pattern& f, Vertex v, const Hypergraph& h, Vertex w) {
    if (v < 0 || v >= f.b()) throw std::domain_error("count_rooted: root outside the pattern");
    if (w < 0 || w >= h.n()) throw std::domain_error("count_rooted: image outside the host");
    auto star = f.g.star_subgraph(v);
    std::vector<Vertex> pin(f.b(), -1);
    pin[v] = w;
    std::int64_t count = 0;
    walk_embeddings(star, h, pin, [&](const std::vector<Vertex>&) {
        ++count;
        return true;
    });
    return count;
}

FactorResult has_factor(const Pattern& f, const Hypergraph& h, const FactorOptions& opt) {
    FactorResult res;
    if (h.n() % f.b() != 0) {
        res.status = FactorStatus::no;
        res.reason = "divisibility";
        return res;
    }
    CopyTable t = collect_copies(f, h);
    CoverSearch search(t, h.n(), opt.node_budget);
    SearchOutcome out = search.run();
    res.nodes = search.nodes;
    switch (out) {
        case SearchOutcome::found: {
            res.status = FactorStatus::yes;
            Tiling w;
            for (std::int32_t c : search.chosen) w.copies.push_back(embedding_onto(f, h, t.images[c]));
            res.witness = std::move(w);
            break;
        }
        case SearchOutcome::exhausted:
            res.status = FactorStatus::no;
            break;
        case SearchOutcome::aborted:
            res.status = FactorStatus::unknown;
            res.reason = "budget";
            break;
    }
    return res;
}

bool brute_force_oracle(const Pattern& f, const Hypergraph& h) {
    if (h.n() > 12) throw std::domain_error("brute_force_oracle: host over the n <= 12 guard");
    int b = f.b();
    int n = h.n();
    if (n % b != 0) return false;
    std::set<std::vector<Vertex>> host_edges;
    for (std::int64_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        host_edges.emplace(e.begin(), e.end());
    }
    std::vector<std::vector<Vertex>> pat_edges;
    for (std::int64_t i = 0; i < f.g.edge_count(); ++i) {
        auto e = f.g.edge(i);
        pat_edges.emplace_back(e.begin(), e.end());
    }
    auto block_spans_copy = [&](std::vector<Vertex> block) {
        std::sort(block.begin(), block.end());
        do {
            bool ok = true;
            for (const auto& e : pat_edges) {
                std::vector<Vertex> image;
                for (Vertex u : e) image.push_back(block[u]);
                std::sort(image.begin(), image.end());
                if (!host_edges.count(image)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        } while (std::next_permutation(block.begin(), block.end()));
        return false;
    };
    std::vector<char> taken(n, 0);
    auto partition = [&](auto&& self) -> bool {
        int first = -1;
        for (int v = 0; v < n; ++v)
            if (!taken[v]) {
                first = v;
                break;
            }
        if (first < 0) return true;
        taken[first] = 1;
        std::vector<Vertex> block{static_cast<Vertex>(first)};
        auto pick = [&](auto&& me, int from, int need) -> bool {
            if (need == 0) {
                if (block_spans_copy(block) && self(self)) return true;
                return false;
            }
            for (int v = from; v < n; ++v) {
                if (taken[v]) continue;
                taken[v] = 1;
                block.push_back(v);
                if (me(me, v + 1, need - 1)) return true;
                block.pop_back();
                taken[v] = 0;
            }
            return false;
        };
        bool ok = pick(pick, first + 1, b - 1);
        if (!ok) taken[first] = 0;
        return ok;
    };
    return partition(partition);
}

bool verify_tiling(const Pattern& f, const Hypergraph& h, const Tiling& t, bool require_perfect) {
    std::vector<char> seen(h.n(), 0);
    std::int64_t covered = 0;
    for (const auto& emb : t.copies) {
        if (static_cast<int>(emb.map.size()) != f.b()) return false;
        for (Vertex w : emb.map) {
            if (w < 0 || w >= h.n() || seen[w]) return false;
            seen[w] = 1;
            ++covered;
        }
        for (std::int64_t i = 0; i < f.g.edge_count(); ++i) {
            std::vector<Vertex> image;
            for (Vertex u : f.g.edge(i)) image.push_back(emb.map[u]);
            std::sort(image.begin(), image.end());
            if (!h.contains_edge(image)) return false;
        }
    }
    return !require_perfect || covered == h.n();
}

Tiling max_tiling(const Pattern& f, const Hypergraph& h, TilingMode mode) {
    CopyTable t = collect_copies(f, h);
    int n = h.n();
    int b = f.b();
    Tiling best;
    if (mode == TilingMode::exact) {
        if (n > 15) throw std::domain_error("max_tiling: exact mode is guarded to n <= 15");
        std::vector<char> blocked(n, 0);  // covered or deliberately skipped
        std::vector<char> alive(t.images.size(), 1);
        std::vector<std::int32_t> chosen;
        std::vector<std::int32_t> best_chosen;
        int free_count = n;
        auto rec = [&](auto&& self) -> void {
            if (chosen.size() +
                    static_cast<std::size_t>(free_count) / static_cast<std::size_t>(b) <=
                best_chosen.size())
                return;
            int v = -1;
            for (int u = 0; u < n; ++u)
                if (!blocked[u]) {
                    v = u;
                    break;
                }
            if (v < 0) {
                if (chosen.size() > best_chosen.size()) best_chosen = chosen;
                return;
            }
            for (std::int32_t c : t.at[v]) {
                if (!alive[c]) continue;
                std::vector<std::int32_t> undo;
                for (Vertex u : t.images[c]) blocked[u] = 1;
                free_count -= b;
                for (Vertex u : t.images[c])
                    for (std::int32_t d : t.at[u])
                        if (alive[d]) {
                            alive[d] = 0;
                            undo.push_back(d);
                        }
                chosen.push_back(c);
                self(self);
                chosen.pop_back();
                for (std::int32_t d : undo) alive[d] = 1;
                for (Vertex u : t.images[c]) blocked[u] = 0;
                free_count += b;
            }
            // leave v uncovered for good, so its copies must die too
            std::vector<std::int32_t> undo;
            for (std::int32_t d : t.at[v])
                if (alive[d]) {
                    alive[d] = 0;
                    undo.push_back(d);
                }
            blocked[v] = 1;
            --free_count;
            self(self);
            ++free_count;
            blocked[v] = 0;
            for (std::int32_t d : undo) alive[d] = 1;
        };
        rec(rec);
        for (std::int32_t c : best_chosen) best.copies.push_back(embedding_onto(f, h, t.images[c]));
        return best;
    }

    // first-fit greedy over the copy list
    std::vector<char> covered(n, 0);
    std::vector<std::int32_t> sol;
    auto fits = [&](std::int32_t c) {
        for (Vertex u : t.images[c])
            if (covered[u]) return false;
        return true;
    };
    auto take = [&](std::int32_t c) {
        for (Vertex u : t.images[c]) covered[u] = 1;
        sol.push_back(c);
    };
    auto drop = [&](std::size_t pos) {
        for (Vertex u : t.images[sol[pos]]) covered[u] = 0;
        sol.erase(sol.begin() + static_cast<std::ptrdiff_t>(pos));
    };
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(t.images.size()); ++c)
        if (fits(c)) take(c);
    // swap search: removing one copy must admit at least two replacements
    bool improved = true;
    int rounds = 0;
    while (improved && ++rounds <= 100) {
        improved = false;
        for (std::size_t i = 0; i < sol.size(); ++i) {
            std::int32_t removed = sol[i];
            drop(i);
            std::vector<std::int32_t> added;
            for (std::int32_t c = 0; c < static_cast<std::int32_t>(t.images.size()); ++c)
                if (fits(c)) {
                    take(c);
                    added.push_back(c);
                }
            if (added.size() >= 2) {
                improved = true;
                break;
            }
            for (std::size_t j = 0; j < added.size(); ++j) drop(sol.size() - 1);
            take(removed);
            std::rotate(sol.begin() + static_cast<std::ptrdiff_t>(i), sol.end() - 1, sol.end());
        }
    }
    for (std::int32_t c : sol) best.copies.push_back(embedding_onto(f, h, t.images[c]));
    return best;
}

GreedyResult greedy_tiling(const Pattern& f, const Hypergraph& h, std::int64_t leftover) {
    if (leftover < 0) throw std::domain_error("greedy_tiling: negative leftover");
    std::vector<Vertex> uncovered(h.n());
    for (int v = 0; v < h.n(); ++v) uncovered[v] = v;
    std::int64_t stop = std::max<std::int64_t>(leftover, f.b());
    GreedyResult out;
    while (static_cast<std::int64_t>(uncovered.size()) >= stop) {
        auto sub = h.induced(uncovered);
        Embedding found;
        walk_embeddings(f.g, sub, std::vector<Vertex>(f.b(), -1),
                        [&](const std::vector<Vertex>& map) {
                            found.map = map;
                            return false;
                        });
        if (found.map.empty()) break;
        for (Vertex& w : found.map) w = uncovered[w];
        std::vector<Vertex> img(found.map);
        std::sort(img.begin(), img.end());
        std::vector<Vertex> rest;
        std::set_difference(uncovered.begin(), uncovered.end(), img.begin(), img.end(),
                            std::back_inserter(rest));
        uncovered = std::move(rest);
        out.tiling.copies.push_back(std::move(found));
    }
    out.uncovered = VertexSet(uncovered);
    return out;
}

std::int64_t copy_count_statistic(const Pattern& j, const Hypergraph& h) {
    std::int64_t count = 0;
    walk_embeddings(j.g, h, std::vector<Vertex>(j.b(), -1), [&](const std::vector<Vertex>&) {
        ++count;
        return true;
    });
    return count;
}

double expected_labeled_copies(int n, double p, int s, std::int64_t j) {
    double mu = 1.0;
    for (int i = 0; i < s; ++i) mu *= static_cast<double>(n - i);
    for (std::int64_t i = 0; i < j; ++i) mu *= p;
    return mu;
}

}  // namespace phg
