#include "phg/random_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phg/comb.hpp"

namespace phg {

namespace {

constexpr std::uint64_t kSampleGuard = 10'000'000;  // largest enumerable k-set family

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0,1]");
}

std::uint64_t checked_family_size(int k, int n) {
    if (k < 1 || k > 64) throw std::domain_error("sample: k outside [1,64]");
    if (n < k) throw std::domain_error("sample: n smaller than k");
    std::uint64_t total = binom_capped(n, k, kSampleGuard);
    if (total > kSampleGuard)
        throw std::domain_error("sample: C(n,k) exceeds the enumeration guard of " +
                                std::to_string(kSampleGuard));
    return total;
}

}  // namespace

std::uint64_t SeededSampler::bits(std::uint64_t counter) const {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

double SeededSampler::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::uint64_t stream_id(std::uint64_t n, std::uint64_t trial, std::uint64_t round) {
    return mix64(mix64(mix64(n) ^ trial) ^ round);
}

Hypergraph sample_binomial(int k, int n, double p, const SeededSampler& s) {
    check_probability(p);
    checked_family_size(k, n);
    std::vector<std::vector<Vertex>> edges;
    std::vector<std::int32_t> tuple(k);
    for (int i = 0; i < k; ++i) tuple[i] = i;
    std::uint64_t rank = 0;
    do {
        if (s.uniform(rank) < p) edges.emplace_back(tuple.begin(), tuple.end());
        ++rank;
    } while (next_colex(tuple, n));
    return Hypergraph(k, n, edges);
}

std::vector<Hypergraph> sample_coupled(int k, int n, const std::vector<double>& ps,
                                       const SeededSampler& s) {
    for (double p : ps) check_probability(p);
    checked_family_size(k, n);
    std::vector<std::vector<std::vector<Vertex>>> edges(ps.size());
    std::vector<std::int32_t> tuple(k);
    for (int i = 0; i < k; ++i) tuple[i] = i;
    std::uint64_t rank = 0;
    do {
        double u = s.uniform(rank);
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (u < ps[i]) edges[i].emplace_back(tuple.begin(), tuple.end());
        ++rank;
    } while (next_colex(tuple, n));
    std::vector<Hypergraph> out;
    out.reserve(ps.size());
    for (auto& e : edges) out.emplace_back(k, n, e);
    return out;
}

double two_round_split(double p) {
    check_probability(p);
    return 1.0 - std::sqrt(1.0 - p);
}

PerturbedInstance perturb(const Hypergraph& base, double p, const SeededSampler& s) {
    Hypergraph random = sample_binomial(base.k(), base.n(), p, s);
    Hypergraph combined = union_of(base, random);
    return {base, random, combined};
}

}  // namespace phg
