#pragma once

#include <cstdint>
#include <vector>

#include "phg/hypergraph.hpp"

namespace phg {

// Counter-based generator: draw t of a named stream is a pure function of
// (seed, stream, t). Samplers that index draws by a stable rank can then
// share randomness across different parameter values.
struct SeededSampler {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::uint64_t bits(std::uint64_t counter) const;
    double uniform(std::uint64_t counter) const;  // in [0, 1)
};

// Stable stream label for (n, trial, round) triples.
std::uint64_t stream_id(std::uint64_t n, std::uint64_t trial, std::uint64_t round = 0);

// Binomial random k-graph: every k-set kept independently with probability
// p. The draw for a k-set is indexed by its colex rank, so two hosts drawn
// with the same sampler at p1 <= p2 are nested as edge sets.
Hypergraph sample_binomial(int k, int n, double p, const SeededSampler& s);

// One enumeration pass yields the whole chain; entry i uses threshold ps[i].
std::vector<Hypergraph> sample_coupled(int k, int n, const std::vector<double>& ps,
                                       const SeededSampler& s);

// q with (1-q)^2 = 1-p: two independent rounds at q union to one round at p.
double two_round_split(double p);

struct PerturbedInstance {
    Hypergraph base;
    Hypergraph random;
    Hypergraph combined;  // edge union of the two
};

// Adds a binomial k-graph on the host's vertex set.
PerturbedInstance perturb(const Hypergraph& base, double p, const SeededSampler& s);

}  // namespace phg
