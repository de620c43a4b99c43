#include "phg/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "phg/comb.hpp"

namespace phg {

SplitHost build_split_host(int n, int k, const Rational& eta) {
    if (k < 2) throw std::domain_error("build_split_host: k must be at least 2");
    if (n < k) throw std::domain_error("build_split_host: n must be at least k");
    if (!(eta > Rational(0)) || eta > Rational(1))
        throw std::domain_error("build_split_host: eta must lie in (0,1]");
    if (!eta.times_is_integer(n))
        throw std::domain_error("build_split_host: eta*n is not an integer");
    int a_size = static_cast<int>(eta.times_int(n));

    std::vector<std::vector<Vertex>> edges;
    for_each_subset(n, k, [&](std::span<const std::int32_t> s) {
        if (s[0] < a_size) edges.emplace_back(s.begin(), s.end());
    });
    std::int64_t delta = static_cast<std::int64_t>(binom(n - 1, k - 1)) -
                         static_cast<std::int64_t>(binom(n - a_size - 1, k - 1));
    return {Hypergraph(k, n, edges), VertexSet::interval(0, a_size), VertexSet::interval(a_size, n),
            eta, delta};
}

std::int64_t matching_cover_bound(const SplitHost& host) {
    return std::min<std::int64_t>(
        static_cast<std::int64_t>(host.graph.k()) * host.side_a.size(), host.graph.n());
}

CounterexampleSetup sublinear_counterexample(int n, int k, double omega) {
    if (!(omega > 1.0)) throw std::domain_error("sublinear_counterexample: omega must exceed 1");
    if (n < k) throw std::domain_error("sublinear_counterexample: n must be at least k");
    int a_size = std::max(1, static_cast<int>(std::floor(n / (3.0 * k * omega))));
    double p = 0.5 * std::log(omega) / static_cast<double>(binom(n - 1, k - 1));
    if (p > 1.0)
        throw std::domain_error("sublinear_counterexample: omega too large for this n");
    return {build_split_host(n, k, Rational(a_size, n)), p, omega};
}

double isolated_vertex_expectation(int n, int k, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("isolated_vertex_expectation: p outside [0,1]");
    if (n < k) throw std::domain_error("isolated_vertex_expectation: n must be at least k");
    double draws = static_cast<double>(binom(n - 1, k - 1));
    return n * std::pow(1.0 - p, draws);
}

PinnedScale pin_copy_scale(const Pattern& f, int n, const Rational& theta) {
    if (!(theta > Rational(0))) throw std::domain_error("pin_copy_scale: theta must be positive");
    auto ds = d_star(f);
    Rational coeff = theta / Rational(2 * f.b());
    int j = static_cast<int>(ds.j);
    ProbForm p = ProbForm::root_power(coeff, j, Rational(ds.s - 1, j));
    bool holds = compare_phi_term_to(n, p, {ds.s, ds.j}, coeff, 1) == Cmp::equal;
    return {p, std::move(ds), coeff, holds};
}

}  // namespace phg
