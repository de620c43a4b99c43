#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phg/constructions.hpp"
#include "phg/factor.hpp"
#include "phg/hypergraph.hpp"
#include "phg/pattern.hpp"
#include "phg/random_models.hpp"
#include "phg/rational.hpp"

namespace phg {

enum class HostKind { none, complete, split, file };

// Scan description, mirrored one-to-one by the JSON spec document. Cells are
// (n, c) pairs; c is translated to p = c * n^{-1/d*(F)} per n, or the p-list
// is used verbatim when the c-list is empty. validate() canonicalizes both
// lists to ascending order.
struct ExperimentSpec {
    int k = 3;
    std::string pattern_file;  // empty: single k-edge
    HostKind host = HostKind::none;
    Rational eta{1, 3};      // split host balance |A|/n
    std::string host_file;   // host == file only
    std::vector<int> ns;
    std::vector<double> cs;
    std::vector<double> ps;
    int seeds_per_cell = 1;
    std::int64_t node_budget = 20'000'000;
    std::uint64_t seed = 0;
    std::string output;  // CSV path; the chart lands next to it
    Rational theta{1, 2};
    double omega = 8.0;
    // Wall times are only measured on request so that reruns stay
    // byte-identical by default.
    bool record_wall = false;

    void validate();  // sorts and dedupes the lists, then checks the guards
    static ExperimentSpec from_json(const std::string& text);
    static ExperimentSpec from_json_file(const std::string& path);
    std::string to_json() const;
};

Pattern load_spec_pattern(const ExperimentSpec& spec);
Hypergraph build_host(const ExperimentSpec& spec, int n);

// One Monte Carlo trial. x carries the experiment's count statistic
// (maximizer copies, isolated vertices); threshold scans leave it 0.
struct TrialRecord {
    int n = 0;
    double c = 0.0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::string outcome;  // "factor", "no-factor", "unknown"
    double coverage = 0.0;
    std::int64_t x = 0;
    std::int64_t wall_ms = 0;
};

struct CellSummary {
    int n = 0;
    double c = 0.0;
    double p = 0.0;
    int yes = 0, no = 0, unknown = 0;
    double rate = 0.0;  // yes / (yes + no); unknowns excluded entirely
    double wilson_low = 0.0, wilson_high = 1.0;
};

// 95% Wilson score interval for yes successes out of yes + no decided trials.
void wilson_interval(int yes, int no, double& low, double& high);

struct ScanResult {
    std::vector<TrialRecord> records;  // ordered by (n, c, seed)
    std::vector<CellSummary> cells;    // ordered by (n, c)
};

// Coupled threshold scan: per (n, seed) one nested chain of random parts
// across the ascending p-list, so each seed's outcome sequence flips at most
// once along c. Parallel over (n, seed); PHG_WORKERS caps the pool.
ScanResult scan_threshold(const ExperimentSpec& spec, const Pattern& f);

// Interpolated c where the success rate crosses 1/2 for the given n, from
// the scanned grid; none when the rates never straddle 1/2.
std::optional<double> scan_crossing(const ScanResult& result, int n);

struct CoverageCell {
    int n = 0;
    double p = 0.0;
    bool identity_holds = false;  // n^s p^j = theta n / (2b) exactly
    double mean_coverage = 0.0;
    double frac_covered = 0.0;  // coverage >= theta
    double frac_x_large = 0.0;  // maximizer copies >= 2 mu
    double mu = 0.0;            // expected labeled maximizer copies
};

struct CoverageResult {
    std::vector<TrialRecord> records;
    std::vector<CoverageCell> cells;
};

// Pure random model at the pinned scale p = (theta/2b)^{1/j} n^{-1/d*}:
// greedy-plus-swap tiling coverage against theta, and the maximizer copy
// count against twice its mean.
CoverageResult coverage_experiment(const ExperimentSpec& spec, const Pattern& f);

struct CounterexampleCell {
    int n = 0;
    double p = 0.0;
    std::size_t side_a = 0;
    std::int64_t cover_bound = 0;        // largest vertex count any host matching covers
    double mean_isolated = 0.0;          // empirical, random part only
    double expected_isolated = 0.0;      // n (1-p)^{C(n-1,k-1)}
    double se_isolated = 0.0;            // sample standard error of the mean
    double forced_failure_rate = 0.0;    // isolated > k |A|
};

struct CounterexampleResult {
    std::vector<TrialRecord> records;
    std::vector<CounterexampleCell> cells;
};

// Sparse split host plus a random part so thin that isolated vertices
// outnumber everything the host can cover. Uses ns, seeds_per_cell, omega
// and seed from the spec; k is the uniformity.
CounterexampleResult counterexample_experiment(const ExperimentSpec& spec);

// CSV with the fixed column order n,c,p,seed,outcome,coverage,X,wall_ms and
// an SVG success-rate chart next to it ("<csv stem>.svg"). Byte-stable for
// identical records.
void emit_outputs(const std::vector<TrialRecord>& records, const std::string& csv_path);

std::string render_csv(const std::vector<TrialRecord>& records);
std::string render_chart(const std::vector<TrialRecord>& records);

}  // namespace phg
