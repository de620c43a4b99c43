#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "phg/experiments.hpp"
#include "phg/pattern.hpp"

using namespace phg;

TEST_CASE("spec validation guards") {
    ExperimentSpec s;
    s.ns = {8};
    CHECK_NOTHROW(s.validate());

    auto bad = s;
    bad.k = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.ns.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.ns = {100};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.seeds_per_cell = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.ps = {1.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.host = HostKind::split;
    bad.eta = Rational(1, 3);
    bad.ns = {8};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.ns = {9};
    CHECK_NOTHROW(bad.validate());

    auto sorted = s;
    sorted.cs = {5.0, 1.0, 5.0};
    sorted.validate();
    CHECK(sorted.cs == std::vector<double>{1.0, 5.0});
}

TEST_CASE("spec JSON round trip") {
    ExperimentSpec s;
    s.k = 3;
    s.host = HostKind::split;
    s.eta = Rational(1, 3);
    s.ns = {9, 12};
    s.cs = {0.1, 10.0};
    s.seeds_per_cell = 7;
    s.seed = 42;
    s.theta = Rational(2, 5);
    s.output = "out.csv";
    auto back = ExperimentSpec::from_json(s.to_json());
    CHECK(back.k == s.k);
    CHECK(back.host == HostKind::split);
    CHECK(back.eta == s.eta);
    CHECK(back.ns == s.ns);
    CHECK(back.cs == s.cs);
    CHECK(back.seeds_per_cell == 7);
    CHECK(back.seed == 42);
    CHECK(back.theta == Rational(2, 5));
    CHECK(back.output == "out.csv");

    CHECK_THROWS(ExperimentSpec::from_json("{\"host\": \"weird\", \"ns\": [8]}"));
    CHECK_THROWS(ExperimentSpec::from_json("not json"));
    auto frac = ExperimentSpec::from_json("{\"ns\": [9], \"eta\": \"1/3\", \"host\": \"split\"}");
    CHECK(frac.eta == Rational(1, 3));
}

TEST_CASE("wilson interval endpoints") {
    double lo = -1, hi = -1;
    wilson_interval(0, 0, lo, hi);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
    wilson_interval(10, 0, lo, hi);
    CHECK(lo == doctest::Approx(0.72246).epsilon(1e-3));
    CHECK(hi == 1.0);
    wilson_interval(5, 5, lo, hi);
    CHECK(lo == doctest::Approx(0.236626).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.763374).epsilon(1e-3));
    wilson_interval(0, 10, lo, hi);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.27754).epsilon(1e-3));
}

TEST_CASE("scan endpoints are decided trivially") {
    ExperimentSpec spec;
    spec.k = 2;
    spec.ns = {6, 8};
    spec.cs = {0.0, 100.0};
    spec.seeds_per_cell = 10;
    spec.seed = 3;
    auto f = Pattern::single_edge(2);
    auto res = scan_threshold(spec, f);
    REQUIRE(res.cells.size() == 4);
    for (const auto& cell : res.cells) {
        CHECK(cell.unknown == 0);
        if (cell.c == 0.0) {
            CHECK(cell.rate == 0.0);
            CHECK(cell.p == 0.0);
        } else {
            CHECK(cell.rate == 1.0);
            CHECK(cell.p == 1.0);
        }
    }
    REQUIRE(res.records.size() == 4 * 10);
    // ordering: n-major, then c, then seed
    CHECK(res.records[0].n == 6);
    CHECK(res.records[0].c == 0.0);
    CHECK(res.records[0].seed == 0);
    CHECK(res.records[10].c == 100.0);
    CHECK(res.records[20].n == 8);
}

TEST_CASE("coupled scans are monotone per seed") {
    ExperimentSpec spec;
    spec.k = 2;
    spec.ns = {8};
    spec.cs = {0.2, 0.5, 1.0, 2.0, 4.0};
    spec.seeds_per_cell = 40;
    spec.seed = 17;
    auto f = Pattern::single_edge(2);
    auto res = scan_threshold(spec, f);
    std::map<std::uint64_t, std::vector<int>> by_seed;
    for (const auto& r : res.records) {
        REQUIRE(r.outcome != "unknown");
        by_seed[r.seed].push_back(r.outcome == "factor" ? 1 : 0);
    }
    for (const auto& [seed, seq] : by_seed) {
        REQUIRE(seq.size() == 5);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i] <= seq[i + 1]);
    }
}

TEST_CASE("scan crossing interpolates the half-success point") {
    ScanResult res;
    CellSummary a;
    a.n = 8;
    a.c = 1.0;
    a.rate = 0.1;
    CellSummary b = a;
    b.c = 3.0;
    b.rate = 0.9;
    res.cells = {a, b};
    auto cross = scan_crossing(res, 8);
    REQUIRE(cross.has_value());
    CHECK(*cross == doctest::Approx(2.0));

    res.cells[0].rate = 0.7;
    CHECK(*scan_crossing(res, 8) == 1.0);
    res.cells[0].rate = 0.1;
    res.cells[1].rate = 0.2;
    CHECK_FALSE(scan_crossing(res, 8).has_value());
    CHECK_FALSE(scan_crossing(res, 9).has_value());
}

TEST_CASE("balanced split host at one third is never the bottleneck") {
    // |A| = n/3 leaves enough host edges for a perfect matching on its own,
    // so both scan endpoints sit at rate 1
    ExperimentSpec spec;
    spec.k = 3;
    spec.host = HostKind::split;
    spec.eta = Rational(1, 3);
    spec.ns = {9};
    spec.cs = {0.1, 10.0};
    spec.seeds_per_cell = 15;
    spec.seed = 5;
    auto f = Pattern::single_edge(3);
    auto res = scan_threshold(spec, f);
    for (const auto& cell : res.cells) CHECK(cell.rate == 1.0);
}

TEST_CASE("thin split host needs the random part") {
    ExperimentSpec spec;
    spec.k = 3;
    spec.host = HostKind::split;
    spec.eta = Rational(1, 5);
    spec.ns = {15};
    spec.cs = {0.0, 10000.0};
    spec.seeds_per_cell = 15;
    spec.seed = 5;
    auto f = Pattern::single_edge(3);
    auto res = scan_threshold(spec, f);
    REQUIRE(res.cells.size() == 2);
    CHECK(res.cells[0].rate == 0.0);
    CHECK(res.cells[1].rate == 1.0);
}

TEST_CASE("pinned-scale coverage experiment") {
    ExperimentSpec spec;
    spec.k = 2;
    spec.ns = {12};
    spec.seeds_per_cell = 20;
    spec.seed = 9;
    spec.theta = Rational(1, 2);
    auto f = Pattern::single_edge(2);
    auto res = coverage_experiment(spec, f);
    REQUIRE(res.cells.size() == 1);
    const auto& cell = res.cells[0];
    CHECK(cell.identity_holds);
    CHECK(cell.p == doctest::Approx(1.0 / 96.0));
    CHECK(cell.mu == doctest::Approx(12.0 * 11.0 / 96.0));
    CHECK(cell.mean_coverage >= 0.0);
    CHECK(cell.mean_coverage <= 1.0);
    CHECK(cell.frac_covered >= 0.0);
    CHECK(cell.frac_covered <= 1.0);
    for (const auto& r : res.records) {
        CHECK(r.x % 2 == 0);  // labeled edge count is twice the edge count
        CHECK(r.coverage >= 0.0);
        CHECK(r.coverage <= 1.0);
    }
}

TEST_CASE("counterexample statistics line up with the formula") {
    ExperimentSpec spec;
    spec.k = 3;
    spec.omega = 8.0;
    spec.ns = {12, 18};
    spec.seeds_per_cell = 300;
    spec.seed = 77;
    auto res = counterexample_experiment(spec);
    REQUIRE(res.cells.size() == 2);
    for (const auto& cell : res.cells) {
        CHECK(cell.side_a == 1);
        CHECK(cell.cover_bound == 3);
        CHECK(cell.expected_isolated > 0.0);
        CHECK(cell.se_isolated > 0.0);
        double z = (cell.mean_isolated - cell.expected_isolated) / cell.se_isolated;
        CHECK(std::abs(z) <= 4.0);
        CHECK(cell.forced_failure_rate >= 0.0);
        CHECK(cell.forced_failure_rate <= 1.0);
    }
    // omega = 8 leaves most vertices isolated, far beyond k|A| = 3
    CHECK(res.cells[0].forced_failure_rate > 0.5);
}

TEST_CASE("csv rendering is frozen") {
    CHECK(render_csv({}) == "n,c,p,seed,outcome,coverage,X,wall_ms\n");
    TrialRecord r;
    r.n = 9;
    r.c = 0.5;
    r.p = 0.25;
    r.seed = 3;
    r.outcome = "factor";
    r.coverage = 1.0;
    r.x = 7;
    auto csv = render_csv({r});
    CHECK(csv ==
          "n,c,p,seed,outcome,coverage,X,wall_ms\n"
          "9,0.5,0.25,3,factor,1,7,0\n");
}

TEST_CASE("emitted artifacts are byte-stable and parallelism-independent") {
    ExperimentSpec spec;
    spec.k = 2;
    spec.ns = {8, 10};
    spec.cs = {0.5, 1.0, 2.0};
    spec.seeds_per_cell = 12;
    spec.seed = 23;
    auto f = Pattern::single_edge(2);

    setenv("PHG_WORKERS", "1", 1);
    auto serial = scan_threshold(spec, f);
    setenv("PHG_WORKERS", "4", 1);
    auto parallel = scan_threshold(spec, f);
    unsetenv("PHG_WORKERS");
    CHECK(render_csv(serial.records) == render_csv(parallel.records));
    CHECK(render_chart(serial.records) == render_chart(parallel.records));

    auto path = std::string("/tmp/phg_test_scan.csv");
    emit_outputs(serial.records, path);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_csv(serial.records));
    std::ifstream svg("/tmp/phg_test_scan.svg", std::ios::binary);
    CHECK(svg.good());

    CHECK_THROWS_AS(emit_outputs(serial.records, "/no-such-dir/x.csv"), std::runtime_error);
}

TEST_CASE("experiment reruns are bitwise identical") {
    ExperimentSpec spec;
    spec.k = 3;
    spec.omega = 8.0;
    spec.ns = {12};
    spec.seeds_per_cell = 50;
    spec.seed = 4;
    auto once = counterexample_experiment(spec);
    auto twice = counterexample_experiment(spec);
    CHECK(render_csv(once.records) == render_csv(twice.records));

    ExperimentSpec pspec;
    pspec.k = 2;
    pspec.ns = {10};
    pspec.seeds_per_cell = 25;
    pspec.seed = 8;
    auto f = Pattern::single_edge(2);
    CHECK(render_csv(coverage_experiment(pspec, f).records) ==
          render_csv(coverage_experiment(pspec, f).records));
}
