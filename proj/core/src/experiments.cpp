#include "phg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "phg/exact.hpp"
#include "phg/khg_io.hpp"

namespace phg {

namespace {

int worker_count() {
    if (const char* env = std::getenv("PHG_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 1) hw = 1;
    return static_cast<int>(std::min(hw, 8u));
}

// Work-stealing over a shared counter; results must land in per-task slots.
void parallel_tasks(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// c * n^{-1/d*} with the exact rational exponent, rounded to double once.
double threshold_p(double c, int n, const DStarResult& d) {
    long double expo = -static_cast<long double>(d.s - 1) / static_cast<long double>(d.j);
    long double p = static_cast<long double>(c) * powl(static_cast<long double>(n), expo);
    return clamp01(static_cast<double>(p));
}

double tiling_coverage(const Pattern& f, const Hypergraph& h, const Tiling& t) {
    return static_cast<double>(t.copies.size()) * f.b() / h.n();
}

std::string kind_name(HostKind k) {
    switch (k) {
        case HostKind::none: return "none";
        case HostKind::complete: return "complete";
        case HostKind::split: return "split";
        case HostKind::file: return "file";
    }
    return "none";
}

HostKind kind_from_name(const std::string& s) {
    if (s == "none") return HostKind::none;
    if (s == "complete") return HostKind::complete;
    if (s == "split") return HostKind::split;
    if (s == "file") return HostKind::file;
    throw std::invalid_argument("ExperimentSpec: unknown host kind '" + s + "'");
}

}  // namespace

void ExperimentSpec::validate() {
    sort_unique(cs);
    sort_unique(ps);
    if (k < 2 || k > 6) throw std::invalid_argument("ExperimentSpec: k must lie in [2, 6]");
    if (ns.empty()) throw std::invalid_argument("ExperimentSpec: n-list is empty");
    if (ns.size() > 32) throw std::invalid_argument("ExperimentSpec: n-list beyond the desk guard");
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (int n : ns)
        if (n < k || n > 64)
            throw std::invalid_argument("ExperimentSpec: n out of the desk range [k, 64]");
    if (cs.size() > 64 || ps.size() > 64)
        throw std::invalid_argument("ExperimentSpec: probability grid beyond the desk guard");
    for (double c : cs)
        if (!(c >= 0))
            throw std::invalid_argument("ExperimentSpec: c values must be nonnegative");
    for (double p : ps)
        if (!(p >= 0) || p > 1)
            throw std::invalid_argument("ExperimentSpec: p values must lie in [0, 1]");
    if (seeds_per_cell < 1)
        throw std::invalid_argument("ExperimentSpec: seeds-per-cell must be at least 1");
    if (seeds_per_cell > 100000)
        throw std::invalid_argument("ExperimentSpec: seeds-per-cell beyond the desk guard");
    if (node_budget < 1) throw std::invalid_argument("ExperimentSpec: node budget must be positive");
    if (host == HostKind::split) {
        if (!(eta > Rational(0)) || eta > Rational(1))
            throw std::invalid_argument("ExperimentSpec: eta must lie in (0, 1]");
        for (int n : ns)
            if (!eta.times_is_integer(n))
                throw std::invalid_argument("ExperimentSpec: eta n must be integral for n=" +
                                            std::to_string(n));
    }
    if (host == HostKind::file && host_file.empty())
        throw std::invalid_argument("ExperimentSpec: file host needs host_file");
    if (!(theta > Rational(0)) || theta > Rational(1))
        throw std::invalid_argument("ExperimentSpec: theta must lie in (0, 1]");
    if (!(omega > 1.0))
        throw std::invalid_argument("ExperimentSpec: omega must exceed 1");
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentSpec s;
    auto rat = [&](const nlohmann::json& v) {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
        throw std::invalid_argument("ExperimentSpec: rationals must be strings or integers");
    };
    if (j.contains("k")) s.k = j["k"].get<int>();
    if (j.contains("pattern")) s.pattern_file = j["pattern"].get<std::string>();
    if (j.contains("host")) s.host = kind_from_name(j["host"].get<std::string>());
    if (j.contains("eta")) s.eta = rat(j["eta"]);
    if (j.contains("host_file")) s.host_file = j["host_file"].get<std::string>();
    if (j.contains("ns")) s.ns = j["ns"].get<std::vector<int>>();
    if (j.contains("cs")) s.cs = j["cs"].get<std::vector<double>>();
    if (j.contains("ps")) s.ps = j["ps"].get<std::vector<double>>();
    if (j.contains("seeds_per_cell")) s.seeds_per_cell = j["seeds_per_cell"].get<int>();
    if (j.contains("node_budget")) s.node_budget = j["node_budget"].get<std::int64_t>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) s.output = j["output"].get<std::string>();
    if (j.contains("theta")) s.theta = rat(j["theta"]);
    if (j.contains("omega")) s.omega = j["omega"].get<double>();
    if (j.contains("record_wall")) s.record_wall = j["record_wall"].get<bool>();
    s.validate();
    return s;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string ExperimentSpec::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    if (!pattern_file.empty()) j["pattern"] = pattern_file;
    j["host"] = kind_name(host);
    if (host == HostKind::split) j["eta"] = eta.to_string();
    if (host == HostKind::file) j["host_file"] = host_file;
    j["ns"] = ns;
    if (!cs.empty()) j["cs"] = cs;
    if (!ps.empty()) j["ps"] = ps;
    j["seeds_per_cell"] = seeds_per_cell;
    j["node_budget"] = node_budget;
    j["seed"] = seed;
    if (!output.empty()) j["output"] = output;
    j["theta"] = theta.to_string();
    j["omega"] = omega;
    j["record_wall"] = record_wall;
    return j.dump(2);
}

Pattern load_spec_pattern(const ExperimentSpec& spec) {
    if (spec.pattern_file.empty()) return Pattern::single_edge(spec.k);
    Pattern f{read_khg_file(spec.pattern_file)};
    if (f.k() != spec.k)
        throw std::invalid_argument("pattern file uniformity disagrees with the spec's k");
    return f;
}

Hypergraph build_host(const ExperimentSpec& spec, int n) {
    switch (spec.host) {
        case HostKind::none: return Hypergraph::empty(spec.k, n);
        case HostKind::complete: return Hypergraph::complete(spec.k, n);
        case HostKind::split: return build_split_host(n, spec.k, spec.eta).graph;
        case HostKind::file: {
            Hypergraph h = read_khg_file(spec.host_file);
            if (h.n() != n || h.k() != spec.k)
                throw std::invalid_argument("host file shape disagrees with the requested cell");
            return h;
        }
    }
    throw std::invalid_argument("build_host: unknown host kind");
}

void wilson_interval(int yes, int no, double& low, double& high) {
    int n = yes + no;
    if (n == 0) {
        low = 0.0;
        high = 1.0;
        return;
    }
    constexpr double z = 1.96;
    double phat = static_cast<double>(yes) / n;
    double z2n = z * z / n;
    double denom = 1.0 + z2n;
    double center = phat + z2n / 2.0;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n));
    low = std::max(0.0, (center - half) / denom);
    high = std::min(1.0, (center + half) / denom);
}

ScanResult scan_threshold(const ExperimentSpec& spec_in, const Pattern& f) {
    ExperimentSpec spec = spec_in;
    spec.validate();
    if (f.k() != spec.k) throw std::invalid_argument("scan_threshold: pattern uniformity mismatch");
    bool c_mode = !spec.cs.empty();
    if (!c_mode && spec.ps.empty())
        throw std::invalid_argument("scan_threshold: need a c-list or a p-list");

    auto dstar = d_star(f);
    std::size_t n_count = spec.ns.size();
    std::size_t grid = c_mode ? spec.cs.size() : spec.ps.size();
    std::size_t seeds = static_cast<std::size_t>(spec.seeds_per_cell);

    std::vector<Hypergraph> hosts;
    std::vector<std::vector<double>> p_grid(n_count);
    hosts.reserve(n_count);
    for (std::size_t ni = 0; ni < n_count; ++ni) {
        int n = spec.ns[ni];
        hosts.push_back(build_host(spec, n));
        auto& ps = p_grid[ni];
        if (c_mode)
            for (double c : spec.cs) ps.push_back(threshold_p(c, n, dstar));
        else
            ps = spec.ps;
    }

    std::vector<std::vector<TrialRecord>> slots(n_count * seeds);
    parallel_tasks(n_count * seeds, [&](std::size_t task) {
        std::size_t ni = task / seeds;
        std::size_t trial = task % seeds;
        int n = spec.ns[ni];
        SeededSampler sampler{spec.seed, stream_id(static_cast<std::uint64_t>(n), trial, 0)};
        auto chain = sample_coupled(spec.k, n, p_grid[ni], sampler);
        auto& out = slots[task];
        out.resize(grid);
        for (std::size_t ci = 0; ci < grid; ++ci) {
            auto start = std::chrono::steady_clock::now();
            Hypergraph combined = union_of(hosts[ni], chain[ci]);
            auto res = has_factor(f, combined, FactorOptions{spec.node_budget});
            TrialRecord rec;
            rec.n = n;
            rec.c = c_mode ? spec.cs[ci] : 0.0;
            rec.p = p_grid[ni][ci];
            rec.seed = trial;
            switch (res.status) {
                case FactorStatus::yes: rec.outcome = "factor"; break;
                case FactorStatus::no: rec.outcome = "no-factor"; break;
                case FactorStatus::unknown: rec.outcome = "unknown"; break;
            }
            if (res.status == FactorStatus::yes)
                rec.coverage = 1.0;
            else
                rec.coverage = tiling_coverage(f, combined,
                                               greedy_tiling(f, combined, 0).tiling);
            if (spec.record_wall) rec.wall_ms = elapsed_ms(start);
            out[ci] = std::move(rec);
        }
    });

    ScanResult result;
    result.records.reserve(n_count * grid * seeds);
    for (std::size_t ni = 0; ni < n_count; ++ni)
        for (std::size_t ci = 0; ci < grid; ++ci) {
            CellSummary cell;
            cell.n = spec.ns[ni];
            cell.c = c_mode ? spec.cs[ci] : 0.0;
            cell.p = p_grid[ni][ci];
            for (std::size_t trial = 0; trial < seeds; ++trial) {
                const auto& rec = slots[ni * seeds + trial][ci];
                if (rec.outcome == "factor") ++cell.yes;
                else if (rec.outcome == "no-factor") ++cell.no;
                else ++cell.unknown;
                result.records.push_back(rec);
            }
            int decided = cell.yes + cell.no;
            cell.rate = decided ? static_cast<double>(cell.yes) / decided : 0.0;
            wilson_interval(cell.yes, cell.no, cell.wilson_low, cell.wilson_high);
            result.cells.push_back(cell);
        }
    return result;
}

std::optional<double> scan_crossing(const ScanResult& result, int n) {
    std::vector<const CellSummary*> row;
    for (const auto& cell : result.cells)
        if (cell.n == n) row.push_back(&cell);
    std::sort(row.begin(), row.end(),
              [](const CellSummary* a, const CellSummary* b) { return a->c < b->c; });
    if (row.empty()) return std::nullopt;
    if (row.front()->rate >= 0.5) return row.front()->c;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        double r1 = row[i]->rate, r2 = row[i + 1]->rate;
        if (r1 < 0.5 && r2 >= 0.5) {
            double c1 = row[i]->c, c2 = row[i + 1]->c;
            return c1 + (0.5 - r1) * (c2 - c1) / (r2 - r1);
        }
    }
    return std::nullopt;
}

CoverageResult coverage_experiment(const ExperimentSpec& spec_in, const Pattern& f) {
    ExperimentSpec spec = spec_in;
    spec.validate();
    if (f.k() != spec.k) throw std::invalid_argument("coverage_experiment: pattern uniformity mismatch");
    std::size_t n_count = spec.ns.size();
    std::size_t seeds = static_cast<std::size_t>(spec.seeds_per_cell);

    struct NSetup {
        PinnedScale scale;
        double p;
        Pattern maximizer;
        double mu;
    };
    std::vector<NSetup> setups;
    for (int n : spec.ns) {
        PinnedScale scale = pin_copy_scale(f, n, spec.theta);
        double p = clamp01(scale.p.value_at(n));
        Pattern j{scale.dstar.maximizer};
        double mu = expected_labeled_copies(n, p, scale.dstar.s, scale.dstar.j);
        setups.push_back(NSetup{std::move(scale), p, std::move(j), mu});
    }

    std::vector<TrialRecord> slots(n_count * seeds);
    parallel_tasks(n_count * seeds, [&](std::size_t task) {
        std::size_t ni = task / seeds;
        std::size_t trial = task % seeds;
        int n = spec.ns[ni];
        const auto& setup = setups[ni];
        auto start = std::chrono::steady_clock::now();
        SeededSampler sampler{spec.seed, stream_id(static_cast<std::uint64_t>(n), trial, 1)};
        Hypergraph h = sample_binomial(spec.k, n, setup.p, sampler);
        auto tiling = max_tiling(f, h, TilingMode::heuristic);
        TrialRecord rec;
        rec.n = n;
        rec.p = setup.p;
        rec.seed = trial;
        rec.coverage = tiling_coverage(f, h, tiling);
        rec.outcome = rec.coverage == 1.0 ? "factor" : "no-factor";
        rec.x = copy_count_statistic(setup.maximizer, h);
        if (spec.record_wall) rec.wall_ms = elapsed_ms(start);
        slots[task] = std::move(rec);
    });

    CoverageResult result;
    result.records.reserve(slots.size());
    for (std::size_t ni = 0; ni < n_count; ++ni) {
        int n = spec.ns[ni];
        const auto& setup = setups[ni];
        CoverageCell cell;
        cell.n = n;
        cell.p = setup.p;
        cell.identity_holds = setup.scale.identity_holds;
        cell.mu = setup.mu;
        int covered = 0, x_large = 0;
        double coverage_sum = 0.0;
        for (std::size_t trial = 0; trial < seeds; ++trial) {
            const auto& rec = slots[ni * seeds + trial];
            coverage_sum += rec.coverage;
            // coverage >= theta decided exactly on copy counts
            std::int64_t on = static_cast<std::int64_t>(std::llround(rec.coverage * n));
            if (Rational(on) >= spec.theta * Rational(n)) ++covered;
            if (static_cast<double>(rec.x) >= 2.0 * setup.mu) ++x_large;
            result.records.push_back(rec);
        }
        cell.mean_coverage = coverage_sum / seeds;
        cell.frac_covered = static_cast<double>(covered) / seeds;
        cell.frac_x_large = static_cast<double>(x_large) / seeds;
        result.cells.push_back(cell);
    }
    return result;
}

CounterexampleResult counterexample_experiment(const ExperimentSpec& spec_in) {
    ExperimentSpec spec = spec_in;
    spec.validate();
    std::size_t n_count = spec.ns.size();
    std::size_t seeds = static_cast<std::size_t>(spec.seeds_per_cell);

    std::vector<CounterexampleSetup> setups;
    for (int n : spec.ns) setups.push_back(sublinear_counterexample(n, spec.k, spec.omega));

    std::vector<TrialRecord> slots(n_count * seeds);
    parallel_tasks(n_count * seeds, [&](std::size_t task) {
        std::size_t ni = task / seeds;
        std::size_t trial = task % seeds;
        int n = spec.ns[ni];
        const auto& setup = setups[ni];
        auto start = std::chrono::steady_clock::now();
        SeededSampler sampler{spec.seed, stream_id(static_cast<std::uint64_t>(n), trial, 2)};
        Hypergraph h = sample_binomial(spec.k, n, setup.p, sampler);
        std::vector<char> touched(n, 0);
        for (std::int64_t e = 0; e < h.edge_count(); ++e)
            for (Vertex v : h.edge(e)) touched[v] = 1;
        std::int64_t isolated = 0;
        for (int v = 0; v < n; ++v)
            if (!touched[v]) ++isolated;
        bool forced = isolated > static_cast<std::int64_t>(spec.k) *
                                     static_cast<std::int64_t>(setup.host.side_a.size());
        TrialRecord rec;
        rec.n = n;
        rec.p = setup.p;
        rec.seed = trial;
        rec.outcome = forced ? "no-factor" : "unknown";
        rec.coverage = static_cast<double>(isolated) / n;
        rec.x = isolated;
        if (spec.record_wall) rec.wall_ms = elapsed_ms(start);
        slots[task] = std::move(rec);
    });

    CounterexampleResult result;
    result.records.reserve(slots.size());
    for (std::size_t ni = 0; ni < n_count; ++ni) {
        int n = spec.ns[ni];
        const auto& setup = setups[ni];
        CounterexampleCell cell;
        cell.n = n;
        cell.p = setup.p;
        cell.side_a = setup.host.side_a.size();
        cell.cover_bound = matching_cover_bound(setup.host);
        cell.expected_isolated = isolated_vertex_expectation(n, spec.k, setup.p);
        double sum = 0.0, sumsq = 0.0;
        int forced = 0;
        for (std::size_t trial = 0; trial < seeds; ++trial) {
            const auto& rec = slots[ni * seeds + trial];
            double x = static_cast<double>(rec.x);
            sum += x;
            sumsq += x * x;
            if (rec.outcome == "no-factor") ++forced;
            result.records.push_back(rec);
        }
        cell.mean_isolated = sum / seeds;
        if (seeds > 1) {
            double var = (sumsq - sum * sum / seeds) / (seeds - 1);
            cell.se_isolated = std::sqrt(std::max(0.0, var) / seeds);
        }
        cell.forced_failure_rate = static_cast<double>(forced) / seeds;
        result.cells.push_back(cell);
    }
    return result;
}

namespace {

std::string fmt(const char* format, ...) {
    char buf[128];
    va_list args;
    va_start(args, format);
    vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

}  // namespace

std::string render_csv(const std::vector<TrialRecord>& records) {
    std::string out = "n,c,p,seed,outcome,coverage,X,wall_ms\n";
    for (const auto& r : records) {
        out += fmt("%d,%.17g,%.17g,%llu,", r.n, r.c, r.p,
                   static_cast<unsigned long long>(r.seed));
        out += r.outcome;
        out += fmt(",%.9g,%lld,%lld\n", r.coverage, static_cast<long long>(r.x),
                   static_cast<long long>(r.wall_ms));
    }
    return out;
}

std::string render_chart(const std::vector<TrialRecord>& records) {
    // success rate per (n, c) cell, one polyline per n over ascending c
    struct Key {
        int n;
        double c;
        bool operator<(const Key& o) const { return n != o.n ? n < o.n : c < o.c; }
    };
    std::map<Key, std::pair<int, int>> cells;  // yes, decided
    for (const auto& r : records) {
        auto& cell = cells[{r.n, r.c}];
        if (r.outcome == "factor") {
            ++cell.first;
            ++cell.second;
        } else if (r.outcome == "no-factor") {
            ++cell.second;
        }
    }
    std::vector<double> cs;
    std::vector<int> ns;
    for (const auto& [key, counts] : cells) {
        cs.push_back(key.c);
        ns.push_back(key.n);
    }
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    constexpr int width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
    const int plot_w = width - left - right, plot_h = height - top - bottom;
    auto xpos = [&](double c) {
        if (cs.size() <= 1) return left + plot_w / 2.0;
        auto it = std::lower_bound(cs.begin(), cs.end(), c);
        double idx = static_cast<double>(it - cs.begin());
        return left + idx / (cs.size() - 1) * plot_w;
    };
    auto ypos = [&](double rate) { return top + (1.0 - rate) * plot_h; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    std::string svg = fmt(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
        "viewBox=\"0 0 %d %d\">\n",
        width, height, width, height);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += fmt("<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", left,
               top + plot_h, left + plot_w, top + plot_h);
    svg += fmt("<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", left, top,
               left, top + plot_h);
    for (double tick : {0.0, 0.5, 1.0})
        svg += fmt("<text x=\"%d\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%.1f</text>\n",
                   left - 6, ypos(tick) + 4, tick);
    for (double c : cs)
        svg += fmt("<text x=\"%.1f\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
                   xpos(c), top + plot_h + 16, c);
    svg += fmt("<text x=\"%d\" y=\"%d\" font-size=\"12\">success rate vs c</text>\n", left,
               top - 10);

    int color = 0;
    for (int n : ns) {
        std::string points;
        for (double c : cs) {
            auto it = cells.find({n, c});
            if (it == cells.end() || it->second.second == 0) continue;
            double rate = static_cast<double>(it->second.first) / it->second.second;
            points += fmt("%.2f,%.2f ", xpos(c), ypos(rate));
        }
        const char* col = palette[color % 6];
        if (!points.empty()) {
            points.pop_back();
            svg += fmt("<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                       col);
            svg += points;
            svg += "\"/>\n";
        }
        svg += fmt("<text x=\"%d\" y=\"%d\" font-size=\"11\" fill=\"%s\">n=%d</text>\n",
                   left + plot_w - 40, top + 14 * (color + 1), col, n);
        ++color;
    }
    svg += "</svg>\n";
    return svg;
}

void emit_outputs(const std::vector<TrialRecord>& records, const std::string& csv_path) {
    std::string chart_path = csv_path;
    if (chart_path.size() >= 4 && chart_path.substr(chart_path.size() - 4) == ".csv")
        chart_path.resize(chart_path.size() - 4);
    chart_path += ".svg";

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("emit_outputs: cannot write " + csv_path);
    csv << render_csv(records);
    csv.close();
    if (!csv) throw std::runtime_error("emit_outputs: write failed for " + csv_path);

    std::ofstream svg(chart_path, std::ios::binary);
    if (!svg) throw std::runtime_error("emit_outputs: cannot write " + chart_path);
    svg << render_chart(records);
    svg.close();
    if (!svg) throw std::runtime_error("emit_outputs: write failed for " + chart_path);
}

}  // namespace phg
