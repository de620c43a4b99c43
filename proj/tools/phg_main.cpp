#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "phg/absorber.hpp"
#include "phg/constructions.hpp"
#include "phg/exact.hpp"
#include "phg/experiments.hpp"
#include "phg/factor.hpp"
#include "phg/khg_io.hpp"
#include "phg/pattern.hpp"
#include "phg/random_models.hpp"

using nlohmann::json;
using namespace phg;

namespace {

std::vector<Vertex> parse_vertex_list(const std::string& text) {
    std::vector<Vertex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit_khg(const Hypergraph& h, const std::string& path) {
    if (path.empty() || path == "-")
        write_khg(h, std::cout);
    else
        write_khg_file(h, path);
}

json structure_json(const AbsorberStructure& st) {
    json j;
    j["blocks"] = st.blocks;
    j["labelling"] = st.labelling;
    j["diagonal"] = st.diagonal();
    return j;
}

int run_params(const std::string& pattern_path) {
    Pattern f{read_khg_file(pattern_path)};
    auto d = d_star(f);
    json out;
    out["k"] = f.k();
    out["b"] = f.b();
    out["edges"] = f.f();
    out["d_star"] = d.value.to_string();
    out["one_over_d_star"] = (Rational(1) / d.value).to_string();
    json jedges = json::array();
    for (std::int64_t i = 0; i < d.maximizer.edge_count(); ++i) {
        auto e = d.maximizer.edge(i);
        jedges.push_back(std::vector<Vertex>(e.begin(), e.end()));
    }
    out["maximizer"] = {{"s", d.s}, {"j", d.j}, {"edge_mask", d.edge_mask}, {"edges", jedges}};
    out["strictly_balanced"] = is_strictly_balanced(f);
    out["alpha_is_zero"] = alpha_is_zero(f);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_gen(int n, int k, double p, std::uint64_t seed, std::uint64_t trial,
            const std::string& host_path, const std::string& coupled,
            const std::string& out_path) {
    SeededSampler sampler{seed, stream_id(static_cast<std::uint64_t>(n), trial, 0)};
    if (!coupled.empty()) {
        auto ps = parse_double_list(coupled);
        if (ps.empty()) throw std::runtime_error("--coupled needs probabilities");
        if (out_path.empty() || out_path == "-")
            throw std::runtime_error("--coupled needs -o PREFIX for the numbered files");
        auto chain = sample_coupled(k, n, ps, sampler);
        for (std::size_t i = 0; i < chain.size(); ++i)
            write_khg_file(chain[i], out_path + "." + std::to_string(i) + ".khg");
        std::cerr << chain.size() << " coupled samples written\n";
        return 0;
    }
    Hypergraph h = sample_binomial(k, n, p, sampler);
    if (!host_path.empty()) h = union_of(read_khg_file(host_path), h);
    emit_khg(h, out_path);
    return 0;
}

int run_construct_split(int n, int k, const std::string& eta_text, const std::string& out_base) {
    auto host = build_split_host(n, k, Rational::parse(eta_text));
    json side;
    side["n"] = n;
    side["k"] = k;
    side["eta"] = host.eta.to_string();
    side["side_a"] = std::vector<Vertex>(host.side_a.begin(), host.side_a.end());
    side["a_size"] = host.side_a.size();
    side["delta_1"] = host.min_vertex_degree;
    side["matching_cover_bound"] = matching_cover_bound(host);
    write_khg_file(host.graph, out_base + ".khg");
    write_text(out_base + ".json", side.dump(2) + "\n");
    std::cerr << "wrote " << out_base << ".khg and " << out_base << ".json\n";
    return 0;
}

int run_construct_counter(int n, int k, double omega, const std::string& out_base) {
    auto setup = sublinear_counterexample(n, k, omega);
    json side;
    side["n"] = n;
    side["k"] = k;
    side["omega"] = setup.omega;
    side["p"] = setup.p;
    side["a_size"] = setup.host.side_a.size();
    side["delta_1"] = setup.host.min_vertex_degree;
    side["matching_cover_bound"] = matching_cover_bound(setup.host);
    side["expected_isolated"] = isolated_vertex_expectation(n, k, setup.p);
    write_khg_file(setup.host.graph, out_base + ".khg");
    write_text(out_base + ".json", side.dump(2) + "\n");
    std::cerr << "wrote " << out_base << ".khg and " << out_base << ".json\n";
    return 0;
}

int run_factor(const std::string& pattern_path, const std::string& host_path,
               const std::string& witness_path, std::int64_t budget) {
    Pattern f{read_khg_file(pattern_path)};
    Hypergraph h = read_khg_file(host_path);
    auto res = has_factor(f, h, FactorOptions{budget});
    switch (res.status) {
        case FactorStatus::yes: {
            std::cout << "factor\n";
            if (!witness_path.empty()) {
                json w;
                w["copies"] = json::array();
                for (const auto& c : res.witness->copies) w["copies"].push_back(c.map);
                write_text(witness_path, w.dump(2) + "\n");
            }
            return 0;
        }
        case FactorStatus::no:
            std::cout << "no-factor" << (res.reason.empty() ? "" : " (" + res.reason + ")")
                      << "\n";
            return 1;
        case FactorStatus::unknown:
            std::cout << "unknown (" << res.reason << ", nodes=" << res.nodes << ")\n";
            return 2;
    }
    return 2;
}

int run_absorber_find(const std::string& host_path, double random_p,
                      const std::string& pattern_path, const std::string& s_text,
                      const std::string& forbidden_text, std::uint64_t seed,
                      const std::string& json_path) {
    Pattern f{read_khg_file(pattern_path)};
    Hypergraph host = read_khg_file(host_path);
    SeededSampler sampler{seed, stream_id(static_cast<std::uint64_t>(host.n()), 0, 3)};
    auto inst = perturb(host, random_p, sampler);
    VertexSet s{parse_vertex_list(s_text)};
    VertexSet forbidden{parse_vertex_list(forbidden_text)};
    auto st = find_simple_absorber(inst, s, f, forbidden);
    if (!st) {
        std::cout << "none\n";
        return 1;
    }
    json out = structure_json(*st);
    out["simple_ok"] = is_simple_absorber(inst.combined, *st, f);
    out["absorber_ok"] = is_absorber(inst.combined, s, VertexSet{st->span()}, f);
    std::cout << out.dump(2) << "\n";
    if (!json_path.empty()) write_text(json_path, out.dump(2) + "\n");
    return 0;
}

struct PipelineArgs {
    std::string rho = "1/2";
    int n = 102;
    int k = 3;
    std::string pattern_path;
    std::string host_path;
    std::uint64_t seed = 1;
    std::string q, beta, xi;  // toy overrides; all three or none
    int template_m = 0;       // with --template sparse
    std::string template_kind = "complete";
    bool strict = false;
    bool disjoint_families = false;
    std::string absorb_sizes;  // comma list of |R| values to exercise
    std::string json_path;
};

int run_absorber_pipeline(const PipelineArgs& args) {
    Pattern f = args.pattern_path.empty() ? Pattern::single_edge(args.k)
                                          : Pattern{read_khg_file(args.pattern_path)};
    Hypergraph host = args.host_path.empty() ? Hypergraph::complete(f.k(), args.n)
                                             : read_khg_file(args.host_path);
    if (host.n() != args.n) throw std::runtime_error("--n disagrees with the host file");

    AbsorbingConstants constants;
    bool have_toy = !args.q.empty() || !args.beta.empty() || !args.xi.empty();
    if (have_toy) {
        if (args.q.empty() || args.beta.empty() || args.xi.empty())
            throw std::runtime_error("toy constants need --q, --beta and --xi together");
        constants.rho = Rational::parse(args.rho);
        constants.q = Rational::parse(args.q);
        constants.beta = Rational::parse(args.beta);
        constants.xi = Rational::parse(args.xi);
    } else {
        constants = AbsorbingConstants::from_rho(Rational::parse(args.rho), f.b());
    }

    auto families = build_rooted_families(host, f, args.disjoint_families);
    SeededSampler sampler{args.seed, stream_id(static_cast<std::uint64_t>(args.n), 0, 4)};

    TemplateGraph sparse;
    BuildOptions opt;
    opt.enforce_accounting = args.strict;
    if (args.template_kind == "sparse") {
        if (args.template_m < 1)
            throw std::runtime_error("--template sparse needs --template-m");
        sparse.m = args.template_m;
        sparse.beta = constants.beta;
        for (int z = 0; z + 1 < sparse.z_size(); ++z)
            sparse.add_edge(sparse.x_size() + z, z);
        for (int j = 0; j < sparse.x_size(); ++j) sparse.add_edge(j, sparse.z_size() - 1);
        opt.template_override = &sparse;
    } else if (args.template_kind != "complete") {
        throw std::runtime_error("--template must be complete or sparse");
    }

    auto outcome = build_absorbing_set(host, f, constants, families, sampler, opt);

    json out;
    out["n"] = args.n;
    out["b"] = f.b();
    out["constants"] = {{"rho", constants.rho.to_string()},
                        {"q", constants.q.to_string()},
                        {"beta", constants.beta.to_string()},
                        {"xi", constants.xi.to_string()},
                        {"derived_from_rho", constants.derived_from_rho(f.b())}};
    out["stages"] = json::array();
    for (const auto& r : outcome.trace)
        out["stages"].push_back({{"stage", r.stage}, {"detail", r.detail}, {"ok", r.ok}});
    out["ok"] = outcome.ok();
    if (!outcome.ok()) {
        out["failed_stage"] = outcome.failed_stage;
        out["detail"] = outcome.detail;
    } else {
        const auto& a = *outcome.set;
        out["m"] = a.m;
        out["x_size"] = a.x.size();
        out["y_size"] = a.y.size();
        out["z_size"] = a.z.size();
        out["edge_sets"] = a.edge_sets.size();
        out["a_size"] = a.size();
        out["retries"] = a.retries;

        if (!args.absorb_sizes.empty()) {
            auto members = a.members();
            std::vector<Vertex> leftover;
            for (Vertex v = 0; v < host.n(); ++v)
                if (!std::binary_search(members.begin(), members.end(), v))
                    leftover.push_back(v);
            out["absorb"] = json::array();
            for (Vertex raw : parse_vertex_list(args.absorb_sizes)) {
                std::size_t want = static_cast<std::size_t>(raw);
                json entry;
                entry["r_size"] = want;
                if (want > leftover.size()) {
                    entry["ok"] = false;
                    entry["error"] = "not enough leftover vertices";
                } else {
                    try {
                        VertexSet r{std::vector<Vertex>(leftover.begin(),
                                                        leftover.begin() + want)};
                        auto tiling = absorb(host, f, a, r);
                        entry["ok"] = true;
                        entry["copies"] = tiling.copies.size();
                        entry["verified"] = verify_tiling(f, host, tiling, false);
                    } catch (const std::exception& e) {
                        entry["ok"] = false;
                        entry["error"] = e.what();
                    }
                }
                out["absorb"].push_back(entry);
            }
        }
    }
    std::cout << out.dump(2) << "\n";
    if (!args.json_path.empty()) write_text(args.json_path, out.dump(2) + "\n");
    return outcome.ok() ? 0 : 1;
}

int run_scan(const std::string& spec_path, const std::string& mode) {
    auto spec = ExperimentSpec::from_json_file(spec_path);
    std::string output = spec.output.empty() ? "scan.csv" : spec.output;
    std::vector<TrialRecord> records;
    json summary;
    if (mode == "threshold") {
        auto f = load_spec_pattern(spec);
        auto res = scan_threshold(spec, f);
        records = std::move(res.records);
        summary["cells"] = json::array();
        for (const auto& c : res.cells)
            summary["cells"].push_back({{"n", c.n},
                                        {"c", c.c},
                                        {"p", c.p},
                                        {"yes", c.yes},
                                        {"no", c.no},
                                        {"unknown", c.unknown},
                                        {"rate", c.rate},
                                        {"wilson_low", c.wilson_low},
                                        {"wilson_high", c.wilson_high}});
        for (int n : spec.ns)
            if (auto cross = scan_crossing(res, n))
                summary["crossing"][std::to_string(n)] = *cross;
    } else if (mode == "coverage") {
        auto f = load_spec_pattern(spec);
        auto res = coverage_experiment(spec, f);
        records = std::move(res.records);
        summary["cells"] = json::array();
        for (const auto& c : res.cells)
            summary["cells"].push_back({{"n", c.n},
                                        {"p", c.p},
                                        {"identity_holds", c.identity_holds},
                                        {"mean_coverage", c.mean_coverage},
                                        {"frac_covered", c.frac_covered},
                                        {"frac_x_large", c.frac_x_large},
                                        {"mu", c.mu}});
    } else if (mode == "counterexample") {
        auto res = counterexample_experiment(spec);
        records = std::move(res.records);
        summary["cells"] = json::array();
        for (const auto& c : res.cells)
            summary["cells"].push_back({{"n", c.n},
                                        {"p", c.p},
                                        {"a_size", c.side_a},
                                        {"cover_bound", c.cover_bound},
                                        {"mean_isolated", c.mean_isolated},
                                        {"expected_isolated", c.expected_isolated},
                                        {"se_isolated", c.se_isolated},
                                        {"forced_failure_rate", c.forced_failure_rate}});
    } else {
        throw std::runtime_error("--mode must be threshold, coverage or counterexample");
    }
    emit_outputs(records, output);
    summary["records"] = records.size();
    summary["csv"] = output;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perturbed hypergraph factor toolkit"};
    app.require_subcommand(1);

    auto* params = app.add_subcommand("params", "pattern parameters as JSON");
    std::string params_pattern;
    params->add_option("--pattern", params_pattern, "pattern in khg/1")->required();

    auto* gen = app.add_subcommand("gen", "sample a binomial k-graph");
    int gen_n = 12, gen_k = 3;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 1, gen_trial = 0;
    std::string gen_host, gen_coupled, gen_out;
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--k", gen_k)->required();
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--trial", gen_trial, "stream index for repeated draws");
    gen->add_option("--host", gen_host, "union the sample with this host file");
    gen->add_option("--coupled", gen_coupled, "comma list of p values for one nested chain");
    gen->add_option("-o,--out", gen_out, "output file, - for stdout");

    auto* construct = app.add_subcommand("construct", "deterministic hosts");
    auto* split = construct->add_subcommand("split-host", "all k-sets meeting a side A");
    int split_n = 12, split_k = 3;
    std::string split_eta = "1/3", split_out = "split_host";
    split->add_option("--n", split_n)->required();
    split->add_option("--k", split_k)->required();
    split->add_option("--eta", split_eta, "|A|/n as a rational, e.g. 1/3")->required();
    split->add_option("-o,--out", split_out, "basename for .khg and .json");
    auto* counter = construct->add_subcommand("counterexample", "sublinear blocking host");
    int counter_n = 24, counter_k = 3;
    double counter_omega = 8.0;
    std::string counter_out = "counterexample";
    counter->add_option("--n", counter_n)->required();
    counter->add_option("--k", counter_k)->required();
    counter->add_option("--omega", counter_omega)->required();
    counter->add_option("-o,--out", counter_out, "basename for .khg and .json");

    auto* factor = app.add_subcommand("factor", "decide an F-factor; exit 0/1/2");
    std::string factor_pattern, factor_host, factor_witness;
    std::int64_t factor_budget = 20'000'000;
    factor->add_option("--pattern", factor_pattern)->required();
    factor->add_option("--host", factor_host)->required();
    factor->add_option("--witness", factor_witness, "write the tiling as JSON");
    factor->add_option("--budget", factor_budget, "search node budget");

    auto* absorber = app.add_subcommand("absorber", "absorber search and assembly");
    auto* afind = absorber->add_subcommand("find", "simple absorber for a seed set S");
    std::string afind_host, afind_pattern, afind_s, afind_forbidden, afind_json;
    double afind_p = 0.5;
    std::uint64_t afind_seed = 1;
    afind->add_option("--host", afind_host)->required();
    afind->add_option("--random-p", afind_p)->required();
    afind->add_option("--pattern", afind_pattern)->required();
    afind->add_option("--s", afind_s, "comma list, e.g. 0,1,2")->required();
    afind->add_option("--forbidden", afind_forbidden, "comma list of excluded vertices");
    afind->add_option("--seed", afind_seed);
    afind->add_option("--json", afind_json, "also write the structure to this file");
    auto* apipe = absorber->add_subcommand("pipeline", "build an absorbing set, stage by stage");
    PipelineArgs pargs;
    apipe->add_option("--rho", pargs.rho, "density parameter as a rational");
    apipe->add_option("--n", pargs.n)->required();
    apipe->add_option("--k", pargs.k);
    apipe->add_option("--pattern", pargs.pattern_path, "default: single k-edge");
    apipe->add_option("--host", pargs.host_path, "default: complete k-graph");
    apipe->add_option("--seed", pargs.seed);
    apipe->add_option("--q", pargs.q, "toy override; needs --beta and --xi too");
    apipe->add_option("--beta", pargs.beta);
    apipe->add_option("--xi", pargs.xi);
    apipe->add_option("--template", pargs.template_kind, "complete or sparse");
    apipe->add_option("--template-m", pargs.template_m, "m for the sparse template");
    apipe->add_flag("--strict", pargs.strict, "abort when the size accounting fails");
    apipe->add_flag("--disjoint-families", pargs.disjoint_families);
    apipe->add_option("--absorb", pargs.absorb_sizes, "comma list of leftover sizes to absorb");
    apipe->add_option("--json", pargs.json_path, "also write the trace to this file");

    auto* scan = app.add_subcommand("scan", "seeded Monte Carlo experiment");
    std::string scan_spec, scan_mode = "threshold";
    scan->add_option("--spec", scan_spec, "JSON experiment spec")->required();
    scan->add_option("--mode", scan_mode, "threshold, coverage or counterexample");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*params) return run_params(params_pattern);
        if (*gen)
            return run_gen(gen_n, gen_k, gen_p, gen_seed, gen_trial, gen_host, gen_coupled,
                           gen_out);
        if (*split) return run_construct_split(split_n, split_k, split_eta, split_out);
        if (*counter) return run_construct_counter(counter_n, counter_k, counter_omega,
                                                   counter_out);
        if (*construct) {
            std::cerr << "construct needs a subcommand: split-host or counterexample\n";
            return 3;
        }
        if (*factor) return run_factor(factor_pattern, factor_host, factor_witness,
                                       factor_budget);
        if (*afind)
            return run_absorber_find(afind_host, afind_p, afind_pattern, afind_s,
                                     afind_forbidden, afind_seed, afind_json);
        if (*apipe) return run_absorber_pipeline(pargs);
        if (*absorber) {
            std::cerr << "absorber needs a subcommand: find or pipeline\n";
            return 3;
        }
        if (*scan) return run_scan(scan_spec, scan_mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
