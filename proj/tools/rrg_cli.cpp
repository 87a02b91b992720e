// Command-line front end: estimates, exact oracle queries, graph sampling,
// and the experiment harness. Exit codes: 0 success, 1 unexpected failure,
// 2 experiment gate failure, 3 outside exact-computation budget, 4 bad input.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "rrg/errors.hpp"
#include "rrg/estimates.hpp"
#include "rrg/experiments.hpp"
#include "rrg/graph.hpp"
#include "rrg/oracle.hpp"
#include "rrg/report.hpp"
#include "rrg/sampler.hpp"
#include "rrg/version.hpp"

namespace {

rrg::SimpleGraph load_constraint(const std::string& path, int n) {
    if (path.empty()) return rrg::SimpleGraph(n, {});
    rrg::SimpleGraph g = rrg::read_graph_file(path);
    if (g.n() != n)
        throw rrg::BadInputError("constraint file " + path + " is on " +
                                 std::to_string(g.n()) + " vertices, expected " +
                                 std::to_string(n));
    return g;
}

std::vector<std::pair<int, int>> parse_grid(const std::string& text) {
    std::vector<std::pair<int, int>> grid;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto sep = part.find('x');
        if (sep == std::string::npos)
            throw rrg::BadInputError("grid entries look like <n>x<d>: " + part);
        try {
            grid.emplace_back(std::stoi(part.substr(0, sep)),
                              std::stoi(part.substr(sep + 1)));
        } catch (const std::exception&) {
            throw rrg::BadInputError("could not parse grid entry: " + part);
        }
    }
    if (grid.empty()) throw rrg::BadInputError("empty grid");
    return grid;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rrg::IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_estimate(const char* label, const rrg::ProbEstimate& est) {
    std::cout << label << " " << rrg::format_double(est.value) << "  (error order "
              << est.error_order << ")\n";
}

struct EstimateArgs {
    int n = 0, d = 0, u = 0, v = 1;
    std::string h1_path, h2_path;
};

int run_estimate(const EstimateArgs& a) {
    rrg::SimpleGraph h1 = load_constraint(a.h1_path, a.n);
    rrg::SimpleGraph h2 = load_constraint(a.h2_path, a.n);
    rrg::ConditioningPair ctx(h1, h2);
    rrg::DegreeSequence dseq = rrg::DegreeSequence::regular(a.n, a.d);
    print_estimate("baseline       ", rrg::cond_edge_prob_baseline(ctx, dseq, a.u, a.v));
    if (h2.m() == 0)
        print_estimate("refined-regular",
                       rrg::cond_edge_prob_refined_regular(h1, a.u, a.v, a.d, a.n));
    print_estimate("refined-general",
                    rrg::cond_edge_prob_refined_general(ctx, dseq, a.u, a.v));
    return 0;
}

int run_exact(const EstimateArgs& a) {
    rrg::SimpleGraph h1 = load_constraint(a.h1_path, a.n);
    rrg::SimpleGraph h2 = load_constraint(a.h2_path, a.n);
    rrg::ConditioningPair ctx(h1, h2);
    rrg::ConditionalCounts counts = rrg::exact_conditional_counts(a.n, a.d, ctx, a.u, a.v);
    rrg::Rat p = rrg::rat(static_cast<long long>(counts.edge_hits),
                          static_cast<long long>(counts.class_size));
    std::cout << "class_size " << counts.class_size << "\n";
    std::cout << "edge_hits  " << counts.edge_hits << "\n";
    std::cout << "exact      " << rrg::format_rat(p) << " = "
              << rrg::format_double(rrg::to_double(p)) << "\n";
    return 0;
}

struct SampleArgs {
    int n = 0, d = 0;
    long long samples = 1;
    uint64_t seed = 0;
    long long burn_in = -1;
    std::string method = "edge-swap-mcmc";
    std::string h1_path, h2_path, out_path;
};

int run_sample(const SampleArgs& a) {
    rrg::SamplerConfig cfg;
    cfg.n = a.n;
    cfg.d = a.d;
    cfg.seed = a.seed;
    cfg.burn_in = a.burn_in;
    cfg.method = rrg::parse_method(a.method);
    cfg.samples = a.samples;
    cfg.validate();

    bool conditional = !a.h1_path.empty() || !a.h2_path.empty();
    rrg::ConditioningPair ctx(load_constraint(a.h1_path, a.n),
                              load_constraint(a.h2_path, a.n));
    rrg::DegreeSequence dseq = rrg::DegreeSequence::regular(a.n, a.d);

    std::ostringstream out;
    for (long long i = 0; i < a.samples; ++i) {
        rrg::SimpleGraph g =
            conditional
                ? rrg::conditional_sample(ctx, dseq, cfg, static_cast<uint64_t>(i))
                : rrg::sample_regular(cfg, static_cast<uint64_t>(i));
        if (i) out << "\n";
        out << rrg::serialize_graph(g);
    }
    if (a.out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(a.out_path, std::ios::binary | std::ios::trunc);
        if (!file || !(file << out.str()))
            throw rrg::IoError("cannot write " + a.out_path);
    }
    return 0;
}

int run_experiment_cmd(rrg::ExperimentConfig cfg) {
    auto started = std::chrono::steady_clock::now();
    rrg::StatReport report = rrg::run_experiment(cfg);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();

    if (cfg.out_path.empty()) {
        std::cout << (cfg.format == "json" ? rrg::to_json(report) : rrg::to_csv(report));
    } else {
        rrg::write_report(report, cfg.format, cfg.out_path);
        std::cout << "wrote " << cfg.out_path << "\n";
    }
    for (const auto& gate : report.gates)
        std::cerr << "gate " << gate.name << ": " << (gate.pass ? "pass" : "FAIL")
                  << " (" << gate.detail << ")\n";
    std::cerr << "wall time " << elapsed << " ms\n";
    return report.all_gates_pass() ? 0 : 2;
}

int run_experiment_list() {
    for (rrg::ExperimentKind kind :
         {rrg::ExperimentKind::ErrorScaling, rrg::ExperimentKind::TriangleNormality,
          rrg::ExperimentKind::SwitchingValidation, rrg::ExperimentKind::MomentProfile,
          rrg::ExperimentKind::HoleCensus}) {
        rrg::ExperimentConfig def = rrg::default_config(kind);
        std::cout << rrg::to_string(kind) << "  default grid ";
        for (std::size_t i = 0; i < def.grid.size(); ++i)
            std::cout << (i ? "," : "") << def.grid[i].first << "x" << def.grid[i].second;
        if (def.samples > 0) std::cout << "  samples " << def.samples;
        if (kind == rrg::ExperimentKind::HoleCensus)
            std::cout << "  graphs " << def.tuples << "  tuple size " << def.tuple_size;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(rrg::kArtifactName) +
                 " — conditional edge probabilities and subgraph statistics of "
                 "random regular graphs"};
    app.set_version_flag("--version", rrg::kArtifactVersion);
    app.require_subcommand(1);

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "Formula estimates of P(uv in G | constraints)");
    estimate->add_option("--n", est.n, "vertex count")->required();
    estimate->add_option("--d", est.d, "degree")->required();
    estimate->add_option("--u", est.u, "first endpoint (default 0)");
    estimate->add_option("--v", est.v, "second endpoint (default 1)");
    estimate->add_option("--h1", est.h1_path, "edge-list file of required edges");
    estimate->add_option("--h2", est.h2_path, "edge-list file of forbidden edges");

    EstimateArgs exa;
    CLI::App* exact = app.add_subcommand(
        "exact", "Exact conditional edge probability by exhaustive enumeration");
    exact->add_option("--n", exa.n, "vertex count")->required();
    exact->add_option("--d", exa.d, "degree")->required();
    exact->add_option("--u", exa.u, "first endpoint (default 0)");
    exact->add_option("--v", exa.v, "second endpoint (default 1)");
    exact->add_option("--h1", exa.h1_path, "edge-list file of required edges");
    exact->add_option("--h2", exa.h2_path, "edge-list file of forbidden edges");

    SampleArgs smp;
    CLI::App* sample = app.add_subcommand("sample", "Sample random regular graphs");
    sample->add_option("--n", smp.n, "vertex count")->required();
    sample->add_option("--d", smp.d, "degree")->required();
    sample->add_option("--samples", smp.samples, "number of graphs (default 1)");
    sample->add_option("--seed", smp.seed, "rng seed (default 0)");
    sample->add_option("--burn-in", smp.burn_in, "swap chain burn-in (-1 = auto)");
    sample->add_option("--method", smp.method,
                       "exact-rejection | incremental-pairing | edge-swap-mcmc (default)");
    sample->add_option("--h1", smp.h1_path, "edge-list file of required edges");
    sample->add_option("--h2", smp.h2_path, "edge-list file of forbidden edges");
    sample->add_option("--out", smp.out_path, "output file (default stdout)");

    CLI::App* experiment = app.add_subcommand("experiment", "Experiment harness");
    experiment->require_subcommand(1);

    std::string run_kind, run_grid, run_config, run_format, run_out;
    long long run_samples = -1, run_tuples = -1;
    int run_k_max = -1, run_tuple_size = -1;
    uint64_t run_seed = 0;
    CLI::App* run = experiment->add_subcommand("run", "Run one experiment");
    run->add_option("--kind", run_kind,
                    "error-scaling | triangle-normality | switching-validation | "
                    "moment-profile | hole-census");
    run->add_option("--config", run_config, "JSON config file (fields override defaults)");
    run->add_option("--seed", run_seed, "rng seed")->required();
    run->add_option("--grid", run_grid, "comma-separated <n>x<d> points");
    run->add_option("--samples", run_samples, "sample count override");
    run->add_option("--k-max", run_k_max, "largest factorial-moment order");
    run->add_option("--tuple-size", run_tuple_size, "triangles per census tuple");
    run->add_option("--tuples", run_tuples, "graphs in the census");
    run->add_option("--format", run_format, "csv | json (default csv)");
    run->add_option("--out", run_out, "report file (default stdout)");

    CLI::App* list = experiment->add_subcommand("list", "List experiment kinds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed()) return run_estimate(est);
        if (exact->parsed()) return run_exact(exa);
        if (sample->parsed()) return run_sample(smp);
        if (list->parsed()) return run_experiment_list();
        if (run->parsed()) {
            rrg::ExperimentConfig cfg;
            if (!run_config.empty()) {
                cfg = rrg::config_from_json_text(read_text_file(run_config));
                if (!run_kind.empty() &&
                    rrg::parse_experiment(run_kind) != cfg.kind)
                    throw rrg::BadInputError("--kind disagrees with config file");
            } else if (!run_kind.empty()) {
                cfg = rrg::default_config(rrg::parse_experiment(run_kind));
            } else {
                throw rrg::BadInputError("experiment run needs --kind or --config");
            }
            cfg.seed = run_seed;
            if (!run_grid.empty()) cfg.grid = parse_grid(run_grid);
            if (run_samples >= 0) cfg.samples = run_samples;
            if (run_k_max > 0) cfg.k_max = run_k_max;
            if (run_tuple_size > 0) cfg.tuple_size = run_tuple_size;
            if (run_tuples > 0) cfg.tuples = run_tuples;
            if (!run_format.empty()) cfg.format = run_format;
            if (!run_out.empty()) cfg.out_path = run_out;
            return run_experiment_cmd(std::move(cfg));
        }
    } catch (const rrg::CapabilityError& e) {
        std::cerr << "capability: " << e.what() << "\n";
        return 3;
    } catch (const rrg::BadInputError& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 4;
    } catch (const rrg::ModelError& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
