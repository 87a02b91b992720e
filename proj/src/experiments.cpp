#include "rrg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rrg/errors.hpp"
#include "rrg/estimates.hpp"
#include "rrg/graph.hpp"
#include "rrg/oracle.hpp"
#include "rrg/parallel.hpp"
#include "rrg/rng.hpp"
#include "rrg/sampler.hpp"
#include "rrg/stats.hpp"
#include "rrg/version.hpp"

namespace rrg {
namespace {

std::string bool_cell(bool b) { return b ? "true" : "false"; }

std::string grid_string(const std::vector<std::pair<int, int>>& grid) {
    std::ostringstream out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i) out << ',';
        out << grid[i].first << 'x' << grid[i].second;
    }
    return out.str();
}

long long default_samples(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::TriangleNormality: return 2000;
    case ExperimentKind::SwitchingValidation: return 500;
    case ExperimentKind::MomentProfile: return 2000;
    case ExperimentKind::ErrorScaling:
    case ExperimentKind::HoleCensus: return 0; // not sample-driven
    }
    return 0;
}

long long effective_samples(const ExperimentConfig& cfg) {
    return cfg.samples > 0 ? cfg.samples : default_samples(cfg.kind);
}

// Shared metadata header; runtime measurements are deliberately excluded so
// identical configs rerun to byte-identical reports.
void stamp(StatReport& report, const ExperimentConfig& cfg) {
    report.add_metadata("artifact_version", kArtifactVersion);
    report.add_metadata("seed", std::to_string(cfg.seed));
    report.add_metadata("config_hash", config_hash(cfg.canonical()));
    report.add_metadata("grid", grid_string(cfg.grid));
}

// Least-squares slope of log(err) against log(n); empty when under-determined
// or any error is non-positive.
std::string loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    std::vector<double> xs, ys;
    for (const auto& [n, err] : pts) {
        if (err <= 0.0) return "";
        xs.push_back(std::log(n));
        ys.push_back(std::log(err));
    }
    if (xs.size() < 2) return "";
    double mx = mean(xs);
    double my = mean(ys);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) return "";
    return format_double(sxy / sxx);
}

std::string edge_set_label(const std::vector<Edge>& edges) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ',';
        out << edges[i].first << '-' << edges[i].second;
    }
    out << '}';
    return out.str();
}

double rel_error(double approx, double exact) {
    double diff = std::fabs(approx - exact);
    return exact != 0.0 ? diff / std::fabs(exact) : diff;
}

double falling_double(long long z, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= static_cast<double>(z - i);
    return out;
}

// Per-side component sums of a switching scan, stored per sample index so
// multi-threaded runs reduce deterministically.
struct SideSamples {
    std::vector<double> f, x_u, x_v, x_uv;
    std::vector<double> b, y_1, y_2;
    explicit SideSamples(std::size_t m)
        : f(m), x_u(m), x_v(m), x_uv(m), b(m), y_1(m), y_2(m) {}
};

struct MeanSe {
    double mean_value = 0.0;
    double se = 0.0;
    double variance = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe out;
    out.mean_value = mean(xs);
    out.variance = sample_variance(xs);
    out.se = xs.empty() ? 0.0 : std::sqrt(out.variance / static_cast<double>(xs.size()));
    return out;
}

// Main-term predictions for the switching component counts, from the
// residual degree data of the conditioning pair.
struct SwitchingMainTerms {
    double x_u = 0.0;
    double x_v = 0.0;
    double y_1 = 0.0;
    double y_2 = 0.0;
};

SwitchingMainTerms switching_main_terms(const ConditioningPair& ctx,
                                        const DegreeSequence& dseq, int u, int v) {
    DegreeSequence res = dseq.minus(ctx.h1);
    double mt = static_cast<double>(res.m());
    double mt2 = static_cast<double>(res.mj(2));
    double du = res[u];
    double dv = res[v];
    SimpleGraph uni = ctx.union_graph();
    double sum_u = 0.0;
    for (int x : uni.neighbors(u)) sum_u += res[x];
    double sum_v = 0.0;
    for (int y : uni.neighbors(v)) sum_v += res[y];
    double s_w = 0.0;
    for (const auto& [x, y] : build_w_set(ctx, u, v).pairs)
        s_w += static_cast<double>(res[x]) * static_cast<double>(res[y]);

    SwitchingMainTerms out;
    out.x_u = sum_u + (du - 1.0) * mt2 / mt;
    out.x_v = sum_v + (dv - 1.0) * mt2 / mt;
    out.y_1 = du * dv * mt2 * mt2 / (mt * mt * mt) + s_w * du * dv / (mt * mt);
    out.y_2 = du * dv * mt2 / (mt * mt);
    return out;
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::ErrorScaling: return "error-scaling";
    case ExperimentKind::TriangleNormality: return "triangle-normality";
    case ExperimentKind::SwitchingValidation: return "switching-validation";
    case ExperimentKind::MomentProfile: return "moment-profile";
    case ExperimentKind::HoleCensus: return "hole-census";
    }
    throw BadInputError("unknown experiment kind");
}

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "error-scaling") return ExperimentKind::ErrorScaling;
    if (name == "triangle-normality") return ExperimentKind::TriangleNormality;
    if (name == "switching-validation") return ExperimentKind::SwitchingValidation;
    if (name == "moment-profile") return ExperimentKind::MomentProfile;
    if (name == "hole-census") return ExperimentKind::HoleCensus;
    throw BadInputError("unknown experiment: " + name);
}

void ExperimentConfig::validate() const {
    if (grid.empty()) throw BadInputError("experiment grid is empty");
    for (const auto& [n, d] : grid) {
        if (n < 1) throw BadInputError("grid vertex count must be positive");
        if (d < 0 || d >= n) throw BadInputError("grid degree must satisfy 0 <= d < n");
    }
    if (samples < 0) throw BadInputError("samples must be non-negative");
    if (k_max < 1) throw BadInputError("k_max must be at least 1");
    if (tuple_size < 1) throw BadInputError("tuple_size must be at least 1");
    if (tuples < 1) throw BadInputError("tuples must be at least 1");
    if (format != "csv" && format != "json")
        throw BadInputError("format must be csv or json: " + format);
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    out << "kind=" << rrg::to_string(kind);
    out << ";grid=" << grid_string(grid);
    out << ";samples=" << effective_samples(*this);
    out << ";seed=" << seed;
    out << ";k_max=" << k_max;
    out << ";tuple_size=" << tuple_size;
    out << ";tuples=" << tuples;
    return out.str();
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.samples = default_samples(kind);
    switch (kind) {
    case ExperimentKind::ErrorScaling:
        cfg.grid = {{6, 3}, {8, 3}, {10, 3}};
        break;
    case ExperimentKind::TriangleNormality:
        cfg.grid = {{2000, 20}};
        break;
    case ExperimentKind::SwitchingValidation:
        cfg.grid = {{6, 3}, {8, 3}};
        break;
    case ExperimentKind::MomentProfile:
        cfg.grid = {{6, 3}, {2000, 20}};
        break;
    case ExperimentKind::HoleCensus:
        cfg.grid = {{200, 8}};
        break;
    }
    return cfg;
}

ExperimentConfig config_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw BadInputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw BadInputError("config must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw BadInputError("config needs a string \"kind\" field");

    ExperimentConfig cfg = default_config(parse_experiment(doc["kind"].get<std::string>()));
    try {
        if (doc.contains("grid")) {
            cfg.grid.clear();
            for (const auto& entry : doc["grid"]) {
                if (!entry.is_array() || entry.size() != 2)
                    throw BadInputError("grid entries must be [n, d] pairs");
                cfg.grid.emplace_back(entry[0].get<int>(), entry[1].get<int>());
            }
        }
        if (doc.contains("samples")) cfg.samples = doc["samples"].get<long long>();
        if (doc.contains("seed")) cfg.seed = doc["seed"].get<uint64_t>();
        if (doc.contains("k_max")) cfg.k_max = doc["k_max"].get<int>();
        if (doc.contains("tuple_size")) cfg.tuple_size = doc["tuple_size"].get<int>();
        if (doc.contains("tuples")) cfg.tuples = doc["tuples"].get<long long>();
        if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
        if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BadInputError(std::string("malformed config field: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

StatReport run_error_scaling(const ExperimentConfig& cfg) {
    StatReport report;
    report.kind = to_string(ExperimentKind::ErrorScaling);
    stamp(report, cfg);

    report.add_column("n", "config");
    report.add_column("d", "config");
    report.add_column("context", "config");
    report.add_column("exact_rational", "oracle-exact");
    report.add_column("exact", "oracle-exact");
    report.add_column("baseline", "formula");
    report.add_column("refined", "formula");
    report.add_column("baseline_rel_err", "formula");
    report.add_column("refined_rel_err", "formula");
    report.add_column("row_pass", "formula");

    struct Context {
        std::string name;
        std::vector<Edge> h1;
    };
    const std::vector<Context> contexts = {
        {"empty", {}},
        {"disjoint-edge", {{2, 3}}},
        {"edge-at-u", {{0, 2}}},
    };
    const int u = 0;
    const int v = 1;

    bool all_rows_pass = true;
    std::vector<std::vector<std::pair<double, double>>> slope_points(contexts.size());

    for (const auto& [n, d] : cfg.grid) {
        if (!enumeration_in_budget(n, d))
            throw CapabilityError("error-scaling needs the exact oracle; (n=" +
                                  std::to_string(n) + ", d=" + std::to_string(d) +
                                  ") is outside the enumeration budget");
        DegreeSequence dseq = DegreeSequence::regular(n, d);
        for (std::size_t c = 0; c < contexts.size(); ++c) {
            SimpleGraph h1(n, contexts[c].h1);
            ConditioningPair ctx(h1, SimpleGraph(n, {}));
            Rat exact = exact_conditional_edge_prob(n, d, ctx, u, v);
            double exact_d = to_double(exact);
            double baseline = cond_edge_prob_baseline(ctx, dseq, u, v).value;
            double refined = cond_edge_prob_refined_regular(h1, u, v, d, n).value;
            double base_rel = rel_error(baseline, exact_d);
            double ref_rel = rel_error(refined, exact_d);
            bool row_pass = ref_rel < base_rel;
            all_rows_pass = all_rows_pass && row_pass;
            slope_points[c].push_back({static_cast<double>(n), ref_rel});
            report.add_row({format_int(n), format_int(d), contexts[c].name,
                            format_rat(exact), format_double(exact_d),
                            format_double(baseline), format_double(refined),
                            format_double(base_rel), format_double(ref_rel),
                            bool_cell(row_pass)});
        }
    }

    for (std::size_t c = 0; c < contexts.size(); ++c) {
        std::string slope = loglog_slope(slope_points[c]);
        if (!slope.empty())
            report.add_metadata("refined_slope_" + contexts[c].name, slope);
    }
    report.add_gate("refined_beats_baseline_everywhere", all_rows_pass,
                    all_rows_pass ? "refined relative error is strictly smaller on every row"
                                  : "a row has refined relative error >= baseline");
    return report;
}

StatReport run_triangle_normality(const ExperimentConfig& cfg) {
    const double kMeanZMax = 3.0;
    const double kRatioLo = 0.9;
    const double kRatioHi = 1.1;
    const double kSkewMax = 0.2;
    const double kAdPMin = 0.01;

    StatReport report;
    report.kind = to_string(ExperimentKind::TriangleNormality);
    stamp(report, cfg);
    report.add_metadata("samples", std::to_string(effective_samples(cfg)));
    report.add_metadata("mean_z_max", format_double(kMeanZMax));
    report.add_metadata("var_ratio_window",
                        format_double(kRatioLo) + ".." + format_double(kRatioHi));
    report.add_metadata("skew_max", format_double(kSkewMax));
    report.add_metadata("ad_p_min", format_double(kAdPMin));
    report.add_metadata("standardization",
                        "(count - mu_hat) / sqrt(mu_hat) with the formula mean");

    report.add_column("n", "config");
    report.add_column("d", "config");
    report.add_column("mode", "config");
    report.add_column("out_of_regime", "formula");
    report.add_column("samples", "config");
    report.add_column("mu_hat", "formula");
    report.add_column("sigma_hat", "formula");
    report.add_column("exact_mean_rational", "oracle-exact");
    report.add_column("exact_mean", "oracle-exact");
    report.add_column("exact_variance", "oracle-exact");
    report.add_column("exact_var_over_mean", "oracle-exact");
    report.add_column("mc_mean", "monte-carlo");
    report.add_column("mc_variance", "monte-carlo");
    report.add_column("mean_z", "monte-carlo");
    report.add_column("var_over_mu", "monte-carlo");
    report.add_column("skewness", "monte-carlo");
    report.add_column("ad_a_squared", "monte-carlo");
    report.add_column("ad_p", "monte-carlo");

    const Pattern triangle = Pattern::cycle(3);
    const long long samples = effective_samples(cfg);

    for (std::size_t pt = 0; pt < cfg.grid.size(); ++pt) {
        auto [n, d] = cfg.grid[pt];
        double mu_hat = mu_pattern(triangle, d, n).value;
        double sigma_hat = std::sqrt(mu_hat);
        bool out_of_regime = d <= 2;
        std::string point = "(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";

        if (enumeration_in_budget(n, d)) {
            CountDistribution dist = exact_count_distribution(n, d, triangle);
            Rat mean_rat = dist.mean();
            Rat var_rat = dist.variance();
            Rat ratio = mean_rat == 0 ? Rat(0) : Rat(var_rat / mean_rat);
            report.add_row({format_int(n), format_int(d), "exact",
                            bool_cell(out_of_regime), "", format_double(mu_hat),
                            format_double(sigma_hat), format_rat(mean_rat),
                            format_double(to_double(mean_rat)),
                            format_double(to_double(var_rat)),
                            format_double(to_double(ratio)), "", "", "", "", "", "", ""});
            continue;
        }

        SamplerConfig scfg;
        scfg.n = n;
        scfg.d = d;
        scfg.seed = cfg.seed;
        scfg.validate();
        std::vector<double> zs(static_cast<std::size_t>(samples));
        parallel_for(zs.size(), [&](std::size_t i) {
            uint64_t stream = (static_cast<uint64_t>(pt + 1) << 32) | i;
            SimpleGraph g = sample_regular(scfg, stream);
            zs[i] = static_cast<double>(enumerate_triangles(g).size());
        });

        double mc_mean = mean(zs);
        double mc_var = sample_variance(zs);
        double mean_z = (mc_mean - mu_hat) /
                        (sigma_hat / std::sqrt(static_cast<double>(zs.size())));
        double ratio = mc_var / mu_hat;
        double skew = skewness(zs);
        std::vector<double> standardized(zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i)
            standardized[i] = (zs[i] - mu_hat) / sigma_hat;
        AndersonDarlingResult ad = anderson_darling_normal(standardized);

        report.add_row({format_int(n), format_int(d), "monte-carlo",
                        bool_cell(out_of_regime), format_int(samples),
                        format_double(mu_hat), format_double(sigma_hat), "", "", "", "",
                        format_double(mc_mean), format_double(mc_var),
                        format_double(mean_z), format_double(ratio),
                        format_double(skew), format_double(ad.a_squared),
                        format_double(ad.p_value)});

        if (!out_of_regime) {
            report.add_gate("mean_z_within_3" + point, std::fabs(mean_z) <= kMeanZMax,
                            "|" + format_double(mean_z) + "| <= " + format_double(kMeanZMax));
            report.add_gate("variance_ratio_in_window" + point,
                            ratio >= kRatioLo && ratio <= kRatioHi,
                            format_double(ratio) + " in [" + format_double(kRatioLo) +
                                ", " + format_double(kRatioHi) + "]");
            report.add_gate("skewness_small" + point, std::fabs(skew) < kSkewMax,
                            "|" + format_double(skew) + "| < " + format_double(kSkewMax));
            report.add_gate("normality_ad_p" + point, ad.p_value > kAdPMin,
                            "p = " + format_double(ad.p_value) + " > " +
                                format_double(kAdPMin));
        }
    }
    return report;
}

StatReport run_switching_validation(const ExperimentConfig& cfg) {
    StatReport report;
    report.kind = to_string(ExperimentKind::SwitchingValidation);
    stamp(report, cfg);
    const long long samples = effective_samples(cfg);
    report.add_metadata("samples_per_side", std::to_string(samples));
    report.add_metadata("mc_point", "(n=500,d=10) with empty conditioning");

    report.add_column("n", "config");
    report.add_column("d", "config");
    report.add_column("h1", "config");
    report.add_column("h2", "config");
    report.add_column("exact_rational", "oracle-exact");
    report.add_column("exact", "oracle-exact");
    report.add_column("formula_ref", "formula");
    report.add_column("ratio", "monte-carlo");
    report.add_column("std_error", "monte-carlo");
    report.add_column("within_3se", "monte-carlo");
    report.add_column("mean_f", "monte-carlo");
    report.add_column("mean_b", "monte-carlo");
    report.add_column("x_u_mean", "monte-carlo");
    report.add_column("x_u_se", "monte-carlo");
    report.add_column("x_u_main", "formula");
    report.add_column("x_v_mean", "monte-carlo");
    report.add_column("x_v_se", "monte-carlo");
    report.add_column("x_v_main", "formula");
    report.add_column("x_uv_mean", "monte-carlo");
    report.add_column("y_1_mean", "monte-carlo");
    report.add_column("y_1_se", "monte-carlo");
    report.add_column("y_1_main", "formula");
    report.add_column("y_2_mean", "monte-carlo");
    report.add_column("y_2_se", "monte-carlo");
    report.add_column("y_2_main", "formula");

    const int u = 0;
    const int v = 1;
    const std::vector<std::vector<Edge>> h1_choices = {
        {}, {{2, 3}}, {{0, 2}}, {{2, 3}, {4, 5}}, {{0, 2}, {1, 3}}};
    const std::vector<std::vector<Edge>> h2_choices = {{}, {{2, 4}}, {{0, 3}}, {{3, 4}}};

    struct RowSpec {
        int n, d;
        std::vector<Edge> h1, h2;
        bool has_oracle;
    };
    std::vector<RowSpec> specs;
    for (const auto& [n, d] : cfg.grid) {
        if (!enumeration_in_budget(n, d))
            throw CapabilityError("switching-validation grid points need the exact "
                                  "oracle; (n=" + std::to_string(n) + ", d=" +
                                  std::to_string(d) + ") is outside the budget");
        for (const auto& h1 : h1_choices)
            for (const auto& h2 : h2_choices) specs.push_back({n, d, h1, h2, true});
    }
    specs.push_back({500, 10, {}, {}, false});

    long long within = 0;
    long long oracle_rows = 0;
    bool mc_gate_pass = true;
    std::string mc_gate_detail = "no monte-carlo row";

    for (std::size_t row = 0; row < specs.size(); ++row) {
        const RowSpec& spec = specs[row];
        DegreeSequence dseq = DegreeSequence::regular(spec.n, spec.d);
        SimpleGraph h1(spec.n, spec.h1);
        SimpleGraph h2(spec.n, spec.h2);
        ConditioningPair ctx(h1, h2);

        std::string exact_rat_cell;
        std::string exact_cell;
        double exact_d = 0.0;
        if (spec.has_oracle) {
            Rat exact = exact_conditional_edge_prob(spec.n, spec.d, ctx, u, v);
            exact_d = to_double(exact);
            exact_rat_cell = format_rat(exact);
            exact_cell = format_double(exact_d);
        }
        double formula_ref = cond_edge_prob_refined_general(ctx, dseq, u, v).value;

        std::vector<Edge> plus_edges = spec.h1;
        plus_edges.push_back({u, v});
        ConditioningPair ctx_plus(SimpleGraph(spec.n, plus_edges), h2);
        std::vector<Edge> minus_edges = spec.h2;
        minus_edges.push_back({u, v});
        ConditioningPair ctx_minus(h1, SimpleGraph(spec.n, minus_edges));

        SamplerConfig scfg;
        scfg.n = spec.n;
        scfg.d = spec.d;
        scfg.seed = cfg.seed;
        scfg.validate();

        SideSamples side(static_cast<std::size_t>(samples));
        uint64_t base = static_cast<uint64_t>(row) * 2 * static_cast<uint64_t>(samples);
        parallel_for(side.f.size(), [&](std::size_t i) {
            SimpleGraph gp = conditional_sample(ctx_plus, dseq, scfg, base + 2 * i);
            SwitchingScan fwd = forward_switchings(gp, u, v, ctx);
            side.f[i] = static_cast<double>(fwd.counts.f);
            side.x_u[i] = static_cast<double>(fwd.counts.X_u);
            side.x_v[i] = static_cast<double>(fwd.counts.X_v);
            side.x_uv[i] = static_cast<double>(fwd.counts.X_uv);
            SimpleGraph gm = conditional_sample(ctx_minus, dseq, scfg, base + 2 * i + 1);
            SwitchingScan bwd = backward_switchings(gm, u, v, ctx);
            side.b[i] = static_cast<double>(bwd.counts.b);
            side.y_1[i] = static_cast<double>(bwd.counts.Y_1);
            side.y_2[i] = static_cast<double>(bwd.counts.Y_2);
        });

        MeanSe f_stats = mean_se(side.f);
        MeanSe b_stats = mean_se(side.b);
        MeanSe xu = mean_se(side.x_u);
        MeanSe xv = mean_se(side.x_v);
        MeanSe xuv = mean_se(side.x_uv);
        MeanSe y1 = mean_se(side.y_1);
        MeanSe y2 = mean_se(side.y_2);

        double total = f_stats.mean_value + b_stats.mean_value;
        if (total <= 0.0)
            throw UndefinedProbabilityError("no switchings observed on either side");
        double ratio = b_stats.mean_value / total;
        double m = static_cast<double>(samples);
        double se = std::sqrt(b_stats.mean_value * b_stats.mean_value * f_stats.variance / m +
                              f_stats.mean_value * f_stats.mean_value * b_stats.variance / m) /
                    (total * total);

        std::string within_cell;
        if (spec.has_oracle) {
            bool ok = std::fabs(ratio - exact_d) <= 3.0 * se;
            within_cell = bool_cell(ok);
            within += ok ? 1 : 0;
            ++oracle_rows;
        }

        SwitchingMainTerms main = switching_main_terms(ctx, dseq, u, v);
        if (!spec.has_oracle) {
            double diff = std::fabs(y2.mean_value - main.y_2);
            mc_gate_pass = diff <= 3.0 * y2.se;
            mc_gate_detail = "|" + format_double(y2.mean_value) + " - " +
                             format_double(main.y_2) + "| vs 3se = " +
                             format_double(3.0 * y2.se);
        }

        report.add_row({format_int(spec.n), format_int(spec.d), edge_set_label(spec.h1),
                        edge_set_label(spec.h2), exact_rat_cell, exact_cell,
                        format_double(formula_ref), format_double(ratio),
                        format_double(se), within_cell, format_double(f_stats.mean_value),
                        format_double(b_stats.mean_value), format_double(xu.mean_value),
                        format_double(xu.se), format_double(main.x_u),
                        format_double(xv.mean_value), format_double(xv.se),
                        format_double(main.x_v), format_double(xuv.mean_value),
                        format_double(y1.mean_value), format_double(y1.se),
                        format_double(main.y_1), format_double(y2.mean_value),
                        format_double(y2.se), format_double(main.y_2)});
    }

    bool rate_pass = within * 100 >= 95 * oracle_rows;
    report.add_gate("exact_within_3se_rate", rate_pass,
                    std::to_string(within) + "/" + std::to_string(oracle_rows) +
                        " oracle contexts within 3 standard errors (need 95%)");
    report.add_gate("mc_y2_main_term", mc_gate_pass, mc_gate_detail);
    return report;
}

StatReport run_moment_profile(const ExperimentConfig& cfg) {
    StatReport report;
    report.kind = to_string(ExperimentKind::MomentProfile);
    stamp(report, cfg);
    const long long samples = effective_samples(cfg);
    report.add_metadata("samples", std::to_string(samples));
    report.add_metadata("k_max", std::to_string(cfg.k_max));

    report.add_column("n", "config");
    report.add_column("d", "config");
    report.add_column("mode", "config");
    report.add_column("k", "config");
    report.add_column("samples", "config");
    report.add_column("mu_hat", "formula");
    report.add_column("mu_hat_pow_k", "formula");
    report.add_column("exact_moment_rational", "oracle-exact");
    report.add_column("exact_moment", "oracle-exact");
    report.add_column("exact_ratio", "oracle-exact");
    report.add_column("mc_moment", "monte-carlo");
    report.add_column("mc_moment_se", "monte-carlo");
    report.add_column("mc_ratio", "monte-carlo");
    report.add_column("high_variance", "config");

    const Pattern triangle = Pattern::cycle(3);

    for (std::size_t pt = 0; pt < cfg.grid.size(); ++pt) {
        auto [n, d] = cfg.grid[pt];
        double mu_hat = mu_pattern(triangle, d, n).value;

        if (enumeration_in_budget(n, d)) {
            CountDistribution dist = exact_count_distribution(n, d, triangle);
            std::vector<Rat> moments = factorial_moments(dist, cfg.k_max);
            for (int k = 1; k <= cfg.k_max; ++k) {
                double mu_k = std::pow(mu_hat, k);
                const Rat& moment = moments[static_cast<std::size_t>(k - 1)];
                std::string ratio_cell =
                    mu_k > 0.0 ? format_double(to_double(moment) / mu_k) : "";
                report.add_row({format_int(n), format_int(d), "exact", format_int(k), "",
                                format_double(mu_hat), format_double(mu_k),
                                format_rat(moment), format_double(to_double(moment)),
                                ratio_cell, "", "", "", bool_cell(k > 3)});
            }
            continue;
        }

        SamplerConfig scfg;
        scfg.n = n;
        scfg.d = d;
        scfg.seed = cfg.seed;
        scfg.validate();
        std::vector<long long> zs(static_cast<std::size_t>(samples));
        parallel_for(zs.size(), [&](std::size_t i) {
            uint64_t stream = (static_cast<uint64_t>(pt + 1) << 32) | i;
            SimpleGraph g = sample_regular(scfg, stream);
            zs[i] = static_cast<long long>(enumerate_triangles(g).size());
        });

        for (int k = 1; k <= cfg.k_max; ++k) {
            std::vector<double> vals(zs.size());
            for (std::size_t i = 0; i < zs.size(); ++i)
                vals[i] = falling_double(zs[i], k);
            MeanSe stats = mean_se(vals);
            double mu_k = std::pow(mu_hat, k);
            std::string ratio_cell =
                mu_k > 0.0 ? format_double(stats.mean_value / mu_k) : "";
            report.add_row({format_int(n), format_int(d), "monte-carlo", format_int(k),
                            format_int(samples), format_double(mu_hat),
                            format_double(mu_k), "", "", "",
                            format_double(stats.mean_value), format_double(stats.se),
                            ratio_cell, bool_cell(k > 3)});
        }
    }
    return report;
}

StatReport run_hole_census(const ExperimentConfig& cfg) {
    StatReport report;
    report.kind = to_string(ExperimentKind::HoleCensus);
    stamp(report, cfg);
    auto [n, d] = cfg.grid.front();
    const int k = cfg.tuple_size;
    const long long graphs = cfg.tuples;
    report.add_metadata("n", std::to_string(n));
    report.add_metadata("d", std::to_string(d));
    report.add_metadata("tuple_size", std::to_string(k));
    report.add_metadata("graphs", std::to_string(graphs));

    report.add_column("graph_index", "config");
    report.add_column("triangle_count", "monte-carlo");
    report.add_column("triangle_bound_ok", "monte-carlo");
    report.add_column("tuple_selected", "monte-carlo");
    report.add_column("hole_count", "monte-carlo");
    report.add_column("hole_bound_ok", "monte-carlo");

    SamplerConfig scfg;
    scfg.n = n;
    scfg.d = d;
    scfg.seed = cfg.seed;
    scfg.validate();

    struct GraphRow {
        long long triangles = 0;
        bool triangle_ok = false;
        bool selected = false;
        long long holes = 0;
        bool hole_ok = false;
    };
    std::vector<GraphRow> rows(static_cast<std::size_t>(graphs));
    // hole_bound: holes^2 <= 9 * (3k)^3 = 243 k^3, checked in exact integers.
    const long long bound_rhs = 243LL * static_cast<long long>(k) *
                                static_cast<long long>(k) * static_cast<long long>(k);

    parallel_for(rows.size(), [&](std::size_t i) {
        SimpleGraph g = sample_regular(scfg, static_cast<uint64_t>(i));
        std::vector<std::array<int, 3>> tris = enumerate_triangles(g);
        GraphRow& row = rows[i];
        row.triangles = static_cast<long long>(tris.size());
        row.triangle_ok = triangle_bound_holds(g);
        if (row.triangles < k) return;

        SplitRng rng(cfg.seed, (uint64_t{1} << 32) + i);
        std::vector<std::size_t> idx(tris.size());
        for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
        for (int j = 0; j < k; ++j) {
            std::size_t pick =
                static_cast<std::size_t>(j) +
                static_cast<std::size_t>(rng.next_below(idx.size() - static_cast<std::size_t>(j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[pick]);
        }
        std::vector<std::size_t> chosen(idx.begin(), idx.begin() + k);
        std::sort(chosen.begin(), chosen.end());
        std::vector<std::array<int, 3>> selected;
        selected.reserve(static_cast<std::size_t>(k));
        for (std::size_t j : chosen) selected.push_back(tris[j]);

        row.selected = true;
        row.holes = hole_count(TriangleTuple(std::move(selected)));
        row.hole_ok = row.holes * row.holes <= bound_rhs;
    });

    long long selected_count = 0;
    long long triangle_ok_count = 0;
    long long hole_ok_count = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const GraphRow& row = rows[i];
        triangle_ok_count += row.triangle_ok ? 1 : 0;
        if (row.selected) {
            ++selected_count;
            hole_ok_count += row.hole_ok ? 1 : 0;
        }
        report.add_row({format_int(static_cast<long long>(i)), format_int(row.triangles),
                        bool_cell(row.triangle_ok), bool_cell(row.selected),
                        row.selected ? format_int(row.holes) : "",
                        row.selected ? bool_cell(row.hole_ok) : ""});
    }

    report.add_metadata("selected_count", std::to_string(selected_count));
    report.add_metadata("skipped_count", std::to_string(graphs - selected_count));
    report.add_gate("all_graph_triangle_bounds", triangle_ok_count == graphs,
                    std::to_string(triangle_ok_count) + "/" + std::to_string(graphs) +
                        " graphs satisfy #triangles <= 3 |E|^(3/2)");
    report.add_gate("no_hole_bound_violations", hole_ok_count == selected_count,
                    std::to_string(hole_ok_count) + "/" + std::to_string(selected_count) +
                        " tuples satisfy holes <= 3 (3k)^(3/2)");
    return report;
}

StatReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
    case ExperimentKind::ErrorScaling: return run_error_scaling(cfg);
    case ExperimentKind::TriangleNormality: return run_triangle_normality(cfg);
    case ExperimentKind::SwitchingValidation: return run_switching_validation(cfg);
    case ExperimentKind::MomentProfile: return run_moment_profile(cfg);
    case ExperimentKind::HoleCensus: return run_hole_census(cfg);
    }
    throw BadInputError("unknown experiment kind");
}

} // namespace rrg
