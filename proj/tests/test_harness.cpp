#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "rrg/errors.hpp"
#include "rrg/experiments.hpp"
#include "rrg/report.hpp"

using namespace rrg;

namespace {

std::size_t col_index(const StatReport& report, const std::string& name) {
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        if (report.columns[i].name == name) return i;
    REQUIRE_MESSAGE(false, "missing column " << name);
    return 0;
}

std::string meta_value(const StatReport& report, const std::string& key) {
    for (const auto& [k, v] : report.metadata)
        if (k == key) return v;
    return "";
}

bool has_meta_prefix(const StatReport& report, const std::string& prefix) {
    for (const auto& [k, v] : report.metadata)
        if (k.rfind(prefix, 0) == 0) return true;
    return false;
}

StatReport sample_report() {
    StatReport r;
    r.kind = "unit-test";
    r.add_metadata("alpha", "1");
    r.add_metadata("beta", "two words");
    r.add_column("plain", "config");
    r.add_column("tricky", "monte-carlo");
    r.add_row({"a,b", "say \"hi\""});
    r.add_row({"plain", "line\nbreak"});
    r.add_gate("first-gate", true, "ok");
    return r;
}

} // namespace

TEST_CASE("experiment names round-trip") {
    for (ExperimentKind kind :
         {ExperimentKind::ErrorScaling, ExperimentKind::TriangleNormality,
          ExperimentKind::SwitchingValidation, ExperimentKind::MomentProfile,
          ExperimentKind::HoleCensus})
        CHECK(parse_experiment(to_string(kind)) == kind);
    CHECK(to_string(ExperimentKind::ErrorScaling) == "error-scaling");
    CHECK(to_string(ExperimentKind::HoleCensus) == "hole-census");
    CHECK_THROWS_AS(parse_experiment("coverage"), BadInputError);
}

TEST_CASE("kind defaults are pinned") {
    ExperimentConfig scaling = default_config(ExperimentKind::ErrorScaling);
    std::vector<std::pair<int, int>> scaling_grid = {{6, 3}, {8, 3}, {10, 3}};
    CHECK(scaling.grid == scaling_grid);
    CHECK(scaling.samples == 0);

    ExperimentConfig normality = default_config(ExperimentKind::TriangleNormality);
    std::vector<std::pair<int, int>> normality_grid = {{2000, 20}};
    CHECK(normality.grid == normality_grid);
    CHECK(normality.samples == 2000);

    ExperimentConfig switching = default_config(ExperimentKind::SwitchingValidation);
    std::vector<std::pair<int, int>> switching_grid = {{6, 3}, {8, 3}};
    CHECK(switching.grid == switching_grid);
    CHECK(switching.samples == 500);

    ExperimentConfig moments = default_config(ExperimentKind::MomentProfile);
    std::vector<std::pair<int, int>> moments_grid = {{6, 3}, {2000, 20}};
    CHECK(moments.grid == moments_grid);
    CHECK(moments.samples == 2000);
    CHECK(moments.k_max == 3);

    ExperimentConfig holes = default_config(ExperimentKind::HoleCensus);
    std::vector<std::pair<int, int>> holes_grid = {{200, 8}};
    CHECK(holes.grid == holes_grid);
    CHECK(holes.tuple_size == 20);
    CHECK(holes.tuples == 10000);

    for (const ExperimentConfig& cfg : {scaling, normality, switching, moments, holes})
        CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("canonical strings and config hashing are stable") {
    ExperimentConfig cfg = default_config(ExperimentKind::ErrorScaling);
    CHECK(cfg.canonical() ==
          "kind=error-scaling;grid=6x3,8x3,10x3;samples=0;seed=0;"
          "k_max=3;tuple_size=20;tuples=10000");

    // Output destination and format are presentation concerns: not hashed.
    ExperimentConfig json_out = cfg;
    json_out.format = "json";
    json_out.out_path = "/tmp/somewhere.json";
    CHECK(json_out.canonical() == cfg.canonical());

    ExperimentConfig reseeded = cfg;
    reseeded.seed = 1;
    CHECK(reseeded.canonical() != cfg.canonical());
    CHECK(config_hash(reseeded.canonical()) != config_hash(cfg.canonical()));

    // FNV-1a offset basis: the hash of the empty string.
    CHECK(config_hash("") == "cbf29ce484222325");
}

TEST_CASE("JSON experiment configs parse with defaults and validation") {
    ExperimentConfig full = config_from_json_text(
        R"({"kind":"moment-profile","grid":[[30,4]],"samples":50,)"
        R"("seed":6,"k_max":2,"format":"json","out":"/tmp/out.json"})");
    CHECK(full.kind == ExperimentKind::MomentProfile);
    std::vector<std::pair<int, int>> expected_grid = {{30, 4}};
    CHECK(full.grid == expected_grid);
    CHECK(full.samples == 50);
    CHECK(full.seed == 6);
    CHECK(full.k_max == 2);
    CHECK(full.format == "json");
    CHECK(full.out_path == "/tmp/out.json");

    // Omitted fields inherit the kind defaults.
    ExperimentConfig partial = config_from_json_text(R"({"kind":"triangle-normality"})");
    std::vector<std::pair<int, int>> normality_grid = {{2000, 20}};
    CHECK(partial.grid == normality_grid);
    CHECK(partial.samples == 2000);
    CHECK(partial.format == "csv");

    CHECK_THROWS_AS(config_from_json_text("{"), BadInputError);
    CHECK_THROWS_AS(config_from_json_text("[1,2]"), BadInputError);
    CHECK_THROWS_AS(config_from_json_text("{}"), BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":5})"), BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":"error-scaling","grid":"x"})"),
                    BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":"error-scaling","grid":[[6]]})"),
                    BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":"error-scaling","samples":-1})"),
                    BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":"error-scaling","format":"xml"})"),
                    BadInputError);
    CHECK_THROWS_AS(config_from_json_text(R"({"kind":"error-scaling","grid":[]})"),
                    BadInputError);
}

TEST_CASE("single-point error-scaling report is fully pinned") {
    ExperimentConfig cfg = default_config(ExperimentKind::ErrorScaling);
    cfg.grid = {{6, 3}};
    cfg.seed = 2;
    StatReport report = run_error_scaling(cfg);

    CHECK(report.kind == "error-scaling");
    REQUIRE(report.rows.size() == 3); // empty, disjoint-edge, edge-at-u
    std::size_t ctx = col_index(report, "context");
    std::size_t exact_rational = col_index(report, "exact_rational");
    CHECK(report.rows[0][ctx] == "empty");
    CHECK(report.rows[0][exact_rational] == "3/5");
    CHECK(report.rows[1][ctx] == "disjoint-edge");
    CHECK(report.rows[2][ctx] == "edge-at-u");

    // A single grid point cannot support a slope fit.
    CHECK_FALSE(has_meta_prefix(report, "refined_slope"));
    REQUIRE(report.gates.size() == 1);
    CHECK(report.gates[0].name == "refined_beats_baseline_everywhere");
    CHECK(report.all_gates_pass());
}

TEST_CASE("triangle normality on an oracle point emits exact rows only") {
    ExperimentConfig cfg = default_config(ExperimentKind::TriangleNormality);
    cfg.grid = {{6, 3}};
    StatReport report = run_triangle_normality(cfg);

    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][col_index(report, "mode")] == "exact");
    CHECK(report.rows[0][col_index(report, "exact_mean_rational")] == "12/7");
    // Monte Carlo gates only apply to sampled points.
    CHECK(report.gates.empty());
    CHECK(report.all_gates_pass());
}

TEST_CASE("moment profile on an oracle point pins the factorial moments") {
    ExperimentConfig cfg = default_config(ExperimentKind::MomentProfile);
    cfg.grid = {{6, 3}};
    cfg.k_max = 3;
    StatReport report = run_moment_profile(cfg);

    REQUIRE(report.rows.size() == 3);
    std::size_t k_col = col_index(report, "k");
    std::size_t moment_col = col_index(report, "exact_moment_rational");
    CHECK(report.rows[0][k_col] == "1");
    CHECK(report.rows[0][moment_col] == "12/7");
    CHECK(report.rows[1][moment_col] == "12/7");
    CHECK(report.rows[2][moment_col] == "0");
}

TEST_CASE("hole census runs on a reduced grid") {
    ExperimentConfig cfg = default_config(ExperimentKind::HoleCensus);
    cfg.grid = {{60, 5}};
    cfg.tuples = 40;
    cfg.tuple_size = 3;
    cfg.seed = 4;
    StatReport report = run_hole_census(cfg);

    CHECK(meta_value(report, "n") == "60");
    CHECK(meta_value(report, "d") == "5");
    CHECK(meta_value(report, "graphs") == "40");
    CHECK(report.rows.size() == 40);
    long long selected = std::stoll(meta_value(report, "selected_count"));
    long long skipped = std::stoll(meta_value(report, "skipped_count"));
    CHECK(selected + skipped == 40);
    REQUIRE(report.gates.size() == 2);
    CHECK(report.gates[0].name == "all_graph_triangle_bounds");
    CHECK(report.gates[1].name == "no_hole_bound_violations");
    CHECK(report.all_gates_pass());
}

TEST_CASE("reports round-trip through JSON and escape CSV correctly") {
    StatReport r = sample_report();
    std::string csv = to_csv(r);
    CHECK(csv.find("\"a,b\"") != std::string::npos);
    CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
    CHECK(csv.find("\"line\nbreak\"") != std::string::npos);
    // Unremarkable cells stay unquoted.
    CHECK(csv.find("\"plain\"") == std::string::npos);

    StatReport back = report_from_json(to_json(r));
    CHECK(back == r);

    StatReport empty;
    empty.kind = "empty-kind";
    CHECK(report_from_json(to_json(empty)) == empty);
    CHECK(to_csv(empty).rfind("# report,kind,empty-kind", 0) == 0);
    CHECK(empty.all_gates_pass()); // no gates: vacuously true

    StatReport failing = sample_report();
    failing.add_gate("second-gate", false, "deliberate");
    CHECK_FALSE(failing.all_gates_pass());

    CHECK_THROWS_AS(report_from_json("not json"), BadInputError);
    CHECK_THROWS_AS(report_from_json("{\"schema\":\"other\"}"), BadInputError);
}

TEST_CASE("report writing validates format and propagates IO failures") {
    StatReport r = sample_report();
    CHECK_THROWS_AS(write_report(r, "xml", "/tmp/rrg_test_report.xml"), BadInputError);
    const std::string bad_path = "/nonexistent-rrg-dir/report.csv";
    CHECK_THROWS_WITH_AS(write_report(r, "csv", bad_path),
                         doctest::Contains(bad_path.c_str()), IoError);

    StatReport mismatched = sample_report();
    CHECK_THROWS_AS(mismatched.add_row({"only-one-cell"}), BadInputError);
}

TEST_CASE("experiment reports are byte-deterministic") {
    ExperimentConfig scaling = default_config(ExperimentKind::ErrorScaling);
    scaling.grid = {{6, 3}};
    scaling.seed = 5;
    CHECK(to_csv(run_error_scaling(scaling)) == to_csv(run_error_scaling(scaling)));

    // A Monte Carlo kind, including under different worker counts.
    ExperimentConfig moments = default_config(ExperimentKind::MomentProfile);
    moments.grid = {{30, 4}};
    moments.samples = 50;
    moments.k_max = 2;
    moments.seed = 6;
    std::string first = to_csv(run_moment_profile(moments));
    CHECK(to_csv(run_moment_profile(moments)) == first);
    setenv("RRG_WORKERS", "1", 1);
    std::string serial = to_csv(run_moment_profile(moments));
    setenv("RRG_WORKERS", "3", 1);
    std::string threaded = to_csv(run_moment_profile(moments));
    unsetenv("RRG_WORKERS");
    CHECK(serial == first);
    CHECK(threaded == first);
}

TEST_CASE("experiment dispatch validates and guards budgets") {
    ExperimentConfig out_of_range = default_config(ExperimentKind::ErrorScaling);
    out_of_range.grid = {{20, 3}};
    CHECK_THROWS_AS(run_error_scaling(out_of_range), CapabilityError);

    ExperimentConfig bad_format = default_config(ExperimentKind::ErrorScaling);
    bad_format.grid = {{6, 3}};
    bad_format.format = "xml";
    CHECK_THROWS_AS(run_experiment(bad_format), BadInputError);
}
