#ifndef RRG_REPORT_HPP
#define RRG_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrg/rational.hpp"

namespace rrg {

// Tabular experiment report. Cells are stored as already-formatted strings
// (doubles through format_double, rationals through format_rat) so that CSV
// and JSON emission are byte-deterministic and round-trip losslessly.
//
// Column provenance values: "config" (input parameter), "oracle-exact"
// (exhaustive enumeration), "formula" (closed-form estimate), "monte-carlo"
// (sampled). Cells may be empty when a column does not apply to a row.
struct ReportColumn {
    std::string name;
    std::string provenance;
};

struct ReportGate {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct StatReport {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> metadata; // ordered pairs
    std::vector<ReportColumn> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<ReportGate> gates;

    void add_metadata(const std::string& key, const std::string& value);
    void add_column(const std::string& name, const std::string& provenance);
    void add_row(std::vector<std::string> cells); // size must match columns
    void add_gate(const std::string& name, bool pass, const std::string& detail);
    bool all_gates_pass() const;
};

bool operator==(const StatReport& a, const StatReport& b);

// Shortest-round-trip formatting ("%.17g") used for every floating cell.
std::string format_double(double x);
std::string format_rat(const Rat& x);
std::string format_int(long long x);

// FNV-1a hash of a canonical config string, as fixed-width hex.
std::string config_hash(const std::string& canonical);

std::string to_csv(const StatReport& report);
std::string to_json(const StatReport& report);
StatReport report_from_json(const std::string& text);

// format is "csv" or "json"; failures carry the path in the message.
void write_report(const StatReport& report, const std::string& format,
                  const std::string& path);

} // namespace rrg

#endif
