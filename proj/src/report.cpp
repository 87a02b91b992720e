#include "rrg/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rrg/errors.hpp"
#include "json.hpp"

namespace rrg {

void StatReport::add_metadata(const std::string& key, const std::string& value) {
    metadata.push_back({key, value});
}

void StatReport::add_column(const std::string& name, const std::string& provenance) {
    columns.push_back({name, provenance});
}

void StatReport::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw BadInputError("report row width does not match the column count");
    rows.push_back(std::move(cells));
}

void StatReport::add_gate(const std::string& name, bool pass, const std::string& detail) {
    gates.push_back({name, pass, detail});
}

bool StatReport::all_gates_pass() const {
    for (const ReportGate& gate : gates)
        if (!gate.pass) return false;
    return true;
}

bool operator==(const StatReport& a, const StatReport& b) {
    auto cols = [](const StatReport& r) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const ReportColumn& c : r.columns) out.push_back({c.name, c.provenance});
        return out;
    };
    auto gts = [](const StatReport& r) {
        std::vector<std::string> out;
        for (const ReportGate& g : r.gates)
            out.push_back(g.name + (g.pass ? "|1|" : "|0|") + g.detail);
        return out;
    };
    return a.kind == b.kind && a.metadata == b.metadata && cols(a) == cols(b) &&
           a.rows == b.rows && gts(a) == gts(b);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_rat(const Rat& x) { return to_string(x); }

std::string format_int(long long x) { return std::to_string(x); }

std::string config_hash(const std::string& canonical) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// CSV quoting per RFC 4180; applied only when needed so plain numeric cells
// stay byte-stable.
std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string to_csv(const StatReport& report) {
    std::ostringstream out;
    out << "# report,kind," << csv_escape(report.kind) << "\n";
    for (const auto& [key, value] : report.metadata)
        out << "# metadata," << csv_escape(key) << "," << csv_escape(value) << "\n";
    for (const ReportColumn& c : report.columns)
        out << "# provenance," << csv_escape(c.name) << "," << c.provenance << "\n";
    for (const ReportGate& g : report.gates)
        out << "# gate," << csv_escape(g.name) << "," << (g.pass ? "pass" : "fail")
            << "," << csv_escape(g.detail) << "\n";
    for (size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(report.columns[i].name);
    out << "\n";
    for (const auto& row : report.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
    return out.str();
}

std::string to_json(const StatReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "rrg-report";
    j["schema_version"] = "1";
    j["kind"] = report.kind;
    j["metadata"] = nlohmann::ordered_json::array();
    for (const auto& [key, value] : report.metadata)
        j["metadata"].push_back({{"key", key}, {"value", value}});
    j["columns"] = nlohmann::ordered_json::array();
    for (const ReportColumn& c : report.columns)
        j["columns"].push_back({{"name", c.name}, {"provenance", c.provenance}});
    j["rows"] = report.rows;
    j["gates"] = nlohmann::ordered_json::array();
    for (const ReportGate& g : report.gates)
        j["gates"].push_back({{"name", g.name}, {"pass", g.pass}, {"detail", g.detail}});
    return j.dump(2) + "\n";
}

StatReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw BadInputError(std::string("invalid report JSON: ") + e.what());
    }
    if (j.value("schema", "") != "rrg-report")
        throw BadInputError("not a report document");
    if (j.value("schema_version", "") != "1")
        throw BadInputError("unsupported report schema version");
    StatReport report;
    try {
        report.kind = j.at("kind").get<std::string>();
        for (const auto& m : j.at("metadata"))
            report.metadata.push_back({m.at("key").get<std::string>(),
                                       m.at("value").get<std::string>()});
        for (const auto& c : j.at("columns"))
            report.columns.push_back({c.at("name").get<std::string>(),
                                      c.at("provenance").get<std::string>()});
        for (const auto& row : j.at("rows"))
            report.rows.push_back(row.get<std::vector<std::string>>());
        for (const auto& g : j.at("gates"))
            report.gates.push_back({g.at("name").get<std::string>(),
                                    g.at("pass").get<bool>(),
                                    g.at("detail").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw BadInputError(std::string("malformed report JSON: ") + e.what());
    }
    for (const auto& row : report.rows)
        if (row.size() != report.columns.size())
            throw BadInputError("report row width does not match the column count");
    return report;
}

void write_report(const StatReport& report, const std::string& format,
                  const std::string& path) {
    std::string body;
    if (format == "csv")
        body = to_csv(report);
    else if (format == "json")
        body = to_json(report);
    else
        throw BadInputError("unknown report format: " + format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << body;
    if (!out.flush()) throw IoError("failed writing report file: " + path);
}

} // namespace rrg
