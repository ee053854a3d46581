#include "tmset/report.hpp"

namespace tmset {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Report::to_json() const {
    ordered_json doc = ordered_json::object();
    doc["tool"] = "tmset";
    doc["format_version"] = 1;
    doc["command"] = command;
    doc["args"] = args;
    if (!spec_digest.empty()) doc["spec_digest"] = spec_digest;
    doc["ok"] = ok;
    doc["notes"] = notes;
    doc["results"] = results;
    return doc.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::string out;
    out += "# tmset report: " + command + "\n";
    if (!spec_digest.empty()) out += "# spec_digest: " + spec_digest + "\n";
    out += std::string("# ok: ") + (ok ? "true" : "false") + "\n";
    for (const auto& note : notes) out += "# note: " + note + "\n";
    for (const auto& table : tables) {
        out += "# table: " + table.name + "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out += ',';
            out += csv_field(table.columns[i]);
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += csv_field(row[i]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json();
    if (format == "csv") return to_csv();
    throw Error("unknown report format: " + format);
}

ordered_json rat_json(const Rat& r, int sig) {
    ordered_json v = ordered_json::object();
    v["rat"] = rat_string(r);
    v["dec"] = decimal_string(r, sig);
    return v;
}

}  // namespace tmset
