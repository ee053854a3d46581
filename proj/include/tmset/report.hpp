// Machine reports: an ordered JSON document plus CSV-rendered tables.
// Output is byte-deterministic: fixed key order, no timestamps, rationals
// as "num/den" strings with decimal renderings alongside.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tmset/numeric.hpp"

namespace tmset {

using ordered_json = nlohmann::ordered_json;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string command;
    ordered_json args = ordered_json::object();
    std::string spec_digest;
    bool ok = true;
    std::vector<std::string> notes;
    ordered_json results = ordered_json::object();
    std::vector<Table> tables;

    std::string to_json() const;
    std::string to_csv() const;
    std::string render(const std::string& format) const;  // "json" | "csv"
};

// {"rat": "1/8", "dec": "0.125"}
ordered_json rat_json(const Rat& r, int sig = 12);

}  // namespace tmset
