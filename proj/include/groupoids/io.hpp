#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "groupoids/catalog.hpp"
#include "groupoids/enumerate.hpp"
#include "groupoids/table.hpp"

namespace groupoids {

inline std::string_view engine_name(Engine e) {
    return e == Engine::Naive ? "naive" : "pruned";
}

inline std::string_view class_label(BolMoufangClass c) {
    switch (c) {
        case BolMoufangClass::Classical: return "classical";
        case BolMoufangClass::Generalized: return "generalized";
        default: return "neither";
    }
}

/// {order, cells, encode} with 1-based cell values.
inline nlohmann::json table_json(const CayleyTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 1; a <= t.order(); ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 1; b <= t.order(); ++b) row.push_back(t.value(a, b));
        rows.push_back(std::move(row));
    }
    return {{"order", t.order()}, {"cells", std::move(rows)}, {"encode", t.encode()}};
}

/// One count result bound to the key/class/identity columns the reports use.
struct ReportRow {
    std::string key;       // catalog key, or "-" for ad-hoc expressions
    std::string klass;     // classical / generalized / neither
    std::string identity;  // compact text
    CountReport report;
};

inline std::string csv_header() { return "key,class,identity,order,raw,iso,iso_anti,engine"; }

inline std::string csv_row(const ReportRow& row) {
    auto opt = [](const std::optional<std::uint64_t>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    return row.key + ",\"" + row.klass + "\",\"" + row.identity + "\"," +
           std::to_string(row.report.order) + "," + std::to_string(row.report.raw_count) + "," +
           opt(row.report.iso_classes) + "," + opt(row.report.iso_anti_classes) + "," +
           std::string(engine_name(row.report.engine));
}

/// Timing is excluded by default so JSON output is byte-stable across runs.
inline nlohmann::json row_json(const ReportRow& row, bool with_timing = false) {
    nlohmann::json j{{"key", row.key},
                     {"class", row.klass},
                     {"identity", row.identity},
                     {"order", row.report.order},
                     {"raw", row.report.raw_count},
                     {"engine", std::string(engine_name(row.report.engine))}};
    if (row.report.iso_classes) j["iso"] = *row.report.iso_classes;
    if (row.report.iso_anti_classes) j["iso_anti"] = *row.report.iso_anti_classes;
    if (with_timing) {
        j["elapsed_seconds"] = row.report.elapsed_seconds;
        j["nodes_visited"] = row.report.nodes_visited;
    }
    return j;
}

inline nlohmann::json catalog_entry_json(const CatalogEntry& e) {
    nlohmann::json expected = nlohmann::json::object();
    for (const auto& [order, counts] : e.expected) {
        nlohmann::json c{{"raw", counts.raw}};
        if (counts.iso) c["iso"] = *counts.iso;
        if (counts.iso_anti) c["iso_anti"] = *counts.iso_anti;
        expected[std::to_string(order)] = std::move(c);
    }
    return {{"key", e.key},
            {"class", std::string(class_label(classify(e.identity)))},
            {"name", e.display_name},
            {"identity",
             {{"compact", format_identity(e.identity, Grammar::Compact)},
              {"explicit", format_identity(e.identity, Grammar::Explicit)}}},
            {"expected", std::move(expected)}};
}

inline nlohmann::json catalog_json(CatalogFilter filter = CatalogFilter::All) {
    nlohmann::json out = nlohmann::json::array();
    for (const CatalogEntry* e : catalog_list(filter)) out.push_back(catalog_entry_json(*e));
    return out;
}

/// One row per (entry, recorded order).
inline std::string catalog_csv(CatalogFilter filter = CatalogFilter::All) {
    std::string out = "key,class,name,identity_compact,identity_explicit,order,raw,iso,iso_anti\n";
    for (const CatalogEntry* e : catalog_list(filter)) {
        for (const auto& [order, counts] : e->expected) {
            out += e->key + ",\"" + std::string(class_label(classify(e->identity))) + "\",\"" +
                   e->display_name + "\",\"" + format_identity(e->identity, Grammar::Compact) +
                   "\",\"" + format_identity(e->identity, Grammar::Explicit) + "\"," +
                   std::to_string(order) + "," + std::to_string(counts.raw) + ",";
            if (counts.iso) out += std::to_string(*counts.iso);
            out += ",";
            if (counts.iso_anti) out += std::to_string(*counts.iso_anti);
            out += "\n";
        }
    }
    return out;
}

}  // namespace groupoids
