#ifndef FUZZY_KLASSEN_REPORT_HPP_
#define FUZZY_KLASSEN_REPORT_HPP_

#include <cstdio>
#include <optional>
#include <string>

#include "json.hpp"

#include "error.hpp"
#include "klassen.hpp"
#include "pipeline.hpp"

namespace fuzzy_klassen
{

using ordered_json = nlohmann::ordered_json;

namespace detail
{

inline ordered_json counts_json(const std::map<Quadrant, int>& counts)
{
    ordered_json j = ordered_json::object();
    for (Quadrant q : all_quadrants)
        j[std::string(to_string(q))] = counts.at(q);
    return j;
}

inline Quadrant quadrant_from(const ordered_json& j)
{
    const auto q = parse_quadrant(j.get<std::string>());
    if (!q)
        throw Error(Errc::invalid_input, "bad quadrant '" + j.get<std::string>() + "' in report");
    return *q;
}

} // namespace detail

/// Canonical report body. Holds no timestamps, so identical runs serialize identically.
inline ordered_json report_to_json(const DisparityReport& report)
{
    ordered_json j;
    j["district"] = report.district_region;
    j["reference"] = report.reference_region;
    j["operators"] = report.operators;
    j["config_digest"] = report.config_digest;

    ordered_json rows = ordered_json::array();
    for (const ReportRow& r : report.rows) {
        ordered_json row;
        row["sector"] = r.sector;
        row["district"] = {{"rd", r.district.rd}, {"rc", r.district.rc}};
        row["reference"] = {{"rd", r.reference.rd}, {"rc", r.reference.rc}};
        row["fuzzy"] = std::string(to_string(r.fuzzy));
        row["traditional"] = r.traditional ? ordered_json(std::string(to_string(*r.traditional))) : ordered_json();
        row["agree"] = r.agrees() ? ordered_json(*r.agrees()) : ordered_json();
        if (r.district_crisp)
            row["district_crisp"] = {{"growth_rate", r.district_crisp->growth_rate},
                                     {"contribution", r.district_crisp->contribution}};
        if (r.reference_crisp)
            row["reference_crisp"] = {{"growth_rate", r.reference_crisp->growth_rate},
                                      {"contribution", r.reference_crisp->contribution}};
        rows.push_back(std::move(row));
    }
    j["sectors"] = std::move(rows);

    ordered_json summary;
    summary["fuzzy"] = detail::counts_json(report.fuzzy_counts());
    if (report.has_traditional()) {
        summary["traditional"] = detail::counts_json(report.traditional_counts());
        summary["agreements"] = report.agreements();
        summary["disagreeing_sectors"] = report.disagreeing_sectors();
    } else {
        summary["traditional"] = nullptr;
        summary["agreements"] = nullptr;
        summary["disagreeing_sectors"] = nullptr;
    }
    j["summary"] = std::move(summary);
    return j;
}

inline std::string write_report_json(const DisparityReport& report) { return report_to_json(report).dump(2) + "\n"; }

inline ordered_json metadata_to_json(const DisparityReport& report)
{
    return {{"config_digest", report.config_digest},
            {"generated_at", report.metadata.generated_at},
            {"tool_version", report.metadata.tool_version}};
}

/// Inverse of report_to_json; summaries are recomputed from the rows.
inline DisparityReport report_from_json(const ordered_json& j)
{
    try {
        DisparityReport report;
        report.district_region = j.at("district").get<std::string>();
        report.reference_region = j.at("reference").get<std::string>();
        report.operators = j.at("operators").get<std::string>();
        report.config_digest = j.at("config_digest").get<std::string>();
        for (const auto& row : j.at("sectors")) {
            ReportRow r;
            r.sector = row.at("sector").get<std::string>();
            r.district = {row.at("district").at("rd").get<double>(), row.at("district").at("rc").get<double>()};
            r.reference = {row.at("reference").at("rd").get<double>(), row.at("reference").at("rc").get<double>()};
            r.fuzzy = detail::quadrant_from(row.at("fuzzy"));
            if (!row.at("traditional").is_null())
                r.traditional = detail::quadrant_from(row.at("traditional"));
            if (row.contains("district_crisp"))
                r.district_crisp = SectorIndicators{row["district_crisp"].at("growth_rate").get<double>(),
                                                    row["district_crisp"].at("contribution").get<double>()};
            if (row.contains("reference_crisp"))
                r.reference_crisp = SectorIndicators{row["reference_crisp"].at("growth_rate").get<double>(),
                                                     row["reference_crisp"].at("contribution").get<double>()};
            report.rows.push_back(std::move(r));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::invalid_input, std::string("malformed report: ") + e.what());
    }
}

inline DisparityReport read_report_json(const std::string& text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::invalid_input, std::string("malformed report: ") + e.what());
    }
    return report_from_json(j);
}

/// Aligned text table with the columns of the published disparity table.
inline std::string write_report_table(const DisparityReport& report)
{
    std::string out;
    char buf[256];
    out += "Fuzzy-Klassen disparity: " + report.district_region + " vs " + report.reference_region + "\n";
    out += "operators: " + report.operators + "\n\n";
    std::snprintf(buf, sizeof buf, "%-8s %9s %9s %9s %9s  %-5s  %-11s  %s\n", "Sector", "Dist RD", "Dist RC", "Ref RD",
                  "Ref RC", "Fuzzy", "Traditional", "Agree");
    out += buf;
    for (const ReportRow& r : report.rows) {
        const std::string trad = r.traditional ? std::string(to_string(*r.traditional)) : "-";
        const std::string agree = r.agrees() ? (*r.agrees() ? "yes" : "NO") : "-";
        std::snprintf(buf, sizeof buf, "%-8s %9.2f %9.2f %9.2f %9.2f  %-5s  %-11s  %s\n", r.sector.c_str(),
                      r.district.rd, r.district.rc, r.reference.rd, r.reference.rc,
                      std::string(to_string(r.fuzzy)).c_str(), trad.c_str(), agree.c_str());
        out += buf;
    }

    auto counts_line = [&](const char* name, const std::map<Quadrant, int>& counts) {
        std::string line = std::string(name) + ":";
        for (Quadrant q : all_quadrants)
            line += " " + std::string(to_string(q)) + "=" + std::to_string(counts.at(q));
        return line + "\n";
    };
    out += "\n" + counts_line("fuzzy", report.fuzzy_counts());
    if (report.has_traditional()) {
        out += counts_line("traditional", report.traditional_counts());
        std::snprintf(buf, sizeof buf, "agreement: %d/%zu (%.1f%%)\n", report.agreements(), report.rows.size(),
                      100.0 * report.agreements() / static_cast<double>(report.rows.size()));
        out += buf;
    } else {
        out += "traditional: not available (no raw reference data)\n";
    }
    return out;
}

} // namespace fuzzy_klassen

#endif
