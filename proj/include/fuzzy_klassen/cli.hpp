#ifndef FUZZY_KLASSEN_CLI_HPP_
#define FUZZY_KLASSEN_CLI_HPP_

// Command implementations behind the fuzzy_klassen executable. Each command
// writes results to `out`, diagnostics to `err`, and returns the exit code:
// 0 success, 1 data error, 2 configuration or usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "inference.hpp"
#include "io.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "rule_base.hpp"

namespace fuzzy_klassen::cli
{

inline constexpr std::string_view tool_version = "1.0.0";
inline constexpr const char* config_env_var = "KLASSEN_FIS_CONFIG";

enum class ReportFormat { json, table };

struct RunConfig {
    std::string district;
    std::string reference;
    std::string district_scores;
    std::string reference_scores;
    std::string district_region;
    std::string reference_region;
    std::optional<int> year_t;
    std::optional<int> year_t1;
    std::string rules; // empty: built-in default table
    std::string output;
    std::string metadata;
    Locale locale = Locale::dot_decimal;
    ReportFormat format = ReportFormat::json;
    FisConfig fis;
};

inline ReportFormat parse_format(std::string_view s)
{
    if (s == "json-like" || s == "json")
        return ReportFormat::json;
    if (s == "table" || s == "text")
        return ReportFormat::table;
    throw Error(Errc::config_error, "unknown format '" + std::string(s) + "' (use json-like or table)");
}

namespace detail
{

inline std::vector<double> number_list(std::string_view value, std::string_view key)
{
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        const auto v = parse_number(cur);
        if (!v)
            throw Error(Errc::config_error, "bad number '" + cur + "' for " + std::string(key));
        out.push_back(*v);
        cur.clear();
    };
    for (char ch : value) {
        if (ch == ',' || ch == ';' || ch == ' ') {
            if (!trim(cur).empty())
                flush();
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty())
        flush();
    return out;
}

inline int parse_int(std::string_view value, std::string_view key)
{
    const auto v = parse_number(value);
    if (!v || *v != std::floor(*v))
        throw Error(Errc::config_error, "bad integer '" + std::string(value) + "' for " + std::string(key));
    return static_cast<int>(*v);
}

inline std::string resolve(std::string_view value, const std::filesystem::path& base)
{
    std::filesystem::path p{std::string(value)};
    if (p.empty() || p.is_absolute() || base.empty())
        return p.string();
    return (base / p).lexically_normal().string();
}

} // namespace detail

/// Parses a grid spec "1..100", "1:100" or "1,100".
inline Grid parse_grid(std::string_view value)
{
    std::string s(value);
    for (const char* sep : {"..", ":"})
        if (auto pos = s.find(sep); pos != std::string::npos)
            s.replace(pos, std::string_view(sep).size(), ",");
    const auto nums = detail::number_list(s, "grid");
    if (nums.size() != 2 || nums[0] != std::floor(nums[0]) || nums[1] != std::floor(nums[1]) || nums[0] >= nums[1])
        throw Error(Errc::config_error, "grid must be 'first..last' with integer first < last");
    return {static_cast<int>(nums[0]), static_cast<int>(nums[1])};
}

/**
 * Applies one `key = value` setting. Relative paths resolve against `base`
 * (the config file's directory). Recognised keys:
 *   district, reference, district_scores, reference_scores, district_region,
 *   reference_region, year_t, year_t1, rules, output, metadata, locale,
 *   format, grid, ops, rd_feet, rc_feet, breakpoints.<sector>,
 *   reference_breakpoints.<sector>
 */
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                          const std::filesystem::path& base = {})
{
    const std::string k(trim(key));
    const std::string v(trim(value));
    auto feet = [&](OutputFeet& f) {
        const auto nums = detail::number_list(v, k);
        if (nums.size() != 2 || !(nums[0] < nums[1]))
            throw Error(Errc::config_error, k + " needs two increasing numbers");
        f = {nums[0], nums[1]};
    };
    auto triple = [&](std::map<std::string, Breakpoints>& m, std::string_view sector) {
        const auto nums = detail::number_list(v, k);
        if (sector.empty() || nums.size() != 3)
            throw Error(Errc::config_error, k + " needs three numbers a, b, c");
        Breakpoints bp{nums[0], nums[1], nums[2]};
        check(bp);
        m[std::string(sector)] = bp;
    };

    if (k == "district") cfg.district = detail::resolve(v, base);
    else if (k == "reference") cfg.reference = detail::resolve(v, base);
    else if (k == "district_scores") cfg.district_scores = detail::resolve(v, base);
    else if (k == "reference_scores") cfg.reference_scores = detail::resolve(v, base);
    else if (k == "district_region") cfg.district_region = v;
    else if (k == "reference_region") cfg.reference_region = v;
    else if (k == "year_t") cfg.year_t = detail::parse_int(v, k);
    else if (k == "year_t1") cfg.year_t1 = detail::parse_int(v, k);
    else if (k == "rules") cfg.rules = detail::resolve(v, base);
    else if (k == "output") cfg.output = detail::resolve(v, base);
    else if (k == "metadata") cfg.metadata = detail::resolve(v, base);
    else if (k == "locale") cfg.locale = parse_locale(v);
    else if (k == "format") cfg.format = parse_format(v);
    else if (k == "grid") cfg.fis.grid = parse_grid(v);
    else if (k == "ops") cfg.fis.ops = parse_operator_set(v);
    else if (k == "rd_feet") feet(cfg.fis.rd_feet);
    else if (k == "rc_feet") feet(cfg.fis.rc_feet);
    else if (k.starts_with("breakpoints.")) triple(cfg.fis.breakpoints, std::string_view(k).substr(12));
    else if (k.starts_with("reference_breakpoints.")) triple(cfg.fis.reference_breakpoints, std::string_view(k).substr(22));
    else throw Error(Errc::config_error, "unknown config key '" + k + "'");
}

/// `key = value` lines; `#` comments and blank lines are skipped.
inline void apply_config_text(RunConfig& cfg, std::string_view text, const std::filesystem::path& base = {})
{
    for (const auto& [line_no, line] : data_lines(text)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::config_error, "expected 'key = value'", line_no);
        try {
            apply_setting(cfg, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1), base);
        } catch (const Error& e) {
            throw Error(Errc::config_error, e.detail(), line_no);
        }
    }
}

/// Config file (explicit path, else $KLASSEN_FIS_CONFIG when set), then overrides.
inline RunConfig load_run_config(const std::string& config_path,
                                 const std::vector<std::pair<std::string, std::string>>& overrides)
{
    RunConfig cfg;
    std::string path = config_path;
    if (path.empty())
        if (const char* env = std::getenv(config_env_var); env != nullptr)
            path = env;
    if (!path.empty()) {
        const auto text = read_file(path);
        if (!text)
            throw Error(Errc::config_error, "cannot read config file " + path);
        try {
            apply_config_text(cfg, *text, std::filesystem::path(path).parent_path());
        } catch (const Error& e) {
            throw Error(Errc::config_error, path + ": " + e.what());
        }
    }
    for (const auto& [k, v] : overrides)
        apply_setting(cfg, k, v);
    return cfg;
}

inline int exit_code_for(const Error& e) { return e.code() == Errc::config_error ? 2 : 1; }

namespace detail
{

inline std::string require_file(const std::string& path, const std::string& role)
{
    const auto text = read_file(path);
    if (!text)
        throw Error(Errc::config_error, "cannot read " + role + " " + path);
    return *text;
}

inline RuleBase load_rules(const RunConfig& cfg)
{
    if (cfg.rules.empty())
        return default_klassen_rules();
    const std::string text = require_file(cfg.rules, "rule file");
    try {
        return parse_rules(text, klassen_schema());
    } catch (const Error& e) {
        throw Error(Errc::config_error, cfg.rules + ": " + e.what());
    }
}

inline std::optional<YearPair> years(const RunConfig& cfg)
{
    if (cfg.year_t.has_value() != cfg.year_t1.has_value())
        throw Error(Errc::config_error, "set both year_t and year_t1 or neither");
    if (!cfg.year_t)
        return std::nullopt;
    return YearPair{*cfg.year_t, *cfg.year_t1};
}

inline std::optional<GrdpDataset> load_dataset(const RunConfig& cfg, const std::string& path, const std::string& region,
                                                const std::string& role)
{
    if (path.empty())
        return std::nullopt;
    const std::string text = require_file(path, role + " data file");
    try {
        return select_region(ingest(text, cfg.locale, years(cfg)), region, role + " data " + path);
    } catch (const Error& e) {
        if (e.code() == Errc::config_error)
            throw;
        throw Error(e.code(), path + ": " + e.what());
    }
}

inline RegionSource load_region(const RunConfig& cfg, const std::string& data_path, const std::string& scores_path,
                                const std::string& region, const std::string& role)
{
    if (!scores_path.empty()) {
        const std::string text = require_file(scores_path, role + " score file");
        try {
            InjectedScores s = read_scores(text, cfg.locale, region);
            if (s.region.empty())
                s.region = std::filesystem::path(scores_path).stem().string();
            return s;
        } catch (const Error& e) {
            throw Error(e.code(), scores_path + ": " + e.what());
        }
    }
    if (auto d = load_dataset(cfg, data_path, region, role))
        return *std::move(d);
    throw Error(Errc::config_error, "no " + role + " input: set " + role + " or " + role + "_scores");
}

inline std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline bool write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

/// Breakpoints for one sector: configured, else derived from the district data.
inline Breakpoints breakpoints_for(const RunConfig& cfg, const std::string& sector)
{
    if (auto it = cfg.fis.breakpoints.find(sector); it != cfg.fis.breakpoints.end())
        return it->second;
    if (auto d = load_dataset(cfg, cfg.district, cfg.district_region, "district")) {
        const SectorObservation& o = d->at(sector);
        const double series[] = {o.value_t, o.value_t1};
        return default_breakpoints(series);
    }
    throw Error(Errc::config_error, "no breakpoints for sector " + sector + " and no district data to derive them");
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace detail

/// Full fuzzy/crisp comparison report.
inline int cmd_analyze(const RunConfig& run, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        FisConfig fis = run.fis;
        fis.rules = detail::load_rules(run);
        const RegionSource district =
            detail::load_region(run, run.district, run.district_scores, run.district_region, "district");
        const RegionSource reference =
            detail::load_region(run, run.reference, run.reference_scores, run.reference_region, "reference");

        DisparityReport report = compare_methods(district, reference, fis);
        report.metadata = {detail::utc_now(), std::string(tool_version)};

        const std::string body =
            run.format == ReportFormat::json ? write_report_json(report) : write_report_table(report);
        if (run.output.empty()) {
            out << body;
        } else if (!detail::write_text(run.output, body)) {
            throw Error(Errc::config_error, "cannot write report to " + run.output);
        }
        if (!run.metadata.empty() && !detail::write_text(run.metadata, metadata_to_json(report).dump(2) + "\n"))
            throw Error(Errc::config_error, "cannot write metadata to " + run.metadata);
        return 0;
    });
}

/// Prints `low=... medium=... high=...` for one value of one sector.
inline int cmd_fuzzify(const RunConfig& run, const std::string& sector, std::string_view value_text, std::ostream& out,
                       std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto value = parse_number(value_text, run.locale);
        if (!value)
            throw Error(Errc::config_error, "cannot parse value '" + std::string(value_text) + "'");
        FisConfig fis = run.fis;
        fis.rules = detail::load_rules(run);
        const FuzzySystem system = build_sector_fis(fis, detail::breakpoints_for(run, sector));
        const FuzzifiedValue fv = fuzzify(system.inputs().front(), *value);
        if (fv.clamped)
            err << "warning: value clamped to the input universe\n";
        char buf[64];
        std::string line;
        for (const auto& [label, mu] : fv.degrees) {
            std::snprintf(buf, sizeof buf, "%s=%.4f", label.c_str(), mu);
            line += (line.empty() ? "" : " ") + std::string(buf);
        }
        out << line << "\n";
        return 0;
    });
}

/**
 * Per-grid-point CSV: for RD and RC, each output term, each rule's
 * implicated set and the aggregate. Inputs come from the district data
 * unless `values` gives (v_t, v_t1).
 */
inline int cmd_curves(const RunConfig& run, const std::string& sector, std::optional<std::pair<double, double>> values,
                      std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        FisConfig fis = run.fis;
        fis.rules = detail::load_rules(run);
        if (!values) {
            auto d = detail::load_dataset(run, run.district, run.district_region, "district");
            if (!d)
                throw Error(Errc::config_error, "curves needs district data or --values");
            const SectorObservation& o = d->at(sector);
            values = std::pair{o.value_t, o.value_t1};
        }
        const FuzzySystem system = build_sector_fis(fis, detail::breakpoints_for(run, sector));
        const InferenceTrace tr = trace_inference(
            system, {{klassen_names::value_t, values->first}, {klassen_names::value_t1, values->second}});

        std::string header = "point";
        for (const FuzzyVariable& v : system.outputs()) {
            for (const Term& t : v.terms())
                header += "," + v.name() + "_" + t.label;
            for (const auto& [rule, _] : tr.implicated.at(v.name()))
                header += "," + v.name() + "_rule" + std::to_string(rule + 1);
            header += "," + v.name() + "_aggregate";
        }
        out << header << "\n";

        const Grid& grid = fis.grid;
        char buf[32];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double point = grid.first + static_cast<double>(i);
            std::string row = std::to_string(grid.first + static_cast<int>(i));
            auto put = [&](double x) {
                std::snprintf(buf, sizeof buf, ",%.6f", x);
                row += buf;
            };
            for (const FuzzyVariable& v : system.outputs()) {
                for (const Term& t : v.terms())
                    put(t.mf(point));
                for (const auto& [_, set] : tr.implicated.at(v.name()))
                    put(set.memberships[i]);
                put(tr.aggregates.at(v.name()).memberships[i]);
            }
            out << row << "\n";
        }
        for (const auto& [name, set] : tr.aggregates)
            if (set.max_membership() <= 0.0)
                err << "warning: no rule fires for " << name << "; aggregate is all zeros\n";
        return 0;
    });
}

/// Lists validate_rulebase findings; exit 0 iff there are none.
inline int cmd_rules_check(const std::string& path, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const std::string text = detail::require_file(path, "rule file");
        const Schema schema = klassen_schema();
        RuleBase rb;
        try {
            rb = parse_rules(text, schema);
        } catch (const Error& e) {
            out << path << ": " << e.what() << "\n";
            return 1;
        }
        const auto findings = validate_rulebase(rb, schema);
        for (const Finding& f : findings) {
            out << path << ": " << to_string(f.kind);
            if (f.rule != 0)
                out << " (rule " << f.rule << ")";
            out << ": " << f.message << "\n";
        }
        if (findings.empty())
            out << path << ": " << rb.size() << " rules, complete\n";
        return findings.empty() ? 0 : 1;
    });
}

} // namespace fuzzy_klassen::cli

#endif
