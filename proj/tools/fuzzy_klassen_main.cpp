#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "fuzzy_klassen/cli.hpp"

namespace fk = fuzzy_klassen;
namespace fkcli = fuzzy_klassen::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Fuzzy-Klassen sector disparity analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    auto global = [&](const std::string& flag, const std::string& key, const std::string& help) {
        app.add_option_function<std::string>(flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
                                             help);
    };
    app.add_option("--config", config_path, "key = value config file (default: $KLASSEN_FIS_CONFIG)");
    global("--locale", "locale", "number format: dot-decimal or comma-decimal");
    global("--format", "format", "report format: json-like or table");
    global("--rules", "rules", "rule file (default: built-in Klassen table)");
    global("--grid", "grid", "output grid, e.g. 1..100");
    global("--ops", "ops", "operators and,implication,aggregation[,centroid], e.g. min,min,max");
    app.fallthrough();

    std::vector<std::string> sets;
    auto add_set = [&](CLI::App* sub) {
        sub->add_option("--set", sets, "extra config setting key=value (repeatable)");
    };
    auto keyed = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
                                              help);
    };

    auto* analyze = app.add_subcommand("analyze", "classify sectors with fuzzy and traditional Klassen typology");
    keyed(analyze, "--district", "district", "district data CSV (region,sector,year,value)");
    keyed(analyze, "--reference", "reference", "reference (province) data CSV");
    keyed(analyze, "--district-scores", "district_scores", "inject district RD/RC scores (sector,rd,rc)");
    keyed(analyze, "--reference-scores", "reference_scores", "inject reference RD/RC scores (sector,rd,rc)");
    keyed(analyze, "--district-region", "district_region", "region name to pick from the district file");
    keyed(analyze, "--reference-region", "reference_region", "region name to pick from the reference file");
    keyed(analyze, "--year-t", "year_t", "classified year");
    keyed(analyze, "--year-t1", "year_t1", "comparison year");
    keyed(analyze, "--output", "output", "write the report here instead of stdout");
    keyed(analyze, "--metadata", "metadata", "write run metadata (timestamp, digest) here");
    add_set(analyze);

    std::string sector;
    std::string value;
    auto* fuzzify = app.add_subcommand("fuzzify", "print low/medium/high degrees of a sector value");
    fuzzify->add_option("sector", sector, "sector id")->required();
    fuzzify->add_option("value", value, "crisp value")->required();
    keyed(fuzzify, "--district", "district", "district data CSV used to derive breakpoints");
    std::string bp_text;
    fuzzify->add_option("--breakpoints", bp_text, "a,b,c for this sector");
    add_set(fuzzify);

    auto* curves = app.add_subcommand("curves", "emit membership, implicated and aggregate curves as CSV");
    curves->add_option("sector", sector, "sector id")->required();
    keyed(curves, "--district", "district", "district data CSV");
    curves->add_option("--breakpoints", bp_text, "a,b,c for this sector");
    std::string values_text;
    curves->add_option("--values", values_text, "v_t,v_t1 instead of district data");
    add_set(curves);

    std::string rules_path;
    auto* rules_check = app.add_subcommand("rules-check", "validate a rule file against the Klassen schema");
    rules_check->add_option("file", rules_path, "rule file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    fkcli::RunConfig run;
    try {
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw fk::Error(fk::Errc::config_error, "--set expects key=value, got '" + s + "'");
            overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        if (!bp_text.empty())
            overrides.emplace_back("breakpoints." + sector, bp_text);
        run = fkcli::load_run_config(config_path, overrides);
    } catch (const fk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (*analyze)
        return fkcli::cmd_analyze(run, std::cout, std::cerr);
    if (*fuzzify)
        return fkcli::cmd_fuzzify(run, sector, value, std::cout, std::cerr);
    if (*curves) {
        std::optional<std::pair<double, double>> values;
        if (!values_text.empty()) {
            const auto comma = values_text.find(',');
            const auto vt = fk::parse_number(values_text.substr(0, comma));
            const auto vt1 = comma == std::string::npos ? std::nullopt : fk::parse_number(values_text.substr(comma + 1));
            if (!vt || !vt1) {
                std::cerr << "error: --values expects v_t,v_t1\n";
                return 2;
            }
            values = std::pair{*vt, *vt1};
        }
        return fkcli::cmd_curves(run, sector, values, std::cout, std::cerr);
    }
    if (rules_path.empty())
        rules_path = run.rules;
    if (rules_path.empty()) {
        std::cerr << "error: rules-check needs a rule file\n";
        return 2;
    }
    return fkcli::cmd_rules_check(rules_path, std::cout, std::cerr);
}
