#ifndef FUZZY_KLASSEN_PIPELINE_HPP_
#define FUZZY_KLASSEN_PIPELINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "inference.hpp"
#include "klassen.hpp"
#include "membership.hpp"
#include "operators.hpp"
#include "rule_base.hpp"
#include "variable.hpp"

namespace fuzzy_klassen
{

/// Shared low/medium/high triple: low = ramp-down(a,b), medium =
/// triangle(a,b,c), high = ramp-up(b,c).
struct Breakpoints {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool operator==(const Breakpoints&) const = default;
};

inline void check(const Breakpoints& bp)
{
    if (!std::isfinite(bp.a) || !std::isfinite(bp.c) || !(bp.a < bp.b && bp.b < bp.c))
        throw Error(Errc::config_error, "breakpoints must satisfy a < b < c");
}

/**
 * Heuristic triple for a sector without configured breakpoints: the peak b
 * sits at the series mid-range and the feet are two half-widths away, where
 * the half-width is the larger of the half-range and a quarter of b. The
 * lower foot is floored at zero. Every observed value ends up strictly
 * inside (a, c).
 */
inline Breakpoints default_breakpoints(std::span<const double> series)
{
    if (series.empty())
        throw Error(Errc::invalid_input, "breakpoint series is empty");
    for (double v : series)
        if (!std::isfinite(v) || v <= 0.0)
            throw Error(Errc::invalid_input, "breakpoint series values must be positive");
    constexpr double spread_floor = 0.25;
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double b = (*lo + *hi) / 2.0;
    const double w = std::max({b - *lo, *hi - b, spread_floor * b});
    return {std::max(0.0, b - 2.0 * w), b, b + 2.0 * w};
}

struct OutputFeet {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const OutputFeet&) const = default;
};

/// Configuration of the per-sector systems. Province systems reuse the
/// district triple unless `reference_breakpoints` names the sector.
struct FisConfig {
    std::map<std::string, Breakpoints> breakpoints;
    std::map<std::string, Breakpoints> reference_breakpoints;
    OutputFeet rd_feet{30.0, 79.0};
    OutputFeet rc_feet{33.0, 72.0};
    Grid grid{1, 100};
    OperatorSet ops;
    RuleBase rules = default_klassen_rules();
};

/// Input pair V(t), V(t-1) sharing one triple; outputs RD and RC each a
/// low/high ramp pair on the configured grid.
inline FuzzySystem build_sector_fis(const FisConfig& cfg, const Breakpoints& bp)
{
    using namespace klassen_names;
    check(bp);
    if (cfg.grid.size() == 0)
        throw Error(Errc::config_error, "output grid is empty");
    for (const OutputFeet& f : {cfg.rd_feet, cfg.rc_feet})
        if (!(f.lo < f.hi) || f.lo < cfg.grid.first || f.hi > cfg.grid.last)
            throw Error(Errc::config_error, "output feet must be increasing and lie on the grid");

    auto input = [&](const std::string& name) {
        return FuzzyVariable(name, Interval{0.0, std::numeric_limits<double>::infinity()},
                             {{low, MembershipFunction::ramp_down(bp.a, bp.b)},
                              {medium, MembershipFunction::triangle(bp.a, bp.b, bp.c)},
                              {high, MembershipFunction::ramp_up(bp.b, bp.c)}});
    };
    auto output = [&](const std::string& name, const OutputFeet& f) {
        return FuzzyVariable(name, cfg.grid,
                             {{low, MembershipFunction::ramp_down(f.lo, f.hi)}, {high, MembershipFunction::ramp_up(f.lo, f.hi)}});
    };
    return FuzzySystem({input(value_t), input(value_t1)}, {output(rd, cfg.rd_feet), output(rc, cfg.rc_feet)}, cfg.rules,
                       cfg.ops);
}

struct RdRc {
    double rd = 0.0;
    double rc = 0.0;

    bool operator==(const RdRc&) const = default;
};

inline RdRc compute_rd_rc(const FuzzySystem& fis, double v_t, double v_t1)
{
    using namespace klassen_names;
    if (!(v_t > 0.0) || !(v_t1 > 0.0))
        throw Error(Errc::invalid_input, "sector values must be positive");
    const auto out = infer(fis, {{value_t, v_t}, {value_t1, v_t1}});
    return {out.at(rd), out.at(rc)};
}

/// Fuzzy Klassen predicate: RD stands in for growth, RC for contribution.
inline Quadrant classify_scores(const RdRc& district, const RdRc& reference) noexcept
{
    return classify_quadrant({district.rd, district.rc}, {reference.rd, reference.rc});
}

/// RD/RC values supplied directly instead of computed (replay of published scores).
struct InjectedScores {
    std::string region;
    std::vector<std::pair<std::string, RdRc>> scores;

    std::vector<std::string> sectors() const
    {
        std::vector<std::string> out;
        for (const auto& [s, _] : scores)
            out.push_back(s);
        return out;
    }

    const RdRc& at(const std::string& sector) const
    {
        for (const auto& [s, v] : scores)
            if (s == sector)
                return v;
        throw Error(Errc::mismatched_sectors, "no injected scores for sector '" + sector + "'");
    }
};

using RegionSource = std::variant<GrdpDataset, InjectedScores>;

inline const std::string& region_name(const RegionSource& src)
{
    return std::visit([](const auto& s) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, GrdpDataset>)
            return s.region();
        else
            return s.region;
    }, src);
}

inline std::vector<std::string> region_sectors(const RegionSource& src)
{
    return std::visit([](const auto& s) { return s.sectors(); }, src);
}

namespace detail
{

inline Breakpoints sector_breakpoints(const FisConfig& cfg, const std::string& sector, const RegionSource& district,
                                      const RegionSource& reference, bool for_reference)
{
    if (for_reference) {
        if (auto it = cfg.reference_breakpoints.find(sector); it != cfg.reference_breakpoints.end())
            return it->second;
    }
    if (auto it = cfg.breakpoints.find(sector); it != cfg.breakpoints.end())
        return it->second;
    const GrdpDataset* data = std::get_if<GrdpDataset>(&district);
    if (data == nullptr)
        data = std::get_if<GrdpDataset>(&reference);
    const SectorObservation& o = data->at(sector);
    const double series[] = {o.value_t, o.value_t1};
    return default_breakpoints(series);
}

inline RdRc region_scores(const FisConfig& cfg, const std::string& sector, const RegionSource& district,
                          const RegionSource& reference, bool for_reference)
{
    const RegionSource& self = for_reference ? reference : district;
    if (const auto* injected = std::get_if<InjectedScores>(&self))
        return injected->at(sector);
    const SectorObservation& o = std::get<GrdpDataset>(self).at(sector);
    try {
        const FuzzySystem fis = build_sector_fis(cfg, sector_breakpoints(cfg, sector, district, reference, for_reference));
        return compute_rd_rc(fis, o.value_t, o.value_t1);
    } catch (const Error& e) {
        throw Error(e.code(), "sector '" + sector + "' of region '" + region_name(self) + "': " + e.detail());
    }
}

} // namespace detail

struct SectorScores {
    std::string sector;
    RdRc district;
    RdRc reference;
};

/// RD/RC for both regions, computed or injected, in district sector order.
inline std::vector<SectorScores> score_sectors(const RegionSource& district, const RegionSource& reference,
                                               const FisConfig& cfg)
{
    const auto sectors = region_sectors(district);
    require_same_sectors(sectors, region_sectors(reference), "the reference data");
    std::vector<SectorScores> out;
    out.reserve(sectors.size());
    for (const auto& s : sectors)
        out.push_back({s, detail::region_scores(cfg, s, district, reference, false),
                       detail::region_scores(cfg, s, district, reference, true)});
    return out;
}

inline std::vector<std::pair<std::string, Quadrant>> fuzzy_klassen(const RegionSource& district,
                                                                   const RegionSource& reference, const FisConfig& cfg)
{
    std::vector<std::pair<std::string, Quadrant>> out;
    for (const SectorScores& s : score_sectors(district, reference, cfg))
        out.emplace_back(s.sector, classify_scores(s.district, s.reference));
    return out;
}

struct ReportRow {
    std::string sector;
    RdRc district;
    RdRc reference;
    Quadrant fuzzy = Quadrant::K1;
    std::optional<Quadrant> traditional;
    std::optional<SectorIndicators> district_crisp;
    std::optional<SectorIndicators> reference_crisp;

    std::optional<bool> agrees() const
    {
        if (!traditional)
            return std::nullopt;
        return *traditional == fuzzy;
    }
};

/// Timestamps and similar run facts; kept out of the canonical report body.
struct RunMetadata {
    std::string generated_at;
    std::string tool_version;
};

struct DisparityReport {
    std::string district_region;
    std::string reference_region;
    std::string operators;
    std::string config_digest;
    std::vector<ReportRow> rows;
    RunMetadata metadata;

    bool has_traditional() const noexcept
    {
        return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.traditional.has_value(); });
    }

    std::map<Quadrant, int> fuzzy_counts() const
    {
        std::map<Quadrant, int> counts;
        for (Quadrant q : all_quadrants)
            counts[q] = 0;
        for (const auto& r : rows)
            ++counts[r.fuzzy];
        return counts;
    }

    std::map<Quadrant, int> traditional_counts() const
    {
        std::map<Quadrant, int> counts;
        for (Quadrant q : all_quadrants)
            counts[q] = 0;
        for (const auto& r : rows)
            if (r.traditional)
                ++counts[*r.traditional];
        return counts;
    }

    int agreements() const
    {
        return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.agrees().value_or(false); }));
    }

    std::vector<std::string> disagreeing_sectors() const
    {
        std::vector<std::string> out;
        for (const auto& r : rows)
            if (r.agrees() == false)
                out.push_back(r.sector);
        return out;
    }
};

/// FNV-1a over the configuration's canonical description.
inline std::string config_digest(const FisConfig& cfg)
{
    std::string text;
    char buf[128];
    auto put_bp = [&](const char* tag, const std::map<std::string, Breakpoints>& m) {
        for (const auto& [s, bp] : m) {
            std::snprintf(buf, sizeof buf, "%s %s %.17g %.17g %.17g\n", tag, s.c_str(), bp.a, bp.b, bp.c);
            text += buf;
        }
    };
    put_bp("bp", cfg.breakpoints);
    put_bp("ref-bp", cfg.reference_breakpoints);
    std::snprintf(buf, sizeof buf, "rd %.17g %.17g\nrc %.17g %.17g\ngrid %d %d\n", cfg.rd_feet.lo, cfg.rd_feet.hi,
                  cfg.rc_feet.lo, cfg.rc_feet.hi, cfg.grid.first, cfg.grid.last);
    text += buf;
    text += "ops " + to_string(cfg.ops) + "\n";
    text += format_rules(cfg.rules);

    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/**
 * Joins fuzzy and crisp Klassen classifications per sector. The crisp column
 * needs raw data for both regions and is left empty otherwise.
 */
inline DisparityReport compare_methods(const RegionSource& district, const RegionSource& reference, const FisConfig& cfg)
{
    DisparityReport report;
    report.district_region = region_name(district);
    report.reference_region = region_name(reference);
    report.operators = to_string(cfg.ops);
    report.config_digest = config_digest(cfg);

    const auto* raw_d = std::get_if<GrdpDataset>(&district);
    const auto* raw_r = std::get_if<GrdpDataset>(&reference);
    std::vector<std::pair<std::string, SectorIndicators>> crisp_d;
    std::vector<std::pair<std::string, SectorIndicators>> crisp_r;
    if (raw_d != nullptr && raw_r != nullptr) {
        crisp_d = sector_indicators(*raw_d);
        crisp_r = sector_indicators(*raw_r);
    }
    auto lookup = [](const auto& table, const std::string& sector) -> std::optional<SectorIndicators> {
        for (const auto& [s, ind] : table)
            if (s == sector)
                return ind;
        return std::nullopt;
    };

    for (const SectorScores& s : score_sectors(district, reference, cfg)) {
        ReportRow row{s.sector, s.district, s.reference, classify_scores(s.district, s.reference), {}, {}, {}};
        row.district_crisp = lookup(crisp_d, s.sector);
        row.reference_crisp = lookup(crisp_r, s.sector);
        if (row.district_crisp && row.reference_crisp)
            row.traditional = classify_quadrant(*row.district_crisp, *row.reference_crisp);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace fuzzy_klassen

#endif
