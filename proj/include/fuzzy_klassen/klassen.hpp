#ifndef FUZZY_KLASSEN_KLASSEN_HPP_
#define FUZZY_KLASSEN_KLASSEN_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"

namespace fuzzy_klassen
{

enum class Quadrant { K1, K2, K3, K4 };

inline constexpr std::array<Quadrant, 4> all_quadrants{Quadrant::K1, Quadrant::K2, Quadrant::K3, Quadrant::K4};

inline std::string_view to_string(Quadrant q)
{
    switch (q) {
    case Quadrant::K1: return "K1";
    case Quadrant::K2: return "K2";
    case Quadrant::K3: return "K3";
    case Quadrant::K4: return "K4";
    }
    return "K?";
}

inline std::optional<Quadrant> parse_quadrant(std::string_view s)
{
    for (Quadrant q : all_quadrants)
        if (to_string(q) == s)
            return q;
    return std::nullopt;
}

inline std::string_view describe(Quadrant q)
{
    switch (q) {
    case Quadrant::K1: return "advanced and rapidly growing";
    case Quadrant::K2: return "depressed growth";
    case Quadrant::K3: return "potential, still growing";
    case Quadrant::K4: return "relatively underdeveloped";
    }
    return "";
}

/// Growth rate and contribution, both in percent.
struct SectorIndicators {
    double growth_rate = 0.0;
    double contribution = 0.0;
};

/// 100 * (v_t - v_t1) / v_t1
inline double growth_rate(double v_t, double v_t1)
{
    if (!(v_t1 > 0.0) || !std::isfinite(v_t1))
        throw Error(Errc::invalid_base, "previous-year value must be positive");
    if (!(v_t >= 0.0) || !std::isfinite(v_t))
        throw Error(Errc::invalid_input, "current-year value must be non-negative");
    return (v_t - v_t1) / v_t1 * 100.0;
}

/// 100 * sector_value / total
inline double contribution_share(double sector_value, double total)
{
    if (!(total > 0.0) || !std::isfinite(total))
        throw Error(Errc::invalid_base, "region total must be positive");
    if (!(sector_value >= 0.0))
        throw Error(Errc::invalid_share, "sector value must be non-negative");
    if (sector_value > total)
        throw Error(Errc::invalid_share, "sector value exceeds the region total");
    return sector_value / total * 100.0;
}

/// Klassen matrix; ties go to the >= side.
inline Quadrant classify_quadrant(const SectorIndicators& district, const SectorIndicators& reference) noexcept
{
    const bool grows = district.growth_rate >= reference.growth_rate;
    const bool contributes = district.contribution >= reference.contribution;
    if (grows)
        return contributes ? Quadrant::K1 : Quadrant::K3;
    return contributes ? Quadrant::K2 : Quadrant::K4;
}

inline std::vector<std::pair<std::string, SectorIndicators>> sector_indicators(const GrdpDataset& region)
{
    const double total = region.total_t();
    std::vector<std::pair<std::string, SectorIndicators>> out;
    out.reserve(region.size());
    for (const auto& o : region.observations())
        out.emplace_back(o.sector, SectorIndicators{growth_rate(o.value_t, o.value_t1), contribution_share(o.value_t, total)});
    return out;
}

/// Crisp Klassen typology per sector, in district sector order.
inline std::vector<std::pair<std::string, Quadrant>> traditional_klassen(const GrdpDataset& district,
                                                                         const GrdpDataset& reference)
{
    require_same_sectors(district.sectors(), reference.sectors(), "the reference data");
    const auto dist = sector_indicators(district);
    const auto ref = sector_indicators(reference);
    std::vector<std::pair<std::string, Quadrant>> out;
    out.reserve(dist.size());
    for (const auto& [sector, ind] : dist) {
        for (const auto& [ref_sector, ref_ind] : ref) {
            if (ref_sector == sector) {
                out.emplace_back(sector, classify_quadrant(ind, ref_ind));
                break;
            }
        }
    }
    return out;
}

} // namespace fuzzy_klassen

#endif
