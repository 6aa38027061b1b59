#ifndef FUZZY_KLASSEN_DATASET_HPP_
#define FUZZY_KLASSEN_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fuzzy_klassen
{

/// One sector's GRDP at the classified year t and the year before.
struct SectorObservation {
    std::string sector;
    double value_t = 0.0;
    double value_t1 = 0.0;

    bool operator==(const SectorObservation&) const = default;
};

/// Per-sector two-year GRDP values of one region, in input order.
class GrdpDataset
{
public:
    GrdpDataset() = default;

    GrdpDataset(std::string region, std::vector<SectorObservation> observations)
        : region_(std::move(region)), observations_(std::move(observations))
    {
        for (std::size_t i = 0; i < observations_.size(); ++i) {
            const SectorObservation& o = observations_[i];
            if (o.sector.empty())
                throw Error(Errc::invalid_input, "empty sector id in region '" + region_ + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (observations_[j].sector == o.sector)
                    throw Error(Errc::duplicate_row, "sector '" + o.sector + "' listed twice in region '" + region_ + "'");
            if (!std::isfinite(o.value_t) || !std::isfinite(o.value_t1) || o.value_t <= 0.0 || o.value_t1 <= 0.0)
                throw Error(Errc::non_positive_value,
                            "sector '" + o.sector + "' of region '" + region_ + "' needs positive finite values");
        }
    }

    const std::string& region() const noexcept { return region_; }
    const std::vector<SectorObservation>& observations() const noexcept { return observations_; }
    bool empty() const noexcept { return observations_.empty(); }
    std::size_t size() const noexcept { return observations_.size(); }

    const SectorObservation* find(const std::string& sector) const noexcept
    {
        auto it = std::find_if(observations_.begin(), observations_.end(),
                               [&](const SectorObservation& o) { return o.sector == sector; });
        return it == observations_.end() ? nullptr : &*it;
    }

    const SectorObservation& at(const std::string& sector) const
    {
        if (const SectorObservation* o = find(sector))
            return *o;
        throw Error(Errc::mismatched_sectors, "region '" + region_ + "' has no sector '" + sector + "'");
    }

    std::vector<std::string> sectors() const
    {
        std::vector<std::string> out;
        for (const auto& o : observations_)
            out.push_back(o.sector);
        return out;
    }

    double total_t() const noexcept
    {
        double sum = 0.0;
        for (const auto& o : observations_)
            sum += o.value_t;
        return sum;
    }

    bool operator==(const GrdpDataset&) const = default;

private:
    std::string region_;
    std::vector<SectorObservation> observations_;
};

/// Throws MismatchedSectors unless both sector sets are equal (order may differ).
inline void require_same_sectors(const std::vector<std::string>& district, const std::vector<std::string>& reference,
                                 const std::string& what)
{
    for (const auto& s : district)
        if (std::find(reference.begin(), reference.end(), s) == reference.end())
            throw Error(Errc::mismatched_sectors, "sector '" + s + "' missing from " + what);
    for (const auto& s : reference)
        if (std::find(district.begin(), district.end(), s) == district.end())
            throw Error(Errc::mismatched_sectors, "sector '" + s + "' missing from the district data");
}

} // namespace fuzzy_klassen

#endif
