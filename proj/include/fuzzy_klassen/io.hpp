#ifndef FUZZY_KLASSEN_IO_HPP_
#define FUZZY_KLASSEN_IO_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "pipeline.hpp"

namespace fuzzy_klassen
{

/// dot_decimal: 296121.45. comma_decimal: 296.121,45 (dot thousands, comma decimal).
enum class Locale { dot_decimal, comma_decimal };

inline Locale parse_locale(std::string_view s)
{
    if (s == "dot" || s == "dot-decimal" || s == "C" || s == "en")
        return Locale::dot_decimal;
    if (s == "comma" || s == "comma-decimal" || s == "id")
        return Locale::comma_decimal;
    throw Error(Errc::config_error, "unknown locale mode '" + std::string(s) + "' (use dot-decimal or comma-decimal)");
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

/// Whole-string number parse; nullopt on any leftover character.
inline std::optional<double> parse_number(std::string_view text, Locale locale = Locale::dot_decimal)
{
    text = trim(text);
    std::string buf;
    if (locale == Locale::comma_decimal) {
        const std::size_t comma = text.find(',');
        if (text.find(',', comma == std::string_view::npos ? comma : comma + 1) != std::string_view::npos)
            return std::nullopt;
        std::string_view integral = text.substr(0, comma);
        // thousands groups after the first dot must be exactly three digits
        std::size_t dot = integral.find('.');
        if (dot != std::string_view::npos) {
            if (dot == 0 || (dot == 1 && (integral[0] == '-' || integral[0] == '+')))
                return std::nullopt;
            for (std::size_t p = dot; p != std::string_view::npos;) {
                const std::size_t next = integral.find('.', p + 1);
                const std::size_t len = (next == std::string_view::npos ? integral.size() : next) - p - 1;
                if (len != 3)
                    return std::nullopt;
                p = next;
            }
        }
        for (char ch : integral)
            if (ch != '.')
                buf += ch;
        if (comma != std::string_view::npos)
            buf += "." + std::string(text.substr(comma + 1));
    } else {
        buf = std::string(text);
    }
    if (buf.empty())
        return std::nullopt;
    std::string_view sv = buf;
    if (sv.front() == '+')
        sv.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

/// Splits one CSV record; double-quoted fields may contain commas.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && trim(cur).empty()) {
            quoted = true;
            was_quoted = true;
            cur.clear();
        } else if (ch == ',') {
            fields.push_back(was_quoted ? cur : std::string(trim(cur)));
            cur.clear();
            was_quoted = false;
        } else if (!(was_quoted && std::isspace(static_cast<unsigned char>(ch)))) {
            cur += ch;
        }
    }
    if (quoted)
        throw Error(Errc::invalid_input, "unterminated quoted field", line_no);
    fields.push_back(was_quoted ? cur : std::string(trim(cur)));
    return fields;
}

/// Non-blank, non-comment lines with their 1-based numbers; strips BOM and CR.
inline std::vector<std::pair<std::size_t, std::string>> data_lines(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        out.emplace_back(line_no, std::string(line));
    }
    return out;
}

struct YearPair {
    int t = 0;
    int t1 = 0;
};

namespace detail
{

inline std::string lower(std::string_view s)
{
    std::string out(s);
    for (char& ch : out)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

inline void expect_header(const std::vector<std::pair<std::size_t, std::string>>& lines,
                          const std::vector<std::string>& header, const char* what)
{
    std::string want;
    for (const auto& h : header)
        want += (want.empty() ? "" : ",") + h;
    if (lines.empty())
        throw Error(Errc::invalid_input, std::string(what) + " is empty; expected header '" + want + "'");
    auto fields = split_csv_line(lines.front().second, lines.front().first);
    for (auto& f : fields)
        f = lower(f);
    if (fields != header)
        throw Error(Errc::invalid_input, std::string(what) + " header must be '" + want + "'", lines.front().first);
}

} // namespace detail

/**
 * Reads `region,sector,year,value` rows into one dataset per region, in
 * order of first appearance. Without explicit years the file must hold
 * exactly two distinct years; the later one is t.
 */
inline std::vector<GrdpDataset> ingest(std::string_view csv, Locale locale, std::optional<YearPair> years = std::nullopt)
{
    const auto lines = data_lines(csv);
    detail::expect_header(lines, {"region", "sector", "year", "value"}, "data file");

    struct Row {
        std::string region, sector;
        int year;
        double value;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, line] = lines[i];
        const auto f = split_csv_line(line, line_no);
        if (f.size() != 4)
            throw Error(Errc::invalid_input, "expected 4 fields, got " + std::to_string(f.size()), line_no);
        if (f[0].empty() || f[1].empty())
            throw Error(Errc::invalid_input, "empty region or sector", line_no);
        int year = 0;
        const auto [yp, yec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), year);
        if (yec != std::errc{} || yp != f[2].data() + f[2].size())
            throw Error(Errc::unparsable_number, "bad year '" + f[2] + "'", line_no);
        const auto value = parse_number(f[3], locale);
        if (!value)
            throw Error(Errc::unparsable_number, "bad value '" + f[3] + "' for sector " + f[1], line_no);
        if (*value <= 0.0)
            throw Error(Errc::non_positive_value, "value for sector " + f[1] + " must be positive", line_no);
        if (!seen.emplace(f[0], f[1], year).second)
            throw Error(Errc::duplicate_row, "region " + f[0] + ", sector " + f[1] + ", year " + f[2] + " repeated",
                        line_no);
        rows.push_back({f[0], f[1], year, *value, line_no});
    }
    if (rows.empty())
        throw Error(Errc::missing_year, "data file has no rows");

    if (!years) {
        std::set<int> distinct;
        for (const Row& r : rows)
            distinct.insert(r.year);
        if (distinct.size() != 2)
            throw Error(Errc::missing_year, "data must hold exactly two years (found " + std::to_string(distinct.size()) +
                                                "); set year_t and year_t1");
        years = YearPair{*distinct.rbegin(), *distinct.begin()};
    }
    if (years->t == years->t1)
        throw Error(Errc::config_error, "year t and year t-1 must differ");

    std::vector<std::string> region_order;
    std::map<std::string, std::vector<std::string>> sector_order;
    std::map<std::pair<std::string, std::string>, std::pair<std::optional<double>, std::optional<double>>> values;
    for (const Row& r : rows) {
        if (r.year != years->t && r.year != years->t1)
            continue;
        if (std::find(region_order.begin(), region_order.end(), r.region) == region_order.end())
            region_order.push_back(r.region);
        auto& sectors = sector_order[r.region];
        if (std::find(sectors.begin(), sectors.end(), r.sector) == sectors.end())
            sectors.push_back(r.sector);
        auto& slot = values[{r.region, r.sector}];
        (r.year == years->t ? slot.first : slot.second) = r.value;
    }
    if (region_order.empty())
        throw Error(Errc::missing_year, "no rows for years " + std::to_string(years->t) + " and " + std::to_string(years->t1));

    std::vector<GrdpDataset> out;
    for (const auto& region : region_order) {
        std::vector<SectorObservation> obs;
        for (const auto& sector : sector_order[region]) {
            const auto& [vt, vt1] = values[{region, sector}];
            if (!vt || !vt1)
                throw Error(Errc::missing_year, "region " + region + ", sector " + sector + " has no value for year " +
                                                    std::to_string(vt ? years->t1 : years->t));
            obs.push_back({sector, *vt, *vt1});
        }
        out.emplace_back(region, std::move(obs));
    }
    return out;
}

/// Picks one region: the named one, or the only one present.
inline GrdpDataset select_region(std::vector<GrdpDataset> datasets, const std::string& name, const std::string& what)
{
    if (!name.empty()) {
        for (auto& d : datasets)
            if (d.region() == name)
                return std::move(d);
        throw Error(Errc::invalid_input, what + " has no region '" + name + "'");
    }
    if (datasets.size() != 1)
        throw Error(Errc::config_error, what + " holds " + std::to_string(datasets.size()) +
                                            " regions; name one with the matching *_region key");
    return std::move(datasets.front());
}

/// Reads `sector,rd,rc` (or `region,sector,rd,rc`) score tables.
inline InjectedScores read_scores(std::string_view csv, Locale locale, std::string region = {})
{
    const auto lines = data_lines(csv);
    if (lines.empty())
        throw Error(Errc::invalid_input, "score file is empty");
    auto header = split_csv_line(lines.front().second, lines.front().first);
    for (auto& h : header)
        h = detail::lower(h);
    const bool with_region = header.size() == 4;
    detail::expect_header(lines, with_region ? std::vector<std::string>{"region", "sector", "rd", "rc"}
                                             : std::vector<std::string>{"sector", "rd", "rc"},
                          "score file");

    InjectedScores out{std::move(region), {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, line] = lines[i];
        auto f = split_csv_line(line, line_no);
        if (f.size() != header.size())
            throw Error(Errc::invalid_input, "expected " + std::to_string(header.size()) + " fields", line_no);
        if (with_region) {
            if (out.region.empty())
                out.region = f[0];
            else if (f[0] != out.region)
                throw Error(Errc::invalid_input, "score file mixes regions", line_no);
            f.erase(f.begin());
        }
        const auto rd = parse_number(f[1], locale);
        const auto rc = parse_number(f[2], locale);
        if (!rd || !rc)
            throw Error(Errc::unparsable_number, "bad score for sector " + f[0], line_no);
        for (const auto& [s, _] : out.scores)
            if (s == f[0])
                throw Error(Errc::duplicate_row, "sector " + f[0] + " repeated", line_no);
        out.scores.emplace_back(f[0], RdRc{*rd, *rc});
    }
    if (out.scores.empty())
        throw Error(Errc::invalid_input, "score file has no rows");
    return out;
}

inline std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fuzzy_klassen

#endif
