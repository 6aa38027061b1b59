#ifndef FUZZY_KLASSEN_ERROR_HPP_
#define FUZZY_KLASSEN_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzy_klassen
{

enum class Errc {
    invalid_input,
    unknown_variable,
    unknown_label,
    missing_input,
    empty_aggregate,
    duplicate_antecedent_variable,
    duplicate_rule,
    syntax_error,
    invalid_base,
    invalid_share,
    mismatched_sectors,
    missing_year,
    duplicate_row,
    unparsable_number,
    non_positive_value,
    config_error,
};

inline std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::unknown_variable: return "UnknownVariable";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::missing_input: return "MissingInput";
    case Errc::empty_aggregate: return "EmptyAggregate";
    case Errc::duplicate_antecedent_variable: return "DuplicateAntecedentVariable";
    case Errc::duplicate_rule: return "DuplicateRule";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::invalid_base: return "InvalidBase";
    case Errc::invalid_share: return "InvalidShare";
    case Errc::mismatched_sectors: return "MismatchedSectors";
    case Errc::missing_year: return "MissingYear";
    case Errc::duplicate_row: return "DuplicateRow";
    case Errc::unparsable_number: return "UnparsableNumber";
    case Errc::non_positive_value: return "NonPositiveValue";
    case Errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

/// Library-wide exception. `line()` is 1-based and 0 when no source line applies.
class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& detail, std::size_t line = 0)
        : std::runtime_error(compose(code, detail, line)), code_(code), line_(line), detail_(detail)
    {
    }

    Errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string compose(Errc code, const std::string& detail, std::size_t line)
    {
        std::string out(to_string(code));
        if (line != 0)
            out += " (line " + std::to_string(line) + ")";
        out += ": ";
        out += detail;
        return out;
    }

    Errc code_;
    std::size_t line_;
    std::string detail_;
};

} // namespace fuzzy_klassen

#endif
