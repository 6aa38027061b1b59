#ifndef FUZZY_KLASSEN_OPERATORS_HPP_
#define FUZZY_KLASSEN_OPERATORS_HPP_

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace fuzzy_klassen
{

enum class AndNorm { min, product };
enum class Implication { min, product };
enum class Aggregation { max, bounded_sum };
enum class Defuzzifier { centroid };

/// Operator selection for Mamdani inference. Defaults follow the min/max
/// composition of the worked V1 example.
struct OperatorSet {
    AndNorm and_norm = AndNorm::min;
    Implication implication = Implication::min;
    Aggregation aggregation = Aggregation::max;
    Defuzzifier defuzzifier = Defuzzifier::centroid;

    bool operator==(const OperatorSet&) const = default;
};

inline double t_norm(AndNorm norm, double a, double b) noexcept
{
    return norm == AndNorm::min ? std::min(a, b) : a * b;
}

/// min clips the consequent at the activation; product scales it.
inline double implicate(Implication imp, double activation, double consequent) noexcept
{
    return imp == Implication::min ? std::min(activation, consequent) : activation * consequent;
}

inline double s_norm(Aggregation agg, double a, double b) noexcept
{
    return agg == Aggregation::max ? std::max(a, b) : std::min(1.0, a + b);
}

inline std::string_view to_string(AndNorm v) { return v == AndNorm::min ? "min" : "product"; }
inline std::string_view to_string(Implication v) { return v == Implication::min ? "min" : "product"; }
inline std::string_view to_string(Aggregation v) { return v == Aggregation::max ? "max" : "bounded-sum"; }
inline std::string_view to_string(Defuzzifier) { return "centroid"; }

inline std::string to_string(const OperatorSet& ops)
{
    std::string out;
    out.append(to_string(ops.and_norm)).append(",");
    out.append(to_string(ops.implication)).append(",");
    out.append(to_string(ops.aggregation)).append(",");
    out.append(to_string(ops.defuzzifier));
    return out;
}

/// Parses "and,implication,aggregation[,defuzzifier]", e.g. "product,product,bounded-sum".
inline OperatorSet parse_operator_set(std::string_view text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != ' ' && ch != '\t') {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4)
        throw Error(Errc::config_error, "operator set needs 3 or 4 comma-separated names, got '" + std::string(text) + "'");

    auto bad = [&](const std::string& role, const std::string& name) {
        return Error(Errc::config_error, "unknown " + role + " operator '" + name + "'");
    };
    auto is_product = [](const std::string& s) { return s == "product" || s == "prod"; };

    OperatorSet ops;
    if (parts[0] == "min") ops.and_norm = AndNorm::min;
    else if (is_product(parts[0])) ops.and_norm = AndNorm::product;
    else throw bad("and", parts[0]);

    if (parts[1] == "min") ops.implication = Implication::min;
    else if (is_product(parts[1])) ops.implication = Implication::product;
    else throw bad("implication", parts[1]);

    if (parts[2] == "max") ops.aggregation = Aggregation::max;
    else if (parts[2] == "bounded-sum" || parts[2] == "bounded_sum") ops.aggregation = Aggregation::bounded_sum;
    else throw bad("aggregation", parts[2]);

    if (parts.size() == 4 && parts[3] != "centroid")
        throw bad("defuzzifier", parts[3]);
    return ops;
}

} // namespace fuzzy_klassen

#endif
