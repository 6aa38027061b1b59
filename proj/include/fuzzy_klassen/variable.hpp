#ifndef FUZZY_KLASSEN_VARIABLE_HPP_
#define FUZZY_KLASSEN_VARIABLE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "membership.hpp"

namespace fuzzy_klassen
{

/// Continuous universe [lo, hi]; either bound may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

/// Integer grid {first, first+1, ..., last}, used for output variables.
struct Grid {
    int first = 1;
    int last = 100;

    std::size_t size() const noexcept { return last >= first ? static_cast<std::size_t>(last - first) + 1 : 0; }
    bool operator==(const Grid&) const = default;
};

using Universe = std::variant<Interval, Grid>;

struct Term {
    std::string label;
    MembershipFunction mf;
};

/// Degrees of one crisp value in each of a variable's terms, in term order.
struct FuzzifiedValue {
    std::vector<std::pair<std::string, double>> degrees;
    /// set when the input lay outside the declared universe and was clamped
    bool clamped = false;

    double degree(const std::string& label) const
    {
        for (const auto& [name, mu] : degrees)
            if (name == label)
                return mu;
        throw Error(Errc::unknown_label, "no label '" + label + "'");
    }
};

/// Linguistic variable: a name, a universe and uniquely labelled terms.
class FuzzyVariable
{
public:
    FuzzyVariable(std::string name, Universe universe, std::vector<Term> terms)
        : name_(std::move(name)), universe_(universe), terms_(std::move(terms))
    {
        if (name_.empty())
            throw Error(Errc::invalid_input, "variable name must not be empty");
        if (terms_.empty())
            throw Error(Errc::invalid_input, "variable '" + name_ + "' has no terms");
        const auto [lo, hi] = bounds();
        if (!(lo <= hi) || std::isnan(lo) || std::isnan(hi))
            throw Error(Errc::invalid_input, "variable '" + name_ + "' has an empty universe");
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const Term& term = terms_[i];
            if (term.label.empty())
                throw Error(Errc::invalid_input, "variable '" + name_ + "' has an empty label");
            for (std::size_t j = 0; j < i; ++j)
                if (terms_[j].label == term.label)
                    throw Error(Errc::invalid_input,
                                "duplicate label '" + term.label + "' in variable '" + name_ + "'");
            if (term.mf.first_breakpoint() < lo || term.mf.last_breakpoint() > hi)
                throw Error(Errc::invalid_input,
                            "term '" + term.label + "' of '" + name_ + "' extends beyond the universe");
        }
    }

    const std::string& name() const noexcept { return name_; }
    const Universe& universe() const noexcept { return universe_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_discrete() const noexcept { return std::holds_alternative<Grid>(universe_); }

    const Grid& grid() const
    {
        if (const Grid* g = std::get_if<Grid>(&universe_); g != nullptr && g->size() > 0)
            return *g;
        throw Error(Errc::invalid_input, "variable '" + name_ + "' has no discrete grid");
    }

    std::pair<double, double> bounds() const noexcept
    {
        if (const Grid* g = std::get_if<Grid>(&universe_))
            return {static_cast<double>(g->first), static_cast<double>(g->last)};
        const Interval& iv = std::get<Interval>(universe_);
        return {iv.lo, iv.hi};
    }

    bool has_label(const std::string& label) const noexcept { return find(label) != nullptr; }

    const MembershipFunction& mf(const std::string& label) const
    {
        if (const Term* t = find(label))
            return t->mf;
        throw Error(Errc::unknown_label, "'" + label + "' is not a label of '" + name_ + "'");
    }

    std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        out.reserve(terms_.size());
        for (const Term& t : terms_)
            out.push_back(t.label);
        return out;
    }

private:
    const Term* find(const std::string& label) const noexcept
    {
        auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.label == label; });
        return it == terms_.end() ? nullptr : &*it;
    }

    std::string name_;
    Universe universe_;
    std::vector<Term> terms_;
};

inline FuzzifiedValue fuzzify(const FuzzyVariable& var, double x)
{
    if (!std::isfinite(x))
        throw Error(Errc::invalid_input, "non-finite input for '" + var.name() + "'");
    FuzzifiedValue out;
    const auto [lo, hi] = var.bounds();
    const double clamped = std::clamp(x, lo, hi);
    out.clamped = clamped != x;
    out.degrees.reserve(var.terms().size());
    for (const Term& t : var.terms())
        out.degrees.emplace_back(t.label, t.mf(clamped));
    return out;
}

} // namespace fuzzy_klassen

#endif
