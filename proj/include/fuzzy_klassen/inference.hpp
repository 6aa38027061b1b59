#ifndef FUZZY_KLASSEN_INFERENCE_HPP_
#define FUZZY_KLASSEN_INFERENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "membership.hpp"
#include "operators.hpp"
#include "rule_base.hpp"
#include "variable.hpp"

namespace fuzzy_klassen
{

/// Fuzzy set sampled on integer grid points.
struct DiscreteFuzzySet {
    std::vector<double> points;
    std::vector<double> memberships;

    static DiscreteFuzzySet zeros(const Grid& grid)
    {
        DiscreteFuzzySet s;
        s.points.reserve(grid.size());
        for (int g = grid.first; g <= grid.last; ++g)
            s.points.push_back(static_cast<double>(g));
        s.memberships.assign(s.points.size(), 0.0);
        return s;
    }

    static DiscreteFuzzySet sample(const MembershipFunction& mf, const Grid& grid)
    {
        DiscreteFuzzySet s = zeros(grid);
        for (std::size_t i = 0; i < s.points.size(); ++i)
            s.memberships[i] = mf(s.points[i]);
        return s;
    }

    std::size_t size() const noexcept { return points.size(); }
    double max_membership() const noexcept
    {
        return memberships.empty() ? 0.0 : *std::max_element(memberships.begin(), memberships.end());
    }
};

/// Folds the conjunction over the antecedent degrees.
inline double rule_activation(std::span<const double> antecedent_degrees, AndNorm norm)
{
    if (antecedent_degrees.empty())
        throw Error(Errc::invalid_input, "rule activation needs at least one antecedent degree");
    double acc = antecedent_degrees.front();
    for (double d : antecedent_degrees.subspan(1))
        acc = t_norm(norm, acc, d);
    return acc;
}

struct Activation {
    double degree;
    std::string label;
};

/// Consequent set of one rule after implication.
inline DiscreteFuzzySet implicated_set(double degree, const MembershipFunction& consequent, const Grid& grid,
                                       Implication imp)
{
    DiscreteFuzzySet s = DiscreteFuzzySet::sample(consequent, grid);
    for (double& mu : s.memberships)
        mu = implicate(imp, degree, mu);
    return s;
}

/// Implicates every activation against its output term and combines the
/// results point-wise with the aggregation s-norm.
inline DiscreteFuzzySet aggregate_output(std::span<const Activation> activations, const FuzzyVariable& out_var,
                                         const OperatorSet& ops)
{
    const Grid& grid = out_var.grid();
    DiscreteFuzzySet agg = DiscreteFuzzySet::zeros(grid);
    for (const Activation& a : activations) {
        const MembershipFunction& mf = out_var.mf(a.label);
        for (std::size_t i = 0; i < agg.size(); ++i)
            agg.memberships[i] = s_norm(ops.aggregation, agg.memberships[i],
                                        implicate(ops.implication, a.degree, mf(agg.points[i])));
    }
    return agg;
}

/// Discrete centroid sum(g * mu(g)) / sum(mu(g)).
inline double centroid(const DiscreteFuzzySet& set)
{
    if (set.points.size() != set.memberships.size())
        throw Error(Errc::invalid_input, "grid and membership lengths differ");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        num += set.points[i] * set.memberships[i];
        den += set.memberships[i];
    }
    if (!(den > 0.0))
        throw Error(Errc::empty_aggregate, "aggregate fuzzy set is empty; centroid undefined");
    return num / den;
}

/**
 * A Mamdani system: input variables, output variables on integer grids, a
 * rule base and the operator choice. Construction checks that every rule
 * names declared variables and labels; coverage is left to validate_rulebase.
 */
class FuzzySystem
{
public:
    FuzzySystem(std::vector<FuzzyVariable> inputs, std::vector<FuzzyVariable> outputs, RuleBase rules,
                OperatorSet ops = {})
        : inputs_(std::move(inputs)), outputs_(std::move(outputs)), rules_(std::move(rules)), ops_(ops)
    {
        for (const FuzzyVariable& v : outputs_)
            (void)v.grid();
        if (rules_.rules.empty())
            throw Error(Errc::invalid_input, "fuzzy system needs at least one rule");
        for (const Finding& f : validate_rulebase(rules_, schema()))
            if (f.kind == FindingKind::unknown_name || f.kind == FindingKind::malformed_rule)
                throw Error(f.message.starts_with("undeclared label") ? Errc::unknown_label : Errc::unknown_variable,
                            "rule " + std::to_string(f.rule) + ": " + f.message);
    }

    const std::vector<FuzzyVariable>& inputs() const noexcept { return inputs_; }
    const std::vector<FuzzyVariable>& outputs() const noexcept { return outputs_; }
    const RuleBase& rules() const noexcept { return rules_; }
    const OperatorSet& operators() const noexcept { return ops_; }

    Schema schema() const
    {
        Schema s;
        for (const auto& v : inputs_)
            s.inputs.push_back({v.name(), v.labels()});
        for (const auto& v : outputs_)
            s.outputs.push_back({v.name(), v.labels()});
        return s;
    }

    const FuzzyVariable& output(const std::string& name) const
    {
        for (const auto& v : outputs_)
            if (v.name() == name)
                return v;
        throw Error(Errc::unknown_variable, "no output variable '" + name + "'");
    }

private:
    std::vector<FuzzyVariable> inputs_;
    std::vector<FuzzyVariable> outputs_;
    RuleBase rules_;
    OperatorSet ops_;
};

using InputValues = std::map<std::string, double, std::less<>>;

/// Every intermediate of one inference run, kept for curve export.
struct InferenceTrace {
    std::map<std::string, FuzzifiedValue, std::less<>> fuzzified;
    std::vector<double> activations; // one per rule
    /// per output variable: the implicated set of each rule that names it
    std::map<std::string, std::vector<std::pair<std::size_t, DiscreteFuzzySet>>, std::less<>> implicated;
    std::map<std::string, DiscreteFuzzySet, std::less<>> aggregates;
};

inline InferenceTrace trace_inference(const FuzzySystem& system, const InputValues& inputs)
{
    InferenceTrace tr;
    for (const FuzzyVariable& v : system.inputs()) {
        auto it = inputs.find(v.name());
        if (it == inputs.end())
            throw Error(Errc::missing_input, "no value for input '" + v.name() + "'");
        tr.fuzzified.emplace(v.name(), fuzzify(v, it->second));
    }

    const OperatorSet& ops = system.operators();
    std::vector<double> degrees;
    for (const Rule& rule : system.rules().rules) {
        degrees.clear();
        for (const Clause& c : rule.antecedents)
            degrees.push_back(tr.fuzzified.at(c.variable).degree(c.label));
        tr.activations.push_back(rule_activation(degrees, ops.and_norm));
    }

    for (const FuzzyVariable& out : system.outputs()) {
        std::vector<Activation> acts;
        auto& per_rule = tr.implicated[out.name()];
        for (std::size_t r = 0; r < system.rules().rules.size(); ++r) {
            for (const Clause& c : system.rules().rules[r].consequents) {
                if (c.variable != out.name())
                    continue;
                acts.push_back({tr.activations[r], c.label});
                per_rule.emplace_back(r, implicated_set(tr.activations[r], out.mf(c.label), out.grid(), ops.implication));
            }
        }
        tr.aggregates.emplace(out.name(), aggregate_output(acts, out, ops));
    }
    return tr;
}

/// fuzzify -> activate -> implicate/aggregate -> centroid, per output variable.
inline std::map<std::string, double, std::less<>> infer(const FuzzySystem& system, const InputValues& inputs)
{
    const InferenceTrace tr = trace_inference(system, inputs);
    std::map<std::string, double, std::less<>> out;
    for (const auto& [name, set] : tr.aggregates) {
        try {
            out.emplace(name, centroid(set));
        } catch (const Error& e) {
            throw Error(e.code(), "output '" + name + "': " + e.detail());
        }
    }
    return out;
}

} // namespace fuzzy_klassen

#endif
