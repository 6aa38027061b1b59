#ifndef FUZZY_KLASSEN_RULE_BASE_HPP_
#define FUZZY_KLASSEN_RULE_BASE_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fuzzy_klassen
{

/// `<variable> IS <label>`
struct Clause {
    std::string variable;
    std::string label;

    auto operator<=>(const Clause&) const = default;
};

/// IF a1 AND a2 ... THEN c1 ALSO c2 ...
struct Rule {
    std::vector<Clause> antecedents;
    std::vector<Clause> consequents;

    bool operator==(const Rule&) const = default;
};

/// Ordered rule list. Order is kept for reporting only; aggregation is
/// commutative, so it never changes an inference result.
struct RuleBase {
    std::vector<Rule> rules;

    std::size_t size() const noexcept { return rules.size(); }
    bool operator==(const RuleBase&) const = default;
};

struct VariableDecl {
    std::string name;
    std::vector<std::string> labels;

    bool has_label(std::string_view label) const
    {
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }
};

/// Variable and label declarations a rule base is checked against.
struct Schema {
    std::vector<VariableDecl> inputs;
    std::vector<VariableDecl> outputs;

    const VariableDecl* input(std::string_view name) const { return find(inputs, name); }
    const VariableDecl* output(std::string_view name) const { return find(outputs, name); }

private:
    static const VariableDecl* find(const std::vector<VariableDecl>& decls, std::string_view name)
    {
        auto it = std::find_if(decls.begin(), decls.end(), [&](const VariableDecl& d) { return d.name == name; });
        return it == decls.end() ? nullptr : &*it;
    }
};

namespace klassen_names
{
inline const std::string value_t = "Vt";
inline const std::string value_t1 = "Vt1";
inline const std::string rd = "RD";
inline const std::string rc = "RC";
inline const std::string low = "low";
inline const std::string medium = "medium";
inline const std::string high = "high";
} // namespace klassen_names

/// Two sector inputs over low/medium/high, two outputs over low/high.
inline Schema klassen_schema()
{
    using namespace klassen_names;
    const std::vector<std::string> in_labels{low, medium, high};
    const std::vector<std::string> out_labels{low, high};
    return Schema{{{value_t, in_labels}, {value_t1, in_labels}}, {{rd, out_labels}, {rc, out_labels}}};
}

namespace detail
{

inline bool keyword_is(std::string_view token, std::string_view keyword)
{
    return token.size() == keyword.size() &&
           std::equal(token.begin(), token.end(), keyword.begin(), [](char a, char b) {
               return std::toupper(static_cast<unsigned char>(a)) == b;
           });
}

inline std::vector<std::string> split_words(std::string_view line)
{
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    for (std::string w; in >> w;)
        words.push_back(std::move(w));
    return words;
}

inline std::vector<Clause> sorted_antecedents(const Rule& rule)
{
    std::vector<Clause> key = rule.antecedents;
    std::sort(key.begin(), key.end());
    return key;
}

inline Rule parse_rule_line(const std::vector<std::string>& w, const Schema& schema, std::size_t line)
{
    auto syntax = [line](const std::string& what) { return Error(Errc::syntax_error, what, line); };

    std::size_t i = 0;
    if (w.empty() || !keyword_is(w[0], "IF"))
        throw syntax("rule must start with IF");
    ++i;

    Rule rule;
    bool in_consequent = false;
    while (true) {
        if (i + 3 > w.size())
            throw syntax("expected '<variable> IS <label>'");
        const std::string& var = w[i];
        if (!keyword_is(w[i + 1], "IS"))
            throw syntax("expected IS after '" + var + "'");
        const std::string& label = w[i + 2];
        for (const char* kw : {"IF", "IS", "AND", "THEN", "ALSO"})
            if (keyword_is(var, kw) || keyword_is(label, kw))
                throw syntax(std::string("unexpected keyword ") + kw);
        i += 3;

        const VariableDecl* decl = in_consequent ? schema.output(var) : schema.input(var);
        if (decl == nullptr)
            throw Error(Errc::unknown_variable,
                        "'" + var + "' is not a declared " + (in_consequent ? "output" : "input") + " variable", line);
        if (!decl->has_label(label))
            throw Error(Errc::unknown_label, "'" + label + "' is not a label of '" + var + "'", line);

        auto& side = in_consequent ? rule.consequents : rule.antecedents;
        for (const Clause& c : side)
            if (c.variable == var) {
                if (in_consequent)
                    throw syntax("variable '" + var + "' appears twice in the consequent");
                throw Error(Errc::duplicate_antecedent_variable, "variable '" + var + "' appears twice", line);
            }
        side.push_back({var, label});

        if (i == w.size()) {
            if (!in_consequent)
                throw syntax("missing THEN");
            break;
        }
        const std::string& conn = w[i++];
        if (!in_consequent && keyword_is(conn, "AND"))
            continue;
        if (!in_consequent && keyword_is(conn, "THEN")) {
            in_consequent = true;
            continue;
        }
        if (in_consequent && keyword_is(conn, "ALSO"))
            continue;
        throw syntax("unexpected token '" + conn + "'");
    }
    return rule;
}

} // namespace detail

/**
 * Parses a rule file: one rule per line,
 *
 *   IF <var> IS <label> (AND <var> IS <label>)* THEN <var> IS <label> (ALSO <var> IS <label>)*
 *
 * Keywords are case-insensitive, `#` starts a comment, LF and CRLF are both
 * accepted. Any error aborts the whole parse.
 */
inline RuleBase parse_rules(std::string_view text, const Schema& schema)
{
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    RuleBase rb;
    std::vector<std::pair<std::vector<Clause>, std::size_t>> seen;
    std::size_t line_no = 0;
    while (!text.empty() || line_no == 0) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto words = detail::split_words(line);
        if (words.empty())
            continue;

        Rule rule = detail::parse_rule_line(words, schema, line_no);
        auto key = detail::sorted_antecedents(rule);
        for (const auto& [other, other_line] : seen)
            if (other == key)
                throw Error(Errc::duplicate_rule,
                            "same antecedents as the rule on line " + std::to_string(other_line), line_no);
        seen.emplace_back(std::move(key), line_no);
        rb.rules.push_back(std::move(rule));
    }
    if (rb.rules.empty())
        throw Error(Errc::syntax_error, "rule file contains no rules", 1);
    return rb;
}

inline std::string format_rule(const Rule& rule)
{
    std::string out = "IF";
    for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
        out += i == 0 ? " " : " AND ";
        out += rule.antecedents[i].variable + " IS " + rule.antecedents[i].label;
    }
    for (std::size_t i = 0; i < rule.consequents.size(); ++i) {
        out += i == 0 ? " THEN " : " ALSO ";
        out += rule.consequents[i].variable + " IS " + rule.consequents[i].label;
    }
    return out;
}

/// Canonical text, one rule per line with a trailing newline.
inline std::string format_rules(const RuleBase& rb)
{
    std::string out;
    for (const Rule& r : rb.rules)
        out += format_rule(r) + "\n";
    return out;
}

/**
 * Default Klassen rule table over (label at t, label at t-1):
 * RD is high when the current label outranks the previous one or both are
 * high, otherwise low; RC is high iff the current label is high.
 */
inline RuleBase default_klassen_rules()
{
    using namespace klassen_names;
    const std::vector<std::string> labels{low, medium, high};
    RuleBase rb;
    for (std::size_t now = 0; now < labels.size(); ++now) {
        for (std::size_t prev = 0; prev < labels.size(); ++prev) {
            const bool rd_high = now > prev || (now == 2 && prev == 2);
            const bool rc_high = now == 2;
            rb.rules.push_back(Rule{{{value_t, labels[now]}, {value_t1, labels[prev]}},
                                    {{rd, rd_high ? high : low}, {rc, rc_high ? high : low}}});
        }
    }
    return rb;
}

enum class FindingKind { missing_combination, unreachable_rule, overlapping_rules, unknown_name, malformed_rule, empty_rule_base };

inline std::string_view to_string(FindingKind kind)
{
    switch (kind) {
    case FindingKind::missing_combination: return "MissingCombination";
    case FindingKind::unreachable_rule: return "UnreachableRule";
    case FindingKind::overlapping_rules: return "OverlappingRules";
    case FindingKind::unknown_name: return "UnknownName";
    case FindingKind::malformed_rule: return "MalformedRule";
    case FindingKind::empty_rule_base: return "EmptyRuleBase";
    }
    return "Unknown";
}

struct Finding {
    FindingKind kind;
    std::size_t rule = 0; // 1-based, 0 when the finding is not about one rule
    std::string message;
};

/**
 * Checks names against the schema and coverage of the input label product.
 * An empty result means every input label combination is matched by exactly
 * one rule and every name is declared.
 */
inline std::vector<Finding> validate_rulebase(const RuleBase& rb, const Schema& schema)
{
    std::vector<Finding> findings;
    if (rb.rules.empty()) {
        findings.push_back({FindingKind::empty_rule_base, 0, "rule base has no rules"});
        return findings;
    }

    const std::size_t n_inputs = schema.inputs.size();
    std::size_t combos = 1;
    for (const auto& d : schema.inputs)
        combos *= d.labels.size();
    std::vector<int> coverage(n_inputs == 0 ? 0 : combos, 0);

    std::vector<std::vector<Clause>> seen;
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
        const Rule& rule = rb.rules[r];
        const std::size_t id = r + 1;
        if (rule.antecedents.empty() || rule.consequents.empty()) {
            findings.push_back({FindingKind::malformed_rule, id, "rule needs at least one antecedent and one consequent"});
            continue;
        }

        bool names_ok = true;
        // label index per input variable, -1 = unconstrained
        std::vector<int> fixed(n_inputs, -1);
        auto check = [&](const Clause& c, bool output) {
            const auto& decls = output ? schema.outputs : schema.inputs;
            auto it = std::find_if(decls.begin(), decls.end(), [&](const VariableDecl& d) { return d.name == c.variable; });
            if (it == decls.end()) {
                findings.push_back({FindingKind::unknown_name, id,
                                    std::string("undeclared ") + (output ? "output" : "input") + " variable '" + c.variable + "'"});
                names_ok = false;
                return;
            }
            auto lit = std::find(it->labels.begin(), it->labels.end(), c.label);
            if (lit == it->labels.end()) {
                findings.push_back({FindingKind::unknown_name, id, "undeclared label '" + c.label + "' of '" + c.variable + "'"});
                names_ok = false;
                return;
            }
            if (!output) {
                const auto v = static_cast<std::size_t>(it - decls.begin());
                if (fixed[v] != -1) {
                    findings.push_back({FindingKind::malformed_rule, id, "variable '" + c.variable + "' appears twice"});
                    names_ok = false;
                }
                fixed[v] = static_cast<int>(lit - it->labels.begin());
            }
        };
        for (const Clause& c : rule.antecedents)
            check(c, false);
        for (const Clause& c : rule.consequents)
            check(c, true);
        if (!names_ok)
            continue;

        auto key = detail::sorted_antecedents(rule);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            findings.push_back({FindingKind::unreachable_rule, id, "duplicates the antecedents of an earlier rule"});
            continue;
        }
        seen.push_back(std::move(key));

        for (std::size_t idx = 0; idx < coverage.size(); ++idx) {
            std::size_t rest = idx;
            bool match = true;
            for (std::size_t v = n_inputs; v-- > 0;) {
                const std::size_t n = schema.inputs[v].labels.size();
                const auto label = static_cast<int>(rest % n);
                rest /= n;
                if (fixed[v] != -1 && fixed[v] != label)
                    match = false;
            }
            if (match)
                ++coverage[idx];
        }
    }

    for (std::size_t idx = 0; idx < coverage.size(); ++idx) {
        if (coverage[idx] == 1)
            continue;
        std::string combo;
        std::size_t rest = idx;
        std::vector<std::string> parts(n_inputs);
        for (std::size_t v = n_inputs; v-- > 0;) {
            const std::size_t n = schema.inputs[v].labels.size();
            parts[v] = schema.inputs[v].name + " IS " + schema.inputs[v].labels[rest % n];
            rest /= n;
        }
        for (std::size_t v = 0; v < n_inputs; ++v)
            combo += (v == 0 ? "" : " AND ") + parts[v];
        if (coverage[idx] == 0)
            findings.push_back({FindingKind::missing_combination, 0, "no rule for " + combo});
        else
            findings.push_back({FindingKind::overlapping_rules, 0,
                                std::to_string(coverage[idx]) + " rules match " + combo});
    }
    return findings;
}

} // namespace fuzzy_klassen

#endif
