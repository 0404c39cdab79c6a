#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "passfca/context.hpp"
#include "passfca/errors.hpp"
#include "passfca/implication.hpp"

namespace passfca {

/// Implication with attributes spelled out as labels, independent of any context.
struct LabelledImplication {
    std::vector<std::string> premise;
    std::vector<std::string> conclusion;
    std::size_t support = 0;

    friend bool operator==(const LabelledImplication&, const LabelledImplication&) = default;
};

/// Labels of `attrs` in ascending byte order.
inline std::vector<std::string> sorted_labels(const FormalContext& ctx, const AttributeSet& attrs)
{
    detail::require_attribute_universe(ctx, attrs);
    std::vector<std::string> labels;
    labels.reserve(attrs.size());
    for (auto m : attrs) labels.push_back(ctx.attribute(m));
    std::sort(labels.begin(), labels.end());
    return labels;
}

inline LabelledImplication label(const FormalContext& ctx, const Implication& imp)
{
    return {sorted_labels(ctx, imp.premise), sorted_labels(ctx, imp.conclusion), imp.support};
}

inline std::vector<LabelledImplication> label(const FormalContext& ctx, const ImplicationBasis& basis)
{
    std::vector<LabelledImplication> out;
    out.reserve(basis.size());
    for (const auto& imp : basis) out.push_back(label(ctx, imp));
    return out;
}

/// `p1 p2 -> c1 c2 [support=N]`; an empty side leaves no stray space.
inline std::string format_implication(const LabelledImplication& imp)
{
    std::string line;
    for (const auto& p : imp.premise) line += p + ' ';
    line += "->";
    for (const auto& c : imp.conclusion) line += ' ' + c;
    line += " [support=" + std::to_string(imp.support) + "]";
    return line;
}

inline void write_basis_text(std::ostream& out, const std::vector<LabelledImplication>& basis)
{
    for (const auto& imp : basis) out << format_implication(imp) << '\n';
}

inline void write_basis_text(std::ostream& out, const FormalContext& ctx, const ImplicationBasis& basis)
{
    write_basis_text(out, label(ctx, basis));
}

inline LabelledImplication parse_implication_line(const std::string& line, std::size_t line_no = 0)
{
    auto arrow = line.find("->");
    auto open = line.rfind(" [support=");
    if (arrow == std::string::npos || open == std::string::npos || open < arrow || line.back() != ']')
        throw ParseError("basis: malformed implication line '" + line + "'", line_no);

    LabelledImplication imp;
    std::istringstream premise(line.substr(0, arrow));
    for (std::string tok; premise >> tok;) imp.premise.push_back(tok);
    std::istringstream conclusion(line.substr(arrow + 2, open - arrow - 2));
    for (std::string tok; conclusion >> tok;) imp.conclusion.push_back(tok);

    auto digits = line.substr(open + 10, line.size() - open - 11);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("basis: bad support value '" + digits + "'", line_no);
    imp.support = std::stoull(digits);
    return imp;
}

inline std::vector<LabelledImplication> read_basis_text(std::istream& in)
{
    std::vector<LabelledImplication> basis;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        basis.push_back(parse_implication_line(line, line_no));
    }
    return basis;
}

/// Resolves labels back to attribute indices of `ctx`.
inline ImplicationBasis resolve(const FormalContext& ctx, const std::vector<LabelledImplication>& labelled,
                                std::string context_id = {})
{
    ImplicationBasis basis;
    basis.context_id = std::move(context_id);
    for (const auto& imp : labelled)
        basis.implications.push_back(
            {ctx.attributes_of(imp.premise), ctx.attributes_of(imp.conclusion), imp.support});
    return basis;
}

inline nlohmann::json basis_to_json(const std::vector<LabelledImplication>& basis)
{
    auto arr = nlohmann::json::array();
    for (const auto& imp : basis)
        arr.push_back({{"premise", imp.premise}, {"conclusion", imp.conclusion}, {"support", imp.support}});
    return arr;
}

inline std::vector<LabelledImplication> basis_from_json(const nlohmann::json& j)
{
    if (!j.is_array()) throw ParseError("basis json: expected an array", 0);
    std::vector<LabelledImplication> basis;
    basis.reserve(j.size());
    for (const auto& item : j) {
        try {
            basis.push_back({item.at("premise").get<std::vector<std::string>>(),
                             item.at("conclusion").get<std::vector<std::string>>(),
                             item.at("support").get<std::size_t>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("basis json: ") + e.what(), basis.size());
        }
    }
    return basis;
}

} // namespace passfca
