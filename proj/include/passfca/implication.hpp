#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "passfca/context.hpp"

namespace passfca {

/// Attribute implication premise -> conclusion.
///
/// Conclusions are stored as full closures, so premise is a subset of
/// conclusion. `support` is the number of objects whose row contains the premise.
struct Implication {
    AttributeSet premise;
    AttributeSet conclusion;
    std::size_t support = 0;

    friend bool operator==(const Implication&, const Implication&) = default;
};

/// Implications of one context, kept in the lectic order their premises were found.
struct ImplicationBasis {
    std::vector<Implication> implications;
    std::string context_id;

    std::size_t size() const noexcept { return implications.size(); }
    bool empty() const noexcept { return implications.empty(); }
    auto begin() const { return implications.begin(); }
    auto end() const { return implications.end(); }
    const Implication& operator[](std::size_t i) const { return implications[i]; }

    friend bool operator==(const ImplicationBasis&, const ImplicationBasis&) = default;
};

inline std::size_t support(const FormalContext& ctx, const AttributeSet& premise)
{
    return derive_objects(ctx, premise).size();
}

/// True iff every object having the premise also has the conclusion.
inline bool holds_in(const FormalContext& ctx, const Implication& imp)
{
    detail::require_attribute_universe(ctx, imp.premise);
    detail::require_attribute_universe(ctx, imp.conclusion);
    for (const auto& row : ctx.rows())
        if (imp.premise.is_subset_of(row) && !imp.conclusion.is_subset_of(row)) return false;
    return true;
}

/// LinClosure: saturates attribute sets under a fixed list of implications in
/// time linear in the total size of the premises.
///
/// Build once, then call `close` for as many sets as needed.
class LinClosure {
public:
    LinClosure(std::size_t universe, std::span<const Implication> implications)
        : universe_(universe), implications_(implications.begin(), implications.end()), by_attribute_(universe)
    {
        premise_sizes_.reserve(implications_.size());
        for (std::size_t i = 0; i < implications_.size(); ++i) {
            const auto& imp = implications_[i];
            if (imp.premise.universe() != universe || imp.conclusion.universe() != universe)
                throw std::invalid_argument("implication over a different attribute universe");
            premise_sizes_.push_back(imp.premise.size());
            for (auto m : imp.premise) by_attribute_[m].push_back(i);
        }
    }

    AttributeSet close(const AttributeSet& attrs) const
    {
        if (attrs.universe() != universe_) throw std::invalid_argument("attribute set over a different universe");
        AttributeSet result = attrs;
        std::vector<std::size_t> pending = premise_sizes_;
        std::vector<std::size_t> queue(attrs.begin(), attrs.end());

        auto fire = [&](std::size_t i) {
            for (auto m : implications_[i].conclusion) {
                if (!result.contains(m)) {
                    result.insert(m);
                    queue.push_back(m);
                }
            }
        };
        for (std::size_t i = 0; i < pending.size(); ++i)
            if (pending[i] == 0) fire(i);

        while (!queue.empty()) {
            auto m = queue.back();
            queue.pop_back();
            for (auto i : by_attribute_[m])
                if (--pending[i] == 0) fire(i);
        }
        return result;
    }

private:
    std::size_t universe_;
    std::vector<Implication> implications_;
    std::vector<std::vector<std::size_t>> by_attribute_;
    std::vector<std::size_t> premise_sizes_;
};

/// Smallest superset of `attrs` closed under every implication in `basis`.
inline AttributeSet implication_closure(const AttributeSet& attrs, std::span<const Implication> basis)
{
    return LinClosure(attrs.universe(), basis).close(attrs);
}

inline AttributeSet implication_closure(const AttributeSet& attrs, const ImplicationBasis& basis)
{
    return implication_closure(attrs, std::span<const Implication>(basis.implications));
}

/// Keeps implications with support >= min_support, preserving order.
inline ImplicationBasis filter_support(const ImplicationBasis& basis, std::size_t min_support)
{
    if (min_support == 0) throw std::invalid_argument("min_support must be at least 1");
    ImplicationBasis kept;
    kept.context_id = basis.context_id;
    for (const auto& imp : basis)
        if (imp.support >= min_support) kept.implications.push_back(imp);
    return kept;
}

} // namespace passfca
