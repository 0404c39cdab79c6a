#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "passfca/context.hpp"
#include "passfca/implication.hpp"

namespace passfca {

/// First closed set in lectic order: the closure of the empty set.
template <class ClosureOp>
AttributeSet first_closure(const FormalContext& ctx, ClosureOp&& close)
{
    return close(ctx.no_attributes());
}

/// Lectically next set closed under `close` after `current`, which must itself
/// be closed. Lectic order is induced by ascending attribute index, the
/// highest index being the least significant. Returns nullopt after M.
template <class ClosureOp>
std::optional<AttributeSet> next_closure(const FormalContext& ctx, const AttributeSet& current, ClosureOp&& close)
{
    detail::require_attribute_universe(ctx, current);
    AttributeSet prefix = current;
    for (std::size_t j = ctx.attribute_count(); j-- > 0;) {
        if (prefix.contains(j)) {
            prefix.erase(j);
            continue;
        }
        AttributeSet candidate = prefix;
        candidate.insert(j);
        AttributeSet closed = close(candidate);
        if (!closed.any_new_below(prefix, j)) return closed;
    }
    return std::nullopt;
}

namespace detail {

/// Implications discovered so far, applied as a saturation operator.
///
/// `close_within` saturates in place and gives up as soon as the set gains a
/// member below `bound` that `prefix` lacks, since NextClosure would reject
/// such a candidate anyway.
class PseudoClosure {
public:
    explicit PseudoClosure(std::size_t universe) : universe_(universe) {}

    void add(const AttributeSet& premise, const AttributeSet& conclusion)
    {
        premises_.push_back(premise);
        conclusions_.push_back(conclusion);
    }

    bool close_within(AttributeSet& x, const AttributeSet& prefix, std::size_t bound) const
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = 0; k < premises_.size(); ++k) {
                if (!premises_[k].is_subset_of(x) || conclusions_[k].is_subset_of(x)) continue;
                x |= conclusions_[k];
                if (x.any_new_below(prefix, bound)) return false;
                changed = true;
            }
        }
        return true;
    }

private:
    std::size_t universe_;
    std::vector<AttributeSet> premises_;
    std::vector<AttributeSet> conclusions_;
};

} // namespace detail

/// Duquenne-Guigues basis of `ctx`: one implication P -> P'' for every
/// pseudo-intent P, in the lectic order the premises are discovered.
///
/// Enumerates the sets closed under the implications found so far with
/// NextClosure. When the context closure of a pseudo-intent adds nothing below
/// the position that produced it, the enumeration jumps straight to that
/// closure instead of searching for it.
inline ImplicationBasis canonical_basis(const FormalContext& ctx, std::string context_id = {})
{
    ImplicationBasis basis;
    basis.context_id = std::move(context_id);
    const std::size_t n = ctx.attribute_count();
    if (n == 0) return basis;

    detail::PseudoClosure found(n);
    AttributeSet current = ctx.no_attributes();
    std::size_t position = n;

    for (;;) {
        ObjectSet extent = derive_objects(ctx, current);
        AttributeSet intent = derive_attributes(ctx, extent);
        if (intent != current) {
            found.add(current, intent);
            basis.implications.push_back({current, intent, extent.size()});
        }

        if (intent.any_new_below(current, position)) {
            current.keep_below(position);
        } else {
            if (intent.is_full()) break;
            current = std::move(intent);
            position = n;
        }

        bool advanced = false;
        for (std::size_t j = position; j-- > 0;) {
            if (current.contains(j)) {
                current.erase(j);
                continue;
            }
            AttributeSet candidate = current;
            candidate.insert(j);
            if (found.close_within(candidate, current, j)) {
                current = std::move(candidate);
                position = j;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return basis;
}

} // namespace passfca
