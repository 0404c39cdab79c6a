#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "passfca/index_set.hpp"

namespace passfca {

/// Binary formal context (G, M, I): named objects, named attributes and the
/// incidence relation stored both row-wise and column-wise.
///
/// Immutable after construction. Labels must be pairwise distinct within
/// objects and within attributes.
class FormalContext {
public:
    FormalContext() = default;

    FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes, std::vector<AttributeSet> rows)
        : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows))
    {
        if (rows_.size() != objects_.size())
            throw std::invalid_argument("context has " + std::to_string(objects_.size()) + " objects but " +
                                        std::to_string(rows_.size()) + " rows");
        for (const auto& row : rows_)
            if (row.universe() != attributes_.size())
                throw std::invalid_argument("context row width does not match attribute count");
        index_labels(objects_, object_index_, "object");
        index_labels(attributes_, attribute_index_, "attribute");
        columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
        for (std::size_t g = 0; g < rows_.size(); ++g)
            for (auto m : rows_[g]) columns_[m].insert(g);
    }

    static FormalContext from_matrix(std::vector<std::string> objects, std::vector<std::string> attributes,
                                     const std::vector<std::vector<bool>>& incidence)
    {
        std::vector<AttributeSet> rows;
        rows.reserve(incidence.size());
        for (const auto& cells : incidence) {
            if (cells.size() != attributes.size())
                throw std::invalid_argument("incidence row width does not match attribute count");
            AttributeSet row(attributes.size());
            for (std::size_t m = 0; m < cells.size(); ++m)
                if (cells[m]) row.insert(m);
            rows.push_back(std::move(row));
        }
        return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    }

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t attribute_count() const noexcept { return attributes_.size(); }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::vector<std::string>& attributes() const noexcept { return attributes_; }
    const std::string& object(std::size_t g) const { return objects_.at(g); }
    const std::string& attribute(std::size_t m) const { return attributes_.at(m); }

    const AttributeSet& row(std::size_t g) const { return rows_.at(g); }
    const ObjectSet& column(std::size_t m) const { return columns_.at(m); }
    const std::vector<AttributeSet>& rows() const noexcept { return rows_; }
    bool incident(std::size_t g, std::size_t m) const { return row(g).contains(m); }

    std::optional<std::size_t> object_index(std::string_view label) const
    {
        auto it = object_index_.find(std::string(label));
        if (it == object_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> attribute_index(std::string_view label) const
    {
        auto it = attribute_index_.find(std::string(label));
        if (it == attribute_index_.end()) return std::nullopt;
        return it->second;
    }

    AttributeSet no_attributes() const { return AttributeSet(attribute_count()); }
    AttributeSet all_attributes() const { return AttributeSet::full(attribute_count()); }
    ObjectSet no_objects() const { return ObjectSet(object_count()); }
    ObjectSet all_objects() const { return ObjectSet::full(object_count()); }

    /// Attribute set from labels; throws std::invalid_argument on an unknown label.
    template <class Range = std::initializer_list<std::string_view>>
    AttributeSet attributes_of(const Range& labels) const
    {
        AttributeSet s(attribute_count());
        for (const auto& label : labels) {
            auto m = attribute_index(label);
            if (!m) throw std::invalid_argument("unknown attribute '" + std::string(label) + "'");
            s.insert(*m);
        }
        return s;
    }
    template <class Range = std::initializer_list<std::string_view>>
    ObjectSet objects_of(const Range& labels) const
    {
        ObjectSet s(object_count());
        for (const auto& label : labels) {
            auto g = object_index(label);
            if (!g) throw std::invalid_argument("unknown object '" + std::string(label) + "'");
            s.insert(*g);
        }
        return s;
    }

    friend bool operator==(const FormalContext& a, const FormalContext& b)
    {
        return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
    }

private:
    static void index_labels(const std::vector<std::string>& labels,
                             std::unordered_map<std::string, std::size_t>& index, const char* kind)
    {
        index.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!index.emplace(labels[i], i).second)
                throw std::invalid_argument(std::string("duplicate ") + kind + " label '" + labels[i] + "'");
    }

    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<AttributeSet> rows_;
    std::vector<ObjectSet> columns_;
    std::unordered_map<std::string, std::size_t> object_index_;
    std::unordered_map<std::string, std::size_t> attribute_index_;
};

namespace detail {
inline void require_attribute_universe(const FormalContext& ctx, const AttributeSet& attrs)
{
    if (attrs.universe() != ctx.attribute_count())
        throw std::invalid_argument("attribute set over " + std::to_string(attrs.universe()) +
                                    " attributes used with a context of " + std::to_string(ctx.attribute_count()));
}
inline void require_object_universe(const FormalContext& ctx, const ObjectSet& objs)
{
    if (objs.universe() != ctx.object_count())
        throw std::invalid_argument("object set over " + std::to_string(objs.universe()) +
                                    " objects used with a context of " + std::to_string(ctx.object_count()));
}
} // namespace detail

/// Attributes shared by every object in `objs`; all attributes for the empty set.
inline AttributeSet derive_attributes(const FormalContext& ctx, const ObjectSet& objs)
{
    detail::require_object_universe(ctx, objs);
    AttributeSet common = ctx.all_attributes();
    for (auto g : objs) common &= ctx.row(g);
    return common;
}

/// Extent of `attrs`: objects having every attribute in it.
inline ObjectSet derive_objects(const FormalContext& ctx, const AttributeSet& attrs)
{
    detail::require_attribute_universe(ctx, attrs);
    ObjectSet extent = ctx.all_objects();
    for (auto m : attrs) extent &= ctx.column(m);
    return extent;
}

inline AttributeSet closure(const FormalContext& ctx, const AttributeSet& attrs)
{
    return derive_attributes(ctx, derive_objects(ctx, attrs));
}

} // namespace passfca
