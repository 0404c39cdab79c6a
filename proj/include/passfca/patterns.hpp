#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "passfca/context.hpp"
#include "passfca/events.hpp"

namespace passfca {

struct ConclusionSource {
    HalfKey half;
    std::size_t implication_index = 0;

    friend bool operator==(const ConclusionSource&, const ConclusionSource&) = default;
};

/// Conclusion rendered as its distinct labels in ascending byte order,
/// separated by single spaces.
struct ConclusionString {
    std::string text;
    ConclusionSource source;

    friend bool operator==(const ConclusionString&, const ConclusionString&) = default;
};

struct SimilarityMatch {
    ConclusionString query;
    ConclusionString target;
    int ratio = 0;

    friend bool operator==(const SimilarityMatch&, const SimilarityMatch&) = default;
};

struct SearchConfig {
    int score_cutoff = 75;
    int limit = 10;

    void validate() const
    {
        if (score_cutoff < 0 || score_cutoff > 100) throw std::invalid_argument("score_cutoff must be in [0, 100]");
        if (limit < 1) throw std::invalid_argument("limit must be at least 1");
    }

    friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

inline std::string join_sorted_unique(std::vector<std::string> labels)
{
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::string text;
    for (const auto& l : labels) {
        if (!text.empty()) text += ' ';
        text += l;
    }
    return text;
}

inline ConclusionString stringify_labels(std::vector<std::string> labels, ConclusionSource source = {})
{
    return {join_sorted_unique(std::move(labels)), std::move(source)};
}

inline ConclusionString stringify_conclusion(const AttributeSet& conclusion, const FormalContext& ctx,
                                             ConclusionSource source = {})
{
    detail::require_attribute_universe(ctx, conclusion);
    std::vector<std::string> labels;
    labels.reserve(conclusion.size());
    for (auto m : conclusion) labels.push_back(ctx.attribute(m));
    return stringify_labels(std::move(labels), std::move(source));
}

/// Edit distance with insertion and deletion costing 1 and substitution 2.
inline std::size_t edit_distance_sub2(std::string_view a, std::string_view b)
{
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t above = row[j];
            std::size_t best = std::min(above, row[j - 1]) + 1;
            best = std::min(best, diagonal + (a[i - 1] == b[j - 1] ? 0 : 2));
            row[j] = best;
            diagonal = above;
        }
    }
    return row[b.size()];
}

/// round(100 * (L - d) / L) rounding halves up, with L = |a| + |b|; 100 when both are empty.
inline int similarity_ratio(std::string_view a, std::string_view b)
{
    std::size_t total = a.size() + b.size();
    if (total == 0) return 100;
    std::size_t same = total - edit_distance_sub2(a, b);
    return static_cast<int>((200 * same + total) / (2 * total));
}

/// Splits on whitespace runs, sorts the tokens by byte order and rejoins them with single spaces.
inline std::string sort_tokens(std::string_view text)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

inline int token_sort_ratio(std::string_view a, std::string_view b)
{
    return similarity_ratio(sort_tokens(a), sort_tokens(b));
}

/// Choices scoring at least the cutoff against `query`, best first. Equal
/// ratios keep the order of `choices`; at most `cfg.limit` are returned.
inline std::vector<SimilarityMatch> extract_similar(const ConclusionString& query,
                                                    std::span<const ConclusionString> choices,
                                                    const SearchConfig& cfg = {})
{
    cfg.validate();
    const std::string normalized_query = sort_tokens(query.text);
    std::vector<SimilarityMatch> hits;
    for (const auto& choice : choices) {
        int ratio = similarity_ratio(normalized_query, sort_tokens(choice.text));
        if (ratio >= cfg.score_cutoff) hits.push_back({query, choice, ratio});
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const SimilarityMatch& a, const SimilarityMatch& b) { return a.ratio > b.ratio; });
    if (hits.size() > static_cast<std::size_t>(cfg.limit)) hits.resize(static_cast<std::size_t>(cfg.limit));
    return hits;
}

} // namespace passfca
