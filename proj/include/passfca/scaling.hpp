#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "passfca/context.hpp"
#include "passfca/errors.hpp"
#include "passfca/events.hpp"

namespace passfca {

enum class OverflowPolicy { clamp, reject };

/// Histogram scaling of match time into bins. An event at `s` seconds lands
/// in bin trunc((s / 60) * (bins_per_half - 1) / max_minutes).
struct ScalingConfig {
    int bins_per_half = 10;
    double max_minutes = 50;
    OverflowPolicy overflow = OverflowPolicy::clamp;

    double bin_factor() const { return (bins_per_half - 1) / max_minutes; }

    void validate() const
    {
        if (bins_per_half < 1) throw std::invalid_argument("bins_per_half must be at least 1");
        if (!(max_minutes > 0) || !std::isfinite(max_minutes))
            throw std::invalid_argument("max_minutes must be positive");
    }

    friend bool operator==(const ScalingConfig&, const ScalingConfig&) = default;
};

/// Bin before any overflow policy is applied.
inline long long raw_bin_index(double event_sec, const ScalingConfig& cfg)
{
    cfg.validate();
    if (!(event_sec >= 0) || !std::isfinite(event_sec))
        throw std::invalid_argument("event_sec must be a non-negative number, got " + std::to_string(event_sec));
    // Multiply before dividing so bin edges such as 3000 s with 9/50 land exactly.
    return static_cast<long long>(std::floor(event_sec * (cfg.bins_per_half - 1) / (60.0 * cfg.max_minutes)));
}

inline int bin_index(double event_sec, const ScalingConfig& cfg)
{
    auto bin = raw_bin_index(event_sec, cfg);
    const long long last = cfg.bins_per_half - 1;
    if (bin > last) {
        if (cfg.overflow == OverflowPolicy::reject)
            throw BinOverflowError("event at " + std::to_string(event_sec) + " s falls past bin " +
                                       std::to_string(last),
                                   event_sec);
        return static_cast<int>(last);
    }
    return static_cast<int>(bin);
}

/// (receiver, bin) column of a scaled context, rendered `Bin<bin>_<receiver>`.
struct ScaledAttribute {
    std::string receiver_id;
    int bin = 0;

    std::string label() const { return "Bin" + std::to_string(bin) + "_" + receiver_id; }

    static std::optional<ScaledAttribute> parse(std::string_view label)
    {
        if (!label.starts_with("Bin")) return std::nullopt;
        label.remove_prefix(3);
        auto sep = label.find('_');
        if (sep == 0 || sep == std::string_view::npos || sep + 1 == label.size()) return std::nullopt;
        auto digits = label.substr(0, sep);
        if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
        int bin = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bin);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || bin < 0) return std::nullopt;
        return ScaledAttribute{std::string(label.substr(sep + 1)), bin};
    }

    friend bool operator==(const ScaledAttribute&, const ScaledAttribute&) = default;
};

struct ScaledContext {
    FormalContext context;
    std::size_t clamped_events = 0;
};

/// Binary context of one half: passers as objects, (receiver, bin) pairs as
/// attributes, both in first-occurrence order after sorting the passes by
/// (event_sec, event_id). Repeated passes collapse into one incidence.
inline ScaledContext scale_context_with_stats(std::span<const PassEvent> passes, const ScalingConfig& cfg)
{
    cfg.validate();
    if (passes.empty()) return {};

    std::vector<const PassEvent*> ordered;
    ordered.reserve(passes.size());
    for (const auto& p : passes) {
        if (p.match_id != passes.front().match_id || p.period != passes.front().period)
            throw std::invalid_argument("scale_context: passes span more than one match half");
        if (!p.receiver_id)
            throw std::invalid_argument("scale_context: pass " + std::to_string(p.event_id) + " has no receiver");
        ordered.push_back(&p);
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](const PassEvent* a, const PassEvent* b) {
        if (a->event_sec != b->event_sec) return a->event_sec < b->event_sec;
        return a->event_id < b->event_id;
    });

    std::vector<std::string> objects, attributes;
    std::unordered_map<std::string, std::size_t> object_at, attribute_at;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::size_t clamped = 0;

    auto intern = [](std::vector<std::string>& labels, std::unordered_map<std::string, std::size_t>& at,
                     std::string label) {
        auto [it, fresh] = at.emplace(label, labels.size());
        if (fresh) labels.push_back(std::move(label));
        return it->second;
    };

    for (const auto* p : ordered) {
        int bin;
        try {
            bin = bin_index(p->event_sec, cfg);
        } catch (const BinOverflowError& e) {
            throw BinOverflowError("pass " + std::to_string(p->event_id) + " of match " +
                                       std::to_string(p->match_id) + " " + p->period + ": " + e.what(),
                                   p->event_sec, p->event_id);
        }
        if (raw_bin_index(p->event_sec, cfg) != bin) ++clamped;
        auto g = intern(objects, object_at, std::to_string(p->passer_id));
        auto m = intern(attributes, attribute_at, ScaledAttribute{std::to_string(*p->receiver_id), bin}.label());
        cells.emplace_back(g, m);
    }

    std::vector<AttributeSet> rows(objects.size(), AttributeSet(attributes.size()));
    for (auto [g, m] : cells) rows[g].insert(m);
    return {FormalContext(std::move(objects), std::move(attributes), std::move(rows)), clamped};
}

inline FormalContext scale_context(std::span<const PassEvent> passes, const ScalingConfig& cfg)
{
    return scale_context_with_stats(passes, cfg).context;
}

} // namespace passfca
