#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "passfca/basis_io.hpp"
#include "passfca/canonical_basis.hpp"
#include "passfca/errors.hpp"
#include "passfca/events.hpp"
#include "passfca/ingest.hpp"
#include "passfca/patterns.hpp"
#include "passfca/scaling.hpp"

namespace passfca {

/// Environment variable naming the directory that holds the dataset files.
inline constexpr const char* dataset_root_env = "PASSFCA_DATA_DIR";

struct DatasetPaths {
    std::filesystem::path events;
    std::filesystem::path matches;
    std::filesystem::path players;

    friend bool operator==(const DatasetPaths&, const DatasetPaths&) = default;
};

/// Looks for events_Spain.json, matches_Spain.json and players.json directly
/// under `root` or in its events/ and matches/ subdirectories.
inline DatasetPaths dataset_paths_under(const std::filesystem::path& root)
{
    auto pick = [&](std::initializer_list<std::filesystem::path> candidates) {
        for (const auto& c : candidates)
            if (std::filesystem::exists(root / c)) return root / c;
        return root / *candidates.begin();
    };
    return {pick({"events_Spain.json", "events/events_Spain.json"}),
            pick({"matches_Spain.json", "matches/matches_Spain.json"}), pick({"players.json"})};
}

inline std::optional<std::filesystem::path> dataset_root_from_env()
{
    const char* root = std::getenv(dataset_root_env);
    if (root == nullptr || *root == '\0') return std::nullopt;
    return std::filesystem::path(root);
}

struct PipelineConfig {
    TeamId team_id = default_team_id;
    std::set<int> tags = default_pass_tags();
    ScalingConfig scaling;
    SearchConfig search;
    std::size_t min_support = 1;
    ErrorMode error_mode = ErrorMode::skip_and_report;
    bool dedup_hits = false;
    DatasetPaths paths;
    std::filesystem::path out_dir = "out";

    void validate() const
    {
        scaling.validate();
        search.validate();
        if (min_support < 1) throw std::invalid_argument("min_support must be at least 1");
        if (tags.empty()) throw std::invalid_argument("tag set must not be empty");
    }

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

inline nlohmann::json to_json(const PipelineConfig& cfg)
{
    return {{"team_id", cfg.team_id},
            {"tags", cfg.tags},
            {"scaling",
             {{"bins_per_half", cfg.scaling.bins_per_half},
              {"max_minutes", cfg.scaling.max_minutes},
              {"overflow", cfg.scaling.overflow == OverflowPolicy::clamp ? "clamp" : "reject"}}},
            {"search", {{"score_cutoff", cfg.search.score_cutoff}, {"limit", cfg.search.limit}}},
            {"min_support", cfg.min_support},
            {"strict", cfg.error_mode == ErrorMode::strict},
            {"dedup_hits", cfg.dedup_hits},
            {"paths",
             {{"events", cfg.paths.events.generic_string()},
              {"matches", cfg.paths.matches.generic_string()},
              {"players", cfg.paths.players.generic_string()}}},
            {"out_dir", cfg.out_dir.generic_string()}};
}

/// Missing keys keep the values already in `base`.
inline PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {})
{
    try {
        if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
        base.team_id = j.value("team_id", base.team_id);
        if (j.contains("tags")) base.tags = j.at("tags").get<std::set<int>>();
        if (auto it = j.find("scaling"); it != j.end()) {
            base.scaling.bins_per_half = it->value("bins_per_half", base.scaling.bins_per_half);
            base.scaling.max_minutes = it->value("max_minutes", base.scaling.max_minutes);
            if (it->contains("overflow")) {
                auto policy = it->at("overflow").get<std::string>();
                if (policy != "clamp" && policy != "reject")
                    throw std::invalid_argument("overflow must be 'clamp' or 'reject'");
                base.scaling.overflow = policy == "clamp" ? OverflowPolicy::clamp : OverflowPolicy::reject;
            }
        }
        if (auto it = j.find("search"); it != j.end()) {
            base.search.score_cutoff = it->value("score_cutoff", base.search.score_cutoff);
            base.search.limit = it->value("limit", base.search.limit);
        }
        base.min_support = j.value("min_support", base.min_support);
        if (j.contains("strict"))
            base.error_mode = j.at("strict").get<bool>() ? ErrorMode::strict : ErrorMode::skip_and_report;
        base.dedup_hits = j.value("dedup_hits", base.dedup_hits);
        if (auto it = j.find("paths"); it != j.end()) {
            if (it->contains("events")) base.paths.events = it->at("events").get<std::string>();
            if (it->contains("matches")) base.paths.matches = it->at("matches").get<std::string>();
            if (it->contains("players")) base.paths.players = it->at("players").get<std::string>();
        }
        if (j.contains("out_dir")) base.out_dir = j.at("out_dir").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return base;
}

/// `2565554:1H` or `2565554_1H`.
inline HalfKey parse_half_key(std::string_view text)
{
    auto sep = text.find_first_of(":_");
    if (sep == 0 || sep == std::string_view::npos || sep + 1 == text.size())
        throw std::invalid_argument("half must look like MATCH:PERIOD, got '" + std::string(text) + "'");
    HalfKey key;
    try {
        std::size_t used = 0;
        key.match_id = std::stoll(std::string(text.substr(0, sep)), &used);
        if (used != sep) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad match id in '" + std::string(text) + "'");
    }
    key.period = std::string(text.substr(sep + 1));
    return key;
}

/// Resolved team passes grouped by half, plus every half present in the
/// stream whether or not the team passed in it.
struct TeamPasses {
    std::map<HalfKey, std::vector<PassEvent>> halves;
    std::map<HalfKey, std::size_t> dropped;
    std::set<HalfKey> all_halves;
};

/// `events` must be chronologically sorted. An empty `matches` keeps every match.
inline TeamPasses extract_team_passes(std::span<const RawEvent> events, TeamId team_id, const std::set<int>& tags,
                                      const std::set<MatchId>& matches = {})
{
    TeamPasses out;
    std::vector<RawEvent> selected;
    for (const auto& ev : events)
        if (matches.empty() || matches.contains(ev.match_id)) {
            out.all_halves.insert({ev.match_id, ev.match_period});
            selected.push_back(ev);
        }
    auto passes = filter_team_passes(selected, team_id, tags);
    auto inferred = infer_receivers(selected, passes);
    for (auto& p : inferred.passes) out.halves[{p.match_id, p.period}].push_back(std::move(p));
    for (const auto& p : inferred.dropped) ++out.dropped[{p.match_id, p.period}];
    return out;
}

struct HalfAnalysis {
    HalfKey key;
    std::size_t pass_count = 0;
    std::size_t clamped_events = 0;
    FormalContext context;
    ImplicationBasis basis;
    ImplicationBasis retained;
    std::vector<ConclusionString> conclusions;
};

inline std::vector<ConclusionString> stringify_conclusions(const HalfKey& key,
                                                           const std::vector<LabelledImplication>& implications)
{
    std::vector<ConclusionString> out;
    out.reserve(implications.size());
    for (std::size_t i = 0; i < implications.size(); ++i)
        out.push_back(stringify_labels(implications[i].conclusion, {key, i}));
    return out;
}

/// Scale, compute the canonical basis, keep implications with enough support
/// and stringify their conclusions.
inline HalfAnalysis analyze_half(const HalfKey& key, std::span<const PassEvent> passes, const PipelineConfig& cfg)
{
    HalfAnalysis a;
    a.key = key;
    a.pass_count = passes.size();
    auto scaled = scale_context_with_stats(passes, cfg.scaling);
    a.context = std::move(scaled.context);
    a.clamped_events = scaled.clamped_events;
    a.basis = canonical_basis(a.context, key.name());
    a.retained = filter_support(a.basis, cfg.min_support);
    a.conclusions = stringify_conclusions(key, label(a.context, a.retained));
    return a;
}

struct TargetSection {
    HalfKey half;
    bool missing = false;
    std::size_t conclusions = 0;
};

struct HitGroup {
    ConclusionString query;
    HalfKey target;
    std::vector<SimilarityMatch> hits;
};

struct SearchReport {
    HalfKey index;
    std::size_t queries = 0;
    SearchConfig search;
    std::vector<TargetSection> targets;
    std::vector<HitGroup> groups;
};

/// Target half with its conclusions; nullopt marks a half with no data.
using TargetConclusions = std::pair<HalfKey, std::optional<std::vector<ConclusionString>>>;

/// Groups come out in index-conclusion order, then target order. With
/// `dedup` a (query text, target half, target text) triple is reported once.
inline SearchReport search_conclusions(const HalfKey& index, std::span<const ConclusionString> queries,
                                       std::span<const TargetConclusions> targets, const SearchConfig& search,
                                       bool dedup = false)
{
    search.validate();
    SearchReport report;
    report.index = index;
    report.queries = queries.size();
    report.search = search;
    for (const auto& [half, conclusions] : targets)
        report.targets.push_back({half, !conclusions.has_value(), conclusions ? conclusions->size() : 0});

    std::set<std::tuple<std::string, HalfKey, std::string>> seen;
    for (const auto& query : queries) {
        for (const auto& [half, conclusions] : targets) {
            if (!conclusions) continue;
            HitGroup group{query, half, extract_similar(query, *conclusions, search)};
            if (dedup)
                std::erase_if(group.hits, [&](const SimilarityMatch& m) {
                    return !seen.emplace(query.text, half, m.target.text).second;
                });
            if (!group.hits.empty()) report.groups.push_back(std::move(group));
        }
    }
    return report;
}

/// Parses nothing itself: `events` is the already parsed event log.
inline SearchReport run_pipeline(std::vector<RawEvent> events, const HalfKey& index,
                                 std::span<const HalfKey> targets, const PipelineConfig& cfg)
{
    cfg.validate();
    sort_chronologically(events);
    std::set<MatchId> matches{index.match_id};
    for (const auto& t : targets) matches.insert(t.match_id);
    auto team = extract_team_passes(events, cfg.team_id, cfg.tags, matches);

    auto conclusions_of = [&](const HalfKey& key) -> std::optional<std::vector<ConclusionString>> {
        auto it = team.halves.find(key);
        if (it == team.halves.end() || it->second.empty()) return std::nullopt;
        return analyze_half(key, it->second, cfg).conclusions;
    };

    auto queries = conclusions_of(index).value_or(std::vector<ConclusionString>{});
    std::vector<TargetConclusions> sections;
    for (const auto& t : targets) sections.emplace_back(t, conclusions_of(t));
    return search_conclusions(index, queries, sections, cfg.search, cfg.dedup_hits);
}

inline SearchReport run_pipeline(const DatasetPaths& paths, const HalfKey& index, std::span<const HalfKey> targets,
                                 const PipelineConfig& cfg)
{
    return run_pipeline(parse_events(paths.events, cfg.error_mode).events, index, targets, cfg);
}

namespace detail {
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}
} // namespace detail

inline void write_report_csv(std::ostream& out, const SearchReport& report)
{
    out << "query_text,target_match,target_period,target_text,ratio\n";
    for (const auto& g : report.groups)
        for (const auto& hit : g.hits)
            out << detail::csv_field(g.query.text) << ',' << g.target.match_id << ','
                << detail::csv_field(g.target.period) << ',' << detail::csv_field(hit.target.text) << ','
                << hit.ratio << '\n';
}

inline nlohmann::json report_to_json(const SearchReport& report)
{
    auto targets = nlohmann::json::array();
    for (const auto& t : report.targets)
        targets.push_back({{"match_id", t.half.match_id},
                           {"period", t.half.period},
                           {"missing", t.missing},
                           {"conclusions", t.conclusions}});
    auto groups = nlohmann::json::array();
    for (const auto& g : report.groups) {
        auto hits = nlohmann::json::array();
        for (const auto& h : g.hits)
            hits.push_back({{"target_text", h.target.text},
                            {"target_implication", h.target.source.implication_index},
                            {"ratio", h.ratio}});
        groups.push_back({{"query_text", g.query.text},
                          {"query_implication", g.query.source.implication_index},
                          {"target_match", g.target.match_id},
                          {"target_period", g.target.period},
                          {"hits", hits}});
    }
    return {{"index", {{"match_id", report.index.match_id}, {"period", report.index.period}}},
            {"queries", report.queries},
            {"score_cutoff", report.search.score_cutoff},
            {"limit", report.search.limit},
            {"targets", targets},
            {"groups", groups}};
}

} // namespace passfca
