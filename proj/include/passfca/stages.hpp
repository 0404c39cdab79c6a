#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "passfca/basis_io.hpp"
#include "passfca/context_io.hpp"
#include "passfca/errors.hpp"
#include "passfca/pipeline.hpp"

// File-based pipeline stages. Layout under the output directory:
//
//   passes/<match>_<period>.jsonl      ingest
//   ingest_summary.json                ingest
//   contexts/<match>_<period>.cxt      scale
//   bases/<match>_<period>.basis.txt   basis
//   bases/<match>_<period>.basis.json  basis
//   reports/search_<index>.csv|.json   search
//   cache.json                         content hashes of stage inputs
//
// Each stage reads only the artifacts of the stage before it.

namespace passfca::stages {

namespace fs = std::filesystem;

/// FNV-1a, 64 bit. Stable across platforms, which std::hash is not.
class ContentHash {
public:
    ContentHash& add(std::string_view bytes)
    {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ull;
        }
        // Length separator so ("ab","c") and ("a","bc") differ.
        auto n = std::to_string(bytes.size());
        for (unsigned char c : n) {
            state_ ^= c;
            state_ *= 0x100000001b3ull;
        }
        return *this;
    }
    std::string hex() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

struct Layout {
    fs::path root;

    fs::path passes(const HalfKey& h) const { return root / "passes" / (h.name() + ".jsonl"); }
    fs::path context(const HalfKey& h) const { return root / "contexts" / (h.name() + ".cxt"); }
    fs::path context_csv(const HalfKey& h) const { return root / "contexts" / (h.name() + ".csv"); }
    fs::path basis_text(const HalfKey& h) const { return root / "bases" / (h.name() + ".basis.txt"); }
    fs::path basis_json(const HalfKey& h) const { return root / "bases" / (h.name() + ".basis.json"); }
    fs::path report_csv(const HalfKey& h) const { return root / "reports" / ("search_" + h.name() + ".csv"); }
    fs::path report_json(const HalfKey& h) const { return root / "reports" / ("search_" + h.name() + ".json"); }
    fs::path ingest_summary() const { return root / "ingest_summary.json"; }
    fs::path cache() const { return root / "cache.json"; }
};

inline std::string read_text(const fs::path& path) { return detail::read_file(path); }

inline void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

/// Artifact -> hash of the inputs and settings that produced it.
class Cache {
public:
    explicit Cache(fs::path file) : file_(std::move(file))
    {
        if (fs::exists(file_)) {
            try {
                entries_ = nlohmann::json::parse(read_text(file_)).get<std::map<std::string, std::string>>();
            } catch (const nlohmann::json::exception&) {
                entries_.clear();
            }
        }
    }

    bool fresh(const std::vector<fs::path>& outputs, const std::string& key) const
    {
        for (const auto& out : outputs) {
            auto it = entries_.find(out.generic_string());
            if (it == entries_.end() || it->second != key || !fs::exists(out)) return false;
        }
        return true;
    }
    void record(const std::vector<fs::path>& outputs, const std::string& key)
    {
        for (const auto& out : outputs) entries_[out.generic_string()] = key;
        write_text(file_, nlohmann::json(entries_).dump(2) + "\n");
    }

private:
    fs::path file_;
    std::map<std::string, std::string> entries_;
};

/// Checks that every dataset file named in the config exists.
inline void validate_paths(const PipelineConfig& cfg, bool need_meta = false)
{
    auto require = [](const fs::path& p, const char* what) {
        if (p.empty()) throw std::invalid_argument(std::string("no ") + what + " file configured");
        if (!fs::is_regular_file(p)) throw IoError(std::string(what) + " file not found: " + p.string());
    };
    require(cfg.paths.events, "events");
    if (need_meta) {
        require(cfg.paths.matches, "matches");
        require(cfg.paths.players, "players");
    }
}

struct HalfIngest {
    HalfKey half;
    std::size_t passes = 0;
    std::size_t dropped = 0;
};

struct IngestSummary {
    std::vector<HalfIngest> halves;
    std::size_t skipped_records = 0;
    std::vector<std::string> warnings;
    bool cached = false;
};

inline nlohmann::json to_json(const IngestSummary& s)
{
    auto halves = nlohmann::json::array();
    for (const auto& h : s.halves)
        halves.push_back(
            {{"match_id", h.half.match_id}, {"period", h.half.period}, {"passes", h.passes}, {"dropped", h.dropped}});
    return {{"halves", halves}, {"skipped_records", s.skipped_records}, {"warnings", s.warnings}};
}

inline IngestSummary summary_from_json(const nlohmann::json& j)
{
    IngestSummary s;
    for (const auto& h : j.at("halves"))
        s.halves.push_back({{h.at("match_id").get<MatchId>(), h.at("period").get<std::string>()},
                            h.at("passes").get<std::size_t>(),
                            h.at("dropped").get<std::size_t>()});
    s.skipped_records = j.at("skipped_records").get<std::size_t>();
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    return s;
}

/// Writes one pass file per (match, period) of the selected matches, empty
/// when the team made no resolved pass there. An empty `matches` selects all.
inline IngestSummary cmd_ingest(const PipelineConfig& cfg, const std::set<MatchId>& matches = {})
{
    cfg.validate();
    validate_paths(cfg);
    Layout layout{cfg.out_dir};
    Cache cache(layout.cache());

    std::string raw = read_text(cfg.paths.events);
    ContentHash key;
    key.add("ingest").add(raw).add(nlohmann::json(cfg.team_id).dump()).add(nlohmann::json(cfg.tags).dump());
    key.add(nlohmann::json(matches).dump()).add(cfg.error_mode == ErrorMode::strict ? "strict" : "skip");
    if (cache.fresh({layout.ingest_summary()}, key.hex())) {
        auto summary = summary_from_json(nlohmann::json::parse(read_text(layout.ingest_summary())));
        bool complete = true;
        for (const auto& h : summary.halves) complete = complete && fs::exists(layout.passes(h.half));
        if (complete) {
            summary.cached = true;
            return summary;
        }
    }

    auto parsed = parse_events_json(raw, cfg.error_mode, cfg.paths.events.string());
    sort_chronologically(parsed.events);
    auto team = extract_team_passes(parsed.events, cfg.team_id, cfg.tags, matches);

    IngestSummary summary;
    summary.skipped_records = parsed.skipped.size();
    for (const auto& issue : parsed.skipped) summary.warnings.push_back("skipped record: " + issue.message);
    for (auto m : matches) {
        bool present = std::any_of(team.all_halves.begin(), team.all_halves.end(),
                                   [&](const HalfKey& h) { return h.match_id == m; });
        if (!present) summary.warnings.push_back("match " + std::to_string(m) + " has no events");
    }
    if (team.halves.empty())
        summary.warnings.push_back("team " + std::to_string(cfg.team_id) + " has no resolved passes in the selection");

    for (const auto& half : team.all_halves) {
        auto it = team.halves.find(half);
        std::span<const PassEvent> passes;
        if (it != team.halves.end()) passes = it->second;
        std::ostringstream out;
        write_pass_lines(out, passes);
        write_text(layout.passes(half), out.str());
        auto dropped = team.dropped.find(half);
        summary.halves.push_back({half, passes.size(), dropped == team.dropped.end() ? 0 : dropped->second});
    }
    write_text(layout.ingest_summary(), to_json(summary).dump(2) + "\n");
    cache.record({layout.ingest_summary()}, key.hex());
    return summary;
}

struct ScaleResult {
    fs::path cxt;
    std::size_t objects = 0;
    std::size_t attributes = 0;
    std::size_t clamped_events = 0;
    bool cached = false;
};

inline std::string scaling_key(const ScalingConfig& s)
{
    return std::to_string(s.bins_per_half) + "/" + nlohmann::json(s.max_minutes).dump() + "/" +
           (s.overflow == OverflowPolicy::clamp ? "clamp" : "reject");
}

inline ScaleResult cmd_scale(const PipelineConfig& cfg, const HalfKey& half, bool write_csv = false)
{
    cfg.validate();
    Layout layout{cfg.out_dir};
    auto source = layout.passes(half);
    if (!fs::exists(source)) throw IoError("no pass list for " + half.name() + " (run ingest first): " + source.string());
    Cache cache(layout.cache());
    std::string raw = read_text(source);
    auto key = ContentHash{}.add("scale").add(raw).add(scaling_key(cfg.scaling)).hex();

    std::vector<fs::path> outputs{layout.context(half)};
    if (write_csv) outputs.push_back(layout.context_csv(half));
    if (cache.fresh(outputs, key)) {
        auto ctx = load_cxt(layout.context(half));
        return {layout.context(half), ctx.object_count(), ctx.attribute_count(), 0, true};
    }

    std::istringstream in(raw);
    auto passes = read_pass_lines(in, source.string());
    auto scaled = scale_context_with_stats(passes, cfg.scaling);
    write_text(layout.context(half), to_cxt(scaled.context));
    if (write_csv) {
        std::ostringstream csv;
        write_context_csv(csv, scaled.context);
        write_text(layout.context_csv(half), csv.str());
    }
    cache.record(outputs, key);
    return {layout.context(half), scaled.context.object_count(), scaled.context.attribute_count(),
            scaled.clamped_events, false};
}

struct BasisResult {
    std::size_t implications = 0;
    std::size_t retained = 0;
    bool cached = false;
};

inline BasisResult cmd_basis(const PipelineConfig& cfg, const HalfKey& half)
{
    cfg.validate();
    Layout layout{cfg.out_dir};
    auto source = layout.context(half);
    if (!fs::exists(source)) throw IoError("no context for " + half.name() + " (run scale first): " + source.string());
    Cache cache(layout.cache());
    std::string raw = read_text(source);
    auto key = ContentHash{}.add("basis").add(raw).add(std::to_string(cfg.min_support)).hex();
    std::vector<fs::path> outputs{layout.basis_text(half), layout.basis_json(half)};
    if (cache.fresh(outputs, key)) {
        auto stored = basis_from_json(nlohmann::json::parse(read_text(layout.basis_json(half))));
        return {0, stored.size(), true};
    }

    auto ctx = from_cxt(raw);
    auto basis = canonical_basis(ctx, half.name());
    auto retained = label(ctx, filter_support(basis, cfg.min_support));
    std::ostringstream text;
    write_basis_text(text, retained);
    write_text(layout.basis_text(half), text.str());
    write_text(layout.basis_json(half), basis_to_json(retained).dump(2) + "\n");
    cache.record(outputs, key);
    return {basis.size(), retained.size(), false};
}

/// Conclusions of a half's stored basis, computing missing upstream artifacts
/// when the pass list is available. nullopt when the half has no pass list.
inline std::optional<std::vector<ConclusionString>> ensure_conclusions(const PipelineConfig& cfg, const HalfKey& half)
{
    Layout layout{cfg.out_dir};
    if (!fs::exists(layout.basis_json(half))) {
        if (!fs::exists(layout.context(half))) {
            if (!fs::exists(layout.passes(half))) return std::nullopt;
            cmd_scale(cfg, half);
        }
        cmd_basis(cfg, half);
    }
    auto stored = basis_from_json(nlohmann::json::parse(read_text(layout.basis_json(half))));
    return stringify_conclusions(half, stored);
}

struct SearchResult {
    SearchReport report;
    fs::path csv;
    fs::path json;
};

inline SearchResult cmd_search(const PipelineConfig& cfg, const HalfKey& index, std::span<const HalfKey> targets)
{
    cfg.validate();
    Layout layout{cfg.out_dir};
    auto queries = ensure_conclusions(cfg, index).value_or(std::vector<ConclusionString>{});
    std::vector<TargetConclusions> sections;
    for (const auto& t : targets) {
        auto conclusions = ensure_conclusions(cfg, t);
        // A half whose pass list exists but is empty still counts as missing data.
        if (conclusions && conclusions->empty() && fs::exists(layout.passes(t)) &&
            fs::file_size(layout.passes(t)) == 0)
            conclusions.reset();
        sections.emplace_back(t, std::move(conclusions));
    }
    auto report = search_conclusions(index, queries, sections, cfg.search, cfg.dedup_hits);
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_text(layout.report_csv(index), csv.str());
    write_text(layout.report_json(index), report_to_json(report).dump(2) + "\n");
    return {std::move(report), layout.report_csv(index), layout.report_json(index)};
}

struct PipelineResult {
    IngestSummary ingest;
    std::map<HalfKey, ScaleResult> contexts;
    std::map<HalfKey, BasisResult> bases;
    SearchResult search;
};

/// All stages for the index half and the targets.
inline PipelineResult cmd_pipeline(const PipelineConfig& cfg, const HalfKey& index, std::span<const HalfKey> targets)
{
    std::set<MatchId> matches{index.match_id};
    for (const auto& t : targets) matches.insert(t.match_id);
    PipelineResult result;
    result.ingest = cmd_ingest(cfg, matches);

    std::vector<HalfKey> halves{index};
    halves.insert(halves.end(), targets.begin(), targets.end());
    Layout layout{cfg.out_dir};
    for (const auto& h : halves) {
        if (result.contexts.contains(h) || !fs::exists(layout.passes(h))) continue;
        result.contexts[h] = cmd_scale(cfg, h);
        result.bases[h] = cmd_basis(cfg, h);
    }
    result.search = cmd_search(cfg, index, targets);
    return result;
}

} // namespace passfca::stages
