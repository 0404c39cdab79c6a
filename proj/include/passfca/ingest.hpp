#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "passfca/errors.hpp"
#include "passfca/events.hpp"

namespace passfca {

/// Accurate, not accurate, assist, key pass.
inline std::set<int> default_pass_tags() { return {1801, 1802, 301, 302}; }

inline constexpr TeamId default_team_id = 676;

enum class ErrorMode { skip_and_report, strict };

struct RecordIssue {
    std::size_t record_index = 0;
    std::optional<EventId> event_id;
    std::string message;
};

struct ParsedEvents {
    std::vector<RawEvent> events;
    std::vector<RecordIssue> skipped;
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline nlohmann::json parse_json(std::string_view text, const std::string& source)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
}

// Wyscout writes some numeric ids as "" when absent.
inline int int_or_zero(const nlohmann::json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer()) return 0;
    return it->get<int>();
}

} // namespace detail

/// Maps one event object. Throws DataError naming the event on a missing or
/// mistyped required field.
inline RawEvent event_from_json(const nlohmann::json& obj)
{
    std::optional<EventId> id;
    if (obj.is_object()) {
        auto it = obj.find("id");
        if (it != obj.end() && it->is_number_integer()) id = it->get<EventId>();
    }
    auto fail = [&](const std::string& why) -> DataError {
        return DataError("event " + (id ? std::to_string(*id) : std::string("<no id>")) + ": " + why, id);
    };
    if (!obj.is_object()) throw fail("record is not an object");

    auto required = [&](const char* key) -> const nlohmann::json& {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) throw fail(std::string("missing required field '") + key + "'");
        return *it;
    };

    RawEvent ev;
    try {
        ev.event_id = required("id").get<EventId>();
        ev.match_id = required("matchId").get<MatchId>();
        ev.team_id = required("teamId").get<TeamId>();
        ev.player_id = required("playerId").get<PlayerId>();
        ev.event_name = required("eventName").get<std::string>();
        ev.match_period = required("matchPeriod").get<std::string>();
        ev.event_sec = required("eventSec").get<double>();
        ev.type_id = detail::int_or_zero(obj, "eventId");
        ev.sub_type_id = detail::int_or_zero(obj, "subEventId");
        if (auto it = obj.find("subEventName"); it != obj.end() && it->is_string())
            ev.sub_event_name = it->get<std::string>();
        if (auto it = obj.find("tags"); it != obj.end() && it->is_array())
            for (const auto& tag : *it) ev.tags.insert(tag.at("id").get<int>());
        if (auto it = obj.find("positions"); it != obj.end() && it->is_array())
            for (const auto& p : *it) ev.positions.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw fail(e.what());
    }
    if (ev.event_sec < 0) throw fail("negative eventSec");
    if (ev.match_period.empty()) throw fail("empty matchPeriod");
    return ev;
}

inline nlohmann::json to_json(const RawEvent& ev)
{
    auto tags = nlohmann::json::array();
    for (auto t : ev.tags) tags.push_back({{"id", t}});
    auto positions = nlohmann::json::array();
    for (const auto& p : ev.positions) positions.push_back({{"y", p.y}, {"x", p.x}});
    return {{"eventId", ev.type_id},     {"subEventName", ev.sub_event_name},
            {"tags", tags},              {"playerId", ev.player_id},
            {"positions", positions},    {"matchId", ev.match_id},
            {"eventName", ev.event_name}, {"teamId", ev.team_id},
            {"matchPeriod", ev.match_period}, {"eventSec", ev.event_sec},
            {"subEventId", ev.sub_type_id}, {"id", ev.event_id}};
}

inline ParsedEvents parse_events_json(std::string_view text, ErrorMode mode = ErrorMode::skip_and_report,
                                      const std::string& source = "events")
{
    auto doc = detail::parse_json(text, source);
    if (!doc.is_array()) throw ParseError(source + ": expected a JSON array of events", 0);
    ParsedEvents out;
    out.events.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            out.events.push_back(event_from_json(doc[i]));
        } catch (const DataError& e) {
            if (mode == ErrorMode::strict) throw;
            out.skipped.push_back({i, e.event_id(), e.what()});
        }
    }
    return out;
}

inline ParsedEvents parse_events(const std::filesystem::path& path, ErrorMode mode = ErrorMode::skip_and_report)
{
    return parse_events_json(detail::read_file(path), mode, path.string());
}

/// Events of `team_id` named "Pass" carrying at least one of `tags`, in input order.
inline std::vector<RawEvent> filter_team_passes(std::span<const RawEvent> events, TeamId team_id,
                                                const std::set<int>& tags = default_pass_tags())
{
    std::vector<RawEvent> out;
    for (const auto& ev : events) {
        if (ev.event_name != "Pass" || ev.team_id != team_id) continue;
        bool tagged = std::any_of(ev.tags.begin(), ev.tags.end(), [&](int t) { return tags.contains(t); });
        if (tagged) out.push_back(ev);
    }
    return out;
}

inline bool chronologically_before(const RawEvent& a, const RawEvent& b)
{
    if (a.match_id != b.match_id) return a.match_id < b.match_id;
    if (a.match_period != b.match_period) return a.match_period < b.match_period;
    if (a.event_sec != b.event_sec) return a.event_sec < b.event_sec;
    return a.event_id < b.event_id;
}

/// Orders by (match, period, event_sec, event_id).
inline void sort_chronologically(std::vector<RawEvent>& events)
{
    std::stable_sort(events.begin(), events.end(), chronologically_before);
}

struct ReceiverInference {
    std::vector<PassEvent> passes;
    std::vector<PassEvent> dropped;
};

/// The receiver of a pass is the player of the next event in the same match
/// and period, provided that event belongs to the passer's team and a
/// different (non-zero) player. Other passes are dropped.
///
/// `all_events` must be in chronological order and contain every pass.
inline ReceiverInference infer_receivers(std::span<const RawEvent> all_events, std::span<const RawEvent> passes)
{
    std::unordered_map<EventId, std::size_t> position;
    position.reserve(all_events.size());
    for (std::size_t i = 0; i < all_events.size(); ++i) position.emplace(all_events[i].event_id, i);

    ReceiverInference out;
    for (const auto& pass : passes) {
        auto it = position.find(pass.event_id);
        if (it == position.end())
            throw std::invalid_argument("pass " + std::to_string(pass.event_id) + " not found in the event stream");
        PassEvent pe{pass.event_id, pass.match_id, pass.match_period, pass.player_id, std::nullopt, pass.event_sec,
                     pass.tags};
        std::size_t next = it->second + 1;
        if (next < all_events.size()) {
            const auto& after = all_events[next];
            if (after.match_id == pass.match_id && after.match_period == pass.match_period &&
                after.team_id == pass.team_id && after.player_id != pass.player_id && after.player_id != 0)
                pe.receiver_id = after.player_id;
        }
        (pe.receiver_id ? out.passes : out.dropped).push_back(std::move(pe));
    }
    return out;
}

/// Partitions passes by period, keeping their order within each period.
inline std::map<std::string, std::vector<PassEvent>> split_halves(std::span<const PassEvent> passes)
{
    std::map<std::string, std::vector<PassEvent>> halves;
    for (const auto& p : passes) halves[p.period].push_back(p);
    return halves;
}

/// Player id to display name. Ids without an entry display as the number.
class PlayerNames {
public:
    PlayerNames() = default;
    explicit PlayerNames(std::unordered_map<PlayerId, std::string> names) : names_(std::move(names)) {}

    std::string display_name(PlayerId id) const
    {
        auto it = names_.find(id);
        return it == names_.end() ? std::to_string(id) : it->second;
    }
    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }

private:
    std::unordered_map<PlayerId, std::string> names_;
};

struct MatchDirectory {
    std::vector<MatchMeta> matches;
    PlayerNames players;

    const MatchMeta* find(MatchId id) const
    {
        auto it = std::find_if(matches.begin(), matches.end(), [&](const MatchMeta& m) { return m.match_id == id; });
        return it == matches.end() ? nullptr : &*it;
    }
};

inline std::vector<MatchMeta> parse_matches_json(std::string_view text, const std::string& source = "matches")
{
    auto doc = detail::parse_json(text, source);
    if (!doc.is_array()) throw ParseError(source + ": expected a JSON array of matches", 0);
    std::vector<MatchMeta> out;
    std::set<MatchId> seen;
    for (const auto& m : doc) {
        MatchMeta meta;
        try {
            meta.match_id = m.at("wyId").get<MatchId>();
            meta.label = m.value("label", std::string{});
            if (auto utc = m.value("dateutc", std::string{}); utc.size() >= 10)
                meta.date = utc.substr(0, 10);
            else
                meta.date = m.value("date", std::string{});
            if (auto it = m.find("teamsData"); it != m.end() && it->is_object())
                for (const auto& [key, value] : it->items()) meta.team_ids.insert(std::stoll(key));
        } catch (const std::exception& e) {
            throw DataError(source + ": bad match record: " + e.what());
        }
        if (!seen.insert(meta.match_id).second)
            throw DataError(source + ": duplicate wyId " + std::to_string(meta.match_id));
        out.push_back(std::move(meta));
    }
    return out;
}

inline PlayerNames parse_players_json(std::string_view text, const std::string& source = "players")
{
    std::unordered_map<PlayerId, std::string> names;
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return PlayerNames{};
    auto doc = detail::parse_json(text, source);
    if (!doc.is_array()) throw ParseError(source + ": expected a JSON array of players", 0);
    for (const auto& p : doc) {
        auto it = p.find("wyId");
        if (it == p.end() || !it->is_number_integer()) continue;
        std::string name = p.value("shortName", std::string{});
        if (name.empty()) {
            name = p.value("firstName", std::string{});
            auto last = p.value("lastName", std::string{});
            if (!last.empty()) name += (name.empty() ? "" : " ") + last;
        }
        if (!name.empty()) names.emplace(it->get<PlayerId>(), std::move(name));
    }
    return PlayerNames(std::move(names));
}

inline MatchDirectory load_match_meta(const std::filesystem::path& matches_path,
                                      const std::filesystem::path& players_path)
{
    return {parse_matches_json(detail::read_file(matches_path), matches_path.string()),
            parse_players_json(detail::read_file(players_path), players_path.string())};
}

inline nlohmann::json to_json(const PassEvent& p)
{
    auto tags = nlohmann::json::array();
    for (auto t : p.tags) tags.push_back(t);
    return {{"event_id", p.event_id},
            {"match_id", p.match_id},
            {"period", p.period},
            {"passer_id", p.passer_id},
            {"receiver_id", p.receiver_id ? nlohmann::json(*p.receiver_id) : nlohmann::json(nullptr)},
            {"event_sec", p.event_sec},
            {"tags", tags}};
}

inline PassEvent pass_from_json(const nlohmann::json& j)
{
    PassEvent p;
    p.event_id = j.at("event_id").get<EventId>();
    p.match_id = j.at("match_id").get<MatchId>();
    p.period = j.at("period").get<std::string>();
    p.passer_id = j.at("passer_id").get<PlayerId>();
    if (const auto& r = j.at("receiver_id"); !r.is_null()) p.receiver_id = r.get<PlayerId>();
    p.event_sec = j.at("event_sec").get<double>();
    p.tags = j.at("tags").get<std::set<int>>();
    return p;
}

/// One JSON object per line.
inline void write_pass_lines(std::ostream& out, std::span<const PassEvent> passes)
{
    for (const auto& p : passes) out << to_json(p).dump() << '\n';
}

inline std::vector<PassEvent> read_pass_lines(std::istream& in, const std::string& source = "passes")
{
    std::vector<PassEvent> passes;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.empty()) continue;
        try {
            passes.push_back(pass_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    return passes;
}

} // namespace passfca
