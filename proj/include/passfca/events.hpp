#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace passfca {

using EventId = std::int64_t;
using MatchId = std::int64_t;
using TeamId = std::int64_t;
using PlayerId = std::int64_t;

struct Position {
    double x = 0;
    double y = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// One record of the match-event log.
struct RawEvent {
    EventId event_id = 0;
    MatchId match_id = 0;
    TeamId team_id = 0;
    PlayerId player_id = 0;
    int type_id = 0;
    int sub_type_id = 0;
    std::string event_name;
    std::string sub_event_name;
    std::string match_period;
    double event_sec = 0;
    std::set<int> tags;
    std::vector<Position> positions;

    friend bool operator==(const RawEvent&, const RawEvent&) = default;
};

/// A pass with its receiver, once inferred. `event_sec` counts from the start of the half.
struct PassEvent {
    EventId event_id = 0;
    MatchId match_id = 0;
    std::string period;
    PlayerId passer_id = 0;
    std::optional<PlayerId> receiver_id;
    double event_sec = 0;
    std::set<int> tags;

    friend bool operator==(const PassEvent&, const PassEvent&) = default;
};

struct MatchMeta {
    MatchId match_id = 0;
    std::string label;
    std::string date;
    std::set<TeamId> team_ids;

    friend bool operator==(const MatchMeta&, const MatchMeta&) = default;
};

/// One half (or extra period) of one match.
struct HalfKey {
    MatchId match_id = 0;
    std::string period;

    std::string name() const { return std::to_string(match_id) + "_" + period; }

    friend auto operator<=>(const HalfKey&, const HalfKey&) = default;
};

} // namespace passfca
