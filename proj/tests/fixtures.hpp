#pragma once

#include <string>
#include <vector>

#include "passfca/context.hpp"
#include "passfca/events.hpp"

namespace fixtures {

/// Passers (rows) and receivers (columns) of the five-player toy context.
inline passfca::FormalContext table1()
{
    return passfca::FormalContext::from_matrix({"Rakitic", "Sergio", "Busquet", "Pique", "Alba"},
                                               {"Messi", "Suarez", "Neymar"},
                                               {{false, true, true},
                                                {true, true, false},
                                                {true, true, false},
                                                {true, false, true},
                                                {true, false, false}});
}

/// g1 = {a}, g2 = {a, b} over M = {a, b, c}.
inline passfca::FormalContext two_objects()
{
    return passfca::FormalContext::from_matrix({"g1", "g2"}, {"a", "b", "c"},
                                               {{true, false, false}, {true, true, false}});
}

inline passfca::RawEvent event(passfca::EventId id, passfca::TeamId team, passfca::PlayerId player, double sec,
                               std::string name = "Pass", std::set<int> tags = {1801},
                               passfca::MatchId match = 1, std::string period = "1H")
{
    passfca::RawEvent ev;
    ev.event_id = id;
    ev.match_id = match;
    ev.team_id = team;
    ev.player_id = player;
    ev.event_name = std::move(name);
    ev.match_period = std::move(period);
    ev.event_sec = sec;
    ev.tags = std::move(tags);
    return ev;
}

inline passfca::PassEvent pass(passfca::EventId id, passfca::PlayerId from, passfca::PlayerId to, double sec,
                               passfca::MatchId match = 1, std::string period = "1H")
{
    passfca::PassEvent p;
    p.event_id = id;
    p.match_id = match;
    p.period = std::move(period);
    p.passer_id = from;
    p.receiver_id = to;
    p.event_sec = sec;
    p.tags = {1801};
    return p;
}

inline const char* sample_event_json()
{
    return R"({"eventId": 8, "subEventName": "Simple pass", "tags": [{"id": 1801}], "playerId": 3542,
               "positions": [{"y": 61, "x": 37}, {"y": 50, "x": 50}], "matchId": 2565548,
               "eventName": "Pass", "teamId": 682, "matchPeriod": "1H",
               "eventSec": 2.9945820000000083, "subEventId": 85, "id": 180864419})";
}

} // namespace fixtures
