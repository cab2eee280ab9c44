#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace pairpref {

using NamedEdge = std::pair<std::string, std::string>;  // (man, woman)

// --- Strong solver events ---

struct StrongPropose {
    std::string man;
    int tie;
    std::vector<NamedEdge> edges;
};
struct StrongRejectStrict {
    NamedEdge cause;
    NamedEdge rejected;
};
struct StrongRejectIncomparable {
    std::string cause_man;
    NamedEdge rejected;
};
struct StrongRejectCritical {
    std::string man;
    std::vector<NamedEdge> edges;
};
struct StrongPhase2 {
    std::vector<std::string> critical;
};

using StrongEvent =
    std::variant<StrongPropose, StrongRejectStrict, StrongRejectIncomparable, StrongRejectCritical, StrongPhase2>;
using StrongTrace = std::vector<StrongEvent>;

// --- Super solver events ---

struct SuperPropose {
    std::string man, woman;
};
struct SuperAccept {
    std::string man, woman;
};
struct SuperDeleteEdge {
    std::string man, woman;
    std::string reason;  // "rejected" or "break"
};
struct SuperBreakEngagement {
    std::string man, woman;
};

using SuperEvent = std::variant<SuperPropose, SuperAccept, SuperDeleteEdge, SuperBreakEngagement>;
using SuperTrace = std::vector<SuperEvent>;

namespace detail {

inline nlohmann::json edge_json(const NamedEdge& e) { return nlohmann::json::array({e.first, e.second}); }

inline nlohmann::json edges_json(const std::vector<NamedEdge>& es) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : es) a.push_back(edge_json(e));
    return a;
}

}  // namespace detail

inline nlohmann::json event_json(const StrongEvent& ev) {
    using nlohmann::json;
    return std::visit(
        [](const auto& e) -> json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, StrongPropose>)
                return json{{"event", "propose"}, {"man", e.man}, {"tie", e.tie}, {"edges", detail::edges_json(e.edges)}};
            else if constexpr (std::is_same_v<T, StrongRejectStrict>)
                return json{{"event", "reject_strict"},
                            {"cause", detail::edge_json(e.cause)},
                            {"rejected", detail::edge_json(e.rejected)}};
            else if constexpr (std::is_same_v<T, StrongRejectIncomparable>)
                return json{{"event", "reject_incomparable"},
                            {"cause", e.cause_man},
                            {"rejected", detail::edge_json(e.rejected)}};
            else if constexpr (std::is_same_v<T, StrongRejectCritical>)
                return json{{"event", "reject_critical"}, {"man", e.man}, {"edges", detail::edges_json(e.edges)}};
            else
                return json{{"event", "phase2_round"}, {"critical", e.critical}};
        },
        ev);
}

inline nlohmann::json event_json(const SuperEvent& ev) {
    using nlohmann::json;
    return std::visit(
        [](const auto& e) -> json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, SuperPropose>)
                return json{{"event", "propose"}, {"man", e.man}, {"woman", e.woman}};
            else if constexpr (std::is_same_v<T, SuperAccept>)
                return json{{"event", "accept"}, {"man", e.man}, {"woman", e.woman}};
            else if constexpr (std::is_same_v<T, SuperDeleteEdge>)
                return json{{"event", "delete_edge"}, {"man", e.man}, {"woman", e.woman}, {"reason", e.reason}};
            else
                return json{{"event", "break_engagement"}, {"man", e.man}, {"woman", e.woman}};
        },
        ev);
}

// One event per line, in execution order.
template <typename Trace>
inline void write_trace(std::ostream& os, const Trace& trace) {
    for (const auto& ev : trace) os << event_json(ev).dump() << "\n";
}

}  // namespace pairpref
