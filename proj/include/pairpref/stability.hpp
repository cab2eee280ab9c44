#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pairpref/instance.hpp"
#include "pairpref/relation.hpp"

namespace pairpref {

enum class StabilityNotion { Weak, Strong, Super };

inline const char* notion_name(StabilityNotion n) {
    switch (n) {
        case StabilityNotion::Weak: return "weak";
        case StabilityNotion::Strong: return "strong";
        case StabilityNotion::Super: return "super";
    }
    return "?";
}

inline std::optional<StabilityNotion> notion_from_name(std::string_view s) {
    if (s == "weak") return StabilityNotion::Weak;
    if (s == "strong") return StabilityNotion::Strong;
    if (s == "super") return StabilityNotion::Super;
    return std::nullopt;
}

// How the owner of `r` relates a candidate partner to the current one.
// Being matched to any acceptable partner beats being unmatched, so a missing
// partner makes the candidate strictly preferred.
inline RelationValue partner_relation(const Relation& r, int candidate, int current_partner /* -1 = none */) {
    if (current_partner < 0) return RelationValue::StrictPref;
    return r.value(candidate, current_partner);
}

namespace detail {

// || counts as "strictly prefers the candidate": each option in a || pair is
// preferred to the other, which keeps || at least as blocking-prone as ~ and
// preserves the weak-stability exchangeability of || and ~.
inline bool side_strict(RelationValue v) {
    return v == RelationValue::StrictPref || v == RelationValue::BothPreferred;
}

inline bool side_not_worse(RelationValue v) { return v != RelationValue::StrictDispref; }

}  // namespace detail

// Blocking predicate on the two end-vertex comparisons alone.
inline bool blocks_values(StabilityNotion notion, RelationValue man_side, RelationValue woman_side) {
    switch (notion) {
        case StabilityNotion::Weak:
            return detail::side_strict(man_side) && detail::side_strict(woman_side);
        case StabilityNotion::Strong:
            return (detail::side_not_worse(man_side) && detail::side_strict(woman_side)) ||
                   (detail::side_strict(man_side) && detail::side_not_worse(woman_side));
        case StabilityNotion::Super:
            return detail::side_not_worse(man_side) && detail::side_not_worse(woman_side);
    }
    return false;
}

inline bool blocks(StabilityNotion notion, const Instance& inst, const Matching& m, std::pair<int, int> edge) {
    auto [u, w] = edge;
    if (u < 0 || u >= inst.man_count() || w < 0 || w >= inst.woman_count() || !inst.has_edge(u, w))
        fail(Errc::EdgeNotInInstance, "blocking test on edge not in instance");
    if (m.man_partner[u] == w) return false;
    RelationValue su = partner_relation(inst.men_prefs[u], w, m.man_partner[u]);
    RelationValue sw = partner_relation(inst.women_prefs[w], u, m.woman_partner[w]);
    return blocks_values(notion, su, sw);
}

struct BlockingWitness {
    std::pair<int, int> edge;
    StabilityNotion notion;
    RelationValue man_side;   // value of (w, M(u)) at the man
    RelationValue woman_side; // value of (u, M(w)) at the woman
};

// First blocking edge in canonical (man index, woman index) order.
inline std::optional<BlockingWitness> find_blocking(StabilityNotion notion, const Instance& inst,
                                                    const Matching& m) {
    for (auto [u, w] : inst.edges) {
        if (m.man_partner[u] == w) continue;
        RelationValue su = partner_relation(inst.men_prefs[u], w, m.man_partner[u]);
        RelationValue sw = partner_relation(inst.women_prefs[w], u, m.woman_partner[w]);
        if (blocks_values(notion, su, sw)) return BlockingWitness{{u, w}, notion, su, sw};
    }
    return std::nullopt;
}

inline bool is_stable(StabilityNotion notion, const Instance& inst, const Matching& m) {
    return !find_blocking(notion, inst, m).has_value();
}

}  // namespace pairpref
