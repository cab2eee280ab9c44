#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pairpref/errors.hpp"

namespace pairpref {

// Value of an ordered pair (a, b) in one agent's pairwise preferences.
// StrictPref means a is strictly preferred to b.
enum class RelationValue : std::uint8_t {
    StrictPref,     // a < b   (a preferred, b not)
    StrictDispref,  // a > b
    Incomparable,   // a ~ b   (neither preferred; the default)
    BothPreferred,  // a || b  (each preferred to the other)
};

constexpr RelationValue mirrored(RelationValue v) {
    switch (v) {
        case RelationValue::StrictPref: return RelationValue::StrictDispref;
        case RelationValue::StrictDispref: return RelationValue::StrictPref;
        default: return v;
    }
}

inline const char* relation_token(RelationValue v) {
    switch (v) {
        case RelationValue::StrictPref: return "<";
        case RelationValue::StrictDispref: return ">";
        case RelationValue::Incomparable: return "~";
        case RelationValue::BothPreferred: return "||";
    }
    return "?";
}

inline std::optional<RelationValue> relation_value_from_token(std::string_view tok) {
    if (tok == "<") return RelationValue::StrictPref;
    if (tok == ">") return RelationValue::StrictDispref;
    if (tok == "~") return RelationValue::Incomparable;
    if (tok == "||") return RelationValue::BothPreferred;
    return std::nullopt;
}

// The six degrees of preference orderedness, most to least restrictive.
// Every relation of class i also satisfies all classes with a larger index.
enum class OrderClass : int {
    Strict = 0,
    Ties = 1,
    Poset = 2,
    Acyclic = 3,
    Asymmetric = 4,
    Arbitrary = 5,
};

inline const char* order_class_name(OrderClass c) {
    switch (c) {
        case OrderClass::Strict: return "Strict";
        case OrderClass::Ties: return "Ties";
        case OrderClass::Poset: return "Poset";
        case OrderClass::Acyclic: return "Acyclic";
        case OrderClass::Asymmetric: return "Asymmetric";
        case OrderClass::Arbitrary: return "Arbitrary";
    }
    return "?";
}

inline std::optional<OrderClass> order_class_from_name(std::string_view s) {
    for (int i = 0; i <= 5; ++i) {
        auto c = static_cast<OrderClass>(i);
        if (s == order_class_name(c)) return c;
    }
    // accept lowercase spellings for CLI convenience
    if (s == "strict") return OrderClass::Strict;
    if (s == "ties") return OrderClass::Ties;
    if (s == "poset") return OrderClass::Poset;
    if (s == "acyclic") return OrderClass::Acyclic;
    if (s == "asymmetric") return OrderClass::Asymmetric;
    if (s == "arbitrary") return OrderClass::Arbitrary;
    return std::nullopt;
}

inline bool at_most(OrderClass c, OrderClass bound) {
    return static_cast<int>(c) <= static_cast<int>(bound);
}

inline OrderClass least_restrictive(OrderClass a, OrderClass b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

// One agent's set of pairwise comparisons over its neighbors.
// Stored as a dense value grid over the sorted neighbor universe; the pair
// (a, b) and its mirror (b, a) are kept consistent, and an absent comparison
// reads as Incomparable.
class Relation {
public:
    Relation() = default;

    explicit Relation(std::vector<int> universe) : universe_(std::move(universe)) {
        std::sort(universe_.begin(), universe_.end());
        assert(std::adjacent_find(universe_.begin(), universe_.end()) == universe_.end());
        grid_.assign(universe_.size() * universe_.size(), RelationValue::Incomparable);
    }

    const std::vector<int>& universe() const { return universe_; }
    int size() const { return static_cast<int>(universe_.size()); }

    bool contains(int agent) const {
        return std::binary_search(universe_.begin(), universe_.end(), agent);
    }

    int position_of(int agent) const {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), agent);
        assert(it != universe_.end() && *it == agent);
        return static_cast<int>(it - universe_.begin());
    }

    int agent_at(int pos) const { return universe_[pos]; }

    RelationValue value_at(int pa, int pb) const { return grid_[pa * size() + pb]; }

    RelationValue value(int a, int b) const {
        assert(a != b);
        return value_at(position_of(a), position_of(b));
    }

    void set_at(int pa, int pb, RelationValue v) {
        assert(pa != pb);
        grid_[pa * size() + pb] = v;
        grid_[pb * size() + pa] = mirrored(v);
    }

    void set(int a, int b, RelationValue v) { set_at(position_of(a), position_of(b), v); }

    // Stored comparisons in canonical orientation (a < b by agent id),
    // Incomparable pairs omitted.
    std::vector<std::tuple<int, int, RelationValue>> entries() const {
        std::vector<std::tuple<int, int, RelationValue>> out;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (value_at(i, j) != RelationValue::Incomparable)
                    out.emplace_back(universe_[i], universe_[j], value_at(i, j));
        return out;
    }

    std::size_t entry_count() const {
        std::size_t n = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (value_at(i, j) != RelationValue::Incomparable) ++n;
        return n;
    }

    bool operator==(const Relation& o) const { return universe_ == o.universe_ && grid_ == o.grid_; }
    bool operator!=(const Relation& o) const { return !(*this == o); }

private:
    std::vector<int> universe_;
    std::vector<RelationValue> grid_;
};

struct RawEntry {
    int a;
    int b;
    std::string rel;  // one of "<", ">", "~", "||"
};

// Builds a canonical Relation from raw comparison triples. ">" entries are
// stored mirrored as "<"; explicit "~" entries are recorded for conflict
// detection but end up as the (absent) default.
inline Relation normalize_relation(std::vector<int> universe, const std::vector<RawEntry>& raw) {
    Relation r(std::move(universe));
    const int d = r.size();
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(d) * d, 0);
    for (const auto& e : raw) {
        if (e.a == e.b) fail(Errc::SyntaxError, "agent " + std::to_string(e.a) + " compared to itself");
        auto tok = relation_value_from_token(e.rel);
        if (!tok) fail(Errc::SyntaxError, "unknown relation token '" + e.rel + "'");
        if (!r.contains(e.a)) fail(Errc::UnknownAgent, "agent " + std::to_string(e.a) + " not in relation universe");
        if (!r.contains(e.b)) fail(Errc::UnknownAgent, "agent " + std::to_string(e.b) + " not in relation universe");
        int pa = r.position_of(e.a), pb = r.position_of(e.b);
        RelationValue v = *tok;
        if (seen[pa * d + pb]) {
            if (r.value_at(pa, pb) != v)
                fail(Errc::ConflictingPair, "pair (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                                                ") given inconsistent comparisons");
            continue;
        }
        seen[pa * d + pb] = seen[pb * d + pa] = 1;
        r.set_at(pa, pb, v);
    }
    return r;
}

// Ordered blocks N_1, ..., N_k: same-block members pairwise incomparable,
// every member of an earlier block strictly preferred to every later one.
struct TieDecomposition {
    std::vector<std::vector<int>> blocks;

    bool operator==(const TieDecomposition& o) const { return blocks == o.blocks; }
};

inline Relation relation_from_ties(const TieDecomposition& td) {
    std::vector<int> universe;
    for (const auto& b : td.blocks) universe.insert(universe.end(), b.begin(), b.end());
    Relation r(std::move(universe));
    for (std::size_t i = 0; i < td.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < td.blocks.size(); ++j)
            for (int a : td.blocks[i])
                for (int b : td.blocks[j]) r.set(a, b, RelationValue::StrictPref);
    return r;
}

namespace detail {

inline bool relation_has_both(const Relation& r) {
    const int d = r.size();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (r.value_at(i, j) == RelationValue::BothPreferred) return true;
    return false;
}

inline bool relation_total(const Relation& r) {
    const int d = r.size();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            RelationValue v = r.value_at(i, j);
            if (v != RelationValue::StrictPref && v != RelationValue::StrictDispref) return false;
        }
    return true;
}

inline bool relation_transitive(const Relation& r) {
    const int d = r.size();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j || r.value_at(i, j) != RelationValue::StrictPref) continue;
            for (int k = 0; k < d; ++k) {
                if (k == i || k == j) continue;
                if (r.value_at(j, k) == RelationValue::StrictPref &&
                    r.value_at(i, k) != RelationValue::StrictPref)
                    return false;
            }
        }
    return true;
}

// Cycle check on the strict-preference digraph; a || pair counts as a 2-cycle.
inline bool relation_acyclic(const Relation& r) {
    const int d = r.size();
    std::vector<int> state(d, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<int, int>> stack;
    for (int start = 0; start < d; ++start) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            bool advanced = false;
            for (int j = next; j < d; ++j) {
                RelationValue val = r.value_at(v, j);
                if (j == v || (val != RelationValue::StrictPref && val != RelationValue::BothPreferred))
                    continue;
                next = j + 1;
                if (state[j] == 1) return false;
                if (state[j] == 0) {
                    state[j] = 1;
                    stack.push_back({j, 0});
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[stack.back().first] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

inline std::optional<TieDecomposition> try_ties(const Relation& r) {
    const int d = r.size();
    std::vector<int> remaining(d);
    for (int i = 0; i < d; ++i) remaining[i] = i;
    TieDecomposition td;
    while (!remaining.empty()) {
        std::vector<int> block, rest;
        for (int x : remaining) {
            bool dominated = false;
            for (int y : remaining)
                if (y != x && r.value_at(y, x) == RelationValue::StrictPref) {
                    dominated = true;
                    break;
                }
            (dominated ? rest : block).push_back(x);
        }
        if (block.empty()) return std::nullopt;
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j)
                if (r.value_at(block[i], block[j]) != RelationValue::Incomparable) return std::nullopt;
        for (int x : block)
            for (int z : rest)
                if (r.value_at(x, z) != RelationValue::StrictPref) return std::nullopt;
        std::vector<int> agents;
        for (int p : block) agents.push_back(r.agent_at(p));
        std::sort(agents.begin(), agents.end());
        td.blocks.push_back(std::move(agents));
        remaining = std::move(rest);
    }
    return td;
}

}  // namespace detail

// Most restrictive orderedness degree the relation satisfies.
inline OrderClass classify(const Relation& r) {
    if (r.size() <= 1) return OrderClass::Strict;
    const bool both = detail::relation_has_both(r);
    if (!both && detail::relation_total(r) && detail::relation_transitive(r)) return OrderClass::Strict;
    if (!both && detail::try_ties(r)) return OrderClass::Ties;
    if (!both && detail::relation_transitive(r)) return OrderClass::Poset;
    if (!both && detail::relation_acyclic(r)) return OrderClass::Acyclic;
    if (!both) return OrderClass::Asymmetric;
    return OrderClass::Arbitrary;
}

// Total order consistent with every strict preference; ties broken by agent
// id, so the output is deterministic.
inline std::vector<int> linear_extension(const Relation& r) {
    const int d = r.size();
    std::vector<int> indeg(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            RelationValue v = r.value_at(i, j);
            if (v == RelationValue::StrictPref || v == RelationValue::BothPreferred) ++indeg[j];
        }
    // universe is sorted, so position order is agent-id order
    std::vector<int> out;
    std::vector<bool> taken(d, false);
    for (int step = 0; step < d; ++step) {
        int pick = -1;
        for (int i = 0; i < d; ++i)
            if (!taken[i] && indeg[i] == 0) {
                pick = i;
                break;
            }
        if (pick < 0) fail(Errc::CyclicRelation, "relation has a preference cycle; no linear extension");
        taken[pick] = true;
        out.push_back(r.agent_at(pick));
        for (int j = 0; j < d; ++j) {
            if (taken[j] || pick == j) continue;
            RelationValue v = r.value_at(pick, j);
            if (v == RelationValue::StrictPref || v == RelationValue::BothPreferred) --indeg[j];
        }
    }
    return out;
}

inline TieDecomposition ties_decomposition(const Relation& r) {
    auto td = detail::try_ties(r);
    if (!td) fail(Errc::NotTies, "relation is not a preference list with ties");
    return *td;
}

// All members of `remaining` not dominated by another member of `remaining`.
// Nonempty whenever `remaining` is nonempty and the restricted relation is
// acyclic; an empty result on nonempty input reports the cycle.
inline std::vector<int> maximal_elements(const Relation& r, const std::vector<int>& remaining) {
    std::vector<int> out;
    for (int x : remaining) {
        bool dominated = false;
        for (int y : remaining) {
            if (y == x) continue;
            RelationValue v = r.value(y, x);
            if (v == RelationValue::StrictPref || v == RelationValue::BothPreferred) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(x);
    }
    if (out.empty() && !remaining.empty())
        fail(Errc::CyclicRelation, "no maximal element: restricted relation is cyclic");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pairpref
