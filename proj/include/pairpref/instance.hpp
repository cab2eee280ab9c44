#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pairpref/errors.hpp"
#include "pairpref/relation.hpp"

namespace pairpref {

// Bipartite acceptability graph plus one Relation per agent. Men's relations
// range over woman indices, women's over man indices; index order is the
// listing order of the source document, which fixes all tie-breaking.
// Immutable by convention after construction through one of the factories.
struct Instance {
    std::vector<std::string> men;
    std::vector<std::string> women;
    std::vector<std::pair<int, int>> edges;  // sorted (man, woman) index pairs
    std::vector<std::vector<int>> man_adj;   // sorted woman indices per man
    std::vector<std::vector<int>> woman_adj; // sorted man indices per woman
    std::vector<Relation> men_prefs;
    std::vector<Relation> women_prefs;
    std::vector<OrderClass> men_class;
    std::vector<OrderClass> women_class;
    std::unordered_map<std::string, int> man_index;
    std::unordered_map<std::string, int> woman_index;

    int man_count() const { return static_cast<int>(men.size()); }
    int woman_count() const { return static_cast<int>(women.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    bool has_edge(int m, int w) const {
        const auto& a = man_adj[m];
        return std::binary_search(a.begin(), a.end(), w);
    }

    int edge_id(int m, int w) const {
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(m, w));
        if (it == edges.end() || *it != std::make_pair(m, w))
            fail(Errc::EdgeNotInInstance, "edge (" + men[m] + ", " + women[w] + ") not in instance");
        return static_cast<int>(it - edges.begin());
    }

    bool operator==(const Instance& o) const {
        return men == o.men && women == o.women && edges == o.edges && men_prefs == o.men_prefs &&
               women_prefs == o.women_prefs;
    }
    bool operator!=(const Instance& o) const { return !(*this == o); }
};

struct RawPref {
    std::string a;
    std::string b;
    std::string rel;
};

namespace detail {

inline void index_names(const std::vector<std::string>& names, std::unordered_map<std::string, int>& out,
                        const char* side) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!out.emplace(names[i], static_cast<int>(i)).second)
            fail(Errc::SyntaxError, std::string("duplicate ") + side + " id '" + names[i] + "'");
    }
}

inline void finish_instance(Instance& inst) {
    std::sort(inst.edges.begin(), inst.edges.end());
    if (std::adjacent_find(inst.edges.begin(), inst.edges.end()) != inst.edges.end())
        fail(Errc::SyntaxError, "duplicate edge");
    inst.man_adj.assign(inst.men.size(), {});
    inst.woman_adj.assign(inst.women.size(), {});
    for (auto [m, w] : inst.edges) {
        inst.man_adj[m].push_back(w);
        inst.woman_adj[w].push_back(m);
    }
    inst.men_class.clear();
    inst.women_class.clear();
    for (const auto& r : inst.men_prefs) inst.men_class.push_back(classify(r));
    for (const auto& r : inst.women_prefs) inst.women_class.push_back(classify(r));
}

}  // namespace detail

// Low-level factory: relations are taken as-is and must range exactly over
// the owner's neighborhood.
inline Instance assemble_instance(std::vector<std::string> men, std::vector<std::string> women,
                                  std::vector<std::pair<int, int>> edges, std::vector<Relation> men_prefs,
                                  std::vector<Relation> women_prefs) {
    Instance inst;
    inst.men = std::move(men);
    inst.women = std::move(women);
    detail::index_names(inst.men, inst.man_index, "man");
    detail::index_names(inst.women, inst.woman_index, "woman");
    for (const auto& w : inst.women)
        if (inst.man_index.count(w)) fail(Errc::SyntaxError, "id '" + w + "' listed on both sides");
    for (auto [m, w] : edges)
        if (m < 0 || m >= inst.man_count() || w < 0 || w >= inst.woman_count())
            fail(Errc::UnknownAgent, "edge endpoint index out of range");
    inst.edges = std::move(edges);
    inst.men_prefs = std::move(men_prefs);
    inst.women_prefs = std::move(women_prefs);
    detail::finish_instance(inst);
    for (int m = 0; m < inst.man_count(); ++m)
        if (inst.men_prefs[m].universe() != inst.man_adj[m])
            fail(Errc::NonEdgePreference, "relation of man '" + inst.men[m] + "' does not match his neighborhood");
    for (int w = 0; w < inst.woman_count(); ++w)
        if (inst.women_prefs[w].universe() != inst.woman_adj[w])
            fail(Errc::NonEdgePreference,
                 "relation of woman '" + inst.women[w] + "' does not match her neighborhood");
    return inst;
}

// Name-level factory used by the parser and by tests.
inline Instance build_instance(std::vector<std::string> men, std::vector<std::string> women,
                               const std::vector<std::pair<std::string, std::string>>& edges,
                               const std::map<std::string, std::vector<RawPref>>& prefs = {}) {
    Instance inst;
    inst.men = std::move(men);
    inst.women = std::move(women);
    detail::index_names(inst.men, inst.man_index, "man");
    detail::index_names(inst.women, inst.woman_index, "woman");
    for (const auto& w : inst.women)
        if (inst.man_index.count(w)) fail(Errc::SyntaxError, "id '" + w + "' listed on both sides");
    for (const auto& [ms, ws] : edges) {
        auto mi = inst.man_index.find(ms);
        if (mi == inst.man_index.end()) fail(Errc::UnknownAgent, "edge names unknown man '" + ms + "'");
        auto wi = inst.woman_index.find(ws);
        if (wi == inst.woman_index.end()) fail(Errc::UnknownAgent, "edge names unknown woman '" + ws + "'");
        inst.edges.emplace_back(mi->second, wi->second);
    }
    inst.men_prefs.resize(inst.men.size());
    inst.women_prefs.resize(inst.women.size());
    std::sort(inst.edges.begin(), inst.edges.end());
    if (std::adjacent_find(inst.edges.begin(), inst.edges.end()) != inst.edges.end())
        fail(Errc::SyntaxError, "duplicate edge");
    std::vector<std::vector<int>> madj(inst.men.size()), wadj(inst.women.size());
    for (auto [m, w] : inst.edges) {
        madj[m].push_back(w);
        wadj[w].push_back(m);
    }

    auto entries_for = [&](const std::string& owner, bool owner_is_man,
                           const std::vector<RawPref>& raw) -> std::vector<RawEntry> {
        const auto& other_index = owner_is_man ? inst.woman_index : inst.man_index;
        const auto& nbrs = owner_is_man ? madj[inst.man_index.at(owner)] : wadj[inst.woman_index.at(owner)];
        std::vector<RawEntry> out;
        for (const auto& e : raw) {
            auto ai = other_index.find(e.a);
            if (ai == other_index.end())
                fail(Errc::UnknownAgent, "preference of '" + owner + "' names unknown agent '" + e.a + "'");
            auto bi = other_index.find(e.b);
            if (bi == other_index.end())
                fail(Errc::UnknownAgent, "preference of '" + owner + "' names unknown agent '" + e.b + "'");
            if (!std::binary_search(nbrs.begin(), nbrs.end(), ai->second))
                fail(Errc::NonEdgePreference, "'" + owner + "' compares non-neighbor '" + e.a + "'");
            if (!std::binary_search(nbrs.begin(), nbrs.end(), bi->second))
                fail(Errc::NonEdgePreference, "'" + owner + "' compares non-neighbor '" + e.b + "'");
            out.push_back({ai->second, bi->second, e.rel});
        }
        return out;
    };

    for (const auto& [owner, raw] : prefs) {
        bool is_man = inst.man_index.count(owner) > 0;
        if (!is_man && !inst.woman_index.count(owner))
            fail(Errc::UnknownAgent, "preferences given for unknown agent '" + owner + "'");
        auto entries = entries_for(owner, is_man, raw);
        if (is_man) {
            int m = inst.man_index.at(owner);
            inst.men_prefs[m] = normalize_relation(madj[m], entries);
        } else {
            int w = inst.woman_index.at(owner);
            inst.women_prefs[w] = normalize_relation(wadj[w], entries);
        }
    }
    for (int m = 0; m < inst.man_count(); ++m)
        if (inst.men_prefs[m].size() == 0 && !madj[m].empty()) inst.men_prefs[m] = Relation(madj[m]);
    for (int w = 0; w < inst.woman_count(); ++w)
        if (inst.women_prefs[w].size() == 0 && !wadj[w].empty()) inst.women_prefs[w] = Relation(wadj[w]);
    detail::finish_instance(inst);
    return inst;
}

// --- JSON interchange -------------------------------------------------------

inline Instance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::SyntaxError, std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("men") || !doc.contains("women") || !doc.contains("edges"))
            fail(Errc::SyntaxError, "instance document must contain men, women and edges");
        std::vector<std::string> men = doc.at("men").get<std::vector<std::string>>();
        std::vector<std::string> women = doc.at("women").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) fail(Errc::SyntaxError, "edge must be a [man, woman] pair");
            edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
        std::map<std::string, std::vector<RawPref>> prefs;
        if (doc.contains("prefs")) {
            if (!doc.at("prefs").is_object()) fail(Errc::SyntaxError, "prefs must be an object");
            for (const auto& [owner, lst] : doc.at("prefs").items()) {
                std::vector<RawPref> raw;
                for (const auto& t : lst) {
                    if (!t.is_array() || t.size() != 3)
                        fail(Errc::SyntaxError, "preference entry must be [a, b, rel]");
                    raw.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                                   t.at(2).get<std::string>()});
                }
                prefs.emplace(owner, std::move(raw));
            }
        }
        return build_instance(std::move(men), std::move(women), edges, prefs);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::SyntaxError, std::string("malformed instance document: ") + e.what());
    }
}

// Canonical form: agent lists sorted, edges sorted, comparisons emitted with
// "<" (or "||") orientation only and "~" dropped. Byte-identical across runs.
inline std::string serialize_instance(const Instance& inst) {
    nlohmann::json doc;
    std::vector<std::string> men = inst.men, women = inst.women;
    std::sort(men.begin(), men.end());
    std::sort(women.begin(), women.end());
    doc["men"] = men;
    doc["women"] = women;
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [m, w] : inst.edges) edges.emplace_back(inst.men[m], inst.women[w]);
    std::sort(edges.begin(), edges.end());
    doc["edges"] = nlohmann::json::array();
    for (const auto& [m, w] : edges) doc["edges"].push_back({m, w});
    doc["prefs"] = nlohmann::json::object();
    auto emit = [&](const std::string& owner, const Relation& r, const std::vector<std::string>& names) {
        std::vector<std::array<std::string, 3>> rows;
        for (const auto& [a, b, v] : r.entries()) {
            if (v == RelationValue::StrictPref)
                rows.push_back({names[a], names[b], "<"});
            else if (v == RelationValue::StrictDispref)
                rows.push_back({names[b], names[a], "<"});
            else
                rows.push_back({std::min(names[a], names[b]), std::max(names[a], names[b]), "||"});
        }
        if (rows.empty()) return;
        std::sort(rows.begin(), rows.end());
        nlohmann::json lst = nlohmann::json::array();
        for (const auto& row : rows) lst.push_back({row[0], row[1], row[2]});
        doc["prefs"][owner] = std::move(lst);
    };
    for (int m = 0; m < inst.man_count(); ++m) emit(inst.men[m], inst.men_prefs[m], inst.women);
    for (int w = 0; w < inst.woman_count(); ++w) emit(inst.women[w], inst.women_prefs[w], inst.men);
    return doc.dump(2) + "\n";
}

// --- Matchings ---------------------------------------------------------------

// Conflict-free edge subset; partner lookups return -1 when unmatched.
struct Matching {
    std::vector<std::pair<int, int>> pairs;  // sorted (man, woman)
    std::vector<int> man_partner;
    std::vector<int> woman_partner;

    static Matching empty(const Instance& inst) {
        Matching m;
        m.man_partner.assign(inst.man_count(), -1);
        m.woman_partner.assign(inst.woman_count(), -1);
        return m;
    }

    static Matching from_pairs(const Instance& inst, std::vector<std::pair<int, int>> pairs) {
        Matching m = empty(inst);
        std::sort(pairs.begin(), pairs.end());
        for (auto [mi, wi] : pairs) {
            if (mi < 0 || mi >= inst.man_count() || wi < 0 || wi >= inst.woman_count())
                fail(Errc::MalformedMatching, "matching pair index out of range");
            if (!inst.has_edge(mi, wi))
                fail(Errc::MalformedMatching,
                     "matching uses non-edge (" + inst.men[mi] + ", " + inst.women[wi] + ")");
            if (m.man_partner[mi] != -1) fail(Errc::MalformedMatching, "man '" + inst.men[mi] + "' matched twice");
            if (m.woman_partner[wi] != -1)
                fail(Errc::MalformedMatching, "woman '" + inst.women[wi] + "' matched twice");
            m.man_partner[mi] = wi;
            m.woman_partner[wi] = mi;
        }
        m.pairs = std::move(pairs);
        return m;
    }

    int size() const { return static_cast<int>(pairs.size()); }
    bool operator==(const Matching& o) const { return pairs == o.pairs; }
    bool operator!=(const Matching& o) const { return !(*this == o); }
};

inline Matching parse_matching(const std::string& text, const Instance& inst) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::SyntaxError, std::string("invalid JSON: ") + e.what());
    }
    std::vector<std::pair<int, int>> pairs;
    try {
        for (const auto& e : doc.at("pairs")) {
            if (!e.is_array() || e.size() != 2) fail(Errc::SyntaxError, "pair must be [man, woman]");
            auto ms = e.at(0).get<std::string>(), ws = e.at(1).get<std::string>();
            auto mi = inst.man_index.find(ms);
            auto wi = inst.woman_index.find(ws);
            if (mi == inst.man_index.end() || wi == inst.woman_index.end())
                fail(Errc::MalformedMatching, "matching names unknown agent");
            pairs.emplace_back(mi->second, wi->second);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::SyntaxError, std::string("malformed matching document: ") + e.what());
    }
    return Matching::from_pairs(inst, std::move(pairs));
}

inline std::string serialize_matching(const Matching& m, const Instance& inst) {
    std::vector<std::pair<std::string, std::string>> named;
    for (auto [mi, wi] : m.pairs) named.emplace_back(inst.men[mi], inst.women[wi]);
    std::sort(named.begin(), named.end());
    nlohmann::json doc;
    doc["pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : named) doc["pairs"].push_back({a, b});
    return doc.dump(2) + "\n";
}

// --- Side classification and transposition -----------------------------------

// Least restrictive class per side; an empty side counts as Strict.
inline std::pair<OrderClass, OrderClass> classify_sides(const Instance& inst) {
    OrderClass m = OrderClass::Strict, w = OrderClass::Strict;
    for (OrderClass c : inst.men_class) m = least_restrictive(m, c);
    for (OrderClass c : inst.women_class) w = least_restrictive(w, c);
    return {m, w};
}

inline Instance transpose_instance(const Instance& inst) {
    std::vector<std::pair<int, int>> edges;
    for (auto [m, w] : inst.edges) edges.emplace_back(w, m);
    return assemble_instance(inst.women, inst.men, std::move(edges), inst.women_prefs, inst.men_prefs);
}

inline Matching transpose_matching(const Matching& m, const Instance& original) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [a, b] : m.pairs) pairs.emplace_back(b, a);
    return Matching::from_pairs(original, std::move(pairs));
}

// --- Random instance generation ----------------------------------------------

struct GeneratorParams {
    int men_count = 1;
    int women_count = 1;
    double edge_density = 1.0;
    OrderClass men_class = OrderClass::Strict;
    OrderClass women_class = OrderClass::Strict;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t rng_below(std::mt19937_64& g, std::uint64_t n) { return n ? g() % n : 0; }

inline double rng_unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * (1.0 / 9007199254740992.0);
}

inline std::vector<int> shuffled(std::vector<int> v, std::mt19937_64& g) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng_below(g, i)]);
    return v;
}

// Relation generation per requested class; every construction classifies at
// or below the class it was asked for.
inline Relation random_relation(const std::vector<int>& universe, OrderClass cls, std::mt19937_64& g) {
    const int d = static_cast<int>(universe.size());
    if (d == 0) return Relation{};
    switch (cls) {
        case OrderClass::Strict: {
            auto order = shuffled(universe, g);
            TieDecomposition td;
            for (int a : order) td.blocks.push_back({a});
            return relation_from_ties(td);
        }
        case OrderClass::Ties: {
            auto order = shuffled(universe, g);
            TieDecomposition td;
            for (int a : order) {
                if (td.blocks.empty() || rng_unit(g) < 0.5)
                    td.blocks.push_back({a});
                else
                    td.blocks.back().push_back(a);
            }
            for (auto& b : td.blocks) std::sort(b.begin(), b.end());
            return relation_from_ties(td);
        }
        case OrderClass::Poset:
        case OrderClass::Acyclic: {
            auto order = shuffled(universe, g);
            Relation r{universe};
            std::vector<std::uint8_t> arc(static_cast<std::size_t>(d) * d, 0);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j)
                    if (rng_unit(g) < 0.4) arc[r.position_of(order[i]) * d + r.position_of(order[j])] = 1;
            if (cls == OrderClass::Poset) {
                for (int k = 0; k < d; ++k)
                    for (int i = 0; i < d; ++i)
                        if (arc[i * d + k])
                            for (int j = 0; j < d; ++j)
                                if (arc[k * d + j]) arc[i * d + j] = 1;
            }
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (arc[i * d + j]) r.set_at(i, j, RelationValue::StrictPref);
            return r;
        }
        case OrderClass::Asymmetric:
        case OrderClass::Arbitrary: {
            Relation r{universe};
            const int options = cls == OrderClass::Arbitrary ? 4 : 3;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    switch (rng_below(g, options)) {
                        case 0: r.set_at(i, j, RelationValue::StrictPref); break;
                        case 1: r.set_at(i, j, RelationValue::StrictDispref); break;
                        case 2: break;  // incomparable
                        case 3: r.set_at(i, j, RelationValue::BothPreferred); break;
                    }
                }
            return r;
        }
    }
    return Relation{universe};
}

inline std::vector<std::string> padded_ids(const char* prefix, int count) {
    int width = 1;
    for (int v = count - 1; v >= 10; v /= 10) ++width;
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        std::string num = std::to_string(i);
        out.push_back(prefix + std::string(width - num.size(), '0') + num);
    }
    return out;
}

}  // namespace detail

inline Instance generate_instance(const GeneratorParams& p) {
    if (p.men_count < 1 || p.women_count < 1) fail(Errc::SyntaxError, "agent counts must be positive");
    if (p.edge_density < 0.0 || p.edge_density > 1.0) fail(Errc::SyntaxError, "edge density must be in [0, 1]");
    std::mt19937_64 g(p.seed);
    auto men = detail::padded_ids("m", p.men_count);
    auto women = detail::padded_ids("w", p.women_count);
    std::vector<std::pair<int, int>> edges;
    for (int m = 0; m < p.men_count; ++m)
        for (int w = 0; w < p.women_count; ++w)
            if (detail::rng_unit(g) < p.edge_density) edges.emplace_back(m, w);
    std::vector<std::vector<int>> madj(p.men_count), wadj(p.women_count);
    for (auto [m, w] : edges) {
        madj[m].push_back(w);
        wadj[w].push_back(m);
    }
    std::vector<Relation> mp, wp;
    for (int m = 0; m < p.men_count; ++m) mp.push_back(detail::random_relation(madj[m], p.men_class, g));
    for (int w = 0; w < p.women_count; ++w) wp.push_back(detail::random_relation(wadj[w], p.women_class, g));
    return assemble_instance(std::move(men), std::move(women), std::move(edges), std::move(mp), std::move(wp));
}

}  // namespace pairpref
