#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "pairpref/gadgets.hpp"
#include "pairpref/oracle.hpp"
#include "support.hpp"

using namespace pairpref;

TEST_CASE("gadget structure for n=3") {
    Formula f = generate_22e3(3, 5);
    for (bool weak : {true, false}) {
        GadgetInstance g = weak ? build_weak_gadget(f) : build_super_gadget(f);
        const Instance& i = g.instance;
        REQUIRE(i.man_count() + i.woman_count() == 36);  // 4n + 6m
        REQUIRE(i.edge_count() == 60);                   // 4n + 12m
        int max_deg = 0;
        for (const auto& a : i.man_adj) max_deg = std::max<int>(max_deg, a.size());
        for (const auto& a : i.woman_adj) max_deg = std::max<int>(max_deg, a.size());
        REQUIRE(max_deg == 4);
        // every literal vertex has neighbors {t, f, two u vertices}
        for (const auto& vg : g.variables) {
            REQUIRE(i.woman_adj[i.woman_index.at(vg.x)].size() == 4);
            REQUIRE(i.woman_adj[i.woman_index.at(vg.nx)].size() == 4);
        }
        REQUIRE(g.occurrences.size() == 12);  // 3m interconnecting edges
    }
}

TEST_CASE("weak gadget preference classes") {
    Formula f = generate_22e3(3, 9);
    GadgetInstance g = build_weak_gadget(f);
    auto [cm, cw] = classify_sides(g.instance);
    REQUIRE(cm == OrderClass::Strict);
    REQUIRE(cw == OrderClass::Asymmetric);
    for (const auto& vg : g.variables) {
        // the unnegated literal vertex carries the cycle f -> t -> u -> f;
        // the negated one orders t above both u's above f, a list with ties
        REQUIRE(classify(g.instance.women_prefs[g.instance.woman_index.at(vg.x)]) == OrderClass::Asymmetric);
        REQUIRE(classify(g.instance.women_prefs[g.instance.woman_index.at(vg.nx)]) == OrderClass::Ties);
    }
}

TEST_CASE("super gadget preference classes") {
    Formula f = generate_22e3(3, 9);
    GadgetInstance g = build_super_gadget(f);
    auto [cm, cw] = classify_sides(g.instance);
    REQUIRE(cm == OrderClass::Acyclic);
    REQUIRE(cw == OrderClass::Acyclic);
    // literal vertices lose transitivity but not acyclicity
    for (const auto& vg : g.variables) {
        auto c = classify(g.instance.women_prefs[g.instance.woman_index.at(vg.x)]);
        REQUIRE(c == OrderClass::Acyclic);
    }
    // u1 and u2 are intransitive (their best w is incomparable to the
    // literal yet above a w that dominates it); u3's list collapses to ties
    for (const auto& cg : g.clauses) {
        REQUIRE(classify(g.instance.men_prefs[g.instance.man_index.at(cg.u[0])]) == OrderClass::Acyclic);
        REQUIRE(classify(g.instance.men_prefs[g.instance.man_index.at(cg.u[1])]) == OrderClass::Acyclic);
        REQUIRE(classify(g.instance.men_prefs[g.instance.man_index.at(cg.u[2])]) == OrderClass::Ties);
    }
}

TEST_CASE("forward soundness: satisfying assignments map to stable matchings") {
    std::mt19937_64 seeds(404);
    for (int it = 0; it < 15; ++it) {
        Formula f = generate_22e3(3 * (1 + static_cast<int>(seeds() % 4)), seeds());
        auto a = sat_brute(f);
        if (!a) continue;
        GadgetInstance gw = build_weak_gadget(f);
        Matching mw = assignment_to_matching(gw, *a, StabilityNotion::Weak);
        REQUIRE_FALSE(find_blocking(StabilityNotion::Weak, gw.instance, mw).has_value());
        // true variable: {tx, f nx} present
        for (int v = 1; v <= f.num_vars; ++v) {
            const auto& vg = gw.variables[v - 1];
            int t = gw.instance.man_index.at(vg.t), x = gw.instance.woman_index.at(vg.x);
            REQUIRE((mw.man_partner[t] == x) == (*a)[v - 1]);
        }
        GadgetInstance gs = build_super_gadget(f);
        Matching ms = assignment_to_matching(gs, *a, StabilityNotion::Super);
        REQUIRE_FALSE(find_blocking(StabilityNotion::Super, gs.instance, ms).has_value());
        // the output is a perfect matching inside every clause gadget
        for (const auto& cg : gs.clauses)
            for (const auto& name : cg.u) REQUIRE(ms.man_partner[gs.instance.man_index.at(name)] != -1);
        REQUIRE(extract_assignment(gw, mw) == *a);
        REQUIRE(extract_assignment(gs, ms) == *a);
    }
}

TEST_CASE("assignment_to_matching rejects non-satisfying assignments") {
    Formula f = generate_22e3(3, 2);
    auto a = sat_brute(f);
    REQUIRE(a);
    GadgetInstance g = build_weak_gadget(f);
    // flip everything until it breaks; some all-equal assignment must fail a
    // clause containing both polarities... find one by brute force instead
    std::vector<bool> bad;
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        std::vector<bool> cand{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
        if (!satisfies(f, cand)) {
            bad = cand;
            break;
        }
    }
    if (!bad.empty())
        REQUIRE_THROWS_MATCHES(assignment_to_matching(g, bad, StabilityNotion::Weak), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == Errc::AssignmentNotSatisfying; }));
}

TEST_CASE("extract_assignment flags malformed matchings") {
    Formula f = generate_22e3(3, 2);
    GadgetInstance g = build_weak_gadget(f);
    // a matching consisting of one interconnecting edge
    const auto& occ = g.occurrences.front();
    int u = g.instance.man_index.at(occ.edge.first);
    int lv = g.instance.woman_index.at(occ.edge.second);
    Matching m = Matching::from_pairs(g.instance, {{u, lv}});
    REQUIRE_THROWS_MATCHES(extract_assignment(g, m), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::MalformedStableMatching;
                           }));
    REQUIRE_THROWS_AS(extract_assignment(g, Matching::empty(g.instance)), Error);
}

TEST_CASE("backward soundness on oracle-enumerated gadget matchings") {
    Formula f = generate_22e3(3, 31);
    for (auto notion : {StabilityNotion::Weak, StabilityNotion::Super}) {
        GadgetInstance g = notion == StabilityNotion::Weak ? build_weak_gadget(f) : build_super_gadget(f);
        auto a = enumerate_stable(g.instance, notion);
        REQUIRE(a.verdict != OracleAnswer::Verdict::LimitExceeded);
        bool sat = sat_brute(f).has_value();
        REQUIRE((a.verdict == OracleAnswer::Verdict::Exists) == sat);
        for (const auto& m : a.matchings) REQUIRE(satisfies(f, extract_assignment(g, m)));
    }
}

TEST_CASE("gadget builders reject formulas outside (2,2)-E3-SAT") {
    Formula one;
    one.num_vars = 2;
    one.clauses.push_back({{1, -1, 2}});
    REQUIRE_THROWS_MATCHES(
        build_weak_gadget(one), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::NotTwoTwoE3; }));
}

TEST_CASE("provenance sidecar names every vertex") {
    Formula f = generate_22e3(3, 12);
    GadgetInstance g = build_super_gadget(f);
    auto doc = provenance_json(g);
    REQUIRE(doc["variables"].size() == 3);
    REQUIRE(doc["clauses"].size() == 4);
    REQUIRE(doc["occurrences"].size() == 12);
    std::set<std::string> names;
    for (const auto& [k, v] : doc["variables"].items())
        for (const auto& key : {"t", "f", "x", "nx"}) names.insert(v[key].get<std::string>());
    REQUIRE(names.size() == 12);
}
