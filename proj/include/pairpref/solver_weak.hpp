#pragma once

#include <cassert>
#include <queue>
#include <vector>

#include "pairpref/instance.hpp"
#include "pairpref/stability.hpp"

namespace pairpref {

// Instance whose every relation is a total strict order, materialized as
// ranked lists (best first).
struct StrictInstance {
    Instance instance;
    std::vector<std::vector<int>> men_ranked;
    std::vector<std::vector<int>> women_ranked;
};

// Replaces every relation by a linear extension of it. Requires acyclic or
// better preferences on both sides; the original strict preferences are
// preserved, so stability in the extension implies weak stability in the
// original instance.
inline StrictInstance extend_to_strict(const Instance& inst) {
    auto [cm, cw] = classify_sides(inst);
    if (!at_most(cm, OrderClass::Acyclic) || !at_most(cw, OrderClass::Acyclic))
        fail(Errc::ClassGateViolation, std::string("linear extension needs acyclic preferences; sides are (") +
                                           order_class_name(cm) + ", " + order_class_name(cw) + ")");
    StrictInstance out;
    std::vector<Relation> mp, wp;
    for (int m = 0; m < inst.man_count(); ++m) {
        out.men_ranked.push_back(linear_extension(inst.men_prefs[m]));
        TieDecomposition td;
        for (int w : out.men_ranked.back()) td.blocks.push_back({w});
        mp.push_back(relation_from_ties(td));
    }
    for (int w = 0; w < inst.woman_count(); ++w) {
        out.women_ranked.push_back(linear_extension(inst.women_prefs[w]));
        TieDecomposition td;
        for (int m : out.women_ranked.back()) td.blocks.push_back({m});
        wp.push_back(relation_from_ties(td));
    }
    out.instance = assemble_instance(inst.men, inst.women, inst.edges, std::move(mp), std::move(wp));
    return out;
}

// Man-proposing deferred acceptance on the linear extension. Always returns a
// matching with no weakly blocking edge in the original instance.
inline Matching solve_weak(const Instance& inst) {
    StrictInstance si = extend_to_strict(inst);
    const int U = inst.man_count(), W = inst.woman_count();

    std::vector<std::vector<int>> woman_rank(W);  // rank of each man at each woman
    for (int w = 0; w < W; ++w) {
        woman_rank[w].assign(U, -1);
        for (std::size_t k = 0; k < si.women_ranked[w].size(); ++k) woman_rank[w][si.women_ranked[w][k]] = static_cast<int>(k);
    }

    std::vector<int> next_choice(U, 0);
    std::vector<int> man_partner(U, -1), woman_partner(W, -1);
    std::priority_queue<int, std::vector<int>, std::greater<int>> free_men;
    for (int m = 0; m < U; ++m) free_men.push(m);

    int proposals = 0;
    while (!free_men.empty()) {
        int u = free_men.top();
        free_men.pop();
        if (man_partner[u] != -1) continue;  // stale entry
        if (next_choice[u] >= static_cast<int>(si.men_ranked[u].size())) continue;  // list exhausted
        int w = si.men_ranked[u][next_choice[u]++];
        ++proposals;
        assert(proposals <= inst.edge_count());
        int rival = woman_partner[w];
        if (rival == -1) {
            man_partner[u] = w;
            woman_partner[w] = u;
        } else if (woman_rank[w][u] < woman_rank[w][rival]) {
            man_partner[rival] = -1;
            man_partner[u] = w;
            woman_partner[w] = u;
            free_men.push(rival);
        } else {
            free_men.push(u);
        }
    }

    std::vector<std::pair<int, int>> pairs;
    for (int m = 0; m < U; ++m)
        if (man_partner[m] != -1) pairs.emplace_back(m, man_partner[m]);
    return Matching::from_pairs(inst, std::move(pairs));
}

}  // namespace pairpref
