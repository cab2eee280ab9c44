#pragma once

#include <random>
#include <string>
#include <vector>

#include "pairpref/instance.hpp"
#include "pairpref/stability.hpp"

namespace testsupport {

using namespace pairpref;

// Three men with identical one-entry lists and one
// woman whose pairwise preferences form a 3-cycle; nothing is stable here.
inline Instance cyclic_triangle() {
    return build_instance({"u1", "u2", "u3"}, {"w"}, {{"u1", "w"}, {"u2", "w"}, {"u3", "w"}},
                          {{"w", {{"u1", "u2", "<"}, {"u2", "u3", "<"}, {"u3", "u1", "<"}}}});
}

// Every matching of the instance, by brute force over all edge subsets.
// Deliberately independent of the oracle's pruned search.
inline std::vector<Matching> all_matchings(const Instance& inst) {
    std::vector<Matching> out;
    const int m = inst.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> mp(inst.man_count(), -1), wp(inst.woman_count(), -1);
        bool ok = true;
        std::vector<std::pair<int, int>> pairs;
        for (int e = 0; e < m && ok; ++e) {
            if (!(mask >> e & 1)) continue;
            auto [u, w] = inst.edges[e];
            if (mp[u] != -1 || wp[w] != -1)
                ok = false;
            else {
                mp[u] = w;
                wp[w] = u;
                pairs.push_back(inst.edges[e]);
            }
        }
        if (ok) out.push_back(Matching::from_pairs(inst, std::move(pairs)));
    }
    return out;
}

// Stable matchings by definition: filter all matchings through the blocking
// predicate.
inline std::vector<Matching> stable_by_definition(const Instance& inst, StabilityNotion notion) {
    std::vector<Matching> out;
    for (auto& m : all_matchings(inst))
        if (is_stable(notion, inst, m)) out.push_back(std::move(m));
    std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) { return a.pairs < b.pairs; });
    return out;
}

inline Instance random_instance(int men, int women, double density, OrderClass mc, OrderClass wc,
                                std::uint64_t seed) {
    GeneratorParams p;
    p.men_count = men;
    p.women_count = women;
    p.edge_density = density;
    p.men_class = mc;
    p.women_class = wc;
    p.seed = seed;
    return generate_instance(p);
}

}  // namespace testsupport
