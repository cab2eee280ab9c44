#pragma once

#include <cassert>
#include <optional>
#include <set>
#include <vector>

#include "pairpref/instance.hpp"
#include "pairpref/stability.hpp"
#include "pairpref/trace.hpp"

namespace pairpref {

// Transitive reduction of a poset's strict-preference digraph. Arcs run from
// the preferred node to the dominated one; sources play the role of the
// virtual origin's targets, i.e. the initially maximal elements.
struct HasseDiagram {
    std::vector<int> nodes;               // sorted agent ids (relation universe)
    std::vector<std::vector<int>> succ;   // direct covers, by position
    std::vector<std::vector<int>> pred;
    std::vector<int> sources;             // positions with no predecessor
};

namespace detail {

// reduction without the gate; callers must have established the poset class
inline HasseDiagram hasse_from_poset(const Relation& r) {
    const int d = r.size();
    HasseDiagram h;
    h.nodes = r.universe();
    h.succ.assign(d, {});
    h.pred.assign(d, {});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j || r.value_at(i, j) != RelationValue::StrictPref) continue;
            bool direct = true;
            for (int k = 0; k < d && direct; ++k)
                if (k != i && k != j && r.value_at(i, k) == RelationValue::StrictPref &&
                    r.value_at(k, j) == RelationValue::StrictPref)
                    direct = false;
            if (direct) {
                h.succ[i].push_back(j);
                h.pred[j].push_back(i);
            }
        }
    for (int i = 0; i < d; ++i)
        if (h.pred[i].empty()) h.sources.push_back(i);
    return h;
}

}  // namespace detail

inline HasseDiagram build_hasse(const Relation& r) {
    if (!at_most(classify(r), OrderClass::Poset))
        fail(Errc::ClassGateViolation, "Hasse diagram requires a poset relation");
    return detail::hasse_from_poset(r);
}

struct SuperResult {
    std::optional<Matching> matching;
    SuperTrace trace;
};

namespace detail {

struct SuperEngine {
    const Instance& inst;
    SuperTrace trace;
    std::vector<HasseDiagram> hasse;              // per man
    std::vector<std::vector<bool>> alive;         // per man, by position
    std::vector<std::vector<int>> pred_alive;     // remaining direct predecessors
    std::vector<std::set<int>> pending;           // maximal, not yet proposed (positions)
    std::vector<std::vector<int>> ever_proposed;  // per woman: men, append-only
    std::vector<int> engaged;                     // per woman: man or -1
    std::vector<std::vector<int>> engagements;    // per man: women

    explicit SuperEngine(const Instance& instance) : inst(instance) {
        auto [cm, cw] = classify_sides(inst);
        if (!at_most(cm, OrderClass::Poset) || !at_most(cw, OrderClass::Asymmetric))
            fail(Errc::ClassGateViolation, std::string("super solver needs poset x asymmetric; sides are (") +
                                               order_class_name(cm) + ", " + order_class_name(cw) + ")");
        const int U = inst.man_count();
        for (int m = 0; m < U; ++m) {
            hasse.push_back(hasse_from_poset(inst.men_prefs[m]));
            alive.emplace_back(hasse[m].nodes.size(), true);
            std::vector<int> pa;
            for (const auto& p : hasse[m].pred) pa.push_back(static_cast<int>(p.size()));
            pred_alive.push_back(std::move(pa));
            pending.emplace_back(hasse[m].sources.begin(), hasse[m].sources.end());
        }
        ever_proposed.assign(inst.woman_count(), {});
        engaged.assign(inst.woman_count(), -1);
        engagements.assign(U, {});
    }

    void remove_from_poset(int u, int pos) {
        assert(alive[u][pos]);
        alive[u][pos] = false;
        pending[u].erase(pos);
        for (int s : hasse[u].succ[pos]) {
            // deletions proceed from the maximal end, so successors are alive
            if (--pred_alive[u][s] == 0 && alive[u][s]) pending[u].insert(s);
        }
    }

    SuperResult run() {
        while (true) {
            int u = -1;
            for (int m = 0; m < inst.man_count(); ++m)
                if (!pending[m].empty()) {
                    u = m;
                    break;
                }
            if (u < 0) break;
            int pos = *pending[u].begin();
            pending[u].erase(pending[u].begin());
            int w = hasse[u].nodes[pos];
            trace.push_back(SuperPropose{inst.men[u], inst.women[w]});

            const Relation& rw = inst.women_prefs[w];
            bool accept = true;
            for (int u2 : ever_proposed[w])
                if (rw.value(u, u2) != RelationValue::StrictPref) {
                    accept = false;
                    break;
                }
            int prev = engaged[w];
            ever_proposed[w].push_back(u);
            if (accept) {
                trace.push_back(SuperAccept{inst.men[u], inst.women[w]});
                engaged[w] = u;
                engagements[u].push_back(w);
            } else {
                trace.push_back(SuperDeleteEdge{inst.men[u], inst.women[w], "rejected"});
                remove_from_poset(u, pos);
            }
            // the engagement-break check runs even when the incoming proposal
            // was itself rejected; both edges may go in one iteration
            if (prev != -1 && prev != u) {
                RelationValue v = rw.value(u, prev);
                if (v == RelationValue::StrictPref || v == RelationValue::Incomparable) {
                    trace.push_back(SuperBreakEngagement{inst.men[prev], inst.women[w]});
                    trace.push_back(SuperDeleteEdge{inst.men[prev], inst.women[w], "break"});
                    auto& eng = engagements[prev];
                    eng.erase(std::find(eng.begin(), eng.end(), w));
                    if (engaged[w] == prev) engaged[w] = -1;
                    remove_from_poset(prev, inst.men_prefs[prev].position_of(w));
                }
            }
        }

        bool is_matching = true;
        std::vector<std::pair<int, int>> pairs;
        for (int m = 0; m < inst.man_count(); ++m) {
            if (engagements[m].size() > 1) is_matching = false;
            for (int w : engagements[m]) pairs.emplace_back(m, w);
        }
        bool covered = true;
        for (int w = 0; w < inst.woman_count(); ++w)
            if (!ever_proposed[w].empty() && engaged[w] == -1) covered = false;
        if (!is_matching || !covered) return {std::nullopt, std::move(trace)};
        return {Matching::from_pairs(inst, std::move(pairs)), std::move(trace)};
    }
};

}  // namespace detail

// Super-stability solver for poset men and asymmetric women: men
// propose along maximal women of their shrinking posets; a woman accepts only
// a proposer strictly preferred to everyone who has ever proposed to her.
inline SuperResult solve_super(const Instance& inst) { return detail::SuperEngine(inst).run(); }

}  // namespace pairpref
