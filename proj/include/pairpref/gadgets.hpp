#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairpref/instance.hpp"
#include "pairpref/sat.hpp"
#include "pairpref/stability.hpp"

namespace pairpref {

// Instance built from a (2,2)-E3-SAT formula, with provenance maps from
// formula structure to vertex ids. Men are the t, f and u vertices; women are
// the literal vertices and the w vertices.
struct GadgetInstance {
    Instance instance;
    Formula formula;

    struct VariableGadget {
        std::string t, f, x, nx;
    };
    struct ClauseGadget {
        std::array<std::string, 3> u, w;
    };
    struct Occurrence {
        int clause;    // 1-based
        int pos;       // 1-based position within the clause
        int var;       // 1-based variable
        bool negated;
        std::pair<std::string, std::string> edge;  // (u vertex, literal vertex)
    };

    std::vector<VariableGadget> variables;
    std::vector<ClauseGadget> clauses;
    std::vector<Occurrence> occurrences;
};

namespace detail {

// Shared skeleton: per variable a 4-cycle {t, x-bar, f, x}, per clause a
// K_{3,3}, one interconnecting edge per literal occurrence. Degree stays at
// most 4; vertex count is 4n + 6m and edge count 4n + 12m.
inline GadgetInstance build_gadget_skeleton(const Formula& f) {
    auto violations = validate_22e3(f);
    if (!violations.empty()) fail(Errc::NotTwoTwoE3, "formula is not (2,2)-E3-SAT: " + violations.front());
    const int n = f.num_vars;
    const int m = static_cast<int>(f.clauses.size());

    GadgetInstance g;
    g.formula = f;
    std::vector<std::string> men, women;
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        g.variables.push_back({"t" + si, "f" + si, "x" + si, "nx" + si});
        men.push_back(g.variables.back().t);
        men.push_back(g.variables.back().f);
        women.push_back(g.variables.back().x);
        women.push_back(g.variables.back().nx);
    }
    for (int j = 1; j <= m; ++j) {
        std::string sj = std::to_string(j);
        GadgetInstance::ClauseGadget cg;
        for (int p = 0; p < 3; ++p) {
            cg.u[p] = "c" + sj + "u" + std::to_string(p + 1);
            cg.w[p] = "c" + sj + "w" + std::to_string(p + 1);
            men.push_back(cg.u[p]);
            women.push_back(cg.w[p]);
        }
        g.clauses.push_back(cg);
    }

    std::vector<std::pair<int, int>> edges;
    auto t_idx = [&](int i) { return 2 * (i - 1); };
    auto f_idx = [&](int i) { return 2 * (i - 1) + 1; };
    auto x_idx = [&](int i) { return 2 * (i - 1); };
    auto nx_idx = [&](int i) { return 2 * (i - 1) + 1; };
    auto u_idx = [&](int j, int p) { return 2 * n + 3 * (j - 1) + p; };
    auto w_idx = [&](int j, int q) { return 2 * n + 3 * (j - 1) + q; };

    for (int i = 1; i <= n; ++i) {
        edges.emplace_back(t_idx(i), x_idx(i));
        edges.emplace_back(t_idx(i), nx_idx(i));
        edges.emplace_back(f_idx(i), x_idx(i));
        edges.emplace_back(f_idx(i), nx_idx(i));
    }
    for (int j = 1; j <= m; ++j)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) edges.emplace_back(u_idx(j, p), w_idx(j, q));
    for (int j = 1; j <= m; ++j)
        for (int p = 0; p < 3; ++p) {
            int lit = f.clauses[j - 1].lits[p];
            int v = std::abs(lit);
            int lv = lit > 0 ? x_idx(v) : nx_idx(v);
            edges.emplace_back(u_idx(j, p), lv);
            g.occurrences.push_back({j, p + 1, v, lit < 0, {g.clauses[j - 1].u[p], women[lv]}});
        }

    // relations are filled in by the notion-specific builder
    std::vector<std::vector<int>> madj(men.size()), wadj(women.size());
    for (auto [a, b] : edges) {
        madj[a].push_back(b);
        wadj[b].push_back(a);
    }
    std::vector<Relation> mp, wp;
    for (auto& a : madj) {
        std::sort(a.begin(), a.end());
        mp.push_back(Relation(a));
    }
    for (auto& a : wadj) {
        std::sort(a.begin(), a.end());
        wp.push_back(Relation(a));
    }
    g.instance = assemble_instance(std::move(men), std::move(women), std::move(edges), std::move(mp), std::move(wp));
    return g;
}

struct GadgetIndices {
    int n, m;
    int t(int i) const { return 2 * (i - 1); }
    int f(int i) const { return 2 * (i - 1) + 1; }
    int x(int i) const { return 2 * (i - 1); }
    int nx(int i) const { return 2 * (i - 1) + 1; }
    int u(int j, int p) const { return 2 * n + 3 * (j - 1) + p; }  // p, q are 0-based here
    int w(int j, int q) const { return 2 * n + 3 * (j - 1) + q; }
};

}  // namespace detail

// Weak-stability reduction gadget. Variable relations make the literal
// vertices cyclic (x: f < t, t < u, u < f); clause men hold strict lists
// w3 < w2 < literal < w1 and clause women are indifferent.
inline GadgetInstance build_weak_gadget(const Formula& f) {
    GadgetInstance g = detail::build_gadget_skeleton(f);
    detail::GadgetIndices ix{f.num_vars, static_cast<int>(f.clauses.size())};
    Instance& inst = g.instance;

    for (int i = 1; i <= ix.n; ++i) {
        inst.men_prefs[ix.t(i)].set(ix.x(i), ix.nx(i), RelationValue::StrictPref);
        inst.men_prefs[ix.f(i)].set(ix.nx(i), ix.x(i), RelationValue::StrictPref);
        for (int lv : {ix.x(i), ix.nx(i)}) {
            Relation& r = inst.women_prefs[lv];
            if (lv == ix.x(i))
                r.set(ix.f(i), ix.t(i), RelationValue::StrictPref);  // f < t: the cycle closes below
            else
                r.set(ix.t(i), ix.f(i), RelationValue::StrictPref);  // t < f
            for (int man : inst.woman_adj[lv]) {
                if (man == ix.t(i) || man == ix.f(i)) continue;
                r.set(ix.t(i), man, RelationValue::StrictPref);  // t < u
                r.set(man, ix.f(i), RelationValue::StrictPref);  // u < f
            }
            // the two u-partners of a literal vertex stay incomparable
        }
    }
    for (int j = 1; j <= ix.m; ++j)
        for (int p = 0; p < 3; ++p) {
            int lit = f.clauses[j - 1].lits[p];
            int lv = lit > 0 ? ix.x(std::abs(lit)) : ix.nx(std::abs(lit));
            Relation& r = inst.men_prefs[ix.u(j, p)];
            // strict list w3 < w2 < literal < w1
            std::array<int, 4> order = {ix.w(j, 2), ix.w(j, 1), lv, ix.w(j, 0)};
            for (std::size_t a = 0; a < order.size(); ++a)
                for (std::size_t b = a + 1; b < order.size(); ++b)
                    r.set(order[a], order[b], RelationValue::StrictPref);
        }
    detail::finish_instance(inst);
    return g;
}

// Super-stability reduction gadget: the literal vertices trade the closing
// cycle arc for u ~ f, clause men get the rotated intransitive lists of the
// construction and clause women strict rotations.
inline GadgetInstance build_super_gadget(const Formula& f) {
    GadgetInstance g = detail::build_gadget_skeleton(f);
    detail::GadgetIndices ix{f.num_vars, static_cast<int>(f.clauses.size())};
    Instance& inst = g.instance;

    for (int i = 1; i <= ix.n; ++i) {
        inst.men_prefs[ix.t(i)].set(ix.x(i), ix.nx(i), RelationValue::StrictPref);
        inst.men_prefs[ix.f(i)].set(ix.nx(i), ix.x(i), RelationValue::StrictPref);
        for (int lv : {ix.x(i), ix.nx(i)}) {
            Relation& r = inst.women_prefs[lv];
            if (lv == ix.x(i))
                r.set(ix.f(i), ix.t(i), RelationValue::StrictPref);
            else
                r.set(ix.t(i), ix.f(i), RelationValue::StrictPref);
            for (int man : inst.woman_adj[lv]) {
                if (man == ix.t(i) || man == ix.f(i)) continue;
                r.set(ix.t(i), man, RelationValue::StrictPref);  // t < u; u ~ f stays absent
            }
        }
    }
    for (int j = 1; j <= ix.m; ++j) {
        // clause men: w-suborders rotate; w1 and w2 are preferred to the
        // literal, the literal is incomparable to w3
        const std::array<std::array<int, 3>, 3> suborder = {{{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
        for (int p = 0; p < 3; ++p) {
            int lit = f.clauses[j - 1].lits[p];
            int lv = lit > 0 ? ix.x(std::abs(lit)) : ix.nx(std::abs(lit));
            Relation& r = inst.men_prefs[ix.u(j, p)];
            const auto& ord = suborder[p];
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    r.set(ix.w(j, ord[a]), ix.w(j, ord[b]), RelationValue::StrictPref);
            r.set(ix.w(j, 0), lv, RelationValue::StrictPref);
            r.set(ix.w(j, 1), lv, RelationValue::StrictPref);
        }
        // clause women: w1: u2 < u3 < u1; w2: u1 < u2 < u3; w3: u3 < u1 < u2
        const std::array<std::array<int, 3>, 3> worder = {{{1, 2, 0}, {0, 1, 2}, {2, 0, 1}}};
        for (int q = 0; q < 3; ++q) {
            Relation& r = inst.women_prefs[ix.w(j, q)];
            const auto& ord = worder[q];
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    r.set(ix.u(j, ord[a]), ix.u(j, ord[b]), RelationValue::StrictPref);
        }
    }
    detail::finish_instance(inst);
    return g;
}

// Stable matching corresponding to a satisfying assignment: {tx, f nx} for
// true variables, {fx, t nx} for false ones; in each clause the first
// satisfied literal's u vertex takes w1 (weak) or w3 (super) and the rest are
// completed by the fixed rule.
inline Matching assignment_to_matching(const GadgetInstance& g, const std::vector<bool>& assignment,
                                       StabilityNotion notion) {
    const Formula& f = g.formula;
    if (notion != StabilityNotion::Weak && notion != StabilityNotion::Super)
        fail(Errc::SyntaxError, "gadget matchings exist for weak and super notions only");
    if (static_cast<int>(assignment.size()) != f.num_vars)
        fail(Errc::AssignmentNotSatisfying, "assignment length does not match variable count");
    if (!satisfies(f, assignment)) fail(Errc::AssignmentNotSatisfying, "assignment does not satisfy the formula");
    detail::GadgetIndices ix{f.num_vars, static_cast<int>(f.clauses.size())};
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= ix.n; ++i) {
        if (assignment[i - 1]) {
            pairs.emplace_back(ix.t(i), ix.x(i));
            pairs.emplace_back(ix.f(i), ix.nx(i));
        } else {
            pairs.emplace_back(ix.f(i), ix.x(i));
            pairs.emplace_back(ix.t(i), ix.nx(i));
        }
    }
    for (int j = 1; j <= ix.m; ++j) {
        int sat_pos = -1;
        for (int p = 0; p < 3 && sat_pos < 0; ++p) {
            int lit = f.clauses[j - 1].lits[p];
            if ((lit > 0) == assignment[std::abs(lit) - 1]) sat_pos = p;
        }
        if (notion == StabilityNotion::Weak) {
            pairs.emplace_back(ix.u(j, sat_pos), ix.w(j, 0));
            std::vector<int> rest;
            for (int p = 0; p < 3; ++p)
                if (p != sat_pos) rest.push_back(p);
            pairs.emplace_back(ix.u(j, rest[0]), ix.w(j, 1));
            pairs.emplace_back(ix.u(j, rest[1]), ix.w(j, 2));
        } else {
            // the unique completion inside one of the three stable perfect
            // matchings of the clause gadget
            pairs.emplace_back(ix.u(j, sat_pos), ix.w(j, 2));
            pairs.emplace_back(ix.u(j, (sat_pos + 1) % 3), ix.w(j, 1));
            pairs.emplace_back(ix.u(j, (sat_pos + 2) % 3), ix.w(j, 0));
        }
    }
    return Matching::from_pairs(g.instance, std::move(pairs));
}

// Reads the truth assignment off a stable gadget matching: a variable is true
// iff tx is matched. Stable matchings contain {tx, f nx} or {fx, t nx} per
// gadget and no interconnecting edge; anything else flags a checker bug.
inline std::vector<bool> extract_assignment(const GadgetInstance& g, const Matching& m) {
    const Instance& inst = g.instance;
    for (const auto& occ : g.occurrences) {
        int u = inst.man_index.at(occ.edge.first);
        int lv = inst.woman_index.at(occ.edge.second);
        if (m.man_partner[u] == lv)
            fail(Errc::MalformedStableMatching, "matching contains interconnecting edge (" + occ.edge.first +
                                                    ", " + occ.edge.second + ")");
    }
    std::vector<bool> assignment;
    for (const auto& vg : g.variables) {
        int t = inst.man_index.at(vg.t), f = inst.man_index.at(vg.f);
        int x = inst.woman_index.at(vg.x), nx = inst.woman_index.at(vg.nx);
        if (m.man_partner[t] == x && m.man_partner[f] == nx)
            assignment.push_back(true);
        else if (m.man_partner[f] == x && m.man_partner[t] == nx)
            assignment.push_back(false);
        else
            fail(Errc::MalformedStableMatching,
                 "variable gadget of " + vg.x + " is not matched as {tx, f nx} or {fx, t nx}");
    }
    return assignment;
}

inline nlohmann::json provenance_json(const GadgetInstance& g) {
    nlohmann::json doc;
    doc["variables"] = nlohmann::json::object();
    for (std::size_t i = 0; i < g.variables.size(); ++i) {
        const auto& v = g.variables[i];
        doc["variables"][std::to_string(i + 1)] = {{"t", v.t}, {"f", v.f}, {"x", v.x}, {"nx", v.nx}};
    }
    doc["clauses"] = nlohmann::json::array();
    for (const auto& c : g.clauses)
        doc["clauses"].push_back({{"u", c.u}, {"w", c.w}});
    doc["occurrences"] = nlohmann::json::array();
    for (const auto& o : g.occurrences)
        doc["occurrences"].push_back({{"clause", o.clause},
                                      {"pos", o.pos},
                                      {"var", o.var},
                                      {"negated", o.negated},
                                      {"edge", {o.edge.first, o.edge.second}}});
    return doc;
}

}  // namespace pairpref
