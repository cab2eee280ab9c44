// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets and tolerances are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pairpref/frontier.hpp"
#include "pairpref/gadgets.hpp"
#include "pairpref/oracle.hpp"
#include "pairpref/solver_strong.hpp"
#include "pairpref/solver_super.hpp"
#include "pairpref/solver_weak.hpp"

using namespace pairpref;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    std::printf("criterion %d [%s]: %s (%.2f s)%s%s\n", number, name.c_str(), ok ? "PASS" : "FAIL", dt,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Instance cyclic_triangle() {
    return build_instance({"u1", "u2", "u3"}, {"w"}, {{"u1", "w"}, {"u2", "w"}, {"u3", "w"}},
                          {{"w", {{"u1", "u2", "<"}, {"u2", "u3", "<"}, {"u3", "u1", "<"}}}});
}

Instance random_instance(int men, int women, double density, OrderClass mc, OrderClass wc, std::uint64_t seed) {
    GeneratorParams p;
    p.men_count = men;
    p.women_count = women;
    p.edge_density = density;
    p.men_class = mc;
    p.women_class = wc;
    p.seed = seed;
    return generate_instance(p);
}

std::set<NamedEdge> rejected_edges(const StrongTrace& trace) {
    std::set<NamedEdge> out;
    for (const auto& ev : trace) {
        if (const auto* rs = std::get_if<StrongRejectStrict>(&ev)) out.insert(rs->rejected);
        if (const auto* ri = std::get_if<StrongRejectIncomparable>(&ev)) out.insert(ri->rejected);
        if (const auto* rc = std::get_if<StrongRejectCritical>(&ev))
            for (const auto& e : rc->edges) out.insert(e);
    }
    return out;
}

// rural-hospitals data gathered while criteria 3 and 4 run
int rural_families_checked = 0;
int rural_violations = 0;

void check_rural(const std::vector<Matching>& matchings, const Instance& inst) {
    if (matchings.size() < 2) return;
    ++rural_families_checked;
    if (!rural_hospitals(matchings, inst).first) ++rural_violations;
}

bool crit1_cyclic_triangle(std::string& detail) {
    auto t0 = Clock::now();
    Instance i = cyclic_triangle();
    for (auto n : {StabilityNotion::Weak, StabilityNotion::Strong, StabilityNotion::Super})
        if (enumerate_stable(i, n).verdict != OracleAnswer::Verdict::NotExists) {
            detail = "oracle failed to prove nonexistence";
            return false;
        }
    if (solve_strong(i).matching) {
        detail = "solve_strong returned a matching";
        return false;
    }
    if (seconds_since(t0) >= 1.0) {
        detail = "budget of 1 s exceeded";
        return false;
    }
    return true;
}

bool crit2_weak_existence(std::string& detail) {
    auto t0 = Clock::now();
    std::mt19937_64 g(1001);
    for (int it = 0; it < 500; ++it) {
        int men = 2 + static_cast<int>(g() % 6), women = 2 + static_cast<int>(g() % 6);
        Instance i = random_instance(men, women, 0.7, OrderClass::Acyclic, OrderClass::Acyclic, g());
        Matching m = solve_weak(i);
        if (find_blocking(StabilityNotion::Weak, i, m)) {
            detail = "weakly blocking edge in the original relations, instance " + std::to_string(it);
            return false;
        }
    }
    if (seconds_since(t0) >= 10.0) {
        detail = "budget of 10 s exceeded";
        return false;
    }
    detail = "500 instances";
    return true;
}

bool crit3_strong_vs_oracle(std::string& detail) {
    auto t0 = Clock::now();
    std::mt19937_64 g(3003);
    int exists = 0;
    for (int it = 0; it < 500; ++it) {
        int men = 2 + static_cast<int>(g() % 4), women = 2 + static_cast<int>(g() % 4);
        Instance i = random_instance(men, women, 0.75, OrderClass::Ties, OrderClass::Asymmetric, g());
        auto oracle = enumerate_stable(i, StabilityNotion::Strong);
        if (oracle.verdict == OracleAnswer::Verdict::LimitExceeded) {
            detail = "oracle limit on a desk-scale instance";
            return false;
        }
        auto r = solve_strong(i);
        bool oracle_exists = oracle.verdict == OracleAnswer::Verdict::Exists;
        if (r.matching.has_value() != oracle_exists) {
            detail = "existence disagreement at instance " + std::to_string(it);
            return false;
        }
        if (r.matching) {
            ++exists;
            if (find_blocking(StabilityNotion::Strong, i, *r.matching)) {
                detail = "output fails the strong checker at instance " + std::to_string(it);
                return false;
            }
        }
        std::set<NamedEdge> stable_edges;
        for (const auto& m : oracle.matchings)
            for (auto [u, w] : m.pairs) stable_edges.insert({i.men[u], i.women[w]});
        for (const auto& e : rejected_edges(r.trace))
            if (stable_edges.count(e)) {
                detail = "oracle-stable edge rejected at instance " + std::to_string(it);
                return false;
            }
        check_rural(oracle.matchings, i);
    }
    if (seconds_since(t0) >= 300.0) {
        detail = "budget of 5 min exceeded";
        return false;
    }
    detail = "500 instances, " + std::to_string(exists) + " with stable matchings";
    return true;
}

bool crit4_super_vs_oracle(std::string& detail) {
    auto t0 = Clock::now();
    std::mt19937_64 g(4004);
    int exists = 0;
    for (int it = 0; it < 500; ++it) {
        int men = 2 + static_cast<int>(g() % 4), women = 2 + static_cast<int>(g() % 4);
        Instance i = random_instance(men, women, 0.75, OrderClass::Poset, OrderClass::Asymmetric, g());
        auto oracle = enumerate_stable(i, StabilityNotion::Super);
        if (oracle.verdict == OracleAnswer::Verdict::LimitExceeded) {
            detail = "oracle limit on a desk-scale instance";
            return false;
        }
        auto r = solve_super(i);
        bool oracle_exists = oracle.verdict == OracleAnswer::Verdict::Exists;
        if (r.matching.has_value() != oracle_exists) {
            detail = "existence disagreement at instance " + std::to_string(it);
            return false;
        }
        if (r.matching) {
            ++exists;
            if (find_blocking(StabilityNotion::Super, i, *r.matching)) {
                detail = "output fails the super checker at instance " + std::to_string(it);
                return false;
            }
        }
        // deleted edges never in oracle-stable matchings; proposed women always covered
        std::set<NamedEdge> deleted;
        std::set<std::string> proposed;
        for (const auto& ev : r.trace) {
            if (const auto* d = std::get_if<SuperDeleteEdge>(&ev)) deleted.insert({d->man, d->woman});
            if (const auto* p = std::get_if<SuperPropose>(&ev)) proposed.insert(p->woman);
        }
        for (const auto& m : oracle.matchings) {
            for (auto [u, w] : m.pairs)
                if (deleted.count({i.men[u], i.women[w]})) {
                    detail = "deleted edge appears in a stable matching, instance " + std::to_string(it);
                    return false;
                }
            for (const auto& wname : proposed)
                if (m.woman_partner[i.woman_index.at(wname)] == -1) {
                    detail = "proposed-to woman unmatched in a stable matching, instance " + std::to_string(it);
                    return false;
                }
        }
        check_rural(oracle.matchings, i);
    }
    if (seconds_since(t0) >= 300.0) {
        detail = "budget of 5 min exceeded";
        return false;
    }
    detail = "500 instances, " + std::to_string(exists) + " with stable matchings";
    return true;
}

bool crit5_critical_set(std::string& detail) {
    auto t0 = Clock::now();
    std::mt19937_64 g(5005);
    for (int it = 0; it < 500; ++it) {
        int left = 1 + static_cast<int>(g() % 8), right = 1 + static_cast<int>(g() % 8);
        std::vector<std::pair<int, int>> edges;
        for (int l = 0; l < left; ++l)
            for (int r = 0; r < right; ++r)
                if ((g() >> 11) * (1.0 / 9007199254740992.0) < 0.45) edges.emplace_back(l, r);
        auto graph = BipartiteGraph::from_edges(left, right, edges);
        if (critical_set(graph, max_matching(graph)) != brute_critical_set(graph)) {
            detail = "mismatch at graph " + std::to_string(it);
            return false;
        }
    }
    if (seconds_since(t0) >= 60.0) {
        detail = "budget of 1 min exceeded";
        return false;
    }
    detail = "500 graphs";
    return true;
}

bool crit6_reductions(std::string& detail) {
    int oracle_completed = 0, unsat_seen = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Formula f = generate_22e3(3, seed);
        bool sat = sat_brute(f).has_value();
        if (!sat) ++unsat_seen;
        for (auto notion : {StabilityNotion::Weak, StabilityNotion::Super}) {
            GadgetInstance g =
                notion == StabilityNotion::Weak ? build_weak_gadget(f) : build_super_gadget(f);
            OracleLimits lim;
            lim.time_budget = std::chrono::milliseconds(600'000);
            lim.jobs = 2;
            auto a = enumerate_stable(g.instance, notion, lim);
            if (a.verdict == OracleAnswer::Verdict::LimitExceeded) continue;
            ++oracle_completed;
            if ((a.verdict == OracleAnswer::Verdict::Exists) != sat) {
                detail = "verdict disagreement, seed " + std::to_string(seed);
                return false;
            }
            // backward soundness certifies the NotExists direction even when
            // every n=3 formula is satisfiable
            for (const auto& m : a.matchings)
                if (!satisfies(f, extract_assignment(g, m))) {
                    detail = "extracted assignment does not satisfy, seed " + std::to_string(seed);
                    return false;
                }
        }
    }
    if (oracle_completed == 0) {
        detail = "no gadget oracle completed";
        return false;
    }
    // forward soundness at larger sizes, one minute per formula
    for (int n = 3; n <= 30; n += 3) {
        auto t0 = Clock::now();
        Formula f = generate_22e3(n, 13 + n);
        auto assignment = sat_brute(f);
        if (!assignment) continue;  // random (2,2)-E3 formulas at this density are almost always satisfiable
        for (auto notion : {StabilityNotion::Weak, StabilityNotion::Super}) {
            GadgetInstance g =
                notion == StabilityNotion::Weak ? build_weak_gadget(f) : build_super_gadget(f);
            Matching m = assignment_to_matching(g, *assignment, notion);
            if (find_blocking(notion, g.instance, m)) {
                detail = "forward map unstable at n=" + std::to_string(n);
                return false;
            }
        }
        if (seconds_since(t0) >= 60.0) {
            detail = "forward check exceeded 1 min at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "20 formulas, " + std::to_string(oracle_completed) + "/40 gadget oracles completed, " +
             std::to_string(unsat_seen) + " unsatisfiable";
    return true;
}

bool crit7_nesting(std::string& detail) {
    std::mt19937_64 g(7007);
    int triples = 0;
    while (triples < 10'000) {
        Instance i = random_instance(2 + static_cast<int>(g() % 4), 2 + static_cast<int>(g() % 4), 0.8,
                                     OrderClass::Arbitrary, OrderClass::Arbitrary, g());
        if (i.edge_count() == 0) continue;
        std::vector<int> mp(i.man_count(), -1), wp(i.woman_count(), -1);
        std::vector<std::pair<int, int>> pairs;
        for (auto [u, w] : i.edges)
            if (mp[u] == -1 && wp[w] == -1 && (g() & 1)) {
                mp[u] = w;
                wp[w] = u;
                pairs.push_back({u, w});
            }
        Matching m = Matching::from_pairs(i, std::move(pairs));
        for (int k = 0; k < 4 && triples < 10'000; ++k) {
            auto e = i.edges[g() % i.edges.size()];
            ++triples;
            bool bw = blocks(StabilityNotion::Weak, i, m, e);
            bool bs = blocks(StabilityNotion::Strong, i, m, e);
            bool bp = blocks(StabilityNotion::Super, i, m, e);
            if ((bw && !bs) || (bs && !bp)) {
                detail = "nesting violation";
                return false;
            }
        }
    }
    detail = "10000 triples";
    return true;
}

bool crit8_rural(std::string& detail) {
    if (rural_violations > 0) {
        detail = "covered vertex sets differed in a strong/super family";
        return false;
    }
    if (rural_families_checked == 0) {
        detail = "criteria 3-4 produced no multi-matching families";
        return false;
    }
    // fixed weak counterexample
    Instance cx = build_instance({"u1", "u2"}, {"w1", "w2"}, {{"u1", "w1"}, {"u2", "w1"}, {"u2", "w2"}});
    Matching m1 = Matching::from_pairs(cx, {{0, 0}, {1, 1}});
    Matching m2 = Matching::from_pairs(cx, {{1, 0}});
    if (find_blocking(StabilityNotion::Weak, cx, m1) || find_blocking(StabilityNotion::Weak, cx, m2)) {
        detail = "counterexample matchings are not weakly stable";
        return false;
    }
    if (rural_hospitals({m1, m2}, cx).first) {
        detail = "weak counterexample not detected";
        return false;
    }
    detail = std::to_string(rural_families_checked) + " strong/super families identical";
    return true;
}

bool crit9_smoke(std::string& detail) {
    // best of three runs per point, so scheduler jitter does not leak into
    // the doubling ratio
    auto best_of = [](const std::function<double()>& f) {
        double best = f();
        for (int k = 0; k < 2; ++k) best = std::min(best, f());
        return best;
    };
    auto run_strong = [&](int n, std::uint64_t seed) {
        Instance i = random_instance(n, n, 0.25, OrderClass::Ties, OrderClass::Asymmetric, seed);
        return best_of([&] {
            auto t0 = Clock::now();
            auto r = solve_strong(i);
            (void)r;
            return seconds_since(t0);
        });
    };
    auto run_super = [&](int n, std::uint64_t seed) {
        Instance i = random_instance(n, n, 0.25, OrderClass::Poset, OrderClass::Asymmetric, seed);
        return best_of([&] {
            auto t0 = Clock::now();
            auto r = solve_super(i);
            (void)r;
            return seconds_since(t0);
        });
    };
    double strong200 = run_strong(200, 1);
    double super200 = run_super(200, 2);
    if (strong200 >= 10.0 || super200 >= 10.0) {
        detail = "200x200 run exceeded 10 s";
        return false;
    }
    double strong400 = run_strong(400, 3);
    double super400 = run_super(400, 4);
    double floor = 0.05;  // timer noise floor for the ratio
    if (strong400 > 10.0 * std::max(strong200, floor) || super400 > 10.0 * std::max(super200, floor)) {
        detail = "doubling n blew the 10x guard";
        return false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "strong %.2fs/%.2fs, super %.2fs/%.2fs (200/400)", strong200, strong400,
                  super200, super400);
    detail = buf;
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "cyclic triangle reproduction", crit1_cyclic_triangle);
    criterion(2, "weak existence on acyclic x acyclic", crit2_weak_existence);
    criterion(3, "strong solver vs oracle", crit3_strong_vs_oracle);
    criterion(4, "super solver vs oracle", crit4_super_vs_oracle);
    criterion(5, "critical set vs brute force", crit5_critical_set);
    criterion(6, "reduction equivalence", crit6_reductions);
    criterion(7, "blocking nesting", crit7_nesting);
    criterion(8, "rural hospitals", crit8_rural);
    criterion(9, "complexity smoke", crit9_smoke);
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
