#pragma once

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "pairpref/bipartite.hpp"
#include "pairpref/instance.hpp"
#include "pairpref/stability.hpp"

namespace pairpref {

struct OracleLimits {
    int max_edges = 64;
    std::uint64_t max_nodes = 200'000'000;
    std::chrono::milliseconds time_budget{600'000};
    int jobs = 1;
};

struct OracleAnswer {
    enum class Verdict { Exists, NotExists, LimitExceeded };
    Verdict verdict = Verdict::NotExists;
    std::vector<Matching> matchings;  // sorted canonically; complete when verdict is Exists
    std::uint64_t nodes_expanded = 0;
};

inline const char* verdict_name(OracleAnswer::Verdict v) {
    switch (v) {
        case OracleAnswer::Verdict::Exists: return "exists";
        case OracleAnswer::Verdict::NotExists: return "not_exists";
        case OracleAnswer::Verdict::LimitExceeded: return "limit_exceeded";
    }
    return "?";
}

namespace detail {

// Backtracking over edges in canonical order with in/out decisions. A branch
// is pruned only when an already-excluded edge provably blocks: both of its
// endpoints have their matching status finalized (matched, or out of
// undecided edges). Pruning is therefore conservative and the enumeration
// exhaustive.
class StableEnumerator {
public:
    StableEnumerator(const Instance& inst, StabilityNotion notion, std::atomic<std::uint64_t>& nodes,
                     std::chrono::steady_clock::time_point deadline, std::uint64_t max_nodes)
        : inst_(inst),
          notion_(notion),
          nodes_(nodes),
          deadline_(deadline),
          max_nodes_(max_nodes),
          m_(inst.edge_count()) {
        man_edges_.assign(inst.man_count(), {});
        woman_edges_.assign(inst.woman_count(), {});
        for (int e = 0; e < m_; ++e) {
            man_edges_[inst.edges[e].first].push_back(e);
            woman_edges_[inst.edges[e].second].push_back(e);
        }
        state_.assign(m_, Undecided);
        man_partner_.assign(inst.man_count(), -1);
        woman_partner_.assign(inst.woman_count(), -1);
        undec_man_.resize(inst.man_count());
        undec_woman_.resize(inst.woman_count());
        for (int u = 0; u < inst.man_count(); ++u) undec_man_[u] = static_cast<int>(man_edges_[u].size());
        for (int w = 0; w < inst.woman_count(); ++w) undec_woman_[w] = static_cast<int>(woman_edges_[w].size());
    }

    enum Decision : std::int8_t { Undecided = 0, In = 1, Out = 2 };

    bool overflow() const { return overflow_; }
    const std::vector<std::vector<std::pair<int, int>>>& found() const { return found_; }

    // replays a decision prefix; returns false when the prefix dies by pruning
    bool apply(const std::vector<Decision>& prefix) {
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            nodes_.fetch_add(1, std::memory_order_relaxed);
            bool pruned = prefix[k] == In ? decide_in(static_cast<int>(k)) : decide_out(static_cast<int>(k));
            if (pruned) return false;
        }
        return true;
    }

    bool forced_out(int k) const {
        auto [u, w] = inst_.edges[k];
        return man_partner_[u] != -1 || woman_partner_[w] != -1;
    }

    bool decide_in(int k) {
        auto [u, w] = inst_.edges[k];
        state_[k] = In;
        man_partner_[u] = w;
        woman_partner_[w] = u;
        --undec_man_[u];
        --undec_woman_[w];
        bool pruned = scan_man(u) || scan_woman(w);
        return pruned;
    }

    void undo_in(int k) {
        auto [u, w] = inst_.edges[k];
        state_[k] = Undecided;
        man_partner_[u] = -1;
        woman_partner_[w] = -1;
        ++undec_man_[u];
        ++undec_woman_[w];
    }

    bool decide_out(int k) {
        auto [u, w] = inst_.edges[k];
        bool u_final = man_final(u), w_final = woman_final(w);
        state_[k] = Out;
        --undec_man_[u];
        --undec_woman_[w];
        bool pruned = false;
        if (!u_final && man_final(u)) pruned = scan_man(u);
        if (!pruned && !w_final && woman_final(w)) pruned = scan_woman(w);
        if (!pruned && u_final && w_final) pruned = edge_blocks(k);
        return pruned;
    }

    void undo_out(int k) {
        auto [u, w] = inst_.edges[k];
        state_[k] = Undecided;
        ++undec_man_[u];
        ++undec_woman_[w];
    }

    void search(int k) {
        if (overflow_) return;
        std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_nodes_) {
            overflow_ = true;
            return;
        }
        if ((n & 2047) == 0 && std::chrono::steady_clock::now() > deadline_) {
            overflow_ = true;
            return;
        }
        if (k == m_) {
            std::vector<std::pair<int, int>> pairs;
            for (int e = 0; e < m_; ++e)
                if (state_[e] == In) pairs.push_back(inst_.edges[e]);
            found_.push_back(std::move(pairs));
            return;
        }
        if (forced_out(k)) {
            if (!decide_out(k)) search(k + 1);
            undo_out(k);
        } else {
            if (!decide_in(k)) search(k + 1);
            undo_in(k);
            if (!decide_out(k)) search(k + 1);
            undo_out(k);
        }
    }

private:
    bool man_final(int u) const { return man_partner_[u] != -1 || undec_man_[u] == 0; }
    bool woman_final(int w) const { return woman_partner_[w] != -1 || undec_woman_[w] == 0; }

    bool edge_blocks(int e) const {
        auto [u, w] = inst_.edges[e];
        RelationValue su = partner_relation(inst_.men_prefs[u], w, man_partner_[u]);
        RelationValue sw = partner_relation(inst_.women_prefs[w], u, woman_partner_[w]);
        return blocks_values(notion_, su, sw);
    }

    bool scan_man(int u) {
        for (int e : man_edges_[u])
            if (state_[e] == Out && woman_final(inst_.edges[e].second) && edge_blocks(e)) return true;
        return false;
    }

    bool scan_woman(int w) {
        for (int e : woman_edges_[w])
            if (state_[e] == Out && man_final(inst_.edges[e].first) && edge_blocks(e)) return true;
        return false;
    }

    const Instance& inst_;
    StabilityNotion notion_;
    std::atomic<std::uint64_t>& nodes_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t max_nodes_;
    int m_;
    std::vector<std::vector<int>> man_edges_, woman_edges_;
    std::vector<Decision> state_;
    std::vector<int> man_partner_, woman_partner_, undec_man_, undec_woman_;
    std::vector<std::vector<std::pair<int, int>>> found_;
    bool overflow_ = false;
};

}  // namespace detail

// Enumerates every stable matching of the instance for the given notion.
// The verdict is exhaustive unless a limit was hit. Subtrees may be split
// across workers; the result set and its order do not depend on the worker
// count.
inline OracleAnswer enumerate_stable(const Instance& inst, StabilityNotion notion, OracleLimits limits = {}) {
    OracleAnswer ans;
    if (inst.edge_count() > limits.max_edges) {
        ans.verdict = OracleAnswer::Verdict::LimitExceeded;
        return ans;
    }
    auto deadline = std::chrono::steady_clock::now() + limits.time_budget;
    std::atomic<std::uint64_t> nodes{0};

    std::vector<std::vector<std::pair<int, int>>> raw;
    bool overflow = false;

    if (limits.jobs <= 1 || inst.edge_count() < 8) {
        detail::StableEnumerator e(inst, notion, nodes, deadline, limits.max_nodes);
        e.search(0);
        overflow = e.overflow();
        raw = e.found();
    } else {
        using Prefix = std::vector<detail::StableEnumerator::Decision>;
        std::vector<Prefix> tasks{{}};
        const std::size_t want = static_cast<std::size_t>(limits.jobs) * 8;
        std::vector<Prefix> leaves;
        while (!tasks.empty() && tasks.size() + leaves.size() < want) {
            // expand the shortest prefix
            std::size_t best = 0;
            for (std::size_t i = 1; i < tasks.size(); ++i)
                if (tasks[i].size() < tasks[best].size()) best = i;
            Prefix t = tasks[best];
            tasks.erase(tasks.begin() + best);
            if (static_cast<int>(t.size()) == inst.edge_count()) {
                leaves.push_back(t);
                continue;
            }
            detail::StableEnumerator e(inst, notion, nodes, deadline, limits.max_nodes);
            if (!e.apply(t)) continue;
            int k = static_cast<int>(t.size());
            if (e.forced_out(k)) {
                t.push_back(detail::StableEnumerator::Out);
                tasks.push_back(t);
            } else {
                t.push_back(detail::StableEnumerator::In);
                tasks.push_back(t);
                t.back() = detail::StableEnumerator::Out;
                tasks.push_back(t);
            }
            if (tasks.empty()) break;
        }
        for (const auto& t : leaves) tasks.push_back(t);

        std::vector<std::vector<std::vector<std::pair<int, int>>>> results(tasks.size());
        std::vector<char> overflows(tasks.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                detail::StableEnumerator e(inst, notion, nodes, deadline, limits.max_nodes);
                if (!e.apply(tasks[i])) continue;
                e.search(static_cast<int>(tasks[i].size()));
                results[i] = e.found();
                overflows[i] = e.overflow() ? 1 : 0;
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < limits.jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            overflow = overflow || overflows[i];
            for (auto& p : results[i]) raw.push_back(std::move(p));
        }
    }

    ans.nodes_expanded = nodes.load();
    if (overflow) {
        ans.verdict = OracleAnswer::Verdict::LimitExceeded;
        return ans;
    }
    std::sort(raw.begin(), raw.end());
    for (auto& pairs : raw) ans.matchings.push_back(Matching::from_pairs(inst, std::move(pairs)));
    ans.verdict = ans.matchings.empty() ? OracleAnswer::Verdict::NotExists : OracleAnswer::Verdict::Exists;
    return ans;
}

// --- Rural Hospitals check ----------------------------------------------------

struct RuralWitness {
    int first_matching;
    int second_matching;
    bool vertex_is_man;
    int vertex;
};

// True iff all matchings cover the same vertex set; otherwise the first pair
// of matchings differing, with a vertex covered by exactly one of them.
inline std::pair<bool, std::optional<RuralWitness>> rural_hospitals(const std::vector<Matching>& matchings,
                                                                    const Instance& inst) {
    if (matchings.empty()) fail(Errc::EmptyList, "rural hospitals check needs at least one matching");
    for (std::size_t i = 0; i < matchings.size(); ++i)
        for (std::size_t j = i + 1; j < matchings.size(); ++j) {
            for (int u = 0; u < inst.man_count(); ++u)
                if ((matchings[i].man_partner[u] == -1) != (matchings[j].man_partner[u] == -1))
                    return {false, RuralWitness{static_cast<int>(i), static_cast<int>(j), true, u}};
            for (int w = 0; w < inst.woman_count(); ++w)
                if ((matchings[i].woman_partner[w] == -1) != (matchings[j].woman_partner[w] == -1))
                    return {false, RuralWitness{static_cast<int>(i), static_cast<int>(j), false, w}};
        }
    return {true, std::nullopt};
}

// --- Brute-force critical set ---------------------------------------------------

// Minimal subset of the left side achieving maximum deficiency, by direct
// enumeration of all subsets (the intersection of all maximizers).
inline std::vector<int> brute_critical_set(const BipartiteGraph& g) {
    if (g.left > 20) fail(Errc::SizeGuard, "brute-force critical set limited to 20 left vertices");
    std::vector<std::uint64_t> nbr_lo(g.left, 0), nbr_hi(g.left, 0);
    for (int u = 0; u < g.left; ++u)
        for (int w : g.adj[u]) {
            if (w < 64)
                nbr_lo[u] |= std::uint64_t{1} << w;
            else
                nbr_hi[u] |= std::uint64_t{1} << (w - 64);
        }
    if (g.right > 128) fail(Errc::SizeGuard, "brute-force critical set limited to 128 right vertices");
    int best_def = 0;
    std::uint32_t intersection = 0;
    for (std::uint32_t mask = 0; mask < (1u << g.left); ++mask) {
        std::uint64_t lo = 0, hi = 0;
        int size = 0;
        for (int u = 0; u < g.left; ++u)
            if (mask >> u & 1) {
                lo |= nbr_lo[u];
                hi |= nbr_hi[u];
                ++size;
            }
        int def = size - (std::popcount(lo) + std::popcount(hi));
        if (def > best_def) {
            best_def = def;
            intersection = mask;
        } else if (def == best_def && def > 0) {
            intersection &= mask;
        }
    }
    std::vector<int> out;
    if (best_def == 0) return out;  // the empty set is then the unique minimal maximizer
    for (int u = 0; u < g.left; ++u)
        if (intersection >> u & 1) out.push_back(u);
    return out;
}

}  // namespace pairpref
