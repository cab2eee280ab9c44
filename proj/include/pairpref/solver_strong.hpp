#pragma once

#include <cassert>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pairpref/bipartite.hpp"
#include "pairpref/instance.hpp"
#include "pairpref/stability.hpp"
#include "pairpref/trace.hpp"

namespace pairpref {

// Appends a dummy woman w_u to each man's list as a strictly-last singleton
// tie. Dummies make every man matched in every stable matching of the
// extended instance, and the restriction of such a matching back to the
// original edges is stable there.
inline Instance add_dummies(const Instance& inst) {
    auto [cm, cw] = classify_sides(inst);
    if (!at_most(cm, OrderClass::Ties) || !at_most(cw, OrderClass::Asymmetric))
        fail(Errc::ClassGateViolation, std::string("strong solver needs ties x asymmetric; sides are (") +
                                           order_class_name(cm) + ", " + order_class_name(cw) + ")");
    std::vector<std::string> women = inst.women;
    std::vector<std::pair<int, int>> edges = inst.edges;
    std::vector<Relation> wp = inst.women_prefs;
    std::vector<Relation> mp;
    for (int m = 0; m < inst.man_count(); ++m) {
        std::string id = inst.men[m] + "#d";
        while (inst.woman_index.count(id) || inst.man_index.count(id)) id += "#";
        int wi = static_cast<int>(women.size());
        women.push_back(id);
        edges.emplace_back(m, wi);
        wp.push_back(Relation(std::vector<int>{m}));
        std::vector<int> universe = inst.man_adj[m];
        universe.push_back(wi);
        Relation r(universe);
        for (int w : inst.man_adj[m]) {
            r.set(w, wi, RelationValue::StrictPref);
            for (int w2 : inst.man_adj[m])
                if (w != w2) r.set(w, w2, inst.men_prefs[m].value(w, w2));
        }
        mp.push_back(std::move(r));
    }
    return assemble_instance(inst.men, std::move(women), std::move(edges), std::move(mp), std::move(wp));
}

struct StrongResult {
    std::optional<Matching> matching;
    StrongTrace trace;
};

enum class EdgeStatus : std::uint8_t { Inactive, Active, Rejected };

// Phase driver for the strong solver. Public so tests can step the phases and
// inspect edge statuses; use solve_strong() for a whole run.
class StrongEngine {
public:
    explicit StrongEngine(const Instance& original, std::vector<int> man_order = {})
        : orig_(original), ext_(add_dummies(original)) {
        const int U = ext_.man_count();
        if (man_order.empty()) {
            man_order_.resize(U);
            std::iota(man_order_.begin(), man_order_.end(), 0);
        } else {
            man_order_ = std::move(man_order);
            assert(static_cast<int>(man_order_.size()) == U);
        }
        for (int m = 0; m < U; ++m) ties_.push_back(ties_decomposition(ext_.men_prefs[m]).blocks);
        const int E = ext_.edge_count();
        edge_man_.resize(E);
        edge_woman_.resize(E);
        man_pos_at_woman_.resize(E);
        for (int e = 0; e < E; ++e) {
            auto [m, w] = ext_.edges[e];
            edge_man_[e] = m;
            edge_woman_[e] = w;
            man_pos_at_woman_[e] = ext_.women_prefs[w].position_of(m);
        }
        woman_edges_.assign(ext_.woman_count(), {});
        man_edges_.assign(U, {});
        for (int e = 0; e < E; ++e) {
            woman_edges_[edge_woman_[e]].push_back(e);
            man_edges_[edge_man_[e]].push_back(e);
        }
        status_.assign(E, EdgeStatus::Inactive);
        carried_.assign(E, false);
        incomp_done_.assign(E, false);
        man_tie_.assign(U, -1);
        active_count_.assign(U, 0);
        ever_active_.assign(ext_.woman_count(), false);
        in_queue_.assign(U, false);
        prev_match_.left_match.assign(U, -1);
        prev_match_.right_match.assign(ext_.woman_count(), -1);
    }

    const Instance& original() const { return orig_; }
    const Instance& extended() const { return ext_; }
    EdgeStatus edge_status(int m, int w) const { return status_[ext_.edge_id(m, w)]; }
    int active_count(int m) const { return active_count_[m]; }
    bool woman_ever_active(int w) const { return ever_active_[w]; }
    bool queue_empty() const { return queue_.empty(); }
    const StrongTrace& trace() const { return trace_; }

    bool someone_needs_proposals() const {
        for (int u : man_order_)
            if (active_count_[u] == 0 && man_tie_[u] + 1 < static_cast<int>(ties_[u].size())) return true;
        return false;
    }

    // One proposal round: every man with no active edge steps
    // down to his next tie and proposes along all of its edges, then each new
    // proposal edge uw rejects every u'w that uw is strictly preferred to.
    void phase1_round() {
        std::vector<int> need;
        for (int u : man_order_)
            if (active_count_[u] == 0 && man_tie_[u] + 1 < static_cast<int>(ties_[u].size())) need.push_back(u);
        std::vector<int> new_props;
        for (int u : need) {
            ++man_tie_[u];
            StrongPropose ev{ext_.men[u], man_tie_[u], {}};
            for (int w : ties_[u][man_tie_[u]]) {
                int e = ext_.edge_id(u, w);
                assert(!carried_[e]);  // each edge proposed along at most once
                carried_[e] = true;
                // a previously rejected edge carries the proposal without
                // becoming active
                if (status_[e] == EdgeStatus::Inactive) {
                    status_[e] = EdgeStatus::Active;
                    ++active_count_[u];
                    ever_active_[w] = true;
                }
                new_props.push_back(e);
                ev.edges.emplace_back(ext_.men[u], ext_.women[w]);
            }
            trace_.push_back(std::move(ev));
            enqueue(u);
        }
        for (int e : new_props) {
            int u = edge_man_[e], w = edge_woman_[e];
            const Relation& rw = ext_.women_prefs[w];
            int pu = man_pos_at_woman_[e];
            for (int e2 : woman_edges_[w]) {
                if (e2 == e || status_[e2] == EdgeStatus::Rejected) continue;
                if (rw.value_at(pu, man_pos_at_woman_[e2]) == RelationValue::StrictPref)
                    if (reject(e2))
                        trace_.push_back(StrongRejectStrict{{ext_.men[u], ext_.women[w]},
                                                            {ext_.men[edge_man_[e2]], ext_.women[w]}});
            }
        }
    }

    // Rejection cascade: drains the worklist; a man holding at most one active edge
    // causes every edge incomparable to his at the shared woman to be
    // rejected. Each edge triggers its incomparable-rejection sweep at most
    // once.
    void strong_reject() {
        while (!queue_.empty()) {
            int u = queue_.front();
            queue_.pop_front();
            in_queue_[u] = false;
            if (active_count_[u] == 1) {
                for (int e : man_edges_[u])
                    if (status_[e] == EdgeStatus::Active) {
                        incomp_sweep(u, e);
                        break;
                    }
            } else if (active_count_[u] == 0 && man_tie_[u] >= 0) {
                for (int w : ties_[u][man_tie_[u]]) incomp_sweep(u, ext_.edge_id(u, w));
            }
        }
    }

    StrongResult run() {
        while (true) {
            while (someone_needs_proposals()) {
                phase1_round();
                strong_reject();
            }
            // every man now holds an active edge (his dummy in the worst case)
            for (int u = 0; u < ext_.man_count(); ++u) assert(active_count_[u] > 0);

            BipartiteGraph ga = active_graph();
            const BMatching* warm = nullptr;
            BMatching warm_storage;
            if (have_prev_ && rejections_since_match_ < ext_.man_count()) {
                warm_storage = prev_match_;
                filter_to_active(warm_storage);
                warm = &warm_storage;
            }
            BMatching mm = max_matching(ga, warm);
            prev_match_ = mm;
            have_prev_ = true;
            rejections_since_match_ = 0;

            std::vector<int> crit = critical_set(ga, mm);
            if (!crit.empty()) {
                StrongPhase2 ev;
                for (int u : crit) ev.critical.push_back(ext_.men[u]);
                trace_.push_back(std::move(ev));
                for (int u : crit) {
                    StrongRejectCritical rev{ext_.men[u], {}};
                    std::vector<int> to_reject;
                    for (int e : man_edges_[u])
                        if (status_[e] == EdgeStatus::Active) to_reject.push_back(e);
                    for (int e : to_reject) {
                        assert(edge_woman_[e] < orig_.woman_count());  // dummy edges are never rejected
                        if (reject(e)) rev.edges.emplace_back(ext_.men[u], ext_.women[edge_woman_[e]]);
                    }
                    trace_.push_back(std::move(rev));
                }
                strong_reject();
                continue;
            }

            // critical set empty: the maximum matching covers all men
            assert(mm.size == ext_.man_count());
            for (int w = 0; w < ext_.woman_count(); ++w)
                if (ever_active_[w] && mm.right_match[w] == -1) return {std::nullopt, trace_};
            std::vector<std::pair<int, int>> pairs;
            for (int u = 0; u < ext_.man_count(); ++u)
                if (mm.left_match[u] != -1 && mm.left_match[u] < orig_.woman_count())
                    pairs.emplace_back(u, mm.left_match[u]);
            return {Matching::from_pairs(orig_, std::move(pairs)), trace_};
        }
    }

private:
    void enqueue(int u) {
        if (!in_queue_[u]) {
            in_queue_[u] = true;
            queue_.push_back(u);
        }
    }

    // returns true when the edge actually transitioned to Rejected
    bool reject(int e) {
        if (status_[e] == EdgeStatus::Rejected) return false;
        bool was_active = status_[e] == EdgeStatus::Active;
        status_[e] = EdgeStatus::Rejected;
        ++rejections_since_match_;
        if (was_active) {
            --active_count_[edge_man_[e]];
            enqueue(edge_man_[e]);
        }
        return true;
    }

    void incomp_sweep(int u, int e) {
        if (incomp_done_[e]) return;
        incomp_done_[e] = true;
        int w = edge_woman_[e];
        const Relation& rw = ext_.women_prefs[w];
        int pu = man_pos_at_woman_[e];
        for (int e2 : woman_edges_[w]) {
            if (e2 == e || edge_man_[e2] == u || status_[e2] == EdgeStatus::Rejected) continue;
            if (rw.value_at(man_pos_at_woman_[e2], pu) == RelationValue::Incomparable)
                if (reject(e2))
                    trace_.push_back(
                        StrongRejectIncomparable{ext_.men[u], {ext_.men[edge_man_[e2]], ext_.women[w]}});
        }
    }

    BipartiteGraph active_graph() const {
        BipartiteGraph g;
        g.left = ext_.man_count();
        g.right = ext_.woman_count();
        g.adj.assign(g.left, {});
        for (int e = 0; e < ext_.edge_count(); ++e)
            if (status_[e] == EdgeStatus::Active) g.adj[edge_man_[e]].push_back(edge_woman_[e]);
        return g;
    }

    void filter_to_active(BMatching& m) const {
        m.size = 0;
        for (int u = 0; u < ext_.man_count(); ++u) {
            int w = m.left_match[u];
            if (w == -1) continue;
            int e = ext_.edge_id(u, w);
            if (status_[e] != EdgeStatus::Active) {
                m.left_match[u] = -1;
                m.right_match[w] = -1;
            } else {
                ++m.size;
            }
        }
    }

    Instance orig_;
    Instance ext_;
    std::vector<int> man_order_;
    std::vector<std::vector<std::vector<int>>> ties_;  // per man: tie blocks, dummy last
    std::vector<int> edge_man_, edge_woman_, man_pos_at_woman_;
    std::vector<std::vector<int>> woman_edges_, man_edges_;
    std::vector<EdgeStatus> status_;
    std::vector<bool> carried_, incomp_done_;
    std::vector<int> man_tie_, active_count_;
    std::vector<bool> ever_active_;
    std::deque<int> queue_;
    std::vector<bool> in_queue_;
    StrongTrace trace_;
    BMatching prev_match_;
    bool have_prev_ = false;
    int rejections_since_match_ = 0;
};

inline StrongResult solve_strong(const Instance& inst, std::vector<int> man_order = {}) {
    return StrongEngine(inst, std::move(man_order)).run();
}

}  // namespace pairpref
