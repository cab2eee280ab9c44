#pragma once

#include <algorithm>
#include <vector>

namespace pairpref {

struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::vector<int>> adj;  // adj[l] = right neighbors, sorted

    static BipartiteGraph from_edges(int left, int right, const std::vector<std::pair<int, int>>& edges) {
        BipartiteGraph g;
        g.left = left;
        g.right = right;
        g.adj.assign(left, {});
        for (auto [l, r] : edges) g.adj[l].push_back(r);
        for (auto& a : g.adj) std::sort(a.begin(), a.end());
        return g;
    }
};

struct BMatching {
    std::vector<int> left_match;   // -1 = uncovered
    std::vector<int> right_match;
    int size = 0;
};

namespace detail {

inline bool augment_from(const BipartiteGraph& g, BMatching& m, int u, std::vector<int>& visited, int stamp) {
    for (int w : g.adj[u]) {
        if (visited[w] == stamp) continue;
        visited[w] = stamp;
        if (m.right_match[w] == -1 || augment_from(g, m, m.right_match[w], visited, stamp)) {
            m.left_match[u] = w;
            m.right_match[w] = u;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Maximum-cardinality matching by augmenting paths; a warm-start matching, when
// given, is augmented rather than discarded.
inline BMatching max_matching(const BipartiteGraph& g, const BMatching* warm = nullptr) {
    BMatching m;
    if (warm) {
        m = *warm;
    } else {
        m.left_match.assign(g.left, -1);
        m.right_match.assign(g.right, -1);
        m.size = 0;
    }
    std::vector<int> visited(g.right, -1);
    int stamp = 0;
    for (int u = 0; u < g.left; ++u) {
        if (m.left_match[u] != -1) continue;
        if (detail::augment_from(g, m, u, visited, stamp++)) ++m.size;
    }
    return m;
}

// Left vertices uncovered by the maximum matching plus those reachable from an
// uncovered one via an alternating path; equals the unique minimal subset of
// maximum deficiency.
inline std::vector<int> critical_set(const BipartiteGraph& g, const BMatching& m) {
    std::vector<bool> left_seen(g.left, false), right_seen(g.right, false);
    std::vector<int> queue;
    for (int u = 0; u < g.left; ++u)
        if (m.left_match[u] == -1) {
            left_seen[u] = true;
            queue.push_back(u);
        }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int w : g.adj[u]) {
            if (right_seen[w]) continue;
            right_seen[w] = true;
            int u2 = m.right_match[w];
            if (u2 != -1 && !left_seen[u2]) {
                left_seen[u2] = true;
                queue.push_back(u2);
            }
        }
    }
    std::vector<int> out;
    for (int u = 0; u < g.left; ++u)
        if (left_seen[u]) out.push_back(u);
    return out;
}

}  // namespace pairpref
