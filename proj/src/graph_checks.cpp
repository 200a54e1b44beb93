#include "wbl/graph_checks.hpp"

#include <algorithm>

namespace wbl {

namespace {

std::vector<std::vector<int>> build_adj(int m,
                                        const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(m);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

bool ham_dfs(const std::vector<std::vector<int>>& adj, std::vector<char>& used,
             int cur, int count, int m) {
    if (count == m)
        return std::find(adj[cur].begin(), adj[cur].end(), 0) != adj[cur].end();
    for (int w : adj[cur]) {
        if (used[w]) continue;
        used[w] = 1;
        if (ham_dfs(adj, used, w, count + 1, m)) return true;
        used[w] = 0;
    }
    return false;
}

// path of length `left` from cur back to root, all interior vertices > root
bool ck_dfs(const std::vector<std::vector<int>>& adj, std::vector<char>& used,
            int root, int cur, int left) {
    if (left == 0)
        return std::find(adj[cur].begin(), adj[cur].end(), root) != adj[cur].end();
    for (int w : adj[cur]) {
        if (w <= root || used[w]) continue;
        used[w] = 1;
        if (ck_dfs(adj, used, root, w, left - 1)) return true;
        used[w] = 0;
    }
    return false;
}

} // namespace

bool is_hamiltonian(int m, const std::vector<std::pair<int, int>>& edges) {
    if (m < 3) return false;
    auto adj = build_adj(m, edges);
    for (int v = 0; v < m; ++v)
        if ((int)adj[v].size() < 2) return false;
    std::vector<char> used(m, 0);
    used[0] = 1;
    return ham_dfs(adj, used, 0, 1, m);
}

bool contains_cycle_k(int m, const std::vector<std::pair<int, int>>& edges,
                      int k) {
    if (k < 3 || m < k) return false;
    auto adj = build_adj(m, edges);
    std::vector<char> used(m, 0);
    for (int root = 0; root + k <= m + 0; ++root) {
        used[root] = 1;
        if (ck_dfs(adj, used, root, root, k - 1)) return true;
        used[root] = 0;
    }
    return false;
}

} // namespace wbl
