#include "hgmst/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace hgmst {

namespace {

struct UnionFind {
    std::vector<int> parent;
    int groups;
    explicit UnionFind(int n) : parent(n), groups(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        --groups;
        return true;
    }
};

int edge_degree_sum(const Hypergraph& h, const std::vector<int>& t) {
    int s = 0;
    for (int j : t) s += static_cast<int>(h.edges[j].size()) - 1;
    return s;
}

}  // namespace

bool is_spanning_tree(const Hypergraph& h, const std::vector<int>& t) {
    if (edge_degree_sum(h, t) != h.n - 1) return false;
    UnionFind uf(h.n);
    for (int j : t) {
        const auto& e = h.edges[j];
        for (size_t i = 1; i < e.size(); ++i) uf.unite(e[0], e[i]);
    }
    return uf.groups == 1;
}

TreeCertificate brute_force_mst(const Hypergraph& h) {
    if (h.edge_count() > 25)
        throw std::invalid_argument("brute_force_mst: too many edges");
    const int target = h.n - 1;
    double best_weight = 0.0;
    std::vector<int> best;
    bool found = false;
    std::vector<int> current;

    // include-first DFS in index order: the first tree found at any given
    // weight is the lexicographically smallest edge set with that weight
    auto rec = [&](auto&& self, int idx, int count, double weight) -> void {
        if (found && weight >= best_weight) return;
        if (count == target) {
            if (is_spanning_tree(h, current)) {
                best = current;
                best_weight = weight;
                found = true;
            }
            return;
        }
        if (idx >= h.edge_count()) return;
        const int gain = static_cast<int>(h.edges[idx].size()) - 1;
        if (count + gain <= target) {
            current.push_back(idx);
            self(self, idx + 1, count + gain, weight + h.weights[idx]);
            current.pop_back();
        }
        self(self, idx + 1, count, weight);
    };
    rec(rec, 0, 0, 0.0);

    if (!found) throw InfeasibleError("no spanning tree exists");
    TreeCertificate cert;
    cert.edges = best;
    cert.weight = best_weight;
    cert.component_count = 1;
    return cert;
}

namespace {

// one randomized greedy pass; returns a spanning tree edge set or empty
std::vector<int> greedy_random_tree(const Hypergraph& h,
                                    std::mt19937_64& rng) {
    std::vector<int> order(h.edge_count());
    std::iota(order.begin(), order.end(), 0);
    for (int i = h.edge_count() - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }
    UnionFind uf(h.n);
    std::vector<int> tree;
    int count = 0;
    for (int j : order) {
        const auto& e = h.edges[j];
        const int gain = static_cast<int>(e.size()) - 1;
        if (count + gain > h.n - 1) continue;
        // accept only when the edge merges exactly |e| previously distinct
        // components, so sum(|e|-1) stays equal to components merged
        std::vector<int> roots;
        for (int v : e) roots.push_back(uf.find(v));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        if (static_cast<int>(roots.size()) != static_cast<int>(e.size()))
            continue;
        for (size_t i = 1; i < e.size(); ++i) uf.unite(e[i], e[0]);
        count += gain;
        tree.push_back(j);
        if (count == h.n - 1) break;
    }
    if (count == h.n - 1 && uf.groups == 1) {
        std::sort(tree.begin(), tree.end());
        return tree;
    }
    return {};
}

}  // namespace

FractionalSolution random_degree_feasible_x(const Hypergraph& h,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int want = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<int>> trees;
    for (int attempt = 0; attempt < 200 && static_cast<int>(trees.size()) < want;
         ++attempt) {
        auto t = greedy_random_tree(h, rng);
        if (!t.empty()) trees.push_back(std::move(t));
    }
    if (trees.empty()) {
        if (h.edge_count() <= 25) {
            trees.push_back(brute_force_mst(h).edges);
        } else {
            throw InfeasibleError(
                "random_degree_feasible_x: no spanning tree found");
        }
    }

    std::vector<double> lambda(trees.size());
    double total = 0.0;
    for (auto& l : lambda) {
        // uniform in (0,1]; bit-twiddled for cross-platform determinism
        l = ((rng() >> 11) + 1.0) * 0x1.0p-53;
        total += l;
    }
    FractionalSolution x;
    x.x.assign(h.edge_count(), 0.0);
    for (size_t i = 0; i < trees.size(); ++i)
        for (int j : trees[i]) x.x[j] += lambda[i] / total;
    return x;
}

}  // namespace hgmst
