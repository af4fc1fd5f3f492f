#include "support/fixtures.hpp"

#include <algorithm>
#include <set>

namespace hgmst::testing {

GadgetPoint triangle_pendant() {
    GadgetPoint g;
    g.h.n = 4;
    g.h.edges = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    g.h.weights = {1.0, 1.0, 1.0, 1.0};
    g.x.x = {0.9, 0.9, 0.9, 0.3};
    return g;
}

Hypergraph triple_gadget() {
    Hypergraph h;
    h.n = 3;
    h.edges = {{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
    h.weights = {1.0, 1.0, 1.0, 1.9};
    return h;
}

Hypergraph random_instance(std::uint64_t seed, int n, int extra_edges) {
    Rng rng(seed);
    Hypergraph h;
    h.n = n;
    std::set<std::vector<int>> seen;

    auto add_edge = [&](std::vector<int> e, double w) {
        std::sort(e.begin(), e.end());
        if (!seen.insert(e).second) return;
        h.edges.push_back(std::move(e));
        h.weights.push_back(w);
    };

    // spanning tree: each step attaches all-new vertices plus one old one,
    // so every tree edge merges exactly |e| components
    int attached = 1;
    while (attached < n) {
        const int fresh = (n - attached >= 2 && rng.below(3) == 0) ? 2 : 1;
        std::vector<int> e;
        e.push_back(rng.below(attached));
        for (int k = 0; k < fresh; ++k) e.push_back(attached + k);
        add_edge(std::move(e), rng.range(0.5, 1.5));
        attached += fresh;
    }

    for (int k = 0; k < extra_edges; ++k) {
        const int size = (n >= 3 && rng.below(2) == 0) ? 3 : 2;
        std::vector<int> e;
        while (static_cast<int>(e.size()) < size) {
            int v = rng.below(n);
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        add_edge(std::move(e), rng.range(0.3, 1.8));
    }
    h.validate();
    return h;
}

FractionalSolution push_mass(const Hypergraph& h, const FractionalSolution& x0,
                             std::uint64_t seed, int rounds) {
    Rng rng(seed);
    FractionalSolution x = x0;
    const int m = h.edge_count();
    if (m < 2 || h.n < 3) return x;

    const int subset_size = 2 + rng.below(std::max(1, h.n - 2));
    std::vector<char> in_s(h.n, 0);
    for (int c = 0; c < subset_size;) {
        int v = rng.below(h.n);
        if (!in_s[v]) {
            in_s[v] = 1;
            ++c;
        }
    }
    auto inside = [&](int j) {
        int cnt = 0;
        for (int v : h.edges[j]) cnt += in_s[v] ? 1 : 0;
        return cnt >= 2;
    };

    for (int r = 0; r < rounds; ++r) {
        const int a = rng.below(m);
        const int b = rng.below(m);
        if (a == b || !inside(a) || inside(b)) continue;
        const double ca = static_cast<double>(h.edges[a].size()) - 1.0;
        const double cb = static_cast<double>(h.edges[b].size()) - 1.0;
        // transfer degree mass b -> a, preserving sum (|e|-1) x_e exactly
        double delta = std::min((1.0 - x.x[a]) * ca, x.x[b] * cb);
        delta *= rng.range(0.3, 1.0);
        if (delta <= 0) continue;
        x.x[a] += delta / ca;
        x.x[b] -= delta / cb;
        x.x[a] = std::min(x.x[a], 1.0);
        x.x[b] = std::max(x.x[b], 0.0);
    }
    return x;
}

}  // namespace hgmst::testing
