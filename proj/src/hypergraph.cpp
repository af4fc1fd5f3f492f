#include "hgmst/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hgmst {

void Hypergraph::validate() const {
    if (n < 0) throw std::invalid_argument("vertex count negative");
    if (weights.size() != edges.size())
        throw std::invalid_argument("weights length != edges length");
    for (size_t j = 0; j < edges.size(); ++j) {
        const auto& e = edges[j];
        if (static_cast<int>(e.size()) < 2 || static_cast<int>(e.size()) > n)
            throw std::invalid_argument("edge " + std::to_string(j) +
                                        ": size out of range");
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n)
                throw std::invalid_argument("edge " + std::to_string(j) +
                                            ": vertex out of range");
            if (i > 0 && e[i] <= e[i - 1])
                throw std::invalid_argument("edge " + std::to_string(j) +
                                            ": not strictly sorted");
        }
        if (!(weights[j] >= 0.0) || !std::isfinite(weights[j]))
            throw std::invalid_argument("edge " + std::to_string(j) +
                                        ": bad weight");
    }
}

bool VertexSubset::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

VertexSubset VertexSubset::complement() const {
    VertexSubset c;
    c.n = n;
    c.members.reserve(n - size());
    size_t i = 0;
    for (int v = 0; v < n; ++v) {
        if (i < members.size() && members[i] == v) {
            ++i;
        } else {
            c.members.push_back(v);
        }
    }
    return c;
}

std::vector<char> VertexSubset::mask() const {
    std::vector<char> m(n, 0);
    for (int v : members) m[v] = 1;
    return m;
}

VertexSubset VertexSubset::of(std::vector<int> members, int n) {
    std::sort(members.begin(), members.end());
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i] < 0 || members[i] >= n)
            throw std::invalid_argument("subset member out of range");
        if (i > 0 && members[i] == members[i - 1])
            throw std::invalid_argument("duplicate subset member");
    }
    VertexSubset s;
    s.members = std::move(members);
    s.n = n;
    return s;
}

VertexSubset VertexSubset::from_mask(const std::vector<char>& mask) {
    VertexSubset s;
    s.n = static_cast<int>(mask.size());
    for (int v = 0; v < s.n; ++v)
        if (mask[v]) s.members.push_back(v);
    return s;
}

std::vector<int> delta(const Hypergraph& h, const VertexSubset& s) {
    const auto m = s.mask();
    std::vector<int> out;
    for (int j = 0; j < h.edge_count(); ++j) {
        size_t in = 0;
        for (int v : h.edges[j]) in += m[v] ? 1 : 0;
        if (in > 0 && in < h.edges[j].size()) out.push_back(j);
    }
    return out;
}

double weight_within(const Hypergraph& h, const FractionalSolution& x,
                     const VertexSubset& s) {
    const auto m = s.mask();
    double total = 0.0;
    for (int j = 0; j < h.edge_count(); ++j) {
        int in = 0;
        for (int v : h.edges[j]) in += m[v] ? 1 : 0;
        if (in >= 2) total += (in - 1) * x.x[j];
    }
    return total;
}

double cut_weight(const Hypergraph& h, const FractionalSolution& x,
                  const VertexSubset& s, const VertexSubset& t) {
    const auto ms = s.mask();
    const auto mt = t.mask();
    for (int v = 0; v < s.n; ++v)
        if (ms[v] && mt[v])
            throw std::invalid_argument("cut_weight: overlapping subsets");
    double total = 0.0;
    for (int j = 0; j < h.edge_count(); ++j) {
        bool hits_s = false, hits_t = false;
        for (int v : h.edges[j]) {
            hits_s = hits_s || ms[v];
            hits_t = hits_t || mt[v];
        }
        if (hits_s && hits_t) total += x.x[j];
    }
    return total;
}

double violation_deficit(const Hypergraph& h, const FractionalSolution& x,
                         const VertexSubset& s) {
    if (s.size() < 2)
        throw std::invalid_argument("violation_deficit: |S| < 2");
    return s.size() - weight_within(h, x, s);
}

double incident_weight(const Hypergraph& h, const FractionalSolution& x,
                       int v) {
    double b = 0.0;
    for (int j = 0; j < h.edge_count(); ++j) {
        if (std::binary_search(h.edges[j].begin(), h.edges[j].end(), v))
            b += x.x[j];
    }
    return b;
}

SupportResult support_hypergraph(const Hypergraph& h,
                                 const FractionalSolution& x, double eps) {
    SupportResult r;
    r.h.n = h.n;
    for (int j = 0; j < h.edge_count(); ++j) {
        if (x.x[j] > eps) {
            r.h.edges.push_back(h.edges[j]);
            r.h.weights.push_back(h.weights[j]);
            r.edge_map.push_back(j);
        }
    }
    return r;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ComponentDecomposition connected_components(const Hypergraph& h) {
    UnionFind uf(h.n);
    for (const auto& e : h.edges)
        for (size_t i = 1; i < e.size(); ++i) uf.unite(e[0], e[i]);

    ComponentDecomposition d;
    d.component_of.assign(h.n, -1);
    std::vector<int> root_to_comp(h.n, -1);
    for (int v = 0; v < h.n; ++v) {
        int r = uf.find(v);
        if (root_to_comp[r] < 0) {
            root_to_comp[r] = static_cast<int>(d.components.size());
            d.components.emplace_back();
        }
        d.component_of[v] = root_to_comp[r];
        d.components[root_to_comp[r]].push_back(v);
    }
    return d;
}

ComponentDecomposition biconnected_components(const Hypergraph& h) {
    // bipartite incidence graph: nodes 0..n-1 are vertices, n..n+m-1 edges
    const int n = h.n;
    const int m = h.edge_count();
    const int total = n + m;
    std::vector<std::vector<int>> adj(total);
    for (int j = 0; j < m; ++j) {
        for (int v : h.edges[j]) {
            adj[v].push_back(n + j);
            adj[n + j].push_back(v);
        }
    }

    // iterative Tarjan block decomposition with an edge stack
    std::vector<int> disc(total, -1), low(total, 0);
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<std::vector<int>> raw_blocks;  // incidence-node sets
    int timer = 0;

    struct Frame {
        int u;
        int parent;
        size_t next_child;
    };
    std::vector<Frame> stack;

    auto pop_block = [&](int u, int v) {
        std::vector<int> nodes;
        std::vector<char> seen(total, 0);
        while (!edge_stack.empty()) {
            auto [a, b] = edge_stack.back();
            edge_stack.pop_back();
            for (int w : {a, b}) {
                if (!seen[w]) {
                    seen[w] = 1;
                    nodes.push_back(w);
                }
            }
            if ((a == u && b == v) || (a == v && b == u)) break;
        }
        raw_blocks.push_back(std::move(nodes));
    };

    for (int start = 0; start < total; ++start) {
        if (disc[start] >= 0 || adj[start].empty()) continue;
        stack.push_back({start, -1, 0});
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next_child < adj[f.u].size()) {
                int w = adj[f.u][f.next_child++];
                if (w == f.parent) continue;
                if (disc[w] < 0) {
                    edge_stack.emplace_back(f.u, w);
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.u, 0});
                } else if (disc[w] < disc[f.u]) {
                    edge_stack.emplace_back(f.u, w);
                    low[f.u] = std::min(low[f.u], disc[w]);
                }
            } else {
                int u = f.u;
                int parent = f.parent;
                stack.pop_back();
                if (parent >= 0) {
                    low[parent] = std::min(low[parent], low[u]);
                    if (low[u] >= disc[parent]) pop_block(parent, u);
                }
            }
        }
    }

    // merge raw blocks sharing a hyperedge node; a hyperedge is an atomic
    // connector, so per the vertex-removal definition those parts are one
    // biconnected component of the hypergraph
    UnionFind uf(static_cast<int>(raw_blocks.size()));
    std::vector<int> edge_block(m, -1);
    for (size_t b = 0; b < raw_blocks.size(); ++b) {
        for (int node : raw_blocks[b]) {
            if (node < n) continue;
            int j = node - n;
            if (edge_block[j] < 0) {
                edge_block[j] = static_cast<int>(b);
            } else {
                uf.unite(edge_block[j], static_cast<int>(b));
            }
        }
    }

    std::vector<std::vector<int>> merged_vertices(raw_blocks.size());
    std::vector<std::vector<int>> merged_edges(raw_blocks.size());
    for (size_t b = 0; b < raw_blocks.size(); ++b) {
        int r = uf.find(static_cast<int>(b));
        for (int node : raw_blocks[b]) {
            if (node < n) {
                merged_vertices[r].push_back(node);
            } else {
                merged_edges[r].push_back(node - n);
            }
        }
    }

    ComponentDecomposition d;
    d.component_of.assign(h.n, 0);
    {
        std::vector<int> all(h.n);
        std::iota(all.begin(), all.end(), 0);
        d.components.push_back(std::move(all));
    }

    std::vector<size_t> roots;
    for (size_t b = 0; b < raw_blocks.size(); ++b)
        if (uf.find(static_cast<int>(b)) == static_cast<int>(b) &&
            !merged_vertices[b].empty())
            roots.push_back(b);

    for (size_t r : roots) {
        auto& vs = merged_vertices[r];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        auto& es = merged_edges[r];
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
    }
    std::sort(roots.begin(), roots.end(), [&](size_t a, size_t b) {
        return merged_vertices[a] < merged_vertices[b];
    });

    std::vector<int> block_count(h.n, 0);
    for (size_t r : roots) {
        for (int v : merged_vertices[r]) ++block_count[v];
        d.blocks.push_back(merged_vertices[r]);
        d.block_edges.push_back(merged_edges[r]);
    }

    // vertices incident to no edge form their own trivial blocks
    std::vector<char> covered(h.n, 0);
    for (const auto& blk : d.blocks)
        for (int v : blk) covered[v] = 1;
    for (int v = 0; v < h.n; ++v) {
        if (!covered[v]) {
            d.blocks.push_back({v});
            d.block_edges.emplace_back();
        }
    }

    for (int v = 0; v < h.n; ++v)
        if (block_count[v] >= 2) d.articulation_vertices.push_back(v);
    return d;
}

InducedResult induced_subhypergraph(const Hypergraph& h,
                                    const FractionalSolution& x,
                                    const VertexSubset& s) {
    if (s.size() < 1)
        throw std::invalid_argument("induced_subhypergraph: empty subset");
    InducedResult r;
    r.vertex_map = s.members;
    r.h.n = s.size();
    std::vector<int> new_id(h.n, -1);
    for (int i = 0; i < s.size(); ++i) new_id[s.members[i]] = i;
    for (int j = 0; j < h.edge_count(); ++j) {
        std::vector<int> reduced;
        for (int v : h.edges[j])
            if (new_id[v] >= 0) reduced.push_back(new_id[v]);
        if (reduced.size() >= 2) {
            r.h.edges.push_back(std::move(reduced));
            r.h.weights.push_back(h.weights[j]);
            r.x.x.push_back(x.x[j]);
            r.edge_map.push_back(j);
        }
    }
    return r;
}

}  // namespace hgmst
