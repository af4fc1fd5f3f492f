#include "hgmst/separation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace hgmst {

namespace {

void check_pair(const Hypergraph& h, const FractionalSolution& x) {
    if (static_cast<int>(x.x.size()) != h.edge_count())
        throw std::invalid_argument("solution length does not match edge count");
}

std::vector<double> all_incident(const Hypergraph& h,
                                 const FractionalSolution& x) {
    std::vector<double> b(h.n, 0.0);
    for (int j = 0; j < h.edge_count(); ++j)
        for (int v : h.edges[j]) b[v] += x.x[j];
    return b;
}

ReducedProblem compose(const ReducedProblem& parent, InducedResult ind) {
    ReducedProblem out;
    out.h = std::move(ind.h);
    out.x = std::move(ind.x);
    out.vertex_map.reserve(ind.vertex_map.size());
    for (int v : ind.vertex_map) out.vertex_map.push_back(parent.vertex_map[v]);
    out.edge_map.reserve(ind.edge_map.size());
    for (int e : ind.edge_map) out.edge_map.push_back(parent.edge_map[e]);
    return out;
}

ReducedProblem identity_problem(const Hypergraph& h,
                                const FractionalSolution& x) {
    ReducedProblem p;
    p.h = h;
    p.x = x;
    p.vertex_map.resize(h.n);
    for (int v = 0; v < h.n; ++v) p.vertex_map[v] = v;
    p.edge_map.resize(h.edge_count());
    for (int j = 0; j < h.edge_count(); ++j) p.edge_map[j] = j;
    return p;
}

ReducedProblem reduce_within(const ReducedProblem& p) {
    auto [rp, removed] = reduce_single_vertex(p.h, p.x);
    (void)removed;
    ReducedProblem out;
    out.h = std::move(rp.h);
    out.x = std::move(rp.x);
    for (int v : rp.vertex_map) out.vertex_map.push_back(p.vertex_map[v]);
    for (int e : rp.edge_map) out.edge_map.push_back(p.edge_map[e]);
    return out;
}

// Fixed point of reduction + component split (+ block split when use_blocks).
// Block splitting is reserved for the per-piece (biased) search: pieces that
// share articulation vertices cannot be reassembled into the disjoint union
// the unbiased search cuts across.
void decompose_work(const ReducedProblem& p, bool use_blocks,
                    std::vector<ReducedProblem>& out) {
    ReducedProblem red = reduce_within(p);
    if (red.h.n < 2 || red.h.edge_count() == 0) return;
    auto cc = connected_components(red.h);
    if (cc.components.size() > 1) {
        for (const auto& comp : cc.components) {
            if (static_cast<int>(comp.size()) < 2) continue;
            auto ind = induced_subhypergraph(red.h, red.x,
                                             VertexSubset::of(comp, red.h.n));
            decompose_work(compose(red, std::move(ind)), use_blocks, out);
        }
        return;
    }
    if (use_blocks) {
        auto bc = biconnected_components(red.h);
        if (bc.blocks.size() > 1) {
            for (const auto& blk : bc.blocks) {
                if (static_cast<int>(blk.size()) < 2) continue;
                auto ind = induced_subhypergraph(
                    red.h, red.x, VertexSubset::of(blk, red.h.n));
                decompose_work(compose(red, std::move(ind)), use_blocks, out);
            }
            return;
        }
    }
    out.push_back(std::move(red));
}

// min over root-containing S of f(S) via one max-flow; asserts the cut value
// against the direct deficit formula
std::pair<std::vector<int>, double> min_deficit_cut(
    const Hypergraph& h, const FractionalSolution& x, int root) {
    auto [net, offset] = build_violation_network(h, x, root);
    auto mf = max_flow(net);
    std::vector<int> members;
    for (int v = 0; v < h.n; ++v)
        if (mf.source_side[v]) members.push_back(v);
    const double fmin = mf.value - offset;
    const double direct =
        static_cast<double>(members.size()) -
        weight_within(h, x, VertexSubset::of(members, h.n));
    if (std::abs(direct - fmin) > 1e-8)
        throw std::logic_error("min-cut disagrees with the deficit identity");
    return {std::move(members), fmin};
}

struct Recorder {
    SeparationResult* out;
    int ambient_n;
    std::set<std::vector<int>> seen;

    void add(std::vector<int> members, double violation) {
        VertexSubset s = VertexSubset::of(std::move(members), ambient_n);
        if (!s.valid_subtour_size()) return;
        out->max_violation = std::max(out->max_violation, violation);
        if (!seen.insert(s.members).second) return;
        out->violated.push_back({std::move(s), violation});
    }
};

}  // namespace

std::pair<ReducedProblem, std::vector<int>> reduce_single_vertex(
    const Hypergraph& h, const FractionalSolution& x) {
    check_pair(h, x);
    auto sup = support_hypergraph(h, x);
    FractionalSolution xs;
    xs.x.reserve(sup.edge_map.size());
    for (int j : sup.edge_map) xs.x.push_back(x.x[j]);

    const int n = h.n;
    const int ms = sup.h.edge_count();
    std::vector<char> alive(n, 1);
    std::vector<int> live_count(ms);
    std::vector<std::vector<int>> incident(n);
    for (int j = 0; j < ms; ++j) {
        live_count[j] = static_cast<int>(sup.h.edges[j].size());
        for (int v : sup.h.edges[j]) incident[v].push_back(j);
    }
    std::vector<double> b(n, 0.0);
    for (int j = 0; j < ms; ++j)
        for (int v : sup.h.edges[j]) b[v] += xs.x[j];

    std::vector<int> removed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || b[v] > 1.0 + kBoundTol) continue;
            alive[v] = 0;
            removed.push_back(v);
            for (int j : incident[v]) {
                if (live_count[j] < 2) continue;  // already inactive
                if (--live_count[j] == 1) {
                    for (int u : sup.h.edges[j])
                        if (alive[u]) b[u] -= xs.x[j];
                }
            }
            changed = true;
            break;  // restart the scan from the lowest id
        }
    }

    std::vector<int> members;
    for (int v = 0; v < n; ++v)
        if (alive[v]) members.push_back(v);
    if (members.empty()) return {ReducedProblem{}, std::move(removed)};
    auto ind = induced_subhypergraph(sup.h, xs, VertexSubset::of(members, n));
    ReducedProblem out;
    out.h = std::move(ind.h);
    out.x = std::move(ind.x);
    out.vertex_map = std::move(ind.vertex_map);
    out.edge_map.reserve(ind.edge_map.size());
    for (int e : ind.edge_map) out.edge_map.push_back(sup.edge_map[e]);
    return {std::move(out), std::move(removed)};
}

std::vector<ReducedProblem> decompose(const Hypergraph& h,
                                      const FractionalSolution& x) {
    check_pair(h, x);
    std::vector<ReducedProblem> out;
    decompose_work(identity_problem(h, x), true, out);
    return out;
}

std::vector<ReducedProblem> decompose_components(const Hypergraph& h,
                                                 const FractionalSolution& x) {
    check_pair(h, x);
    std::vector<ReducedProblem> out;
    decompose_work(identity_problem(h, x), false, out);
    return out;
}

std::pair<FlowNetwork, double> build_violation_network(
    const Hypergraph& h, const FractionalSolution& x, int root) {
    check_pair(h, x);
    if (root < 0 || root >= h.n) throw std::invalid_argument("bad root");

    std::vector<int> sup;
    for (int j = 0; j < h.edge_count(); ++j)
        if (x.x[j] > kSupportEps) sup.push_back(j);
    auto b = all_incident(h, x);

    FlowNetwork net;
    const int es = static_cast<int>(sup.size());
    net.node_count = h.n + es + 2;
    net.source = h.n + es;
    net.sink = net.source + 1;

    double offset = 0.0, finite_total = 0.0;
    for (int v = 0; v < h.n; ++v) {
        if (b[v] > 1.0) {
            offset += b[v] - 1.0;
            finite_total += b[v] - 1.0;
        } else if (b[v] < 1.0) {
            finite_total += 1.0 - b[v];
        }
    }
    for (int t = 0; t < es; ++t) finite_total += x.x[sup[t]];
    const double inf_cap = finite_total + 1.0;

    for (int v = 0; v < h.n; ++v) {
        if (b[v] > 1.0) net.arcs.push_back({net.source, v, b[v] - 1.0});
        else if (b[v] < 1.0) net.arcs.push_back({v, net.sink, 1.0 - b[v]});
    }
    for (int t = 0; t < es; ++t) {
        const int enode = h.n + t;
        net.arcs.push_back({enode, net.sink, x.x[sup[t]]});
        for (int v : h.edges[sup[t]]) net.arcs.push_back({v, enode, inf_cap});
    }
    net.arcs.push_back({net.source, root, inf_cap});
    return {std::move(net), offset};
}

MaxFlowResult max_flow(const FlowNetwork& net) {
    struct Arc {
        int to;
        double cap;
        int rev;
    };
    std::vector<std::vector<Arc>> g(net.node_count);
    for (const auto& a : net.arcs) {
        if (a.from < 0 || a.from >= net.node_count || a.to < 0 ||
            a.to >= net.node_count || a.cap < 0)
            throw std::invalid_argument("bad arc");
        g[a.from].push_back({a.to, a.cap, static_cast<int>(g[a.to].size())});
        g[a.to].push_back({a.from, 0.0, static_cast<int>(g[a.from].size()) - 1});
    }

    const double eps = 1e-12;
    std::vector<int> level(net.node_count), it(net.node_count);
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::deque<int> q{net.source};
        level[net.source] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (const auto& a : g[u])
                if (a.cap > eps && level[a.to] < 0) {
                    level[a.to] = level[u] + 1;
                    q.push_back(a.to);
                }
        }
        return level[net.sink] >= 0;
    };
    std::function<double(int, double)> dfs = [&](int u, double lim) -> double {
        if (u == net.sink) return lim;
        for (int& i = it[u]; i < static_cast<int>(g[u].size()); ++i) {
            Arc& a = g[u][i];
            if (a.cap > eps && level[a.to] == level[u] + 1) {
                double got = dfs(a.to, std::min(lim, a.cap));
                if (got > eps) {
                    a.cap -= got;
                    g[a.to][a.rev].cap += got;
                    return got;
                }
            }
        }
        return 0.0;
    };

    MaxFlowResult out;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        while (true) {
            double got = dfs(net.source, std::numeric_limits<double>::max());
            if (got <= eps) break;
            out.value += got;
        }
    }
    out.source_side.assign(net.node_count, 0);
    std::deque<int> q{net.source};
    out.source_side[net.source] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (const auto& a : g[u])
            if (a.cap > eps && !out.source_side[a.to]) {
                out.source_side[a.to] = 1;
                q.push_back(a.to);
            }
    }
    return out;
}

SeparationResult separate_exact(const Hypergraph& h,
                                const FractionalSolution& x,
                                SeparationMode mode) {
    check_pair(h, x);
    SeparationResult out;
    Recorder rec{&out, h.n, {}};

    if (mode == SeparationMode::Biased) {
        std::deque<ReducedProblem> queue;
        for (auto& p : decompose(h, x)) {
            out.largest_component = std::max(out.largest_component, p.h.n);
            queue.push_back(std::move(p));
        }
        while (!queue.empty()) {
            ReducedProblem p = std::move(queue.front());
            queue.pop_front();
            if (p.h.n < 2 || p.h.edge_count() == 0) continue;
            auto b = all_incident(p.h, p.x);
            int root = 0;
            for (int v = 1; v < p.h.n; ++v)
                if (b[v] < b[root]) root = v;
            auto [members, fmin] = min_deficit_cut(p.h, p.x, root);
            ++out.oracle_calls;
            if (fmin < 1.0 - kViolationTol) {
                std::vector<int> orig;
                for (int v : members) orig.push_back(p.vertex_map[v]);
                rec.add(std::move(orig), 1.0 - fmin);
            }
            if (p.h.n >= 3) {
                std::vector<int> rest;
                for (int v = 0; v < p.h.n; ++v)
                    if (v != root) rest.push_back(v);
                auto ind = induced_subhypergraph(
                    p.h, p.x, VertexSubset::of(rest, p.h.n));
                std::vector<ReducedProblem> subs;
                decompose_work(compose(p, std::move(ind)), true, subs);
                for (auto& s : subs) queue.push_back(std::move(s));
            }
        }
        return out;
    }

    // unbiased: one flow network over the disjoint union of the pieces, so a
    // cut may span several of them
    std::vector<ReducedProblem> pieces = decompose_components(h, x);
    for (const auto& p : pieces)
        out.largest_component = std::max(out.largest_component, p.h.n);

    while (!pieces.empty()) {
        int best_piece = -1, best_local = -1, best_orig = 0;
        double best_b = std::numeric_limits<double>::max();
        std::vector<std::vector<double>> bs(pieces.size());
        for (size_t pi = 0; pi < pieces.size(); ++pi) {
            bs[pi] = all_incident(pieces[pi].h, pieces[pi].x);
            for (int v = 0; v < pieces[pi].h.n; ++v) {
                const int orig = pieces[pi].vertex_map[v];
                if (bs[pi][v] < best_b - 1e-15 ||
                    (bs[pi][v] <= best_b + 1e-15 && best_piece >= 0 &&
                     orig < best_orig)) {
                    best_b = bs[pi][v];
                    best_piece = static_cast<int>(pi);
                    best_local = v;
                    best_orig = orig;
                }
            }
        }

        Hypergraph uh;
        FractionalSolution ux;
        std::vector<int> umap;
        std::vector<int> offset(pieces.size(), 0);
        for (size_t pi = 0; pi < pieces.size(); ++pi) {
            offset[pi] = uh.n;
            uh.n += pieces[pi].h.n;
            for (const auto& e : pieces[pi].h.edges) {
                std::vector<int> shifted;
                for (int v : e) shifted.push_back(v + offset[pi]);
                uh.edges.push_back(std::move(shifted));
            }
            uh.weights.insert(uh.weights.end(), pieces[pi].h.weights.begin(),
                              pieces[pi].h.weights.end());
            ux.x.insert(ux.x.end(), pieces[pi].x.x.begin(),
                        pieces[pi].x.x.end());
            for (int v : pieces[pi].vertex_map) umap.push_back(v);
        }

        const int uroot = offset[best_piece] + best_local;
        auto [members, fmin] = min_deficit_cut(uh, ux, uroot);
        ++out.oracle_calls;
        if (fmin < 1.0 - kViolationTol) {
            std::vector<int> orig;
            for (int v : members) orig.push_back(umap[v]);
            rec.add(std::move(orig), 1.0 - fmin);
        }

        ReducedProblem owner = std::move(pieces[best_piece]);
        pieces.erase(pieces.begin() + best_piece);
        if (owner.h.n >= 3) {
            std::vector<int> rest;
            for (int v = 0; v < owner.h.n; ++v)
                if (v != best_local) rest.push_back(v);
            auto ind = induced_subhypergraph(
                owner.h, owner.x, VertexSubset::of(rest, owner.h.n));
            std::vector<ReducedProblem> subs;
            decompose_work(compose(owner, std::move(ind)), false, subs);
            for (auto& s : subs) pieces.push_back(std::move(s));
        }
    }
    return out;
}

SeparationResult separate_zero_weight(const Hypergraph& h,
                                      const FractionalSolution& x) {
    check_pair(h, x);
    SeparationResult out;
    auto sup = support_hypergraph(h, x);
    auto cc = connected_components(sup.h);
    if (cc.components.size() < 2) return out;

    Recorder rec{&out, h.n, {}};
    for (const auto& comp : cc.components) {
        auto s = VertexSubset::of(comp, h.n);
        for (const VertexSubset& c : {s, s.complement()}) {
            if (!c.valid_subtour_size()) continue;
            double f = violation_deficit(h, x, c);
            if (f < 1.0 - kViolationTol) rec.add(c.members, 1.0 - f);
        }
    }
    return out;
}

SeparationResult brute_force_separate(const Hypergraph& h,
                                      const FractionalSolution& x) {
    check_pair(h, x);
    if (h.n > 20) throw std::invalid_argument("brute force capped at n = 20");
    SeparationResult out;
    const unsigned top = 1u << h.n;
    for (unsigned mask = 1; mask + 1 < top; ++mask) {
        const int cnt = __builtin_popcount(mask);
        if (cnt < 2 || cnt > h.n - 1) continue;
        std::vector<int> members;
        for (int v = 0; v < h.n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        auto s = VertexSubset::of(std::move(members), h.n);
        double f = violation_deficit(h, x, s);
        if (f < 1.0 - kViolationTol) {
            double viol = 1.0 - f;
            out.max_violation = std::max(out.max_violation, viol);
            out.violated.push_back({std::move(s), viol});
        }
    }
    return out;
}

}  // namespace hgmst
