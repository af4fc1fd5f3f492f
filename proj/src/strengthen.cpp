#include "hgmst/strengthen.hpp"

#include "hgmst/separation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

namespace hgmst {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<char> member_mask(const VertexSubset& s) {
    std::vector<char> in(s.n, 0);
    for (int v : s.members) in[v] = 1;
    return in;
}

int inside_count(const std::vector<int>& edge, const std::vector<char>& in) {
    int c = 0;
    for (int v : edge) c += in[v];
    return c;
}

void check_pair(const Hypergraph& h, const FractionalSolution& x) {
    if (static_cast<int>(x.x.size()) != h.edge_count())
        throw std::invalid_argument("strengthen: x does not match edge count");
}

void require_violated(const Hypergraph& h, const FractionalSolution& x,
                      const VertexSubset& s, const char* who) {
    if (!(violation_deficit(h, x, s) < 1.0 - kViolationTol))
        throw std::invalid_argument(std::string(who) +
                                    ": subtour is not violated");
}

bool subtour_size_ok(std::size_t size, int n) {
    return size >= 2 && static_cast<int>(size) <= n - 1;
}

}  // namespace

std::uint64_t SubtourConstraint::canonical_key() const {
    VertexSubset p = subtour_side();
    VertexSubset q = p.complement();
    const bool p_smaller = p.members < q.members;
    const std::vector<int>& rep = p_smaller ? p.members : q.members;

    std::uint64_t k = mix64(0x5bd1e995u ^ static_cast<std::uint64_t>(subset.n));
    for (int v : rep) k = mix64(k ^ (static_cast<std::uint64_t>(v) + 1));
    // side bit: which side of the cut the subtour form bounds
    k = mix64(k ^ (p_smaller ? 2u : 3u));
    return k ? k : 1;  // 0 means "no pool key" in LP rows
}

int SubtourConstraint::nonzero_count(const Hypergraph& h) const {
    auto in = member_mask(subset);
    int nz = 0;
    if (form == ConstraintForm::Subtour) {
        for (const auto& e : h.edges)
            if (inside_count(e, in) >= 2) ++nz;
    } else {
        for (const auto& e : h.edges)
            if (inside_count(e, in) >= 1) ++nz;
    }
    return nz;
}

LpRowSpec SubtourConstraint::to_row(const Hypergraph& h) const {
    auto in = member_mask(subset);
    LpRowSpec spec;
    spec.pool_key = canonical_key();
    if (form == ConstraintForm::Subtour) {
        spec.origin = RowOrigin::Subtour;
        spec.relation = '<';
        spec.rhs = static_cast<double>(subset.size()) - 1.0;
        for (int e = 0; e < h.edge_count(); ++e) {
            int c = inside_count(h.edges[e], in);
            if (c >= 2) spec.coeffs.emplace_back(e, c - 1.0);
        }
    } else {
        // x(T) + x(T:V-T) >= |T|: an edge inside T contributes |e|-1, a
        // crossing edge contributes its vertex count inside T
        spec.origin = RowOrigin::AntiSubtour;
        spec.relation = '>';
        spec.rhs = static_cast<double>(subset.size());
        for (int e = 0; e < h.edge_count(); ++e) {
            int c = inside_count(h.edges[e], in);
            if (c == 0) continue;
            bool crossing = c < static_cast<int>(h.edges[e].size());
            spec.coeffs.emplace_back(e, crossing ? c : c - 1.0);
        }
    }
    return spec;
}

std::vector<VertexSubset> strengthen_by_reduction(const Hypergraph& h,
                                                  const FractionalSolution& x,
                                                  const VertexSubset& s) {
    check_pair(h, x);
    require_violated(h, x, s, "strengthen_by_reduction");

    auto ind = induced_subhypergraph(h, x, s);
    std::vector<VertexSubset> out;
    for (const auto& p : decompose(ind.h, ind.x)) {
        std::vector<int> orig;
        orig.reserve(p.h.n);
        for (int i = 0; i < p.h.n; ++i)
            orig.push_back(ind.vertex_map[p.vertex_map[i]]);
        if (!subtour_size_ok(orig.size(), h.n)) continue;
        VertexSubset r = VertexSubset::of(orig, h.n);
        if (violation_deficit(h, x, r) < 1.0 - kViolationTol)
            out.push_back(std::move(r));
    }
    if (out.empty()) return {s};
    return out;
}

VertexSubset augment_single_vertex(const Hypergraph& h,
                                   const FractionalSolution& x,
                                   const VertexSubset& s) {
    check_pair(h, x);
    require_violated(h, x, s, "augment_single_vertex");

    auto in = member_mask(s);
    double y = 1.0 - violation_deficit(h, x, s);
    int size = s.size();

    const int m = h.edge_count();
    std::vector<int> inside(m, 0);
    std::vector<std::vector<int>> incident(h.n);
    for (int e = 0; e < m; ++e) {
        inside[e] = inside_count(h.edges[e], in);
        if (x.x[e] > kSupportEps)
            for (int v : h.edges[e]) incident[v].push_back(e);
    }

    // max-key heap over frontier vertices, lazy entries; ties take the
    // lowest vertex id
    std::vector<double> key(h.n, 0.0);
    std::priority_queue<std::pair<double, int>> heap;
    auto bump = [&](int v, double amount) {
        key[v] += amount;
        heap.emplace(key[v], -v);
    };
    for (int e = 0; e < m; ++e) {
        if (x.x[e] <= kSupportEps || inside[e] == 0) continue;
        for (int v : h.edges[e])
            if (!in[v]) bump(v, x.x[e]);
    }

    while (!heap.empty() && size < h.n - 1) {
        auto [z, negv] = heap.top();
        heap.pop();
        int v = -negv;
        if (in[v] || z != key[v]) continue;  // stale entry
        if (y + z - 1.0 <= 1e-9) break;      // includes the y + z = 1 boundary

        in[v] = 1;
        ++size;
        y += z - 1.0;
        for (int e : incident[v]) {
            if (inside[e] == 0) {
                // newly crossing edge: credit its other vertices
                for (int u : h.edges[e])
                    if (!in[u]) bump(u, x.x[e]);
            }
            ++inside[e];
        }
    }

    std::vector<int> members;
    for (int v = 0; v < h.n; ++v)
        if (in[v]) members.push_back(v);
    return VertexSubset::of(members, h.n);
}

std::vector<VertexSubset> augment_via_components(const Hypergraph& h,
                                                 const FractionalSolution& x,
                                                 const VertexSubset& s,
                                                 bool full_complement) {
    check_pair(h, x);
    double total = 0.0;
    for (int e = 0; e < h.edge_count(); ++e)
        total += (static_cast<double>(h.edges[e].size()) - 1.0) * x.x[e];
    if (std::abs(total - (h.n - 1.0)) > kRowTol)
        throw std::invalid_argument(
            "augment_via_components: degree equation violated");
    require_violated(h, x, s, "augment_via_components");

    auto in = member_mask(s);
    std::vector<int> region;
    if (full_complement) {
        for (int v = 0; v < h.n; ++v)
            if (!in[v]) region.push_back(v);
    } else {
        auto sup = support_hypergraph(h, x);
        auto cc = connected_components(sup.h);
        std::vector<char> touches(cc.components.size(), 0);
        for (int v : s.members) touches[cc.component_of[v]] = 1;
        for (int v = 0; v < h.n; ++v)
            if (!in[v] && touches[cc.component_of[v]]) region.push_back(v);
    }
    if (region.empty()) return {};

    auto ind = induced_subhypergraph(h, x, VertexSubset::of(region, h.n));
    auto sup = support_hypergraph(ind.h, ind.x);
    auto cc = connected_components(sup.h);

    std::vector<VertexSubset> out;
    for (const auto& comp : cc.components) {
        std::vector<char> hole(h.n, 0);
        for (int i : comp) hole[ind.vertex_map[i]] = 1;
        std::vector<int> members;
        for (int v = 0; v < h.n; ++v)
            if (!hole[v]) members.push_back(v);
        if (!subtour_size_ok(members.size(), h.n)) continue;
        VertexSubset cand = VertexSubset::of(members, h.n);
        if (violation_deficit(h, x, cand) < 1.0 - kViolationTol)
            out.push_back(std::move(cand));
    }
    return out;
}

std::vector<VertexSubset> augment_via_biconnected(
    const Hypergraph& h, const FractionalSolution& x,
    const VertexSubset& component) {
    check_pair(h, x);

    auto ind = induced_subhypergraph(h, x, component);
    auto sup = support_hypergraph(ind.h, ind.x);
    auto bc = biconnected_components(sup.h);

    std::vector<std::vector<int>> blocks;
    if (bc.blocks.empty()) {
        // no support edges inside: the component is its own single block
        blocks.push_back({});
        for (int i = 0; i < ind.h.n; ++i) blocks.back().push_back(i);
    } else {
        blocks = bc.blocks;
    }

    std::vector<VertexSubset> out;
    for (const auto& blk : blocks) {
        std::vector<char> hole(h.n, 0);
        for (int i : blk) hole[ind.vertex_map[i]] = 1;
        std::vector<int> members;
        for (int v = 0; v < h.n; ++v)
            if (!hole[v]) members.push_back(v);
        if (!subtour_size_ok(members.size(), h.n)) continue;
        VertexSubset cand = VertexSubset::of(members, h.n);
        if (violation_deficit(h, x, cand) < 1.0 - kViolationTol)
            out.push_back(std::move(cand));
    }
    return out;
}

SubtourConstraint sparsest_form(const SubtourConstraint& c,
                                const Hypergraph& h) {
    VertexSubset p = c.subtour_side();
    SubtourConstraint sub{p, ConstraintForm::Subtour};
    SubtourConstraint anti{p.complement(), ConstraintForm::AntiSubtour};
    if (anti.nonzero_count(h) < sub.nonzero_count(h)) return anti;
    return sub;
}

StrengthenBatch strengthen_all(const Hypergraph& h, const FractionalSolution& x,
                               const std::vector<VertexSubset>& raw,
                               const StrengthenConfig& config) {
    check_pair(h, x);

    StrengthenBatch batch;
    std::unordered_set<std::uint64_t> seen;
    auto emit = [&](const VertexSubset& sub, Provenance prov) {
        SubtourConstraint c = sparsest_form(
            SubtourConstraint{sub, ConstraintForm::Subtour}, h);
        if (!seen.insert(c.canonical_key()).second) return;
        batch.constraints.push_back({std::move(c), prov});
    };

    for (const auto& s : raw) {
        require_violated(h, x, s, "strengthen_all");

        auto reduced = strengthen_by_reduction(h, x, s);
        bool unchanged = reduced.size() == 1 && reduced[0] == s;
        for (const auto& r : reduced)
            emit(r, unchanged ? Provenance::Raw : Provenance::Reduction);

        auto grown = augment_single_vertex(h, x, s);
        if (!(grown == s)) emit(grown, Provenance::SingleVertexAug);

        for (const auto& cand : augment_via_components(h, x, grown)) {
            emit(cand, Provenance::ComponentAug);
            for (const auto& blk :
                 augment_via_biconnected(h, x, cand.complement()))
                emit(blk, Provenance::BlockAug);
        }
    }

    if (config.complementary_subtours) {
        const std::size_t base = batch.constraints.size();
        for (std::size_t i = 0; i < base; ++i) {
            VertexSubset q =
                batch.constraints[i].constraint.subtour_side().complement();
            if (!subtour_size_ok(q.members.size(), h.n)) continue;
            emit(q, Provenance::Complementary);
        }
    }
    return batch;
}

}  // namespace hgmst
