#pragma once

#include <stdexcept>
#include <vector>

namespace hgmst {

/// numeric tolerances used across the solver

// edges with x_e above this are part of the support hypergraph
inline constexpr double kSupportEps = 1e-9;
// a subtour S is treated as violated when f(S) < 1 - kViolationTol
inline constexpr double kViolationTol = 1e-7;
// LP rows are considered satisfied/binding within this absolute tolerance
inline constexpr double kRowTol = 1e-7;
// variable bounds are enforced within this tolerance
inline constexpr double kBoundTol = 1e-9;
// x_e is fractional when kFracEps < x_e < 1 - kFracEps
inline constexpr double kFracEps = 1e-6;

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem instance. Vertices are dense 0-based integers; arbitrary instance
// file labels are mapped at parse time (see io.hpp).
struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges;  // each strictly sorted ascending
    std::vector<double> weights;          // one nonnegative weight per edge

    int edge_count() const { return static_cast<int>(edges.size()); }

    // throws std::invalid_argument when an invariant is broken:
    // 2 <= |e| <= n, indices in range, strictly sorted, weights >= 0 finite
    void validate() const;
};

// An LP point over the instance's edges; 0 <= x_e <= 1 + kBoundTol.
struct FractionalSolution {
    std::vector<double> x;
};

struct VertexSubset {
    std::vector<int> members;  // sorted ascending, no duplicates
    int n = 0;                 // ambient vertex count

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int v) const;
    VertexSubset complement() const;
    std::vector<char> mask() const;  // length n, 1 for members

    // true when usable as a subtour subset: 2 <= |S| <= n-1
    bool valid_subtour_size() const {
        return size() >= 2 && size() <= n - 1;
    }

    // sorts and validates; throws std::invalid_argument on out-of-range
    // or duplicate entries
    static VertexSubset of(std::vector<int> members, int n);
    static VertexSubset from_mask(const std::vector<char>& mask);

    bool operator==(const VertexSubset& o) const {
        return n == o.n && members == o.members;
    }
};

struct ComponentDecomposition {
    std::vector<int> component_of;            // per vertex, -1 if unused
    std::vector<std::vector<int>> components; // sorted vertex lists
    // biconnected mode only:
    std::vector<std::vector<int>> blocks;       // sorted vertex lists
    std::vector<std::vector<int>> block_edges;  // edge indices per block
    std::vector<int> articulation_vertices;     // sorted
};

/// weight and cut functions

// delta(S) = { e : neither e∩S nor e\S is empty }
std::vector<int> delta(const Hypergraph& h, const VertexSubset& s);

// x(S) = sum over e of max(|e∩S|-1, 0) * x_e
double weight_within(const Hypergraph& h, const FractionalSolution& x,
                     const VertexSubset& s);

// x(S:T) = sum of x_e over edges meeting both S and T; requires S∩T = ∅
double cut_weight(const Hypergraph& h, const FractionalSolution& x,
                  const VertexSubset& s, const VertexSubset& t);

// f(S) = |S| - x(S); the subtour on S is violated iff f(S) < 1 - kViolationTol
double violation_deficit(const Hypergraph& h, const FractionalSolution& x,
                         const VertexSubset& s);

// b_v = x(delta(v)) = total fractional weight incident to v
double incident_weight(const Hypergraph& h, const FractionalSolution& x, int v);

struct SupportResult {
    Hypergraph h;
    std::vector<int> edge_map;  // new edge index -> original edge index
};

// sub-hypergraph of edges with x_e > eps, same vertex set
SupportResult support_hypergraph(const Hypergraph& h,
                                 const FractionalSolution& x,
                                 double eps = kSupportEps);

// components under "share a hyperedge" adjacency; isolated vertices are
// singleton components; components ordered by smallest member
ComponentDecomposition connected_components(const Hypergraph& h);

// blocks and articulation vertices of a connected hypergraph, computed on the
// bipartite incidence graph; blocks sharing a hyperedge are merged so that a
// hyperedge never spans two blocks
ComponentDecomposition biconnected_components(const Hypergraph& h);

struct InducedResult {
    Hypergraph h;
    FractionalSolution x;
    std::vector<int> vertex_map;  // new vertex id -> original vertex id
    std::vector<int> edge_map;    // new edge index -> original edge index
};

// vertices relabeled 0..|S|-1; edge e becomes e∩S, kept only when |e∩S| >= 2
InducedResult induced_subhypergraph(const Hypergraph& h,
                                    const FractionalSolution& x,
                                    const VertexSubset& s);

}  // namespace hgmst
