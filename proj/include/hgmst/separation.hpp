#pragma once

#include <utility>
#include <vector>

#include "hgmst/hypergraph.hpp"

namespace hgmst {

struct FlowArc {
    int from;
    int to;
    double cap;
};

struct FlowNetwork {
    int node_count = 0;
    int source = -1;
    int sink = -1;
    std::vector<FlowArc> arcs;
};

struct MaxFlowResult {
    double value = 0.0;
    std::vector<char> source_side;  // per node, from residual reachability
};

struct ViolatedSubtour {
    VertexSubset subset;
    double violation;  // x(S) - (|S|-1) = 1 - f(S), > 0
};

struct SeparationResult {
    std::vector<ViolatedSubtour> violated;
    double max_violation = 0.0;
    int oracle_calls = 0;       // max-flow invocations
    int largest_component = 0;  // largest reduced component fed to max-flow
};

// A sub-problem with maps back to the hypergraph it was carved from.
struct ReducedProblem {
    Hypergraph h;
    FractionalSolution x;
    std::vector<int> vertex_map;  // local id -> original id
    std::vector<int> edge_map;    // local edge -> original edge
};

enum class SeparationMode { Biased, Unbiased };

// Iteratively removes every vertex whose incident support weight is <= 1.
// Second member of the result lists removed vertices in deletion order.
std::pair<ReducedProblem, std::vector<int>> reduce_single_vertex(
    const Hypergraph& h, const FractionalSolution& x);

// Fixed point of {vertex reduction, component split, biconnected split}.
std::vector<ReducedProblem> decompose(const Hypergraph& h,
                                      const FractionalSolution& x);

// Fixed point of vertex reduction + component split only.  The pieces are
// vertex-disjoint and share no support edges, so deficits add across them;
// the unbiased separator cuts across their disjoint union.
std::vector<ReducedProblem> decompose_components(const Hypergraph& h,
                                                 const FractionalSolution& x);

// Encodes min f(S) over root-containing S as a min s-t cut; min-cut minus
// the returned offset equals that minimum.
std::pair<FlowNetwork, double> build_violation_network(
    const Hypergraph& h, const FractionalSolution& x, int root);

MaxFlowResult max_flow(const FlowNetwork& net);

SeparationResult separate_exact(const Hypergraph& h,
                                const FractionalSolution& x,
                                SeparationMode mode);

// Component subtours of a disconnected support hypergraph.
SeparationResult separate_zero_weight(const Hypergraph& h,
                                      const FractionalSolution& x);

// Exhaustive oracle over all 2 <= |S| <= n-1, n <= 20.
SeparationResult brute_force_separate(const Hypergraph& h,
                                      const FractionalSolution& x);

}  // namespace hgmst
