#pragma once

#include <cstdint>
#include <vector>

#include "hgmst/hypergraph.hpp"

namespace hgmst {

struct TreeCertificate {
    std::vector<int> edges;  // sorted edge indices
    double weight = 0.0;
    int component_count = 1;
};

// true iff sum(|e|-1) over T equals n-1 and (V,T) is connected;
// together these imply acyclicity
bool is_spanning_tree(const Hypergraph& h, const std::vector<int>& t);

// exhaustive minimum spanning tree, |E| <= 25; ties resolved toward the
// lexicographically smallest edge set; throws InfeasibleError when no
// spanning tree exists
TreeCertificate brute_force_mst(const Hypergraph& h);

// random convex combination of spanning-tree incidence vectors, so the
// result always satisfies the degree equation x(V) = n-1; deterministic
// per seed; requires a spanning tree to exist
FractionalSolution random_degree_feasible_x(const Hypergraph& h,
                                            std::uint64_t seed);

}  // namespace hgmst
