#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hgmst/hypergraph.hpp"

namespace hgmst::testing {

// deterministic randomness helper; avoids std distributions, whose output
// is implementation-defined
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::uint64_t raw() { return gen(); }
    double unit() { return (gen() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int below(int k) {
        return static_cast<int>(gen() % static_cast<std::uint64_t>(k));
    }
};

struct GadgetPoint {
    Hypergraph h;
    FractionalSolution x;
};

// n=4: triangle pairs {0,1},{1,2},{0,2} at x=0.9 plus pendant {2,3} at
// x=0.3; S={0,1,2} has f(S)=0.3, the standing violated-subtour example
GadgetPoint triangle_pendant();

// n=3: all pairs at weight 1 plus the triple {0,1,2} at weight 1.9;
// optimal tree is the bare triple
Hypergraph triple_gadget();

// connected instance that always admits a spanning tree: grows a random
// tree by attaching 1-2 fresh vertices per edge, then adds extra pair and
// triple edges (duplicate vertex sets dropped)
Hypergraph random_instance(std::uint64_t seed, int n, int extra_edges);

// moves degree mass into a random subset while keeping sum (|e|-1) x_e
// exact and every x_e within [0,1]; used to manufacture degree-feasible
// points with violated subtours
FractionalSolution push_mass(const Hypergraph& h, const FractionalSolution& x,
                             std::uint64_t seed, int rounds = 40);

}  // namespace hgmst::testing
