#pragma once

#include <cstdint>
#include <vector>

#include "hgmst/hypergraph.hpp"
#include "hgmst/lp.hpp"

namespace hgmst {

enum class ConstraintForm { Subtour, AntiSubtour };

// How a constraint entered a strengthening batch.
enum class Provenance {
    Raw,
    Reduction,
    SingleVertexAug,
    ComponentAug,
    BlockAug,
    Complementary,
};

// One subtour cut in either of its two equivalent shapes.  Subtour on S is
// x(S) <= |S|-1; the anti-subtour on T = V-S is x(T) + x(T:V-T) >= |T|.
// Under the degree equation the two bind the same set of points, so the
// canonical key depends only on which side the subtour bounds, never on the
// stored form.
struct SubtourConstraint {
    VertexSubset subset;
    ConstraintForm form = ConstraintForm::Subtour;

    // Vertices the subtour form bounds, regardless of stored form.
    VertexSubset subtour_side() const {
        return form == ConstraintForm::Subtour ? subset : subset.complement();
    }

    std::uint64_t canonical_key() const;
    int nonzero_count(const Hypergraph& h) const;
    LpRowSpec to_row(const Hypergraph& h) const;
};

struct StrengthenedConstraint {
    SubtourConstraint constraint;
    Provenance provenance = Provenance::Raw;
};

struct StrengthenBatch {
    std::vector<StrengthenedConstraint> constraints;
};

struct StrengthenConfig {
    // Also emit the complement of every produced subtour.  Those rows are
    // usually not violated by the triggering point; they wait in the pool.
    bool complementary_subtours = false;
};

// Reduces the S-induced support subhypergraph to its irreducible pieces and
// returns the ones still violated in the full instance.  Returns {S} when no
// reduction applies.
std::vector<VertexSubset> strengthen_by_reduction(const Hypergraph& h,
                                                  const FractionalSolution& x,
                                                  const VertexSubset& s);

// Grows a violated S greedily: absorb the frontier vertex with the largest
// crossing weight z while y + z - 1 stays positive (y = current violation).
// Ties take the lowest vertex id.  The result is still violated.
VertexSubset augment_single_vertex(const Hypergraph& h,
                                   const FractionalSolution& x,
                                   const VertexSubset& s);

// Connected components V_i of the support subhypergraph induced by the
// complement of S.  Returns V - V_i for every violated candidate.  The
// default restricts the complement to the support component containing S;
// full_complement uses all of V - S, which is the mode carrying the
// at-least-one-hit guarantee.
std::vector<VertexSubset> augment_via_components(const Hypergraph& h,
                                                 const FractionalSolution& x,
                                                 const VertexSubset& s,
                                                 bool full_complement = false);

// Blocks U_j of the support subhypergraph induced by a violated complement
// component V_i.  Returns V - U_j for every violated candidate; a V_i with a
// single block yields V - V_i itself.
std::vector<VertexSubset> augment_via_biconnected(const Hypergraph& h,
                                                  const FractionalSolution& x,
                                                  const VertexSubset& component);

// Chooses between subtour-on-S and anti-subtour-on-(V-S) by fewer LP
// nonzeros; ties keep the subtour form.
SubtourConstraint sparsest_form(const SubtourConstraint& c,
                                const Hypergraph& h);

// Full pipeline over a list of violated raw subtours: reduction, then the
// three augmentations, then form conversion and key deduplication.
StrengthenBatch strengthen_all(const Hypergraph& h, const FractionalSolution& x,
                               const std::vector<VertexSubset>& raw,
                               const StrengthenConfig& config = {});

}  // namespace hgmst
