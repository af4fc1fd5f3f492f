#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hgmst/strengthen.hpp"

namespace hgmst {

enum class ExperimentMode { Both, Large, Small };

struct PoolEntry {
    SubtourConstraint constraint;
    LpRowSpec row;           // built once at insert time
    int nonzeros = 0;
    int times_added = 0;     // times handed to the LP by a scan
    long last_violated = -1; // stamp of the last scan that saw it violated
    bool binding = false;    // binding in some active node's last LP solution
};

// Subtour storage for one solve.  Entries are keyed by the canonical cut
// key, so a constraint and its complement-form twin occupy one slot.  The
// total stored nonzeros stay within the budget except when the binding
// rows alone exceed it; audit() checks exactly that.
class ConstraintPool {
  public:
    explicit ConstraintPool(const Hypergraph& h,
                            long long nonzero_budget = 1'000'000);

    struct InsertResult {
        std::uint64_t key = 0;
        bool inserted = false;
    };

    // Deduplicating insert.  Makes room first, densest non-binding
    // entries evicted, so the budget invariant survives the mutation.
    // A row that cannot fit even after evicting every non-binding entry
    // is refused (inserted=false, nothing stored); it still reaches the
    // LP through the solver, which adds fresh rows directly.
    InsertResult insert(const SubtourConstraint& c);

    // Picks the violated non-binding rows to hand to the LP: sort by
    // nonzeros (ties by key), then up to `strata` greedy passes each
    // collecting rows whose LP columns are disjoint within the pass.
    // Returned keys are in pick order; their times_added is bumped.
    std::vector<std::uint64_t> sos_scan(const FractionalSolution& x,
                                        int strata = 8);

    // Evicts non-binding entries, densest first (ties by key), until
    // `incoming` more nonzeros would fit.  Binding entries are never
    // evicted, so the budget can stay exceeded when they alone overflow
    // it.  Returns the evicted keys.
    std::vector<std::uint64_t> enforce_size_limit(long long incoming);

    // Replaces the binding mark on every entry.  Unknown keys ignored.
    void set_binding(const std::vector<std::uint64_t>& keys);

    // The nonzero limit is adjustable mid-solve.  Lowering it below the
    // binding total leaves the pool legitimately over budget; the next
    // enforcement pass then clears every discardable entry.
    void set_budget(long long nonzero_budget) { budget_ = nonzero_budget; }

    const PoolEntry* find(std::uint64_t key) const;
    int size() const { return static_cast<int>(entries_.size()); }
    long long total_nonzeros() const { return total_nonzeros_; }
    long long budget() const { return budget_; }

    bool audit() const;

    const std::unordered_map<std::uint64_t, PoolEntry>& entries() const {
        return entries_;
    }

  private:
    const Hypergraph* h_;
    long long budget_;
    long long total_nonzeros_ = 0;
    long scan_stamp_ = 0;
    std::unordered_map<std::uint64_t, PoolEntry> entries_;
};

// Experiment filters over a violated-constraint list; n is the vertex
// count.  Both passes everything through unchanged.  Small keeps subtour
// sides of at most round(0.342 n) vertices, falling back to round(0.597 n)
// and then to the single smallest; Large keeps sides above round(0.342 n),
// falling back to above round(0.146 n) and then to the single largest.
// A nonempty input never filters to nothing.
std::vector<SubtourConstraint> mode_filter(
    const std::vector<SubtourConstraint>& violated, ExperimentMode mode,
    int n);

}  // namespace hgmst
