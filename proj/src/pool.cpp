#include "hgmst/pool.hpp"

#include <algorithm>
#include <cmath>

namespace hgmst {

namespace {

double row_activity(const LpRowSpec& row, const FractionalSolution& x) {
    double a = 0.0;
    for (const auto& [col, coef] : row.coeffs) a += coef * x.x[col];
    return a;
}

bool row_violated(const LpRowSpec& row, const FractionalSolution& x) {
    const double a = row_activity(row, x);
    if (row.relation == '<') return a > row.rhs + kRowTol;
    return a < row.rhs - kRowTol;
}

}  // namespace

ConstraintPool::ConstraintPool(const Hypergraph& h, long long nonzero_budget)
    : h_(&h), budget_(nonzero_budget) {}

ConstraintPool::InsertResult ConstraintPool::insert(const SubtourConstraint& c) {
    const std::uint64_t key = c.canonical_key();
    if (entries_.count(key)) return {key, false};

    PoolEntry entry;
    entry.constraint = c;
    entry.row = c.to_row(*h_);
    entry.nonzeros = static_cast<int>(entry.row.coeffs.size());

    long long bound = 0;
    for (const auto& [k, e] : entries_)
        if (e.binding) bound += e.nonzeros;
    if (bound + entry.nonzeros > budget_) return {key, false};

    enforce_size_limit(entry.nonzeros);
    total_nonzeros_ += entry.nonzeros;
    entries_.emplace(key, std::move(entry));
    return {key, true};
}

std::vector<std::uint64_t> ConstraintPool::sos_scan(const FractionalSolution& x,
                                                    int strata) {
    ++scan_stamp_;
    std::vector<std::uint64_t> pool_l;
    for (auto& [key, entry] : entries_) {
        if (!row_violated(entry.row, x)) continue;
        entry.last_violated = scan_stamp_;
        if (!entry.binding) pool_l.push_back(key);
    }
    std::sort(pool_l.begin(), pool_l.end(),
              [&](std::uint64_t a, std::uint64_t b) {
                  const int na = entries_.at(a).nonzeros;
                  const int nb = entries_.at(b).nonzeros;
                  if (na != nb) return na < nb;
                  return a < b;
              });

    std::vector<std::uint64_t> chosen;
    std::vector<char> used(h_->edge_count(), 0);
    for (int pass = 0; pass < strata && !pool_l.empty(); ++pass) {
        std::fill(used.begin(), used.end(), 0);
        std::vector<std::uint64_t> rest;
        for (std::uint64_t key : pool_l) {
            const auto& row = entries_.at(key).row;
            bool disjoint = true;
            for (const auto& [col, coef] : row.coeffs)
                if (used[col]) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) {
                rest.push_back(key);
                continue;
            }
            for (const auto& [col, coef] : row.coeffs) used[col] = 1;
            chosen.push_back(key);
        }
        pool_l.swap(rest);
    }
    for (std::uint64_t key : chosen) ++entries_.at(key).times_added;
    return chosen;
}

std::vector<std::uint64_t> ConstraintPool::enforce_size_limit(long long incoming) {
    std::vector<std::uint64_t> evicted;
    if (total_nonzeros_ + incoming <= budget_) return evicted;

    std::vector<std::uint64_t> discardable;
    for (const auto& [key, entry] : entries_)
        if (!entry.binding) discardable.push_back(key);
    std::sort(discardable.begin(), discardable.end(),
              [&](std::uint64_t a, std::uint64_t b) {
                  const int na = entries_.at(a).nonzeros;
                  const int nb = entries_.at(b).nonzeros;
                  if (na != nb) return na > nb;
                  return a < b;
              });

    for (std::uint64_t key : discardable) {
        if (total_nonzeros_ + incoming <= budget_) break;
        total_nonzeros_ -= entries_.at(key).nonzeros;
        entries_.erase(key);
        evicted.push_back(key);
    }
    return evicted;
}

void ConstraintPool::set_binding(const std::vector<std::uint64_t>& keys) {
    for (auto& [key, entry] : entries_) entry.binding = false;
    for (std::uint64_t key : keys) {
        auto it = entries_.find(key);
        if (it != entries_.end()) it->second.binding = true;
    }
}

const PoolEntry* ConstraintPool::find(std::uint64_t key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

bool ConstraintPool::audit() const {
    long long total = 0, bound = 0;
    for (const auto& [key, entry] : entries_) {
        if (entry.nonzeros != static_cast<int>(entry.row.coeffs.size()))
            return false;
        if (entry.constraint.canonical_key() != key) return false;
        total += entry.nonzeros;
        if (entry.binding) bound += entry.nonzeros;
    }
    if (total != total_nonzeros_) return false;
    return total <= budget_ || bound > budget_;
}

namespace {

int side_size(const SubtourConstraint& c, int n) {
    const int k = static_cast<int>(c.subset.members.size());
    return c.form == ConstraintForm::Subtour ? k : n - k;
}

std::vector<SubtourConstraint> keep_if(
    const std::vector<SubtourConstraint>& violated, int n, bool small_side,
    int cutoff) {
    std::vector<SubtourConstraint> out;
    for (const auto& c : violated) {
        const int k = side_size(c, n);
        if (small_side ? k <= cutoff : k > cutoff) out.push_back(c);
    }
    return out;
}

std::vector<SubtourConstraint> extreme(
    const std::vector<SubtourConstraint>& violated, int n, bool smallest) {
    size_t best = 0;
    for (size_t i = 1; i < violated.size(); ++i) {
        const int ki = side_size(violated[i], n);
        const int kb = side_size(violated[best], n);
        if (ki != kb) {
            if (smallest ? ki < kb : ki > kb) best = i;
        } else if (violated[i].canonical_key() <
                   violated[best].canonical_key()) {
            best = i;
        }
    }
    return {violated[best]};
}

}  // namespace

std::vector<SubtourConstraint> mode_filter(
    const std::vector<SubtourConstraint>& violated, ExperimentMode mode,
    int n) {
    if (mode == ExperimentMode::Both || violated.empty()) return violated;
    const int primary = static_cast<int>(std::floor(0.342 * n + 0.5));
    if (mode == ExperimentMode::Small) {
        auto out = keep_if(violated, n, true, primary);
        if (out.empty())
            out = keep_if(violated, n, true,
                          static_cast<int>(std::floor(0.597 * n + 0.5)));
        if (out.empty()) out = extreme(violated, n, true);
        return out;
    }
    auto out = keep_if(violated, n, false, primary);
    if (out.empty())
        out = keep_if(violated, n, false,
                      static_cast<int>(std::floor(0.146 * n + 0.5)));
    if (out.empty()) out = extreme(violated, n, false);
    return out;
}

}  // namespace hgmst
