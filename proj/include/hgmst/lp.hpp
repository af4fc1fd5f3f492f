#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hgmst/hypergraph.hpp"

namespace hgmst {

enum class RowOrigin { DegreeEquation, VertexDegree, Subtour, AntiSubtour };
enum class LpStatus { Optimal, Infeasible, IterationLimit };

// relation is one of '=', '<' (meaning <=), '>' (meaning >=)
struct LpRowSpec {
    RowOrigin origin = RowOrigin::Subtour;
    char relation = '<';
    std::vector<std::pair<int, double>> coeffs;  // sorted by variable index
    double rhs = 0.0;
    std::uint64_t pool_key = 0;  // canonical constraint key, 0 = none
};

struct LpRow {
    long long uid = -1;  // stable across row deletions
    RowOrigin origin = RowOrigin::Subtour;
    char relation = '<';
    std::vector<std::pair<int, double>> coeffs;
    double rhs = 0.0;
    std::uint64_t pool_key = 0;
    int slack_age = 0;      // consecutive solves with positive slack
    double last_slack = 0;  // slack at the most recent solve
};

// Warm-start token.  Variable codes: structural j >= 0, the logical of the
// row with uid u is encoded as -1 - u.  Rows absent from the map start with
// their own logical basic.
struct BasisToken {
    std::vector<std::pair<long long, long long>> row_basic;
    std::vector<long long> at_upper;
    bool empty() const { return row_basic.empty() && at_upper.empty(); }
};

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    FractionalSolution x;
    std::vector<double> row_slack;  // by current row index, >= 0 when satisfied
    std::vector<int> fractional;    // { e : 1e-6 < x_e < 1 - 1e-6 }
    BasisToken basis;
};

class LinearProgram {
public:
    explicit LinearProgram(std::vector<double> costs);

    int column_count() const { return static_cast<int>(cost_.size()); }
    int row_count() const { return static_cast<int>(rows_.size()); }
    const LpRow& row(int i) const { return rows_[i]; }
    const std::vector<LpRow>& rows() const { return rows_; }

    long long add_row(LpRowSpec spec);
    std::vector<long long> add_rows(std::vector<LpRowSpec> specs);

    // Removes rows with slack_age >= min_age whose origin is not the degree
    // equation and whose pool key is not in `protect`.  Returns the count.
    int delete_slack_rows(int min_age,
                          const std::unordered_set<std::uint64_t>* protect =
                              nullptr);

    void fix_variable(int e, double value);
    void unfix_variable(int e);
    bool is_fixed(int e) const { return fixed_[e] >= 0; }
    double lower_bound(int e) const { return lo_[e]; }
    double upper_bound(int e) const { return up_[e]; }
    double cost(int e) const { return cost_[e]; }

    void load_basis(const BasisToken& token) { saved_basis_ = token; }
    const BasisToken& basis() const { return saved_basis_; }
    void clear_basis() { saved_basis_ = BasisToken{}; }

    LpSolution solve();

    double last_objective() const { return last_objective_; }

private:
    std::vector<double> cost_;
    std::vector<double> lo_, up_;
    std::vector<signed char> fixed_;  // -1 free, else fixed value 0/1
    std::vector<LpRow> rows_;
    long long next_uid_ = 0;
    BasisToken saved_basis_;
    double last_objective_ = 0;
    bool has_last_objective_ = false;

    void age_rows(const std::vector<double>& slack, bool improved);
};

// Degree equation (row 0) plus deduplicated vertex-degree rows.
LinearProgram build_relaxation(const Hypergraph& h);

}  // namespace hgmst
