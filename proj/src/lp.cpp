#include "hgmst/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace hgmst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kDegenStep = 1e-12;
constexpr int kRefactorEvery = 64;
constexpr int kBlandTrigger = 1000;

struct LuFactor {
    int m = 0;
    std::vector<double> a;  // row-major combined L\U
    std::vector<int> ipiv;

    // Dense LU with partial pivoting of the matrix whose k-th column is
    // cols[basic[k]].  Returns false when numerically singular.
    bool factor(const std::vector<std::vector<std::pair<int, double>>>& cols,
                const std::vector<int>& basic) {
        m = static_cast<int>(basic.size());
        a.assign(static_cast<size_t>(m) * m, 0.0);
        ipiv.assign(m, 0);
        for (int k = 0; k < m; ++k)
            for (auto [i, v] : cols[basic[k]]) a[static_cast<size_t>(i) * m + k] = v;
        for (int k = 0; k < m; ++k) {
            int piv = k;
            double best = std::abs(a[static_cast<size_t>(k) * m + k]);
            for (int i = k + 1; i < m; ++i) {
                double c = std::abs(a[static_cast<size_t>(i) * m + k]);
                if (c > best) {
                    best = c;
                    piv = i;
                }
            }
            if (best < 1e-12) return false;
            ipiv[k] = piv;
            if (piv != k)
                for (int j = 0; j < m; ++j)
                    std::swap(a[static_cast<size_t>(k) * m + j],
                              a[static_cast<size_t>(piv) * m + j]);
            const double d = a[static_cast<size_t>(k) * m + k];
            for (int i = k + 1; i < m; ++i) {
                double f = a[static_cast<size_t>(i) * m + k] / d;
                a[static_cast<size_t>(i) * m + k] = f;
                if (f != 0.0)
                    for (int j = k + 1; j < m; ++j)
                        a[static_cast<size_t>(i) * m + j] -=
                            f * a[static_cast<size_t>(k) * m + j];
            }
        }
        return true;
    }

    void ftran(std::vector<double>& z) const {
        for (int k = 0; k < m; ++k)
            if (ipiv[k] != k) std::swap(z[k], z[ipiv[k]]);
        for (int i = 1; i < m; ++i) {
            double s = z[i];
            const double* row = &a[static_cast<size_t>(i) * m];
            for (int j = 0; j < i; ++j) s -= row[j] * z[j];
            z[i] = s;
        }
        for (int i = m - 1; i >= 0; --i) {
            double s = z[i];
            const double* row = &a[static_cast<size_t>(i) * m];
            for (int j = i + 1; j < m; ++j) s -= row[j] * z[j];
            z[i] = s / row[i];
        }
    }

    void btran(std::vector<double>& y) const {
        for (int i = 0; i < m; ++i) {  // U^T forward
            double s = y[i];
            for (int j = 0; j < i; ++j) s -= a[static_cast<size_t>(j) * m + i] * y[j];
            y[i] = s / a[static_cast<size_t>(i) * m + i];
        }
        for (int i = m - 1; i >= 0; --i) {  // L^T backward, unit diagonal
            double s = y[i];
            for (int j = i + 1; j < m; ++j) s -= a[static_cast<size_t>(j) * m + i] * y[j];
            y[i] = s;
        }
        for (int k = m - 1; k >= 0; --k)
            if (ipiv[k] != k) std::swap(y[k], y[ipiv[k]]);
    }
};

struct Eta {
    int p;
    std::vector<double> w;
};

enum VarStat : signed char { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

struct Simplex {
    int m = 0, ns = 0, ncols = 0;
    std::vector<std::vector<std::pair<int, double>>> col;
    std::vector<double> lo, up, cost, rhs;
    std::vector<int> basic;
    std::vector<signed char> stat;
    std::vector<double> xval;
    LuFactor lu;
    std::vector<Eta> etas;
    long iter = 0, iter_cap = 0;
    int degen_run = 0;
    bool bland = false;

    void ftran(std::vector<double>& z) const {
        lu.ftran(z);
        for (const auto& e : etas) {
            double t = z[e.p] / e.w[e.p];
            if (t != 0.0) {
                for (int i = 0; i < m; ++i) z[i] -= e.w[i] * t;
                z[e.p] += e.w[e.p] * t;  // undo, then set below
            }
            z[e.p] = t;
        }
    }

    void btran(std::vector<double>& y) const {
        for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
            double s = 0.0;
            for (int i = 0; i < m; ++i)
                if (i != it->p) s += it->w[i] * y[i];
            y[it->p] = (y[it->p] - s) / it->w[it->p];
        }
        lu.btran(y);
    }

    bool refactor() {
        etas.clear();
        return lu.factor(col, basic);
    }

    void set_nonbasic_values() {
        for (int j = 0; j < ncols; ++j) {
            if (stat[j] == kBasic) continue;
            if (stat[j] == kAtUpper && std::isfinite(up[j]))
                xval[j] = up[j];
            else if (std::isfinite(lo[j]))
                xval[j] = lo[j], stat[j] = kAtLower;
            else
                xval[j] = up[j], stat[j] = kAtUpper;
        }
    }

    void compute_basics() {
        std::vector<double> r = rhs;
        for (int j = 0; j < ncols; ++j) {
            if (stat[j] == kBasic || xval[j] == 0.0) continue;
            for (auto [i, v] : col[j]) r[i] -= v * xval[j];
        }
        ftran(r);
        for (int i = 0; i < m; ++i) xval[basic[i]] = r[i];
    }

    double infeasibility() const {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double v = xval[basic[i]];
            int k = basic[i];
            if (v < lo[k]) s += lo[k] - v;
            if (v > up[k]) s += v - up[k];
        }
        return s;
    }

    // one pricing + pivot step; phase1 selects the composite infeasibility
    // objective.  Returns: 0 = no entering column (phase optimum),
    // 1 = progressed, 2 = iteration limit, 3 = numerical failure.
    int step(bool phase1) {
        if (++iter > iter_cap) return 2;
        std::vector<double> y(m, 0.0);
        bool any_infeas = false;
        for (int i = 0; i < m; ++i) {
            int k = basic[i];
            double v = xval[k];
            double g = 0.0;
            if (v < lo[k] - kFeasTol) g = -1.0, any_infeas = true;
            else if (v > up[k] + kFeasTol) g = 1.0, any_infeas = true;
            y[i] = phase1 ? g : cost[k];
        }
        if (phase1 && !any_infeas) return 0;
        btran(y);

        int enter = -1, dir = 0;
        double best = kDualTol;
        for (int j = 0; j < ncols; ++j) {
            if (stat[j] == kBasic || up[j] - lo[j] <= 0.0) continue;
            double d = phase1 ? 0.0 : cost[j];
            for (auto [i, v] : col[j]) d -= y[i] * v;
            int cand_dir = 0;
            double score = 0.0;
            if (stat[j] == kAtLower && d < -kDualTol) {
                cand_dir = 1;
                score = -d;
            } else if (stat[j] == kAtUpper && d > kDualTol) {
                cand_dir = -1;
                score = d;
            } else {
                continue;
            }
            if (bland) {
                enter = j;
                dir = cand_dir;
                break;
            }
            if (score > best) {
                best = score;
                enter = j;
                dir = cand_dir;
            }
        }
        if (enter < 0) return 0;

        std::vector<double> w(m, 0.0);
        for (auto [i, v] : col[enter]) w[i] = v;
        ftran(w);

        const double t_own = up[enter] - lo[enter];  // own-bound flip distance
        std::vector<double> block_t(m, kInf);
        double t_min = t_own;
        for (int i = 0; i < m; ++i) {
            double rate = -dir * w[i];  // d x_B(i) / dt
            if (std::abs(rate) <= kPivotTol) continue;
            int k = basic[i];
            double v = xval[k];
            double t = kInf;
            if (phase1 && v < lo[k] - kFeasTol) {
                if (rate > 0.0) t = (lo[k] - v) / rate;
            } else if (phase1 && v > up[k] + kFeasTol) {
                if (rate < 0.0) t = (v - up[k]) / (-rate);
            } else if (rate < 0.0) {
                if (std::isfinite(lo[k])) t = (v - lo[k]) / (-rate);
            } else {
                if (std::isfinite(up[k])) t = (up[k] - v) / rate;
            }
            if (t == kInf) continue;
            block_t[i] = std::max(t, 0.0);
            t_min = std::min(t_min, block_t[i]);
        }

        if (!std::isfinite(t_min)) return 3;  // nothing blocks: numerics

        // among all blockers within 1e-12 of the minimum: Bland takes the
        // lowest basic id, otherwise the largest |w| (ties by basic id)
        int leave = -1;
        double leave_pivot = 0.0;
        for (int i = 0; i < m; ++i) {
            if (block_t[i] > t_min + 1e-12) continue;
            bool better;
            if (leave < 0) better = true;
            else if (bland) better = basic[i] < basic[leave];
            else if (std::abs(w[i]) > std::abs(leave_pivot) + 1e-12) better = true;
            else if (std::abs(leave_pivot) > std::abs(w[i]) + 1e-12) better = false;
            else better = basic[i] < basic[leave];
            if (better) {
                leave = i;
                leave_pivot = w[i];
            }
        }
        const double t_limit = leave >= 0 ? block_t[leave] : t_own;

        if (t_limit <= kDegenStep) ++degen_run;
        else degen_run = 0;
        if (degen_run > kBlandTrigger) bland = true;

        if (leave < 0) {
            // bound flip, basis unchanged
            for (int i = 0; i < m; ++i)
                xval[basic[i]] += -dir * w[i] * t_limit;
            stat[enter] = (dir > 0) ? kAtUpper : kAtLower;
            xval[enter] = (dir > 0) ? up[enter] : lo[enter];
            return 1;
        }

        if (std::abs(leave_pivot) < 1e-7 && !etas.empty()) {
            if (!refactor()) return 3;
            compute_basics();
            return 1;  // retry with a fresh factorization
        }

        for (int i = 0; i < m; ++i) xval[basic[i]] += -dir * w[i] * t_limit;
        int k_out = basic[leave];
        // snap the leaving variable onto whichever bound it stopped at
        double dlo = std::isfinite(lo[k_out]) ? std::abs(xval[k_out] - lo[k_out]) : kInf;
        double dup = std::isfinite(up[k_out]) ? std::abs(xval[k_out] - up[k_out]) : kInf;
        if (dlo <= dup) {
            xval[k_out] = lo[k_out];
            stat[k_out] = kAtLower;
        } else {
            xval[k_out] = up[k_out];
            stat[k_out] = kAtUpper;
        }
        xval[enter] = (dir > 0) ? lo[enter] + t_limit : up[enter] - t_limit;
        basic[leave] = enter;
        stat[enter] = kBasic;
        etas.push_back({leave, w});
        if (static_cast<int>(etas.size()) >= kRefactorEvery) {
            if (!refactor()) return 3;
            compute_basics();
        }
        return 1;
    }

    // runs a phase to completion; returns 0 optimum, 2 iter limit, 3 failure
    int run(bool phase1) {
        int clean = 0;
        while (true) {
            int r = step(phase1);
            if (r == 1) {
                clean = 0;
                continue;
            }
            if (r == 0) {
                // confirm on a fresh factorization before declaring done
                if (clean == 0 && !etas.empty()) {
                    if (!refactor()) return 3;
                    compute_basics();
                    clean = 1;
                    continue;
                }
                return 0;
            }
            if (r == 3) {
                if (!refactor()) return 3;
                compute_basics();
                if (clean == 2) return 2;  // persistent trouble
                clean = 2;
                continue;
            }
            return r;
        }
    }
};

}  // namespace

LinearProgram::LinearProgram(std::vector<double> costs)
    : cost_(std::move(costs)),
      lo_(cost_.size(), 0.0),
      up_(cost_.size(), 1.0),
      fixed_(cost_.size(), -1) {}

long long LinearProgram::add_row(LpRowSpec spec) {
    if (spec.relation != '=' && spec.relation != '<' && spec.relation != '>')
        throw std::invalid_argument("bad row relation");
    for (auto [j, v] : spec.coeffs) {
        if (j < 0 || j >= column_count())
            throw std::invalid_argument("row references unknown variable");
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
    }
    if (!std::is_sorted(spec.coeffs.begin(), spec.coeffs.end(),
                        [](auto& a, auto& b) { return a.first < b.first; }))
        std::sort(spec.coeffs.begin(), spec.coeffs.end());
    LpRow r;
    r.uid = next_uid_++;
    r.origin = spec.origin;
    r.relation = spec.relation;
    r.coeffs = std::move(spec.coeffs);
    r.rhs = spec.rhs;
    r.pool_key = spec.pool_key;
    rows_.push_back(std::move(r));
    return rows_.back().uid;
}

std::vector<long long> LinearProgram::add_rows(std::vector<LpRowSpec> specs) {
    std::vector<long long> ids;
    ids.reserve(specs.size());
    for (auto& s : specs) ids.push_back(add_row(std::move(s)));
    return ids;
}

int LinearProgram::delete_slack_rows(
    int min_age, const std::unordered_set<std::uint64_t>* protect) {
    int removed = 0;
    std::vector<LpRow> kept;
    kept.reserve(rows_.size());
    for (auto& r : rows_) {
        bool drop = r.origin != RowOrigin::DegreeEquation &&
                    r.slack_age >= min_age &&
                    !(protect && r.pool_key != 0 && protect->count(r.pool_key));
        if (drop) ++removed;
        else kept.push_back(std::move(r));
    }
    rows_ = std::move(kept);
    return removed;
}

void LinearProgram::fix_variable(int e, double value) {
    if (e < 0 || e >= column_count()) throw std::invalid_argument("bad variable");
    if (value != 0.0 && value != 1.0)
        throw std::invalid_argument("fix value must be 0 or 1");
    lo_[e] = up_[e] = value;
    fixed_[e] = static_cast<signed char>(value);
}

void LinearProgram::unfix_variable(int e) {
    if (e < 0 || e >= column_count()) throw std::invalid_argument("bad variable");
    lo_[e] = 0.0;
    up_[e] = 1.0;
    fixed_[e] = -1;
}

void LinearProgram::age_rows(const std::vector<double>& slack, bool improved) {
    for (size_t i = 0; i < rows_.size(); ++i) {
        rows_[i].last_slack = slack[i];
        if (improved) rows_[i].slack_age = 0;
        else if (slack[i] > kRowTol) rows_[i].slack_age += 1;
        else rows_[i].slack_age = 0;
    }
}

LpSolution LinearProgram::solve() {
    if (rows_.empty()) throw std::logic_error("solve on an LP with no rows");
    const int m = row_count();
    const int ns = column_count();

    Simplex sx;
    sx.m = m;
    sx.ns = ns;
    sx.ncols = ns + m;
    sx.col.assign(sx.ncols, {});
    sx.lo.assign(sx.ncols, 0.0);
    sx.up.assign(sx.ncols, 0.0);
    sx.cost.assign(sx.ncols, 0.0);
    sx.rhs.resize(m);
    sx.stat.assign(sx.ncols, kAtLower);
    sx.xval.assign(sx.ncols, 0.0);
    sx.iter_cap = 50L * (m + sx.ncols);

    for (int j = 0; j < ns; ++j) {
        sx.lo[j] = lo_[j];
        sx.up[j] = up_[j];
        sx.cost[j] = cost_[j];
    }
    for (int i = 0; i < m; ++i) {
        const LpRow& r = rows_[i];
        sx.rhs[i] = r.rhs;
        for (auto [j, v] : r.coeffs) sx.col[j].push_back({i, v});
        int s = ns + i;
        sx.col[s].push_back({i, 1.0});
        switch (r.relation) {
            case '=': sx.lo[s] = 0.0; sx.up[s] = 0.0; break;
            case '<': sx.lo[s] = 0.0; sx.up[s] = kInf; break;
            case '>': sx.lo[s] = -kInf; sx.up[s] = 0.0; break;
        }
    }

    // materialize starting basis from the saved token
    std::unordered_map<long long, int> uid_to_row;
    for (int i = 0; i < m; ++i) uid_to_row[rows_[i].uid] = i;
    auto decode = [&](long long code) -> int {
        if (code >= 0) return code < ns ? static_cast<int>(code) : -1;
        auto it = uid_to_row.find(-1 - code);
        return it == uid_to_row.end() ? -1 : ns + it->second;
    };
    sx.basic.assign(m, -1);
    std::vector<char> claimed(sx.ncols, 0);
    for (auto [uid, code] : saved_basis_.row_basic) {
        auto it = uid_to_row.find(uid);
        if (it == uid_to_row.end()) continue;
        int j = decode(code);
        if (j >= 0 && !claimed[j] && sx.basic[it->second] < 0) {
            sx.basic[it->second] = j;
            claimed[j] = 1;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (sx.basic[i] >= 0) continue;
        if (!claimed[ns + i]) {
            sx.basic[i] = ns + i;
            claimed[ns + i] = 1;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (sx.basic[i] >= 0) continue;
        for (int j = 0; j < sx.ncols; ++j)
            if (!claimed[j]) {
                sx.basic[i] = j;
                claimed[j] = 1;
                break;
            }
    }
    for (int i = 0; i < m; ++i) sx.stat[sx.basic[i]] = kBasic;
    for (long long code : saved_basis_.at_upper) {
        int j = decode(code);
        if (j >= 0 && sx.stat[j] != kBasic && std::isfinite(sx.up[j]))
            sx.stat[j] = kAtUpper;
    }

    if (!sx.refactor()) {
        // degenerate token: restart from the all-logical basis
        for (int i = 0; i < m; ++i) sx.stat[sx.basic[i]] = kAtLower;
        sx.basic.clear();
        for (int i = 0; i < m; ++i) {
            sx.basic.push_back(ns + i);
            sx.stat[ns + i] = kBasic;
        }
        bool ok = sx.refactor();
        assert(ok);
        (void)ok;
    }
    sx.set_nonbasic_values();
    sx.compute_basics();

    LpSolution out;
    int rc = 0;
    if (sx.infeasibility() > kFeasTol) rc = sx.run(true);
    if (rc == 0 && sx.infeasibility() > 1e-7) {
        out.status = LpStatus::Infeasible;
    } else if (rc == 0) {
        rc = sx.run(false);
        out.status = rc == 0 ? LpStatus::Optimal : LpStatus::IterationLimit;
    } else {
        out.status = LpStatus::IterationLimit;
    }

    // save the final basis regardless of status so a re-solve resumes
    BasisToken token;
    auto encode = [&](int j) -> long long {
        return j < ns ? static_cast<long long>(j) : -1 - rows_[j - ns].uid;
    };
    for (int i = 0; i < m; ++i) token.row_basic.push_back({rows_[i].uid, encode(sx.basic[i])});
    for (int j = 0; j < sx.ncols; ++j)
        if (sx.stat[j] == kAtUpper) token.at_upper.push_back(encode(j));
    saved_basis_ = token;
    out.basis = token;

    out.x.x.assign(ns, 0.0);
    for (int j = 0; j < ns; ++j)
        out.x.x[j] = std::min(std::max(sx.xval[j], lo_[j]), up_[j]);
    out.objective = 0.0;
    for (int j = 0; j < ns; ++j) out.objective += cost_[j] * out.x.x[j];
    out.row_slack.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double act = 0.0;
        for (auto [j, v] : rows_[i].coeffs) act += v * out.x.x[j];
        switch (rows_[i].relation) {
            case '<': out.row_slack[i] = rows_[i].rhs - act; break;
            case '>': out.row_slack[i] = act - rows_[i].rhs; break;
            default: out.row_slack[i] = -std::abs(act - rows_[i].rhs); break;
        }
    }
    for (int j = 0; j < ns; ++j)
        if (out.x.x[j] > kFracEps && out.x.x[j] < 1.0 - kFracEps)
            out.fractional.push_back(j);

    if (out.status == LpStatus::Optimal) {
        bool improved =
            !has_last_objective_ || out.objective > last_objective_ + 1e-9;
        age_rows(out.row_slack, improved);
        last_objective_ = out.objective;
        has_last_objective_ = true;
    }
    return out;
}

LinearProgram build_relaxation(const Hypergraph& h) {
    h.validate();
    if (h.n < 2) throw std::invalid_argument("need at least 2 vertices");
    LinearProgram lp(h.weights);

    LpRowSpec total;
    total.origin = RowOrigin::DegreeEquation;
    total.relation = '=';
    total.rhs = h.n - 1;
    for (int j = 0; j < static_cast<int>(h.edge_count()); ++j)
        total.coeffs.push_back({j, double(h.edges[j].size() - 1)});
    lp.add_row(std::move(total));

    std::vector<std::vector<int>> incident(h.n);
    for (int j = 0; j < static_cast<int>(h.edge_count()); ++j)
        for (int v : h.edges[j]) incident[v].push_back(j);
    std::map<std::vector<int>, int> seen;
    for (int v = 0; v < h.n; ++v) {
        if (!seen.emplace(incident[v], v).second) continue;
        LpRowSpec row;
        row.origin = RowOrigin::VertexDegree;
        row.relation = '>';
        row.rhs = 1.0;
        for (int j : incident[v]) row.coeffs.push_back({j, 1.0});
        lp.add_row(std::move(row));
    }
    return lp;
}

}  // namespace hgmst
