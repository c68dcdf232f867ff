#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "slscc/linear_model.hpp"

namespace slscc {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> point; // one value per model variable; best feasible
                               // point found when status == Unbounded
    bool isVertex = false;
    long pivots = 0;
};

/// Dense bounded-variable simplex over the model's rows plus one slack per
/// row. When the all-slack basis is dual feasible (every nonbasic variable can
/// sit at a bound consistent with its cost sign) a dual simplex runs directly;
/// otherwise a zero-cost dual pass restores primal feasibility and a primal
/// Dantzig phase (switching to Bland's rule after 10*rows degenerate pivots)
/// finishes. Tolerances: feasibility 1e-7, pivot 1e-9, zero-snap 1e-11.
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearModel& model) : model_(model) { build(); }

    LpResult solve() {
        LpResult res;
        res.pivots = 0;
        if (n_ == 0) {
            res.status = LpStatus::Optimal;
            res.objective = model_.objectiveConstant;
            res.isVertex = true;
            return res;
        }
        pivotCap_ = std::max<long>(1000, 50L * (model_.numRows() + model_.numVars()));
        pivots_ = 0;
        degenerate_ = 0;
        bland_ = false;

        if (dualStartOk_) {
            for (int j = 0; j < ncols_; ++j) dcost_[j] = cost_[j];
            const Outcome out = dualLoop();
            if (out == Outcome::Infeasible) return finish(res, LpStatus::Infeasible);
            return finish(res, LpStatus::Optimal);
        }

        // phase 1: restore primal feasibility against a zero objective
        std::fill(dcost_.begin(), dcost_.end(), 0.0);
        if (dualLoop() == Outcome::Infeasible) return finish(res, LpStatus::Infeasible);

        // phase 2: true costs from the phase-1 basis
        resetCostRow();
        degenerate_ = 0;
        bland_ = false;
        const Outcome out = primalLoop();
        if (out == Outcome::Unbounded) return finish(res, LpStatus::Unbounded);
        return finish(res, LpStatus::Optimal);
    }

private:
    enum class St : unsigned char { AtLo, AtHi, Free, Basic };
    enum class Outcome { Optimal, Infeasible, Unbounded };

    static constexpr double kDualTol = 1e-9;  // reduced-cost tolerance
    static constexpr double kPivTol = 1e-9;   // minimum pivot magnitude
    static constexpr double kSnap = 1e-11;

    const LinearModel& model_;
    int n_ = 0;     // structural variables
    int mr_ = 0;    // rows
    int ncols_ = 0; // structural + slacks
    std::vector<double> tab_;   // mr x ncols, row-major
    std::vector<double> b_;     // original right-hand sides
    std::vector<double> lo_, hi_, cost_;
    std::vector<double> dcost_; // reduced costs
    std::vector<double> xB_;    // values of basic variables
    std::vector<int> basis_;
    std::vector<St> status_;
    bool dualStartOk_ = true;
    long pivots_ = 0, pivotCap_ = 0, degenerate_ = 0;
    bool bland_ = false;

    double* row(int r) { return tab_.data() + static_cast<std::size_t>(r) * ncols_; }
    const double* row(int r) const { return tab_.data() + static_cast<std::size_t>(r) * ncols_; }

    double nbval(int j) const {
        switch (status_[j]) {
        case St::AtLo: return lo_[j];
        case St::AtHi: return hi_[j];
        default: return 0.0;
        }
    }

    void build() {
        n_ = model_.numVars();
        mr_ = model_.numRows();
        ncols_ = n_ + mr_;
        lo_.resize(ncols_);
        hi_.resize(ncols_);
        cost_.assign(ncols_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = model_.vars[j].lo;
            hi_[j] = model_.vars[j].hi;
            cost_[j] = model_.vars[j].cost;
            if (lo_[j] > hi_[j]) throw Error("variable " + model_.vars[j].name + " has lo > hi");
        }
        b_.resize(mr_);
        for (int r = 0; r < mr_; ++r) {
            const Constraint& c = model_.rows[r];
            b_[r] = c.rhs;
            const int sj = n_ + r;
            switch (c.sense) {
            case Sense::LE: lo_[sj] = 0.0; hi_[sj] = kInf; break;
            case Sense::GE: lo_[sj] = -kInf; hi_[sj] = 0.0; break;
            case Sense::EQ: lo_[sj] = 0.0; hi_[sj] = 0.0; break;
            }
        }

        tab_.assign(static_cast<std::size_t>(mr_) * ncols_, 0.0);
        for (int r = 0; r < mr_; ++r) {
            double* tr = row(r);
            for (const auto& [idx, v] : model_.rows[r].coeffs) tr[idx] += v;
            tr[n_ + r] = 1.0;
        }

        status_.assign(ncols_, St::AtLo);
        dualStartOk_ = true;
        for (int j = 0; j < n_; ++j) {
            if (lo_[j] == hi_[j]) {
                status_[j] = St::AtLo;
            } else if (cost_[j] > kDualTol) {
                if (std::isfinite(lo_[j])) status_[j] = St::AtLo;
                else { status_[j] = std::isfinite(hi_[j]) ? St::AtHi : St::Free; dualStartOk_ = false; }
            } else if (cost_[j] < -kDualTol) {
                if (std::isfinite(hi_[j])) status_[j] = St::AtHi;
                else { status_[j] = std::isfinite(lo_[j]) ? St::AtLo : St::Free; dualStartOk_ = false; }
            } else {
                if (std::isfinite(lo_[j])) status_[j] = St::AtLo;
                else if (std::isfinite(hi_[j])) status_[j] = St::AtHi;
                else status_[j] = St::Free;
            }
        }

        basis_.resize(mr_);
        xB_.assign(mr_, 0.0);
        for (int r = 0; r < mr_; ++r) {
            basis_[r] = n_ + r;
            status_[n_ + r] = St::Basic;
            double v = b_[r];
            for (const auto& [idx, c] : model_.rows[r].coeffs) v -= c * nbval(idx);
            xB_[r] = v;
        }
        dcost_.assign(ncols_, 0.0);
    }

    void resetCostRow() {
        for (int j = 0; j < ncols_; ++j) dcost_[j] = cost_[j];
        for (int r = 0; r < mr_; ++r) {
            const double cb = cost_[basis_[r]];
            if (std::abs(cb) < 1e-300) continue;
            const double* tr = row(r);
            for (int j = 0; j < ncols_; ++j) dcost_[j] -= cb * tr[j];
        }
        for (int r = 0; r < mr_; ++r) dcost_[basis_[r]] = 0.0;
    }

    void pivot(int r, int q) {
        double* pr = row(r);
        const double piv = pr[q];
        const double inv = 1.0 / piv;
        for (int j = 0; j < ncols_; ++j) pr[j] *= inv;
        pr[q] = 1.0;
        for (int i = 0; i < mr_; ++i) {
            if (i == r) continue;
            double* ti = row(i);
            const double f = ti[q];
            if (std::abs(f) < 1e-14) { ti[q] = 0.0; continue; }
            for (int j = 0; j < ncols_; ++j) ti[j] -= f * pr[j];
            ti[q] = 0.0;
        }
        const double fc = dcost_[q];
        if (std::abs(fc) > 1e-14) {
            for (int j = 0; j < ncols_; ++j) dcost_[j] -= fc * pr[j];
        }
        dcost_[q] = 0.0;
        ++pivots_;
    }

    void checkPivotBudget() {
        if (pivots_ > pivotCap_)
            throw NumericalFailureError("pivot limit " + std::to_string(pivotCap_) +
                                        " exhausted");
    }

    void noteDegenerate(double step) {
        if (std::abs(step) <= 1e-10) {
            if (++degenerate_ > 10L * std::max(1, mr_)) bland_ = true;
        } else {
            degenerate_ = 0;
        }
    }

    // ---- dual simplex -------------------------------------------------

    Outcome dualLoop() {
        for (;;) {
            checkPivotBudget();
            int rr = -1;
            double worst = kFeasTol;
            bool below = false;
            for (int r = 0; r < mr_; ++r) {
                const int bv = basis_[r];
                const double vLo = lo_[bv] - xB_[r];
                const double vHi = xB_[r] - hi_[bv];
                const double v = std::max(vLo, vHi);
                if (v <= kFeasTol) continue;
                bool take;
                if (rr < 0) take = true;
                else if (bland_) take = bv < basis_[rr];
                else take = v > worst + 1e-12 || (v > worst - 1e-12 && bv < basis_[rr]);
                if (take) {
                    worst = v;
                    rr = r;
                    below = vLo >= vHi;
                }
            }
            if (rr < 0) return Outcome::Optimal;

            const double* tr = row(rr);
            int q = -1;
            double bestRatio = kInf;
            for (int j = 0; j < ncols_; ++j) {
                if (status_[j] == St::Basic || lo_[j] == hi_[j]) continue;
                const double a = tr[j];
                bool ok = false;
                if (below) {
                    ok = ((status_[j] == St::AtLo || status_[j] == St::Free) && a < -kPivTol) ||
                         ((status_[j] == St::AtHi || status_[j] == St::Free) && a > kPivTol);
                } else {
                    ok = ((status_[j] == St::AtLo || status_[j] == St::Free) && a > kPivTol) ||
                         ((status_[j] == St::AtHi || status_[j] == St::Free) && a < -kPivTol);
                }
                if (!ok) continue;
                if (bland_) { q = (q < 0) ? j : q; if (q == j) break; continue; }
                const double ratio = std::abs(dcost_[j]) / std::abs(a);
                if (ratio < bestRatio - 1e-12 || (ratio < bestRatio + 1e-12 && (q < 0 || j < q))) {
                    bestRatio = ratio;
                    q = j;
                }
            }
            if (q < 0) return Outcome::Infeasible;

            const int leaving = basis_[rr];
            const double target = below ? lo_[leaving] : hi_[leaving];
            const double step = (xB_[rr] - target) / tr[q];
            const double enterVal = nbval(q) + step;
            for (int r = 0; r < mr_; ++r) xB_[r] -= row(r)[q] * step;
            status_[leaving] = below ? St::AtLo : St::AtHi;
            pivot(rr, q);
            basis_[rr] = q;
            status_[q] = St::Basic;
            xB_[rr] = enterVal;
            noteDegenerate(step);
        }
    }

    // ---- primal simplex -----------------------------------------------

    Outcome primalLoop() {
        for (;;) {
            checkPivotBudget();
            int q = -1, dir = 0;
            double best = kDualTol;
            for (int j = 0; j < ncols_; ++j) {
                if (status_[j] == St::Basic || lo_[j] == hi_[j]) continue;
                const double d = dcost_[j];
                int cand = 0;
                if ((status_[j] == St::AtLo || status_[j] == St::Free) && d < -kDualTol) cand = +1;
                else if ((status_[j] == St::AtHi || status_[j] == St::Free) && d > kDualTol) cand = -1;
                if (cand == 0) continue;
                if (bland_) { q = j; dir = cand; break; }
                if (std::abs(d) > best + 1e-15) {
                    best = std::abs(d);
                    q = j;
                    dir = cand;
                }
            }
            if (q < 0) return Outcome::Optimal;

            double tBest = kInf;
            int rBest = -1; // -1: entering variable flips to its other bound
            if (std::isfinite(lo_[q]) && std::isfinite(hi_[q])) tBest = hi_[q] - lo_[q];
            for (int r = 0; r < mr_; ++r) {
                const double a = row(r)[q] * dir;
                const int bv = basis_[r];
                double t;
                if (a > kPivTol && std::isfinite(lo_[bv])) t = (xB_[r] - lo_[bv]) / a;
                else if (a < -kPivTol && std::isfinite(hi_[bv])) t = (hi_[bv] - xB_[r]) / (-a);
                else continue;
                t = std::max(t, 0.0);
                bool take;
                if (t < tBest - 1e-12) take = true;
                else if (t < tBest + 1e-12 && rBest >= 0) take = bv < basis_[rBest];
                else take = false;
                if (take) {
                    tBest = t;
                    rBest = r;
                }
            }
            if (!std::isfinite(tBest)) return Outcome::Unbounded;

            for (int r = 0; r < mr_; ++r) xB_[r] -= row(r)[q] * dir * tBest;
            if (rBest < 0) {
                status_[q] = (status_[q] == St::AtLo) ? St::AtHi : St::AtLo;
            } else {
                const int leaving = basis_[rBest];
                const double a = row(rBest)[q] * dir;
                status_[leaving] = (a > 0) ? St::AtLo : St::AtHi;
                const double enterVal = nbval(q) + dir * tBest;
                pivot(rBest, q);
                basis_[rBest] = q;
                status_[q] = St::Basic;
                xB_[rBest] = enterVal;
            }
            noteDegenerate(tBest);
        }
    }

    // ---- finalization --------------------------------------------------

    void refreshBasicValues() {
        for (int r = 0; r < mr_; ++r) {
            const double* tr = row(r);
            double v = 0.0;
            for (int i = 0; i < mr_; ++i) v += tr[n_ + i] * b_[i];
            for (int j = 0; j < ncols_; ++j) {
                if (status_[j] == St::Basic) continue;
                const double nb = nbval(j);
                if (nb != 0.0) v -= tr[j] * nb;
            }
            xB_[r] = v;
        }
    }

    LpResult finish(LpResult& res, LpStatus st) {
        if (st == LpStatus::Optimal) refreshBasicValues();
        res.status = st;
        res.isVertex = st != LpStatus::Infeasible;
        res.point.assign(n_, 0.0);
        if (st != LpStatus::Infeasible) {
            for (int j = 0; j < n_; ++j)
                if (status_[j] != St::Basic) res.point[j] = nbval(j);
            for (int r = 0; r < mr_; ++r)
                if (basis_[r] < n_) res.point[basis_[r]] = xB_[r];
            for (double& v : res.point)
                if (std::abs(v) < kSnap) v = 0.0;
            res.objective = model_.objectiveAt(res.point);
        }
        res.pivots = pivots_;
        return res;
    }
};

/// Solves the linear relaxation of a model (integrality flags ignored).
inline LpResult solve_lp(const LinearModel& model) { return SimplexSolver(model).solve(); }

/// Pins the listed variables to values (which must respect their bounds) and
/// solves the result.
inline LpResult fix_and_solve(const LinearModel& model,
                              const std::vector<std::pair<int, double>>& fixings) {
    LinearModel fixed = model;
    for (const auto& [idx, val] : fixings) {
        if (idx < 0 || idx >= fixed.numVars()) throw Error("fix_and_solve: bad variable index");
        Variable& v = fixed.vars[idx];
        if (val < v.lo - 1e-9 || val > v.hi + 1e-9)
            throw Error("fix_and_solve: value outside bounds of " + v.name);
        v.lo = v.hi = val;
    }
    return solve_lp(fixed);
}

} // namespace slscc
