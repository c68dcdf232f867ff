#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "slscc/errors.hpp"

namespace slscc {

/// max(0, v)
inline double pos_part(double v) { return v > 0.0 ? v : 0.0; }

struct Scenario {
    double prob = 0.0;
    std::vector<double> demands; // one entry per second-stage period
};

/// A two-stage lot-sizing instance. Periods are 0-based: 0..p-1 have the
/// deterministic demands d, p..T-1 carry the scenario demands. epsilon is the
/// admissible probability of dropping a scenario's demand requirements.
struct Instance {
    int T = 0;
    int p = 0;
    std::vector<double> alpha; // unit production cost, length T
    std::vector<double> beta;  // setup cost, length T
    std::vector<double> h;     // unit holding cost, length T
    std::vector<double> d;     // first-stage demands, length p
    std::vector<Scenario> scenarios;
    double epsilon = 0.0;

    int m() const { return static_cast<int>(scenarios.size()); }
    int secondStageLen() const { return T - p; }
};

struct ValidationIssue {
    std::string field;
    int index = -1; // -1 when the issue is not tied to a position
    std::string message;

    std::string str() const {
        if (index >= 0) return field + "[" + std::to_string(index) + "]: " + message;
        return field + ": " + message;
    }
};

namespace detail {

inline void checkNonnegFinite(const std::vector<double>& v, const char* field, int expectLen,
                              std::vector<ValidationIssue>& out) {
    if (static_cast<int>(v.size()) != expectLen) {
        out.push_back({field, -1,
                       "expected " + std::to_string(expectLen) + " entries, got " +
                           std::to_string(v.size())});
    }
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (!std::isfinite(v[i])) out.push_back({field, i, "not finite"});
        else if (v[i] < 0.0) out.push_back({field, i, "negative"});
    }
}

} // namespace detail

/// Collects every violation instead of stopping at the first one. An empty
/// result means the instance is usable.
inline std::vector<ValidationIssue> validate_instance(const Instance& inst) {
    std::vector<ValidationIssue> out;
    if (inst.T < 1) out.push_back({"T", -1, "must be >= 1"});
    if (inst.p < 1 || inst.p > inst.T)
        out.push_back({"p", -1, "must satisfy 1 <= p <= T"});
    if (inst.m() < 1) out.push_back({"scenarios", -1, "need at least one scenario"});
    if (!std::isfinite(inst.epsilon) || inst.epsilon < 0.0)
        out.push_back({"epsilon", -1, "must be >= 0"});
    else if (inst.epsilon >= 1.0)
        out.push_back({"epsilon", -1, "must be < 1"});

    if (inst.T < 1 || inst.p < 1 || inst.p > inst.T) return out; // lengths meaningless

    detail::checkNonnegFinite(inst.alpha, "alpha", inst.T, out);
    detail::checkNonnegFinite(inst.beta, "beta", inst.T, out);
    detail::checkNonnegFinite(inst.h, "h", inst.T, out);
    detail::checkNonnegFinite(inst.d, "d", inst.p, out);

    double probSum = 0.0;
    for (int j = 0; j < inst.m(); ++j) {
        const Scenario& sc = inst.scenarios[j];
        if (!std::isfinite(sc.prob)) {
            out.push_back({"scenarios.prob", j, "not finite"});
        } else if (sc.prob <= 0.0 || sc.prob > 1.0) {
            out.push_back({"scenarios.prob", j, "must lie in (0, 1]"});
        }
        probSum += sc.prob;
        if (static_cast<int>(sc.demands.size()) != inst.secondStageLen()) {
            out.push_back({"scenarios.demands", j,
                           "expected " + std::to_string(inst.secondStageLen()) +
                               " entries, got " + std::to_string(sc.demands.size())});
            continue;
        }
        for (int t = 0; t < inst.secondStageLen(); ++t) {
            if (!std::isfinite(sc.demands[t]))
                out.push_back({"scenarios.demands", j, "entry " + std::to_string(t) + " not finite"});
            else if (sc.demands[t] < 0.0)
                out.push_back({"scenarios.demands", j, "entry " + std::to_string(t) + " negative"});
        }
    }
    if (inst.m() >= 1 && std::abs(probSum - 1.0) > 1e-9) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "probabilities sum to %.10g", probSum);
        out.push_back({"scenarios.prob", -1, buf});
    }
    return out;
}

inline Instance validated(Instance inst) {
    auto issues = validate_instance(inst);
    if (!issues.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& is : issues) msg += "\n  " + is.str();
        throw Error(msg);
    }
    return inst;
}

/// Wagner-Whitin cost condition report. The first-stage comparison runs
/// through i = p-1 (0-based), so the stage-boundary inequality
/// alpha[p-1] + h[p-1] >= alpha[p] is included; the second stage uses the
/// (1 - epsilon) weight. For p = T the second stage is empty and the check
/// degenerates to the classic condition.
struct WwReport {
    bool holds = true;
    std::vector<int> violations;       // 0-based period indices
    std::vector<double> margins;       // lhs - rhs per checked period, length T-1
};

inline WwReport check_ww(const Instance& inst) {
    WwReport rep;
    rep.margins.assign(std::max(0, inst.T - 1), 0.0);
    for (int i = 0; i + 1 < inst.T; ++i) {
        const double w = (i < inst.p) ? 1.0 : (1.0 - inst.epsilon);
        const double margin = inst.alpha[i] + w * inst.h[i] - inst.alpha[i + 1];
        rep.margins[i] = margin;
        if (margin < -1e-12) {
            rep.holds = false;
            rep.violations.push_back(i);
        }
    }
    return rep;
}

/// Running demand sums. D[j][k] accumulates scenario j's demands over the
/// second-stage periods p..p+k; firstStageSuffix[i] sums d over i..p-1.
struct CumulantTable {
    std::vector<std::vector<double>> D;
    std::vector<double> firstStageSuffix;

    /// Cumulative scenario demand through 0-based period t (0 for t < p).
    double at(int j, int t, int p) const {
        if (t < p) return 0.0;
        return D[j][t - p];
    }
};

inline CumulantTable cumulants(const Instance& inst) {
    CumulantTable tab;
    tab.D.resize(inst.m());
    for (int j = 0; j < inst.m(); ++j) {
        tab.D[j].resize(inst.secondStageLen());
        double run = 0.0;
        for (int k = 0; k < inst.secondStageLen(); ++k) {
            run += inst.scenarios[j].demands[k];
            tab.D[j][k] = run;
        }
    }
    tab.firstStageSuffix.assign(inst.p, 0.0);
    double suf = 0.0;
    for (int i = inst.p - 1; i >= 0; --i) {
        suf += inst.d[i];
        tab.firstStageSuffix[i] = suf;
    }
    return tab;
}

/// Setup-pattern queries over a binary vector y. next(i) is the smallest
/// setup index > i (sentinel T when none, mirroring the y_{T+1} = 1
/// convention); prev(i) the largest setup index < i (-1 when none).
class SetupPattern {
public:
    explicit SetupPattern(std::vector<int> y) : y_(std::move(y)) {
        const int T = static_cast<int>(y_.size());
        next_.assign(T + 1, T);
        for (int i = T - 1; i >= 0; --i)
            next_[i] = (y_[i] == 1) ? i : next_[i + 1];
        prev_.assign(T + 1, -1);
        for (int i = 1; i <= T; ++i)
            prev_[i] = (y_[i - 1] == 1) ? (i - 1) : prev_[i - 1];
    }

    int size() const { return static_cast<int>(y_.size()); }
    const std::vector<int>& y() const { return y_; }

    int next(int i) const { return (i + 1 >= size()) ? size() : next_[i + 1]; }
    int prev(int i) const { return (i <= 0) ? -1 : prev_[i]; }
    bool hasSetupAtOrBefore(int i) const { return prev_[std::min(i + 1, size())] >= 0; }

private:
    std::vector<int> y_;
    std::vector<int> next_;
    std::vector<int> prev_;
};

/// Occurred-scenario indices for an indicator vector z (the set {j : z_j = 0}).
inline std::vector<int> occurred_set(const std::vector<int>& z) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(z.size()); ++j)
        if (z[j] == 0) out.push_back(j);
    return out;
}

} // namespace slscc
