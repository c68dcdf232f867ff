#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "slscc/errors.hpp"

namespace slscc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { LE = 'L', EQ = 'E', GE = 'G' };

struct Variable {
    std::string name;
    double lo = 0.0;
    double hi = kInf;
    bool integral = false;
    double cost = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> coeffs; // (variable index, coefficient)
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

/// Solver-agnostic minimization model. Integrality flags are carried along but
/// ignored by the LP solver.
struct LinearModel {
    std::vector<Variable> vars;
    std::vector<Constraint> rows;
    double objectiveConstant = 0.0;

    int addVar(std::string name, double lo, double hi, double cost, bool integral = false) {
        vars.push_back({std::move(name), lo, hi, integral, cost});
        return static_cast<int>(vars.size()) - 1;
    }

    void addRow(std::string name, std::vector<std::pair<int, double>> coeffs, Sense sense,
                double rhs) {
        for (const auto& [idx, c] : coeffs) {
            if (idx < 0 || idx >= static_cast<int>(vars.size()))
                throw Error("row " + name + " references undeclared variable");
            (void)c;
        }
        rows.push_back({std::move(name), std::move(coeffs), sense, rhs});
    }

    int numVars() const { return static_cast<int>(vars.size()); }
    int numRows() const { return static_cast<int>(rows.size()); }

    double objectiveAt(const std::vector<double>& point) const {
        double v = objectiveConstant;
        for (int j = 0; j < numVars(); ++j) v += vars[j].cost * point[j];
        return v;
    }

    /// Signed activity of a row at a point.
    double rowActivity(int r, const std::vector<double>& point) const {
        double a = 0.0;
        for (const auto& [idx, c] : rows[r].coeffs) a += c * point[idx];
        return a;
    }

    /// Largest constraint/bound violation at a point.
    double maxViolation(const std::vector<double>& point) const {
        double worst = 0.0;
        for (int j = 0; j < numVars(); ++j) {
            worst = std::max(worst, vars[j].lo - point[j]);
            worst = std::max(worst, point[j] - vars[j].hi);
        }
        for (int r = 0; r < numRows(); ++r) {
            const double a = rowActivity(r, point);
            switch (rows[r].sense) {
            case Sense::LE: worst = std::max(worst, a - rows[r].rhs); break;
            case Sense::GE: worst = std::max(worst, rows[r].rhs - a); break;
            case Sense::EQ: worst = std::max(worst, std::abs(a - rows[r].rhs)); break;
            }
        }
        return worst;
    }
};

struct ModelStats {
    int vars = 0;
    int rows = 0;
    int integers = 0;
    int fixedVars = 0;
};

inline ModelStats model_stats(const LinearModel& model) {
    ModelStats st;
    st.vars = model.numVars();
    st.rows = model.numRows();
    for (const auto& v : model.vars) {
        if (v.integral) ++st.integers;
        if (v.lo == v.hi) ++st.fixedVars;
    }
    return st;
}

} // namespace slscc
