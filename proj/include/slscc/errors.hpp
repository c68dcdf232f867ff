#pragma once

#include <stdexcept>
#include <string>

namespace slscc {

inline constexpr double kFeasTol = 1e-7;     // constraint satisfaction
inline constexpr double kExactTol = 1e-9;    // relative exactness assertions
inline constexpr double kCompareTol = 1e-12; // coefficient/probability comparisons

/// Base class for all slscc exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A plan violates the problem constraints (flow balance, chance constraint,
/// setup link, or a chosen scenario running out of stock).
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error("infeasible: " + what) {}
};

/// A setup pattern cannot cover some positive demand.
class InfeasiblePatternError : public Error {
public:
    explicit InfeasiblePatternError(const std::string& what)
        : Error("infeasible pattern: " + what) {}
};

/// An operation was called with an empty occurred-scenario set.
class EmptySetError : public Error {
public:
    EmptySetError() : Error("occurred-scenario set is empty") {}
};

/// A branch-and-bound node fixes no scenario to z = 0 where one is required.
class EmptyJ1Error : public Error {
public:
    EmptyJ1Error() : Error("node has no z=0 fixing; use the full model with variable fixings") {}
};

/// A node's z=1 fixings already exceed the risk budget.
class InfeasibleNodeError : public Error {
public:
    explicit InfeasibleNodeError(const std::string& what) : Error("infeasible node: " + what) {}
};

/// The Wagner-Whitin cost condition does not hold but is required.
class AssumptionViolatedError : public Error {
public:
    explicit AssumptionViolatedError(const std::string& what)
        : Error("cost assumption violated: " + what) {}
};

/// Enumeration guard tripped (instance too large for an exhaustive method).
class TooLargeError : public Error {
public:
    explicit TooLargeError(const std::string& what) : Error("too large: " + what) {}
};

/// The scenario-set family exceeds the configured cap.
class FamilyTooLargeError : public Error {
public:
    explicit FamilyTooLargeError(const std::string& what) : Error("family too large: " + what) {}
};

/// No fractional entry exists to branch on.
class NoFractionalError : public Error {
public:
    NoFractionalError() : Error("indicator vector is already integral") {}
};

/// The simplex ran out of pivots (after anti-cycling engaged).
class NumericalFailureError : public Error {
public:
    explicit NumericalFailureError(const std::string& what)
        : Error("numerical failure: " + what) {}
};

} // namespace slscc
