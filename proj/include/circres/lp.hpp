#pragma once

#include "circres/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace circres::lp {

struct Term {
    int var;
    Rational coeff;
};

/// sum(coeffs) >= rhs
struct Constraint {
    std::vector<Term> coeffs;  // sorted by var, no zeros, no repeats
    Rational rhs;
};

/// A pure system of `>=` inequalities over free (sign-unrestricted) variables.
/// There is no objective: the only question is feasibility.
class LinearProgram {
public:
    explicit LinearProgram(int num_vars = 0) : num_vars_(num_vars) {}

    int num_vars() const noexcept { return num_vars_; }
    int add_variable() { return num_vars_++; }

    /// Canonicalizes the row (sorts, merges repeated variables, drops zeros)
    /// and returns its index. Throws std::out_of_range for bad variable ids.
    std::size_t add_constraint(std::vector<Term> coeffs, Rational rhs);

    const std::vector<Constraint>& constraints() const noexcept { return rows_; }
    std::size_t num_constraints() const noexcept { return rows_.size(); }

private:
    int num_vars_;
    std::vector<Constraint> rows_;
};

struct SolveStats {
    std::size_t rows = 0;            // general rows handed to the simplex
    std::size_t columns = 0;         // nonnegative columns handed to the simplex
    std::size_t presolved_rows = 0;  // rows discharged before the simplex
    std::size_t presolved_columns = 0;
    std::size_t pivots = 0;          // exact pivots
    std::size_t float_iterations = 0;
    bool guided = false;             // the floating-point answer was confirmed exactly
};

struct SolveOptions {
    /// Solve in floating point first, then confirm exactly: re-solve over the
    /// columns the floating-point point uses, or round its infeasibility ray.
    /// Falls back to the plain exact solve when confirmation fails.
    bool float_guided = false;
};

/// Exactly one of `point` and `certificate` is set.
struct Solution {
    std::optional<std::vector<Rational>> point;
    /// Nonnegative multipliers, one per constraint, with lambda*A = 0 and lambda*b > 0.
    std::optional<std::vector<Rational>> certificate;
    SolveStats stats;

    bool feasible() const noexcept { return point.has_value(); }
};

/// Phase-1 simplex over exact rationals with Bland's anti-cycling rule.
/// Single-variable rows `a*y >= c` with a > 0 are treated as lower bounds.
/// Points and certificates are always verified exactly.
Solution solve(const LinearProgram& lp, const SolveOptions& options = {});

/// A point satisfying every constraint exactly, or nothing when infeasible.
std::optional<std::vector<Rational>> feasible(const LinearProgram& lp);

/// Farkas multipliers proving infeasibility, or nothing when feasible.
std::optional<std::vector<Rational>> farkas_certificate(const LinearProgram& lp);

/// Exact check of every constraint.
bool satisfies(const LinearProgram& lp, std::span<const Rational> point);

/// lambda >= 0, lambda*A == 0 per variable, lambda*b > 0.
bool is_farkas_certificate(const LinearProgram& lp, std::span<const Rational> multipliers);

}  // namespace circres::lp
