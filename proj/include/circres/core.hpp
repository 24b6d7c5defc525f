#pragma once

#include "circres/error.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace circres {

/// A variable or its negation. Variables are dense positive integers.
class Literal {
public:
    /// Throws MalformedLiteral when `variable < 1`.
    Literal(int variable, bool negative);

    static Literal positive(int variable) { return Literal(variable, false); }
    static Literal negative(int variable) { return Literal(variable, true); }
    /// DIMACS convention: +v is the variable, -v its negation. Zero is rejected.
    static Literal from_dimacs(int code);

    int variable() const noexcept { return variable_; }
    bool is_negative() const noexcept { return negative_; }
    int to_dimacs() const noexcept { return negative_ ? -variable_ : variable_; }
    Literal complement() const noexcept { return Literal(variable_, !negative_, Unchecked{}); }

    /// Ordered by variable, positive before negative.
    friend auto operator<=>(const Literal&, const Literal&) = default;

private:
    struct Unchecked {};
    Literal(int variable, bool negative, Unchecked) noexcept
        : variable_(variable), negative_(negative) {}

    int variable_;
    bool negative_;
};

/// A disjunction of literals kept as a sorted set. The empty clause is the
/// always-false formula 0; complementary pairs are legal.
class Clause {
public:
    Clause() = default;
    Clause(std::initializer_list<Literal> literals);
    explicit Clause(std::span<const Literal> literals);

    /// Builds from DIMACS codes, e.g. {1, -2} for (x1 v ~x2).
    static Clause from_dimacs(std::span<const int> codes);
    static Clause from_dimacs(std::initializer_list<int> codes) {
        return from_dimacs(std::span<const int>(codes.begin(), codes.size()));
    }

    const std::vector<Literal>& literals() const noexcept { return literals_; }
    std::size_t width() const noexcept { return literals_.size(); }
    bool empty() const noexcept { return literals_.empty(); }
    bool contains(Literal lit) const;
    bool mentions(int variable) const;
    bool is_tautology() const;
    int max_variable() const noexcept;

    /// Normalized disjunction with one more literal (idempotent if present).
    Clause with(Literal lit) const;
    Clause with(const Clause& other) const;
    /// Drops both polarities of `variable`.
    Clause without(int variable) const;

    std::vector<int> to_dimacs() const;
    /// Human-readable form, e.g. "(x1 v ~x2)" or "0" for the empty clause.
    std::string to_string() const;

    auto begin() const noexcept { return literals_.begin(); }
    auto end() const noexcept { return literals_.end(); }

    friend bool operator==(const Clause&, const Clause&) = default;
    friend auto operator<=>(const Clause& a, const Clause& b) {
        if (a.width() != b.width()) return a.width() <=> b.width();
        return a.literals_ <=> b.literals_;
    }

private:
    void normalize();
    std::vector<Literal> literals_;
};

/// Sorted, deduplicated clause; complementary pairs are retained.
Clause normalize_clause(std::span<const Literal> literals);

struct ClauseHash {
    std::size_t operator()(const Clause& c) const noexcept;
};

/// A set of hypothesis clauses over variables 1..num_variables.
class CnfFormula {
public:
    CnfFormula() = default;
    /// Throws ValidationError if a clause mentions a variable above num_variables.
    CnfFormula(int num_variables, std::vector<Clause> clauses);

    int num_variables() const noexcept { return num_variables_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
    int num_variables_ = 0;
    std::vector<Clause> clauses_;
};

/// A total 0/1 assignment to variables 1..size().
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}
    /// Bit i-1 of `bits` is the value of variable i.
    static Assignment from_bits(int num_variables, std::uint64_t bits);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    /// Throws IncompleteAssignment for variables outside 1..size().
    bool value(int variable) const;
    bool value(Literal lit) const { return value(lit.variable()) != lit.is_negative(); }
    void set(int variable, bool value);

private:
    std::vector<bool> values_;
};

/// True iff some literal of `clause` is satisfied; the empty clause is false.
bool evaluate(const Clause& clause, const Assignment& alpha);
bool evaluate(const CnfFormula& formula, const Assignment& alpha);

/// Largest variable count implies_oracle will enumerate.
inline constexpr int kOracleVariableLimit = 24;

/// Exhaustive check that every assignment satisfying all hypotheses satisfies
/// the goal. Throws TooLarge above kOracleVariableLimit variables.
bool implies_oracle(const CnfFormula& hypotheses, const Clause& goal);

/// Calls `visit` on each assignment of 1..num_variables in binary counting order.
/// Stops early if `visit` returns false. Throws TooLarge above the oracle limit.
void for_each_assignment(int num_variables, const std::function<bool(const Assignment&)>& visit);

}  // namespace circres
