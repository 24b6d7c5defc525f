#include "circres/core.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace circres;

namespace {

Clause cl(std::initializer_list<int> codes) { return Clause::from_dimacs(codes); }

std::vector<Literal> random_literals(std::mt19937_64& rng, int n, int max_len) {
    std::vector<Literal> lits;
    int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
    for (int i = 0; i < len; ++i) {
        int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        lits.push_back(Literal(v, rng() % 2 == 0));
    }
    return lits;
}

}  // namespace

TEST(Literal, RejectsNonPositiveVariables) {
    EXPECT_THROW(Literal(0, false), MalformedLiteral);
    EXPECT_THROW(Literal(-3, true), MalformedLiteral);
    EXPECT_THROW(Literal::from_dimacs(0), MalformedLiteral);
    EXPECT_EQ(Literal::from_dimacs(-4).variable(), 4);
    EXPECT_TRUE(Literal::from_dimacs(-4).is_negative());
    EXPECT_EQ(Literal::positive(2).complement(), Literal::negative(2));
}

TEST(NormalizeClause, MergesDuplicates) {
    std::vector<Literal> lits{Literal::positive(1), Literal::positive(1), Literal::positive(2)};
    Clause c = normalize_clause(lits);
    EXPECT_EQ(c, cl({1, 2}));
    EXPECT_EQ(c.width(), 2u);
}

TEST(NormalizeClause, KeepsComplementaryPair) {
    std::vector<Literal> lits{Literal::positive(1), Literal::negative(1)};
    Clause c = normalize_clause(lits);
    EXPECT_EQ(c.width(), 2u);
    EXPECT_TRUE(c.is_tautology());
}

TEST(NormalizeClause, EmptyIsTheEmptyClause) {
    Clause c = normalize_clause({});
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(c.width(), 0u);
    EXPECT_FALSE(c.is_tautology());
    EXPECT_EQ(c.to_string(), "0");
}

TEST(NormalizeClause, Idempotent) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 500; ++round) {
        auto lits = random_literals(rng, 6, 8);
        Clause once = normalize_clause(lits);
        Clause twice = normalize_clause(once.literals());
        EXPECT_EQ(once, twice);
    }
}

TEST(Clause, WithAndWithout) {
    Clause c = cl({2, -3});
    EXPECT_EQ(c.with(Literal::positive(1)), cl({1, 2, -3}));
    EXPECT_EQ(c.with(Literal::positive(2)), c);
    EXPECT_EQ(c.without(3), cl({2}));
    EXPECT_EQ(c.with(cl({-1, 2})), cl({-1, 2, -3}));
    EXPECT_TRUE(c.mentions(3));
    EXPECT_FALSE(c.mentions(1));
    EXPECT_EQ(c.to_string(), "(x2 v ~x3)");
}

TEST(Evaluate, Examples) {
    Assignment zero = Assignment::from_bits(2, 0);
    EXPECT_TRUE(evaluate(cl({1, -2}), zero));
    for (std::uint64_t bits = 0; bits < 4; ++bits) {
        Assignment a = Assignment::from_bits(2, bits);
        EXPECT_FALSE(evaluate(Clause{}, a));
        EXPECT_TRUE(evaluate(cl({1, -1}), a));
    }
}

TEST(Evaluate, UncoveredVariableThrows) {
    Assignment a = Assignment::from_bits(2, 3);
    EXPECT_THROW(evaluate(cl({1, 3}), a), IncompleteAssignment);
}

TEST(Evaluate, MatchesLiteralDisjunction) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        auto lits = random_literals(rng, 10, 6);
        Clause c = normalize_clause(lits);
        for (int k = 0; k < 16; ++k) {
            Assignment a = Assignment::from_bits(10, rng() & 1023U);
            bool expected = false;
            for (Literal l : lits) expected = expected || (a.value(l.variable()) != l.is_negative());
            EXPECT_EQ(evaluate(c, a), expected);
        }
    }
}

TEST(ImpliesOracle, Examples) {
    CnfFormula h(2, {cl({1}), cl({-1, 2})});
    EXPECT_TRUE(implies_oracle(h, cl({2})));
    EXPECT_FALSE(implies_oracle(CnfFormula(1, {}), cl({1})));
    // PHP with two pigeons and one hole: x1, x2, (~x1 v ~x2)
    CnfFormula php(2, {cl({1}), cl({2}), cl({-1, -2})});
    EXPECT_TRUE(implies_oracle(php, Clause{}));
}

TEST(ImpliesOracle, RefusesLargeInstances) {
    EXPECT_THROW(implies_oracle(CnfFormula(25, {}), Clause{}), TooLarge);
}

namespace {

/// Independent oracle: hypotheses plus the unit clauses of the negated goal
/// are unsatisfiable.
bool implies_by_refutation(const CnfFormula& h, const Clause& goal) {
    if (goal.is_tautology()) return true;
    std::vector<Clause> clauses = h.clauses();
    for (Literal l : goal) clauses.push_back(Clause{l.complement()});
    int n = std::max(h.num_variables(), goal.max_variable());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        bool all = true;
        for (const Clause& c : clauses) {
            bool sat = false;
            for (Literal l : c) sat = sat || (((bits >> (l.variable() - 1)) & 1U) != 0) != l.is_negative();
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return false;
    }
    return true;
}

}  // namespace

TEST(ImpliesOracle, AgreesWithRefutationOracle) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 300; ++round) {
        int n = 1 + static_cast<int>(rng() % 8);
        std::vector<Clause> clauses;
        int m = static_cast<int>(rng() % 7);
        for (int i = 0; i < m; ++i) clauses.push_back(normalize_clause(random_literals(rng, n, 3)));
        Clause goal = normalize_clause(random_literals(rng, n, 2));
        CnfFormula h(n, clauses);
        EXPECT_EQ(implies_oracle(h, goal), implies_by_refutation(h, goal)) << "round " << round;
    }
}

TEST(CnfFormula, RejectsOutOfRangeVariables) {
    EXPECT_THROW(CnfFormula(1, {cl({2})}), ValidationError);
}
