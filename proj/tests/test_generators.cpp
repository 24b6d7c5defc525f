#include "circres/flow_check.hpp"
#include "circres/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace circres;

namespace {

Clause cl(std::initializer_list<int> codes) { return Clause::from_dimacs(codes); }

bool satisfiable(const CnfFormula& f) { return !implies_oracle(f, Clause{}); }

}  // namespace

TEST(GenPhp, TwoPigeonsOneHole) {
    CnfFormula f = gen_php(BipartiteGraph::complete(2, 1));
    EXPECT_EQ(f.num_variables(), 2);
    EXPECT_EQ(f.clauses(), (std::vector<Clause>{cl({1}), cl({2}), cl({-1, -2})}));
}

TEST(GenPhp, CompleteGraphClauseCount) {
    for (int n = 1; n <= 6; ++n) {
        CnfFormula f = gen_php(BipartiteGraph::complete(n + 1, n));
        std::size_t expected = static_cast<std::size_t>((n + 1) + n * (n + 1) * n / 2);
        EXPECT_EQ(f.clauses().size(), expected);
        EXPECT_EQ(f.num_variables(), n * (n + 1));
    }
}

TEST(GenPhp, EdgeVariablesAreLexicographic) {
    BipartiteGraph g(2, 3);
    g.add_edge(2, 1);
    g.add_edge(1, 3);
    g.add_edge(1, 2);
    EXPECT_EQ(g.edge_variable(1, 2), 1);
    EXPECT_EQ(g.edge_variable(1, 3), 2);
    EXPECT_EQ(g.edge_variable(2, 1), 3);
    EXPECT_THROW(g.edge_variable(2, 2), ValidationError);
}

TEST(GenPhp, MatchingMeansSatisfiable) {
    for (int n = 1; n <= 3; ++n) {
        EXPECT_TRUE(satisfiable(gen_php(BipartiteGraph::complete(n, n))));
        EXPECT_TRUE(satisfiable(gen_php(BipartiteGraph::complete(n, n + 1))));
        EXPECT_FALSE(satisfiable(gen_php(BipartiteGraph::complete(n + 1, n))));
    }
}

TEST(GenPhp, IsolatedPigeonIsAnError) {
    BipartiteGraph g(2, 1);
    g.add_edge(1, 1);
    EXPECT_THROW(gen_php(g), ValidationError);
}

TEST(SparseGraph, DegreesAndDeterminism) {
    for (int n = 3; n <= 8; ++n) {
        BipartiteGraph g = sparse_php_graph(n, 42);
        EXPECT_EQ(g, sparse_php_graph(n, 42));
        EXPECT_EQ(g.left_size(), n + 1);
        EXPECT_EQ(g.right_size(), n);
        for (int v = 1; v <= n; ++v) EXPECT_EQ(g.right_neighbours(v).size(), 3u);
        for (int u = 1; u <= n + 1; ++u) {
            EXPECT_GE(g.left_neighbours(u).size(), 2u);
            EXPECT_LE(g.left_neighbours(u).size(), 3u);
        }
        EXPECT_EQ(g.max_degree(), 3);
    }
}

namespace {

void check_refutation(const BipartiteGraph& bg) {
    FlowProof p = php_refutation(bg);
    CnfFormula php = gen_php(bg);
    ASSERT_TRUE(validate_rules(p.graph).empty());
    int goal = *p.graph.goal_id();
    EXPECT_TRUE(p.graph.formula(goal).clause.empty());
    EXPECT_TRUE(verify_flow(p.graph, p.flow, goal));
    int active_holes = 0;
    for (int v = 1; v <= bg.right_size(); ++v) active_holes += bg.right_neighbours(v).empty() ? 0 : 1;
    EXPECT_EQ(balance(p.graph, p.flow, goal), bg.left_size() - active_holes);
    EXPECT_LE(p.graph.width(), static_cast<std::size_t>(bg.max_degree()));
    std::vector<Rational> b = balances(p.graph, p.flow);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= 0) continue;
        const Clause& c = p.graph.formula_vertices()[i].clause;
        EXPECT_NE(std::find(php.clauses().begin(), php.clauses().end(), c), php.clauses().end()) << c.to_string();
    }
}

}  // namespace

TEST(PhpRefutation, TwoPigeonsOneHole) {
    BipartiteGraph bg = BipartiteGraph::complete(2, 1);
    check_refutation(bg);
    FlowProof p = php_refutation(bg);
    EXPECT_EQ(balance(p.graph, p.flow, *p.graph.goal_id()), 1);
    EXPECT_LE(p.graph.width(), 2u);
}

TEST(PhpRefutation, CompleteGraphs) {
    for (int n = 1; n <= 5; ++n) check_refutation(BipartiteGraph::complete(n + 1, n));
    FlowProof p = php_refutation(BipartiteGraph::complete(6, 5));
    EXPECT_LE(p.graph.width(), 6u);
}

TEST(PhpRefutation, SparseGraphsHaveWidthThree) {
    for (int n = 3; n <= 8; ++n) {
        BipartiteGraph bg = sparse_php_graph(n, 7);
        check_refutation(bg);
        EXPECT_LE(php_refutation(bg).graph.width(), 3u);
    }
}

TEST(PhpRefutation, HoleWithoutEdges) {
    BipartiteGraph bg(3, 2);
    bg.add_edge(1, 1);
    bg.add_edge(2, 1);
    bg.add_edge(3, 1);
    check_refutation(bg);
}

TEST(PhpRefutation, NeedsMorePigeons) {
    EXPECT_THROW(php_refutation(BipartiteGraph::complete(2, 2)), ValidationError);
}

TEST(PhpRefutation, PolynomialLength) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (int n = 2; n <= 12; ++n) {
        FlowProof p = php_refutation(BipartiteGraph::complete(n + 1, n));
        double x = std::log(static_cast<double>(n));
        double y = std::log(static_cast<double>(p.graph.length()));
        sx += x, sy += y, sxx += x * x, sxy += x * y, ++k;
    }
    double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    EXPECT_LT(slope, 4.0);
}

TEST(RandomProof, Deterministic) {
    FlowProof a = random_circular_proof(0, 3, 10);
    FlowProof b = random_circular_proof(0, 3, 10);
    EXPECT_EQ(export_dot(a.graph, &a.flow), export_dot(b.graph, &b.flow));
    EXPECT_EQ(a.graph.goal_id(), b.graph.goal_id());
    EXPECT_TRUE(verify_flow(a.graph, a.flow, *a.graph.goal_id()));
}

TEST(RandomProof, BudgetOneIsAnAxiom) {
    FlowProof p = random_circular_proof(5, 4, 1);
    ASSERT_EQ(p.graph.inference_vertices().size(), 1u);
    EXPECT_EQ(p.graph.inference_vertices()[0].rule, Rule::Axiom);
    EXPECT_TRUE(p.graph.formula(*p.graph.goal_id()).clause.is_tautology());
    EXPECT_TRUE(verify_flow(p.graph, p.flow, *p.graph.goal_id()));
}

TEST(RandomProof, AlwaysWitnessedAndSound) {
    int cyclic = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        FlowProof p = random_circular_proof(seed, 1 + static_cast<int>(seed % 8), 2 + static_cast<int>(seed % 25));
        ASSERT_TRUE(validate_rules(p.graph).empty()) << seed;
        ASSERT_TRUE(verify_flow(p.graph, p.flow, *p.graph.goal_id())) << seed;
        EXPECT_LE(p.graph.width(), 4u);
        CnfFormula h(p.graph.max_variable(), p.graph.hypothesis_clauses());
        EXPECT_TRUE(implies_oracle(h, p.graph.formula(*p.graph.goal_id()).clause));
        // A vertex that is both produced and consumed by one step closes a cycle;
        // so does any repeated clause being identified.
        if (p.graph.formula_vertices().size() <
            p.graph.inference_vertices().size() + p.graph.hypothesis_ids().size()) {
            ++cyclic;
        }
    }
    EXPECT_GT(cyclic, 10);
}
