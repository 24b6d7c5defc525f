#include "circres/proof_graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>

using namespace circres;

namespace {

Clause cl(std::initializer_list<int> codes) { return Clause::from_dimacs(codes); }

/// ax -> (x v ~x); (x v ~x),(x) -> (x); (x v ~x),(~x) -> (~x); (x),(~x) -> 0
struct UnsoundTwoCycle {
    ProofGraph g;
    int taut, x, nx, empty;
    UnsoundTwoCycle() {
        taut = g.add_formula(cl({1, -1}));
        x = g.add_formula(cl({1}));
        nx = g.add_formula(cl({-1}));
        empty = g.add_formula(Clause{});
        g.add_axiom(1, taut);
        g.add_cut(1, x, taut, x);
        g.add_cut(1, taut, nx, nx);
        g.add_cut(1, x, nx, empty);
        g.set_goal(empty);
    }
};

FlowAssignment uniform(const ProofGraph& g, const Rational& value) {
    FlowAssignment f;
    for (const auto& w : g.inference_vertices()) f.set(w.id, value);
    return f;
}

}  // namespace

TEST(ValidateRules, SymmetricCutShape) {
    ProofGraph g;
    int a = g.add_formula(cl({1, 2}));
    int b = g.add_formula(cl({1, -2}));
    int c = g.add_formula(cl({1}));
    g.add_cut(2, a, b, c);
    EXPECT_TRUE(validate_rules(g).empty());
}

TEST(ValidateRules, CutNeedsSameSideClause) {
    ProofGraph g;
    int a = g.add_formula(cl({1, 2}));
    int b = g.add_formula(cl({3, -2}));
    int c = g.add_formula(cl({1, 3}));
    int w = g.add_cut(2, a, b, c);
    auto v = validate_rules(g);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].inference_id, w);
}

TEST(ValidateRules, IdempotentSplit) {
    ProofGraph g;
    int a = g.add_formula(cl({1}));
    int b = g.add_formula(cl({1, -1}));
    g.add_split(1, a, {a, b});
    EXPECT_TRUE(validate_rules(g).empty());
}

TEST(ValidateRules, SplitConsequentsMustDiffer) {
    ProofGraph g;
    int a = g.add_formula(cl({1}));
    int b = g.add_formula(cl({1, 2}));
    int c = g.add_formula(cl({1, 2}));
    g.add_split(2, a, {b, c});
    EXPECT_EQ(validate_rules(g).size(), 1u);
}

TEST(ValidateRules, AxiomShapeAndArity) {
    ProofGraph g;
    int a = g.add_formula(cl({1, -1}));
    int b = g.add_formula(cl({2, -2}));
    g.add_axiom(1, a);
    g.add_axiom(1, b);
    g.add_inference(Rule::Axiom, 1, {a}, {a});
    EXPECT_EQ(validate_rules(g).size(), 2u);
}

TEST(ValidateRules, DanglingIdIsStructural) {
    ProofGraph g;
    int a = g.add_formula(cl({1, -1}));
    g.add_axiom(1, a);
    g.add_inference(Rule::Split, 1, {a}, {42});
    EXPECT_THROW(validate_rules(g), StructuralError);
}

TEST(ValidateRules, CyclesAreNotViolations) {
    UnsoundTwoCycle fig;
    EXPECT_TRUE(validate_rules(fig.g).empty());
}

TEST(ValidateRules, InvariantUnderReordering) {
    UnsoundTwoCycle fig;
    ProofGraph bad = fig.g;
    int extra = bad.add_formula(cl({2}));
    bad.add_split(1, extra, {fig.x});
    auto expected = validate_rules(bad);
    ASSERT_EQ(expected.size(), 1u);

    std::mt19937_64 rng(3);
    for (int round = 0; round < 10; ++round) {
        auto fs = bad.formula_vertices();
        auto is = bad.inference_vertices();
        std::shuffle(fs.begin(), fs.end(), rng);
        std::shuffle(is.begin(), is.end(), rng);
        ProofGraph h;
        for (auto& f : fs) h.add_formula(f.id, f.clause);
        for (auto& w : is) h.add_inference(w);
        auto got = validate_rules(h);
        ASSERT_EQ(got.size(), 1u);
        EXPECT_EQ(got[0].inference_id, expected[0].inference_id);
    }
}

TEST(Balance, Examples) {
    ProofGraph g;
    int t = g.add_formula(cl({1, -1}));
    int w = g.add_axiom(1, t);
    FlowAssignment f;
    f.set(w, 1);
    EXPECT_EQ(balance(g, f, t), 1);

    UnsoundTwoCycle fig;
    FlowAssignment ones = uniform(fig.g, 1);
    EXPECT_EQ(balance(fig.g, ones, fig.x), -1);
    EXPECT_EQ(balance(fig.g, ones, fig.nx), -1);

    ProofGraph chain;
    int a = chain.add_formula(cl({1}));
    int b = chain.add_formula(cl({1, 2}));
    int c = chain.add_formula(cl({1, 2, 3}));
    int s1 = chain.add_split(2, a, {b});
    int s2 = chain.add_split(3, b, {c});
    FlowAssignment three;
    three.set(s1, 3);
    three.set(s2, 3);
    EXPECT_EQ(balance(chain, three, b), 0);
}

TEST(Balance, MissingFlowThrows) {
    UnsoundTwoCycle fig;
    FlowAssignment partial;
    partial.set(fig.g.inference_vertices()[0].id, 1);
    EXPECT_THROW(balance(fig.g, partial, fig.x), IncompleteFlow);
}

TEST(Balance, UnsoundTwoCycleAlwaysHasNegativeBuds) {
    UnsoundTwoCycle fig;
    std::mt19937_64 rng(9);
    for (int round = 0; round < 100; ++round) {
        FlowAssignment f;
        for (const auto& w : fig.g.inference_vertices()) {
            f.set(w.id, Rational(1 + static_cast<int>(rng() % 50), 1 + static_cast<int>(rng() % 7)));
        }
        EXPECT_LT(balance(fig.g, f, fig.x), 0);
        EXPECT_LT(balance(fig.g, f, fig.nx), 0);
    }
}

TEST(SourcesAndSinks, Examples) {
    ProofGraph g;
    int x = g.add_formula(cl({1}));
    int nx = g.add_formula(cl({-1}));
    int e = g.add_formula(Clause{});
    g.add_cut(1, x, nx, e);
    auto ss = sources_and_sinks(g, uniform(g, 1));
    EXPECT_EQ(ss.sources, (std::set<int>{x, nx}));
    EXPECT_EQ(ss.sinks, (std::set<int>{e}));

    ProofGraph lonely;
    lonely.add_formula(cl({1}));
    auto none = sources_and_sinks(lonely, FlowAssignment{});
    EXPECT_TRUE(none.sources.empty());
    EXPECT_TRUE(none.sinks.empty());
}

TEST(Balance, DoubleCountingIdentity) {
    std::mt19937_64 rng(77);
    UnsoundTwoCycle fig;
    for (int round = 0; round < 50; ++round) {
        FlowAssignment f;
        Rational expected = 0;
        for (const auto& w : fig.g.inference_vertices()) {
            Rational q(1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 5));
            f.set(w.id, q);
            expected += q * (static_cast<int>(w.out.size()) - static_cast<int>(w.in.size()));
        }
        Rational total = 0;
        for (const Rational& b : balances(fig.g, f)) total += b;
        EXPECT_EQ(total, expected);
    }
}

TEST(ExportDot, EmptyGraph) {
    std::string dot = export_dot(ProofGraph{});
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST(ExportDot, UnsoundTwoCycleCounts) {
    UnsoundTwoCycle fig;
    std::string dot = export_dot(fig.g, nullptr);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
        return n;
    };
    EXPECT_EQ(count("shape=box"), 4u);
    EXPECT_EQ(count("shape=circle"), 4u);
    EXPECT_GE(count("->"), 8u);
}

TEST(ExportDot, LinesFollowGrammar) {
    UnsoundTwoCycle fig;
    FlowAssignment f = uniform(fig.g, Rational(1, 2));
    std::istringstream in(export_dot(fig.g, &f));
    const std::regex node(R"(  [fi]\d+ \[[a-z]+=[a-z]+(, [a-z]+=("([^"\\]|\\.)*"|[a-z0-9]+))*\];)");
    const std::regex edge(R"(  [fi]\d+ -> [fi]\d+;)");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "digraph proof {");
    std::getline(in, line);
    EXPECT_EQ(line, "  rankdir=LR;");
    std::vector<std::string> rest;
    while (std::getline(in, line)) rest.push_back(line);
    ASSERT_FALSE(rest.empty());
    EXPECT_EQ(rest.back(), "}");
    rest.pop_back();
    for (const auto& l : rest) {
        EXPECT_TRUE(std::regex_match(l, node) || std::regex_match(l, edge)) << l;
    }
}
