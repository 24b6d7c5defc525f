#include "circres/flow_check.hpp"
#include "circres/generators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace circres;

namespace {

Clause cl(std::initializer_list<int> codes) { return Clause::from_dimacs(codes); }

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

/// {(x1),(~x1)} -> 0 by one cut.
struct SingleCut {
    ProofGraph g;
    int x, nx, empty, cut;
    FlowAssignment flow;
    SingleCut() {
        x = g.add_formula(cl({1}));
        nx = g.add_formula(cl({-1}));
        empty = g.add_formula(Clause{});
        cut = g.add_cut(1, x, nx, empty);
        g.set_hypothesis_clauses({cl({1}), cl({-1})});
        g.set_goal(empty);
        flow.set(cut, 1);
    }
};

FlowAssignment uniform(const ProofGraph& g, const Rational& value) {
    FlowAssignment f;
    for (const auto& w : g.inference_vertices()) f.set(w.id, value);
    return f;
}

CnfFormula hypotheses_of(const ProofGraph& g) {
    return CnfFormula(g.max_variable(), g.hypothesis_clauses());
}

}  // namespace

TEST(FindWitness, UnsoundTwoCycleIsRejected) {
    UnsoundTwoCycle fig;
    CheckReport r = find_witness(fig.g);
    EXPECT_FALSE(r.witnessed);
    EXPECT_FALSE(r.flow);
}

TEST(FindWitness, UnsoundTwoCycleProgramHasCertificate) {
    UnsoundTwoCycle fig;
    lp::LinearProgram p = build_witness_program(fig.g, fig.empty);
    auto lambda = lp::farkas_certificate(p);
    ASSERT_TRUE(lambda);
    EXPECT_TRUE(lp::is_farkas_certificate(p, *lambda));
}

TEST(FindWitness, DaglikeCut) {
    ProofGraph g;
    int a = g.add_formula(cl({1, 2}));
    int b = g.add_formula(cl({1, -2}));
    int c = g.add_formula(cl({1}));
    g.add_cut(2, a, b, c);
    g.set_hypothesis_clauses({cl({1, 2}), cl({1, -2})});
    g.set_goal(c);
    CheckReport r = find_witness(g);
    ASSERT_TRUE(r.witnessed);
    EXPECT_TRUE(verify_flow(g, *r.flow, c));
    EXPECT_GE(r.balances.at(c), 1);
}

TEST(FindWitness, PigeonholeRefutations) {
    for (int n = 1; n <= 4; ++n) {
        FlowProof p = php_refutation(BipartiteGraph::complete(n + 1, n));
        CheckReport r = find_witness(p.graph);
        ASSERT_TRUE(r.witnessed) << n;
        EXPECT_TRUE(verify_flow(p.graph, *r.flow, *p.graph.goal_id()));
    }
}

TEST(FindWitness, RefusesRuleViolations) {
    ProofGraph g;
    int a = g.add_formula(cl({1, 2}));
    int b = g.add_formula(cl({3, -2}));
    int c = g.add_formula(cl({1, 3}));
    g.add_cut(2, a, b, c);
    g.set_goal(c);
    EXPECT_THROW(find_witness(g), ValidationError);
}

TEST(FindWitness, TriesEveryVertexWithTheGoalClause) {
    // Two vertices carry (x1); only the second is derived.
    ProofGraph g;
    int lonely = g.add_formula(cl({1}));
    int a = g.add_formula(cl({1, 2}));
    int b = g.add_formula(cl({1, -2}));
    int c = g.add_formula(cl({1}));
    g.add_cut(2, a, b, c);
    g.set_hypothesis_clauses({cl({1, 2}), cl({1, -2})});
    CheckReport r = find_witness(g, cl({1}));
    ASSERT_TRUE(r.witnessed);
    EXPECT_EQ(*r.goal_id, c);
    EXPECT_NE(*r.goal_id, lonely);
    EXPECT_FALSE(find_witness(g, cl({2})).witnessed);
}

TEST(VerifyFlow, Examples) {
    FlowProof p = php_refutation(BipartiteGraph::complete(3, 2));
    EXPECT_TRUE(verify_flow(p.graph, p.flow, *p.graph.goal_id()));
    FlowAssignment zeroed = p.flow;
    zeroed.set(p.graph.inference_vertices().front().id, 0);
    EXPECT_FALSE(verify_flow(p.graph, zeroed, *p.graph.goal_id()));
    FlowAssignment missing = p.flow;
    missing.erase(p.graph.inference_vertices().back().id);
    EXPECT_THROW(verify_flow(p.graph, missing, *p.graph.goal_id()), IncompleteFlow);

    UnsoundTwoCycle fig;
    std::mt19937_64 rng(1);
    for (int round = 0; round < 50; ++round) {
        FlowAssignment f;
        for (const auto& w : fig.g.inference_vertices()) {
            f.set(w.id, Rational(1 + static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 6)));
        }
        EXPECT_FALSE(verify_flow(fig.g, f, fig.empty));
    }
}

namespace {

struct SplitChain {
    ProofGraph g;
    int s1, s2;
    SplitChain() {
        int a = g.add_formula(cl({1}));
        int b = g.add_formula(cl({1, 2}));
        int c = g.add_formula(cl({1, 2, 3}));
        s1 = g.add_split(2, a, {b});
        s2 = g.add_split(3, b, {c});
        g.set_hypothesis_clauses({cl({1})});
        g.set_goal(c);
    }
};

void expect_same_signs(const ProofGraph& g, const FlowAssignment& a, const FlowAssignment& b) {
    SourcesAndSinks x = sources_and_sinks(g, a);
    SourcesAndSinks y = sources_and_sinks(g, b);
    EXPECT_EQ(x.sources, y.sources);
    EXPECT_EQ(x.sinks, y.sinks);
}

}  // namespace

TEST(Integralize, ClearsDenominators) {
    SplitChain chain;
    FlowAssignment f;
    f.set(chain.s1, Rational(1, 2));
    f.set(chain.s2, Rational(1, 3));
    FlowAssignment g = integralize(chain.g, f);
    EXPECT_EQ(g.at(chain.s1), 3);
    EXPECT_EQ(g.at(chain.s2), 2);
}

TEST(Integralize, IntegralFlowsOnlyRescale) {
    FlowProof p = php_refutation(BipartiteGraph::complete(3, 2));
    FlowAssignment g = integralize(p.graph, p.flow);
    EXPECT_EQ(g, p.flow);
}

TEST(Integralize, ResolvesWhenScalingOvershoots) {
    SplitChain chain;
    FlowAssignment f;
    f.set(chain.s1, Rational(1, 2));
    f.set(chain.s2, Rational(1, 331));
    FlowAssignment g = integralize(chain.g, f);
    Integer bound = length_factorial(chain.g);
    EXPECT_EQ(bound, 120);
    for (const auto& [id, q] : g) {
        EXPECT_TRUE(is_integral(q));
        EXPECT_GE(q, 1);
        EXPECT_LE(numerator_of(q), bound);
    }
    expect_same_signs(chain.g, f, g);
}

TEST(Integralize, RejectsIllegalSources) {
    UnsoundTwoCycle fig;
    EXPECT_THROW(integralize(fig.g, uniform(fig.g, 1)), ValidationError);
}

TEST(Integralize, RandomProofsKeepSignsAndBound) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        FlowProof p = random_circular_proof(seed, 6, 12);
        FlowAssignment g = integralize(p.graph, p.flow);
        Integer bound = length_factorial(p.graph);
        for (const auto& [id, q] : g) {
            ASSERT_TRUE(is_integral(q));
            ASSERT_GE(q, 1);
            ASSERT_LE(numerator_of(q), bound);
        }
        expect_same_signs(p.graph, p.flow, g);
        EXPECT_TRUE(verify_flow(p.graph, g, *p.graph.goal_id()));
    }
}

TEST(Trace, SingleCut) {
    SingleCut s;
    Assignment alpha = Assignment::from_bits(1, 1);
    TraceResult t = trace_falsified_source(s.g, s.flow, s.empty, alpha);
    EXPECT_EQ(t.source_id, s.nx);
    EXPECT_EQ(t.iterations, 1u);
}

TEST(Trace, OnlyFalsifiedHypothesis) {
    ProofGraph g;
    int a = g.add_formula(cl({2, 1}));
    int b = g.add_formula(cl({2, -1}));
    int c = g.add_formula(cl({2}));
    int w = g.add_cut(1, a, b, c);
    g.set_hypothesis_clauses({cl({2, 1}), cl({2, -1})});
    FlowAssignment f;
    f.set(w, 1);
    TraceResult t = trace_falsified_source(g, f, c, Assignment::from_bits(2, 0));
    EXPECT_EQ(t.source_id, a);
}

TEST(Trace, PreconditionsAreChecked) {
    SingleCut s;
    EXPECT_THROW(trace_falsified_source(s.g, s.flow, s.x, Assignment::from_bits(1, 1)), ValidationError);
    ProofGraph g;
    int a = g.add_formula(cl({2}));
    int b = g.add_formula(cl({2, 1}));
    int w = g.add_split(1, a, {b});
    FlowAssignment f;
    f.set(w, 1);
    EXPECT_THROW(trace_falsified_source(g, f, b, Assignment::from_bits(2, 1)), ValidationError);
    FlowAssignment half;
    half.set(w, Rational(1, 2));
    EXPECT_THROW(trace_falsified_source(g, half, b, Assignment::from_bits(2, 0)), ValidationError);
}

TEST(Trace, PigeonholeAnyAssignment) {
    BipartiteGraph bg = BipartiteGraph::complete(3, 2);
    FlowProof p = php_refutation(bg);
    CnfFormula php = gen_php(bg);
    for (std::uint64_t bits = 0; bits < (1U << php.num_variables()); ++bits) {
        Assignment alpha = Assignment::from_bits(php.num_variables(), bits);
        TraceResult t = trace_falsified_source(p.graph, p.flow, *p.graph.goal_id(), alpha);
        const Clause& c = p.graph.formula(t.source_id).clause;
        EXPECT_FALSE(evaluate(c, alpha));
        EXPECT_NE(std::find(php.clauses().begin(), php.clauses().end(), c), php.clauses().end());
        EXPECT_LE(Rational(t.iterations), p.flow.total());
    }
}

TEST(Trace, RandomProofsReachFalsifiedHypotheses) {
    std::size_t pairs = 0;
    for (std::uint64_t seed = 0; pairs < 200 && seed < 2000; ++seed) {
        FlowProof p = random_circular_proof(seed, 5, 14);
        int goal = *p.graph.goal_id();
        const Clause& gc = p.graph.formula(goal).clause;
        FlowAssignment f = integralize(p.graph, p.flow);
        std::vector<bool> legal = p.graph.legal_sources();
        for (std::uint64_t bits = 0; bits < 32; ++bits) {
            Assignment alpha = Assignment::from_bits(5, bits);
            if (evaluate(gc, alpha)) continue;
            TraceResult t = trace_falsified_source(p.graph, f, goal, alpha);
            EXPECT_TRUE(legal[p.graph.formula_index(t.source_id)]);
            EXPECT_FALSE(evaluate(p.graph.formula(t.source_id).clause, alpha));
            EXPECT_LE(Rational(t.iterations), f.total());
            ++pairs;
        }
    }
    EXPECT_GE(pairs, 200u);
}

TEST(DualCertificate, SingleCut) {
    SingleCut s;
    DualCertificate cert = dual_certificate(s.g, s.flow, s.empty);
    EXPECT_EQ(cert.b.at(s.x), 1);
    EXPECT_EQ(cert.b.at(s.nx), 1);
    EXPECT_EQ(cert.b.at(s.empty), 1);
    EXPECT_EQ(cert.c.at(s.cut), 1);
    EXPECT_EQ(cert.sources, (std::set<int>{s.x, s.nx}));
    // By hand: Z_x >= 1, Z_nx >= 1, -Z_0 >= 0, and (1-Z_x)+(1-Z_nx)-(1-Z_0) >= 0
    // add up to -1 >= 0.
    Combination sum = combine(s.g, cert);
    EXPECT_TRUE(sum.coefficients.empty());
    EXPECT_EQ(sum.constant, -1);
    EXPECT_TRUE(verify_dual_certificate(s.g, cert));
}

TEST(DualCertificate, TamperingIsRejected) {
    FlowProof p = php_refutation(BipartiteGraph::complete(3, 2));
    DualCertificate cert = dual_certificate(p.graph, p.flow, *p.graph.goal_id());
    ASSERT_TRUE(verify_dual_certificate(p.graph, cert));
    DualCertificate bad = cert;
    bad.c.begin()->second += Rational(1, 7);
    EXPECT_FALSE(verify_dual_certificate(p.graph, bad));
    DualCertificate fake = cert;
    fake.sources.insert(*p.graph.goal_id());
    EXPECT_FALSE(verify_dual_certificate(p.graph, fake));
}

TEST(DualCertificate, MatchesFarkasMultipliers) {
    FlowProof p = php_refutation(BipartiteGraph::complete(4, 3));
    int goal = *p.graph.goal_id();
    DualCertificate cert = dual_certificate(p.graph, p.flow, goal);
    EXPECT_TRUE(verify_dual_certificate(p.graph, cert));
    lp::LinearProgram sys = build_semantic_system(p.graph, goal, cert.sources);
    std::vector<Rational> lambda;
    for (const auto& f : p.graph.formula_vertices()) lambda.push_back(cert.b.at(f.id));
    for (const auto& w : p.graph.inference_vertices()) lambda.push_back(cert.c.at(w.id));
    EXPECT_TRUE(lp::is_farkas_certificate(sys, lambda));
    Rational rhs = 0;
    for (std::size_t k = 0; k < lambda.size(); ++k) rhs += lambda[k] * sys.constraints()[k].rhs;
    EXPECT_EQ(rhs, 1);
    EXPECT_FALSE(lp::feasible(sys));
}

TEST(DualCertificate, RequiresWitness) {
    UnsoundTwoCycle fig;
    EXPECT_THROW(dual_certificate(fig.g, uniform(fig.g, 1), fig.empty), ValidationError);
}

TEST(Soundness, RandomProofsAgainstOracle) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        FlowProof p = random_circular_proof(seed, 7, 16);
        ASSERT_TRUE(verify_flow(p.graph, p.flow, *p.graph.goal_id())) << seed;
        EXPECT_TRUE(validate_rules(p.graph).empty());
        EXPECT_TRUE(find_witness(p.graph).witnessed) << seed;
        EXPECT_TRUE(implies_oracle(hypotheses_of(p.graph), p.graph.formula(*p.graph.goal_id()).clause)) << seed;
        DualCertificate cert = dual_certificate(p.graph, p.flow, *p.graph.goal_id());
        EXPECT_TRUE(verify_dual_certificate(p.graph, cert));
    }
}

TEST(Soundness, RandomPreproofsNeverWitnessFalseGoals) {
    int witnessed = 0, refuted_by_oracle = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        ProofGraph g = random_preproof(seed, 5, 4 + static_cast<int>(seed % 20));
        ASSERT_TRUE(validate_rules(g).empty()) << seed;
        bool oracle = implies_oracle(CnfFormula(5, g.hypothesis_clauses()), g.formula(*g.goal_id()).clause);
        CheckReport r = find_witness(g);
        if (r.witnessed) {
            ++witnessed;
            EXPECT_TRUE(oracle) << "seed " << seed;
            EXPECT_TRUE(verify_flow(g, *r.flow, *g.goal_id()));
        }
        if (!oracle) {
            ++refuted_by_oracle;
            EXPECT_FALSE(r.witnessed);
        }
    }
    EXPECT_GT(witnessed, 20);
    EXPECT_GT(refuted_by_oracle, 20);
}
