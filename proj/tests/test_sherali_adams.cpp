#include "circres/flow_check.hpp"
#include "circres/generators.hpp"
#include "circres/sherali_adams.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace circres;

namespace {

Clause cl(std::initializer_list<int> codes) { return Clause::from_dimacs(codes); }

/// {(x1),(~x1)} -> 0 by one cut.
FlowProof single_cut() {
    FlowProof p;
    int x = p.graph.add_formula(cl({1}));
    int nx = p.graph.add_formula(cl({-1}));
    int empty = p.graph.add_formula(Clause{});
    int cut = p.graph.add_cut(1, x, nx, empty);
    p.graph.set_hypothesis_clauses({cl({1}), cl({-1})});
    p.graph.set_goal(empty);
    p.flow.set(cut, 1);
    return p;
}

std::vector<Clause> side_clauses(int width) {
    // Side clauses over variables 2..4 avoiding the principal x1.
    std::vector<Clause> out;
    for (int mask = 0; mask < 8; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != width) continue;
        for (int signs = 0; signs < 8; ++signs) {
            std::vector<int> codes;
            for (int v = 0; v < 3; ++v) {
                if (mask & (1 << v)) codes.push_back((signs & (1 << v)) ? -(v + 2) : v + 2);
            }
            out.push_back(Clause::from_dimacs(std::span<const int>(codes)));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational evaluate_on(const Polynomial& p, int n, std::uint64_t xbits, std::uint64_t ybits) {
    std::vector<Rational> x(static_cast<std::size_t>(n) + 1), xbar(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        x[static_cast<std::size_t>(i)] = (xbits >> (i - 1)) & 1;
        xbar[static_cast<std::size_t>(i)] = (ybits >> (i - 1)) & 1;
    }
    return p.evaluate(x, xbar);
}

void expect_round_trip(const FlowProof& p) {
    SAProof sa = circular_to_sa(p.graph, p.flow);
    SACheck check = check_sa(sa);
    ASSERT_TRUE(check.valid);
    EXPECT_EQ(check.degree, static_cast<int>(p.graph.width()));
    EXPECT_LE(check.monomial_size, 3 * p.graph.length());
    EXPECT_TRUE(check_normalized(normalize_sa(sa)));
    FlowProofResult back = sa_to_circular(sa);
    ASSERT_TRUE(back.graph.goal_id());
    EXPECT_TRUE(verify_flow(back.graph, back.flow, *back.graph.goal_id()));
    EXPECT_EQ(back.graph.formula(*back.graph.goal_id()).clause, sa.goal);
    EXPECT_EQ(static_cast<int>(back.graph.width()), check.degree);
}

}  // namespace

TEST(Monomial, CombinesAndOrders) {
    Monomial m({{2, 1}, {-1, 1}, {2, 2}});
    EXPECT_EQ(m.degree(), 4);
    EXPECT_EQ(m.exponent(2), 3);
    EXPECT_EQ(m.to_string(), "-1 2^3");
    EXPECT_FALSE(m.is_multilinear());
    EXPECT_EQ(multilinearize(m), Monomial::of({-1, 2}));
    EXPECT_EQ(m.divided_by(-1), Monomial({{2, 3}}));
    EXPECT_THROW(m.divided_by(1), ValidationError);
    EXPECT_THROW(Monomial({{0, 1}}), ValidationError);
    EXPECT_EQ(Monomial().to_string(), "1");
}

TEST(EncodeClause, FalsityProducts) {
    EXPECT_EQ(encode_clause(cl({1, -2})), Polynomial::monomial(Monomial::of({-1, 2}), -1));
    EXPECT_EQ(encode_clause(Clause{}), Polynomial::constant(-1));
    EXPECT_THROW(encode_clause(cl({1, -1})), ValidationError);
    EXPECT_EQ(clause_of_monomial(Monomial::of({-1, 2})), cl({1, -2}));
}

TEST(EncodeClause, ZeroExactlyOnSatisfyingPoints) {
    // With X̄ = 1 - X, T(C) is 0 when C is satisfied and -1 otherwise.
    Clause c = cl({1, -2, 3});
    Polynomial t = encode_clause(c);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        Rational v = evaluate_on(t, 3, bits, ~bits);
        EXPECT_EQ(v, evaluate(c, Assignment::from_bits(3, bits)) ? 0 : -1);
    }
}

TEST(CheckSa, SingleCutExample) {
    SAProof sa{1, {cl({1}), cl({-1})}, Clause{},
               {{1, Monomial(), RefPolynomial::x_plus_xbar_minus_one(1)},
                {1, Monomial(), RefPolynomial::hypothesis(1)},
                {1, Monomial(), RefPolynomial::hypothesis(2)}}};
    SACheck c = check_sa(sa);
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.monomial_size, 5u);
    EXPECT_EQ(c.lhs, Polynomial::constant(-1));
}

TEST(CheckSa, NoImplicitSubstitution) {
    // X + X̄ would equal 1 under the complement substitution, but not formally.
    SAProof sa{1, {}, Clause{}, {{1, Monomial(), RefPolynomial::x_plus_xbar_minus_one(1)}}};
    EXPECT_FALSE(check_sa(sa).valid);
}

TEST(CheckSa, MalformedTermsThrow) {
    SAProof sa{1, {cl({1})}, Clause{}, {{0, Monomial(), RefPolynomial::one()}}};
    EXPECT_THROW(check_sa(sa), ValidationError);
    sa.terms = {{-1, Monomial(), RefPolynomial::one()}};
    EXPECT_THROW(check_sa(sa), ValidationError);
    sa.terms = {{1, Monomial(), RefPolynomial::hypothesis(2)}};
    EXPECT_THROW(check_sa(sa), ValidationError);
    sa.terms = {{1, Monomial::of({5}), RefPolynomial::one()}};
    EXPECT_THROW(check_sa(sa), ValidationError);
    sa.terms = {};
    sa.goal = cl({1, -1});
    EXPECT_THROW(check_sa(sa), ValidationError);
}

TEST(AlnGadget, AllFamiliesAllWidths) {
    for (int w = 0; w <= 3; ++w) {
        for (const Clause& c : side_clauses(w)) {
            for (int kind = 1; kind <= 4; ++kind) {
                SACheck r = check_sa(aln_gadget(kind, c, 1), {}, aln_target(kind, c, 1));
                EXPECT_TRUE(r.valid) << "kind " << kind << " side " << c.to_string();
                int expected = kind == 1 ? 2 : kind == 4 ? w : w + 1;
                EXPECT_EQ(r.degree, expected) << "kind " << kind << " side " << c.to_string();
                EXPECT_LE(r.degree, w + 1 > 2 ? w + 1 : 2);
                EXPECT_LE(r.monomial_size, 5u);
            }
        }
    }
}

TEST(AlnGadget, KindFourExample) {
    auto terms = aln_gadget(4, cl({1}), 2);
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].q, Monomial::of({-1}));
    EXPECT_EQ(terms[0].p, RefPolynomial::one());
}

TEST(AlnGadget, Preconditions) {
    EXPECT_THROW(aln_gadget(2, cl({1, 2}), 1), ValidationError);
    EXPECT_THROW(aln_gadget(5, Clause{}, 1), ValidationError);
    EXPECT_THROW(aln_gadget(4, cl({2, -2}), 1), ValidationError);
}

TEST(CircularToSa, SingleCut) {
    FlowProof p = single_cut();
    SAProof sa = circular_to_sa(p.graph, p.flow);
    SACheck c = check_sa(sa);
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.degree, 1);
    std::vector<SATerm> expected{{1, Monomial(), RefPolynomial::hypothesis(1)},
                                 {1, Monomial(), RefPolynomial::hypothesis(2)},
                                 {1, Monomial(), RefPolynomial::x_plus_xbar_minus_one(1)}};
    for (const SATerm& t : expected) {
        EXPECT_NE(std::find(sa.terms.begin(), sa.terms.end(), t), sa.terms.end());
    }
    EXPECT_EQ(sa.terms.size(), 3u);
}

TEST(CircularToSa, RejectsNonWitness) {
    FlowProof p = single_cut();
    p.graph.clear_hypotheses();
    EXPECT_THROW(circular_to_sa(p.graph, p.flow), ValidationError);
}

TEST(CircularToSa, IdempotentRules) {
    // (x1 v x2) split on x1 to itself and (x1 v ~x1 v x2), then a cut back.
    FlowProof p;
    int a = p.graph.add_formula(cl({1, 2}));
    int t = p.graph.add_formula(cl({1, -1, 2}));
    int g = p.graph.add_formula(cl({1, 2}));
    p.flow.set(p.graph.add_split(1, a, {g, t}), 1);
    p.flow.set(p.graph.add_cut(1, g, t, g), Rational(1, 2));
    p.graph.set_hypothesis_clauses({cl({1, 2})});
    p.graph.set_goal(g);
    ASSERT_TRUE(verify_flow(p.graph, p.flow, g));
    SAProof sa = circular_to_sa(p.graph, p.flow);
    EXPECT_TRUE(check_sa(sa).valid);
}

TEST(CircularToSa, VanishingInferencesLoseWidth) {
    // A split onto itself has inference polynomial 0, so the wide clause it
    // carries leaves no term behind: degree drops below width.
    FlowProof p;
    int h = p.graph.add_formula(cl({1}));
    int wide = p.graph.add_formula(cl({1, 2, 3}));
    int copy = p.graph.add_formula(cl({1, 2, 3}));
    int g = p.graph.add_formula(cl({1, 2}));
    p.flow.set(p.graph.add_split(1, wide, {copy}), 1);
    p.flow.set(p.graph.add_split(1, copy, {wide}), 1);
    p.flow.set(p.graph.add_split(2, h, {g}), 1);
    p.graph.set_hypothesis_clauses({cl({1})});
    p.graph.set_goal(g);
    SACheck c = check_sa(circular_to_sa(p.graph, p.flow));
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(p.graph.width(), 3u);
    EXPECT_EQ(c.degree, 2);
}

TEST(SaToCircular, CancellingTermsLoseDegree) {
    // X - X² and X² - X cancel; normalization drops both, width stays below degree.
    SAProof sa{2, {cl({1})}, cl({1, 2}),
               {{1, Monomial::of({-2}), RefPolynomial::hypothesis(1)},
                {1, Monomial::of({2, 2}), RefPolynomial::x_minus_xsq(1)},
                {1, Monomial::of({2, 2}), RefPolynomial::xsq_minus_x(1)}}};
    SACheck c = check_sa(sa);
    ASSERT_TRUE(c.valid);
    EXPECT_EQ(c.degree, 4);
    FlowProofResult r = sa_to_circular(sa);
    EXPECT_EQ(r.graph.width(), 2u);
}

TEST(Normalize, CaseTable) {
    auto norm1 = [](const Monomial& q, RefPolynomial p) {
        SAProof sa{3, {cl({1, -2})}, Clause{}, {{1, q, p}}};
        return normalize_sa(sa).terms;
    };
    using NK = NormalKind;
    EXPECT_EQ(norm1(Monomial::of({2}), RefPolynomial::one_minus_x_minus_xbar(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({2}), NK::OneMinusXMinusXbar, 1}}));
    EXPECT_EQ(norm1(Monomial::of({1, 1, 2}), RefPolynomial::one_minus_x_minus_xbar(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({2}), NK::NegXXbar, 1}}));
    EXPECT_EQ(norm1(Monomial::of({1, -1}), RefPolynomial::one_minus_x_minus_xbar(1)),
              (std::vector<NormalTerm>{{1, Monomial(), NK::NegXXbar, 1}}));
    EXPECT_EQ(norm1(Monomial::of({-1, 3}), RefPolynomial::x_plus_xbar_minus_one(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({1, -1, 3}), NK::One, 0}}));
    EXPECT_EQ(norm1(Monomial::of({1, -1}), RefPolynomial::x_plus_xbar_minus_one(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({1, -1}), NK::One, 0}}));
    EXPECT_TRUE(norm1(Monomial::of({2}), RefPolynomial::xsq_minus_x(1)).empty());
    EXPECT_TRUE(norm1(Monomial(), RefPolynomial::x_minus_xsq(3)).empty());
    // Same twins as the hypothesis are absorbed.
    EXPECT_EQ(norm1(Monomial::of({-1, 3}), RefPolynomial::hypothesis(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({3}), NK::Hypothesis, 1}}));
    // Opposite twins leave a complementary pair behind.
    EXPECT_EQ(norm1(Monomial::of({1, 3}), RefPolynomial::hypothesis(1)),
              (std::vector<NormalTerm>{{1, Monomial::of({2, 3}), NK::NegXXbar, 1}}));
}

TEST(Normalize, AgreesOnAllZeroOnePoints) {
    std::mt19937_64 rng(7);
    const std::vector<Clause> hyps{cl({1, -2}), cl({3}), cl({-1, 2, -3})};
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::pair<int, int>> f;
        int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            int v = static_cast<int>(rng() % 3) + 1;
            f.emplace_back(rng() % 2 ? v : -v, static_cast<int>(rng() % 2) + 1);
        }
        Monomial q(f);
        int kind = static_cast<int>(rng() % 6);
        int idx = kind == 0 ? static_cast<int>(rng() % 3) + 1 : static_cast<int>(rng() % 3) + 1;
        RefPolynomial p{static_cast<RefKind>(kind), idx};
        SATerm t{Rational(static_cast<long>(rng() % 5) + 1, 3), q, p};
        Polynomial original = expand_reference(p, hyps).times(q).scaled(t.coefficient);
        SAProof sa{3, hyps, Clause{}, {t}};
        Polynomial normal;
        for (const NormalTerm& n : normalize_sa(sa).terms) {
            EXPECT_TRUE(n.q.is_multilinear());
            normal += expand_normal(n, hyps);
        }
        for (std::uint64_t xb = 0; xb < 8; ++xb) {
            for (std::uint64_t yb = 0; yb < 8; ++yb) {
                ASSERT_EQ(evaluate_on(original, 3, xb, yb), evaluate_on(normal, 3, xb, yb))
                    << q.to_string() << " kind " << kind;
            }
        }
    }
}

TEST(SaToCircular, SingleCutExample) {
    SAProof sa{1, {cl({1}), cl({-1})}, Clause{},
               {{1, Monomial(), RefPolynomial::x_plus_xbar_minus_one(1)},
                {1, Monomial(), RefPolynomial::hypothesis(1)},
                {1, Monomial(), RefPolynomial::hypothesis(2)}}};
    FlowProofResult r = sa_to_circular(sa);
    EXPECT_EQ(r.graph.inference_vertices().size(), 1u);
    EXPECT_EQ(r.graph.width(), 1u);
    EXPECT_TRUE(verify_flow(r.graph, r.flow, *r.graph.goal_id()));
}

TEST(SaToCircular, GoalIsHypothesis) {
    SAProof sa{2, {cl({1, 2})}, cl({1, 2}), {{1, Monomial(), RefPolynomial::hypothesis(1)}}};
    FlowProofResult r = sa_to_circular(sa);
    EXPECT_EQ(r.graph.width(), 2u);
    int g = *r.graph.goal_id();
    EXPECT_GE(balance(r.graph, r.flow, g), 1);
    EXPECT_TRUE(verify_flow(r.graph, r.flow, g));

    SAProof empty{0, {Clause{}}, Clause{}, {{1, Monomial(), RefPolynomial::hypothesis(1)}}};
    FlowProofResult e = sa_to_circular(empty);
    EXPECT_TRUE(verify_flow(e.graph, e.flow, *e.graph.goal_id()));
}

TEST(SaToCircular, WeakensHypotheses) {
    // T(x1 v x2) = X̄2 * T(x1): a one-step split chain.
    SAProof sa{2, {cl({1})}, cl({1, 2}), {{1, Monomial::of({-2}), RefPolynomial::hypothesis(1)}}};
    FlowProofResult r = sa_to_circular(sa);
    EXPECT_EQ(r.graph.inference_vertices().size(), 1u);
    EXPECT_EQ(r.graph.inference_vertices()[0].rule, Rule::Split);
    EXPECT_TRUE(verify_flow(r.graph, r.flow, *r.graph.goal_id()));
}

TEST(SaToCircular, RejectsInvalidProof) {
    SAProof sa{1, {cl({1})}, Clause{}, {{1, Monomial(), RefPolynomial::hypothesis(1)}}};
    EXPECT_THROW(sa_to_circular(sa), ValidationError);
}

TEST(RoundTrip, PhpProofs) {
    expect_round_trip(php_refutation(BipartiteGraph::complete(3, 2)));
    expect_round_trip(php_refutation(BipartiteGraph::complete(4, 3)));
    for (int n = 3; n <= 5; ++n) expect_round_trip(php_refutation(sparse_php_graph(n, 1)));
}

TEST(RoundTrip, RandomProofs) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        FlowProof p = random_circular_proof(seed, 4, 2 + static_cast<int>(seed % 12));
        // Tautological goals have no clause encoding.
        if (p.graph.formula(*p.graph.goal_id()).clause.is_tautology()) continue;
        SCOPED_TRACE(seed);
        expect_round_trip(p);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(RoundTrip, SaProofsFromRandomGoals) {
    // Every goal of the translated proof is implied by the hypotheses.
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        FlowProof p = random_circular_proof(seed, 4, 6);
        if (p.graph.formula(*p.graph.goal_id()).clause.is_tautology()) continue;
        SAProof sa = circular_to_sa(p.graph, p.flow);
        EXPECT_TRUE(implies_oracle(CnfFormula(4, sa.hypotheses), sa.goal));
    }
}
