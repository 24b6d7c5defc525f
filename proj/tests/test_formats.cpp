#include "circres/flow_check.hpp"
#include "circres/formats.hpp"
#include "circres/generators.hpp"
#include "circres/sherali_adams.hpp"

#include <gtest/gtest.h>

using namespace circres;

namespace {

int error_line(const std::function<void()>& parse) {
    try {
        parse();
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(Cnf, ParsesCommentsAndMultilineClauses) {
    CnfFormula f = parse_cnf("c hello\np cnf 3 3\n1 -2 0\n3\n -1 0\n0\n");
    ASSERT_EQ(f.clauses().size(), 3u);
    EXPECT_EQ(f.num_variables(), 3);
    EXPECT_EQ(f.clauses()[0], Clause::from_dimacs({1, -2}));
    EXPECT_EQ(f.clauses()[1], Clause::from_dimacs({3, -1}));
    EXPECT_EQ(f.clauses()[2], Clause{});
}

TEST(Cnf, WrongHeaderCountNamesTheHeaderLine) {
    EXPECT_EQ(error_line([] { parse_cnf("c x\np cnf 2 3\n1 0\n2 0\n"); }), 2);
    EXPECT_EQ(error_line([] { parse_cnf("p cnf 2 1\n1 0\n2 0\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cnf("p cnf 2 1\n1 3 0\n"); }), 2);
    EXPECT_EQ(error_line([] { parse_cnf("p cnf 2 1\n1 2\n"); }), 2);
    EXPECT_EQ(error_line([] { parse_cnf("1 2 0\n"); }), 1);
    EXPECT_EQ(error_line([] { parse_cnf("p cnf 2 1\n1 x 0\n"); }), 2);
}

TEST(Cnf, RoundTripIsCanonical) {
    CnfFormula f = parse_cnf("p cnf 4 2\n2 1 2 0\n-4 3 0\n");
    std::string text = serialize_cnf(f, "two clauses");
    EXPECT_EQ(text, "c two clauses\np cnf 4 2\n1 2 0\n3 -4 0\n");
    EXPECT_EQ(parse_cnf(text), f);
    CnfFormula php = gen_php(BipartiteGraph::complete(4, 3));
    EXPECT_EQ(parse_cnf(serialize_cnf(php)), php);
}

namespace {

const char* kUnsound =
    "c the empty clause from no hypotheses\n"
    "p cres 4 4\n"
    "f 1 1 -1 0\n"
    "f 2 1 0\n"
    "f 3 -1 0\n"
    "f 4 0\n"
    "i 1 ax 1 1\n"
    "i 2 cut 1 2 1 2\n"
    "i 3 cut 1 1 3 3\n"
    "i 4 cut 1 2 3 4\n"
    "g 4\n";

}  // namespace

TEST(Cres, ParsesTheUnsoundTwoCycle) {
    CresFile file = parse_cres(kUnsound);
    EXPECT_FALSE(file.flow);
    EXPECT_EQ(file.graph.formula_vertices().size(), 4u);
    EXPECT_EQ(file.graph.inference_vertices().size(), 4u);
    EXPECT_TRUE(validate_rules(file.graph).empty());
    EXPECT_EQ(file.graph.goal_id(), 4);
    EXPECT_FALSE(find_witness(file.graph).witnessed);
}

TEST(Cres, ZeroDenominatorIsAParseError) {
    std::string text = std::string(kUnsound) + "w 1 1\nw 2 1\nw 3 3/0\nw 4 1\n";
    try {
        parse_cres(text);
        FAIL() << "accepted 3/0";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 14);
        EXPECT_NE(std::string(e.what()).find("denominator"), std::string::npos);
    }
}

TEST(Cres, StructuralErrorsNameTheirLine) {
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 1\nf 1 0\ni 1 cut 1 1 0\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 1\nf 1 0\ni 1 frob 1 1\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 1\nf 1 0\ni 1 ax 1 7\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cres("p cres 2 0\nf 1 0\n"); }), 1);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 0\nf 1 0\nf 1 0\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 0\nf 1 0\nh 2\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 0\nf 1 0\ng 1\ng 1\n"); }), 4);
    EXPECT_EQ(error_line([] { parse_cres("p cres 1 0\nf 1 1\n"); }), 2);
    // Flows are all or nothing.
    EXPECT_EQ(error_line([] { parse_cres("p cres 2 2\nf 1 1 -1 0\nf 2 1 0\ni 1 ax 1 1\ni 2 split 1 1 2\nw 1 1\n"); }),
              6);
}

TEST(Cres, RoundTripWithFlows) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        FlowProof p = random_circular_proof(seed, 6, 12);
        std::string text = serialize_cres(p.graph, &p.flow, "seed " + std::to_string(seed));
        CresFile back = parse_cres(text);
        ASSERT_TRUE(back.flow);
        EXPECT_EQ(*back.flow, p.flow);
        EXPECT_EQ(back.graph.hypothesis_ids(), p.graph.hypothesis_ids());
        EXPECT_EQ(back.graph.goal_id(), p.graph.goal_id());
        EXPECT_EQ(serialize_cres(back.graph, &*back.flow, "seed " + std::to_string(seed)), text);
        EXPECT_TRUE(verify_flow(back.graph, *back.flow, *back.graph.goal_id()));
    }
}

TEST(Cres, SplitWithOneConsequent) {
    CresFile f = parse_cres("p cres 2 1\nf 1 2 0\nf 2 -1 2 0\ni 1 split 1 1 2\nh 1\ng 2\nw 1 1/2\n");
    EXPECT_TRUE(validate_rules(f.graph).empty());
    EXPECT_EQ(f.graph.inference(1).out, std::vector<int>{2});
    EXPECT_EQ(to_string(f.flow->at(1)), "1/2");
    EXPECT_TRUE(verify_flow(f.graph, *f.flow, 2));
}

TEST(Sap, RoundTripOfTranslatedProofs) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        FlowProof p = random_circular_proof(seed, 5, 10, 3);
        if (p.graph.formula(*p.graph.goal_id()).clause.is_tautology()) continue;
        SAProof sa = circular_to_sa(p.graph, p.flow);
        std::string text = serialize_sap(sa);
        SAProof back = parse_sap(text);
        EXPECT_EQ(back, sa);
        EXPECT_EQ(serialize_sap(back), text);
        EXPECT_TRUE(check_sa(back).valid);
    }
}

TEST(Sap, ParsesEveryReferenceKind) {
    SAProof sa = parse_sap(
        "p sap 2 1\nh 1 0\ng 0\n"
        "t 1 1 ; H 1\nt 2 +1^2 -2 ; B xxsq 1\nt 1/3 -1 ; B xsqx 2\nt 1 1 ; B 1mxx 1\nt 1 2 ; B xxm1 2\nt 5 1 ; B one\n");
    ASSERT_EQ(sa.terms.size(), 6u);
    EXPECT_EQ(sa.terms[1].q, Monomial({{1, 2}, {-2, 1}}));
    EXPECT_EQ(sa.terms[1].p, RefPolynomial::x_minus_xsq(1));
    EXPECT_EQ(sa.terms[2].coefficient, Rational(1, 3));
    EXPECT_EQ(sa.terms[3].p, RefPolynomial::one_minus_x_minus_xbar(1));
    EXPECT_EQ(sa.terms[4].p, RefPolynomial::x_plus_xbar_minus_one(2));
    EXPECT_EQ(sa.terms[5].p, RefPolynomial::one());
    EXPECT_EQ(parse_sap(serialize_sap(sa)), sa);
}

TEST(Sap, MalformedTerms) {
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\ng 0\nt 1 1 H 1\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\ng 0\nt 1 1 ; H 1\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\ng 0\nt 1 +2 ; B one\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\ng 0\nt 1/0 1 ; B one\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\ng 0\nt 1 1 ; B frob 1\n"); }), 3);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 1\ng 0\n"); }), 1);
    EXPECT_EQ(error_line([] { parse_sap("p sap 1 0\n"); }), 1);
}

TEST(Bigraph, RoundTrip) {
    BipartiteGraph g = sparse_php_graph(5, 3);
    EXPECT_EQ(parse_bigraph(serialize_bigraph(g)), g);
    EXPECT_EQ(error_line([] { parse_bigraph("p bigraph 2 1\ne 3 1\n"); }), 2);
}

TEST(GoalSpec, Forms) {
    EXPECT_EQ(parse_goal_spec(""), Clause{});
    EXPECT_EQ(parse_goal_spec("empty"), Clause{});
    EXPECT_EQ(parse_goal_spec("0"), Clause{});
    EXPECT_EQ(parse_goal_spec("2 -1 0"), Clause::from_dimacs({-1, 2}));
    EXPECT_EQ(goal_spec(Clause::from_dimacs({-1, 2})), "-1 2 0");
    EXPECT_THROW(parse_goal_spec("1 2"), UsageError);
    EXPECT_THROW(parse_goal_spec("1 a 0"), UsageError);
}
