#pragma once

#include "circres/core.hpp"
#include "circres/proof_graph.hpp"
#include "circres/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace circres {

/// Twin variables are encoded as signed indices: +i is X_i, -i is its twin X̄_i.
/// A monomial is a sorted list of (twin, exponent >= 1); empty means 1.
class Monomial {
public:
    Monomial() = default;
    /// Repeated twins multiply (exponents add). Throws ValidationError on twin 0
    /// or exponent < 1.
    explicit Monomial(std::vector<std::pair<int, int>> factors);
    static Monomial of(std::initializer_list<int> twins);

    const std::vector<std::pair<int, int>>& factors() const noexcept { return factors_; }
    int degree() const noexcept;
    bool is_one() const noexcept { return factors_.empty(); }
    int exponent(int twin) const;
    bool contains(int twin) const { return exponent(twin) > 0; }
    bool is_multilinear() const;

    Monomial operator*(const Monomial& other) const;
    /// Lowers the exponent of `twin` by one. Throws ValidationError if absent.
    Monomial divided_by(int twin) const;
    /// Drops both twins of variable `var`.
    Monomial without_variable(int var) const;

    /// Tokens "±i^e" (exponent omitted when 1), "1" for the constant.
    std::string to_string() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::pair<int, int>> factors_;
};

/// Sparse polynomial over twin variables with exact coefficients.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Monomial& m, const Rational& c = 1);

    const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
    std::size_t monomial_size() const noexcept { return terms_.size(); }
    int degree() const;
    bool is_zero() const noexcept { return terms_.empty(); }

    void add(const Monomial& m, const Rational& c);
    Polynomial& operator+=(const Polynomial& other);
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial times(const Monomial& m) const;

    /// Value at a point: x[i] for X_i and xbar[i] for X̄_i (index 1-based).
    Rational evaluate(const std::vector<Rational>& x, const std::vector<Rational>& xbar) const;

    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::map<Monomial, Rational> terms_;
};

/// Product of the twins that make each literal false: X̄_i for x_i and X_i for ~x_i.
/// Defined for every clause, tautologies included.
Monomial falsity_monomial(const Clause& c);
/// T(C) = -falsity_monomial(C), extended to tautological clauses.
Polynomial encode_clause_unchecked(const Clause& c);
/// T(C). Throws ValidationError for tautological clauses.
Polynomial encode_clause(const Clause& c);
/// The clause whose falsity monomial is the multilinear monomial `m`.
Clause clause_of_monomial(const Monomial& m);

enum class RefKind { Hypothesis, XMinusXsq, XsqMinusX, OneMinusXMinusXbar, XPlusXbarMinusOne, One };

struct RefPolynomial {
    RefKind kind;
    int index = 0;  // hypothesis number (1-based) or variable; unused for One

    static RefPolynomial hypothesis(int i) { return {RefKind::Hypothesis, i}; }
    static RefPolynomial x_minus_xsq(int i) { return {RefKind::XMinusXsq, i}; }
    static RefPolynomial xsq_minus_x(int i) { return {RefKind::XsqMinusX, i}; }
    static RefPolynomial one_minus_x_minus_xbar(int i) { return {RefKind::OneMinusXMinusXbar, i}; }
    static RefPolynomial x_plus_xbar_minus_one(int i) { return {RefKind::XPlusXbarMinusOne, i}; }
    static RefPolynomial one() { return {RefKind::One, 0}; }

    friend bool operator==(const RefPolynomial&, const RefPolynomial&) = default;
    friend auto operator<=>(const RefPolynomial&, const RefPolynomial&) = default;
};

/// One summand coefficient * q * P.
struct SATerm {
    Rational coefficient;
    Monomial q;
    RefPolynomial p;

    friend bool operator==(const SATerm&, const SATerm&) = default;
};

struct SAProof {
    int num_variables = 0;
    std::vector<Clause> hypotheses;
    Clause goal;
    std::vector<SATerm> terms;

    friend bool operator==(const SAProof&, const SAProof&) = default;
};

/// The basic or hypothesis polynomial named by `p`. Throws ValidationError
/// for out-of-range indices or tautological hypotheses.
Polynomial expand_reference(const RefPolynomial& p, const std::vector<Clause>& hypotheses);
int reference_degree(const RefPolynomial& p, const std::vector<Clause>& hypotheses);

struct SACheck {
    bool valid = false;
    Polynomial lhs;
    Polynomial target;
    /// Maximum of deg(q * P) over the terms.
    int degree = 0;
    /// Sum over terms of the number of monomials of q * P.
    std::size_t monomial_size = 0;
};

/// Expands sum coefficient * q * P formally (no substitution, no
/// multilinearization) and compares it with T(goal).
/// Throws ValidationError for non-positive coefficients or bad references.
SACheck check_sa(const SAProof& proof);
/// Same, against an explicit target polynomial.
SACheck check_sa(const std::vector<SATerm>& terms, const std::vector<Clause>& hypotheses,
                 const Polynomial& target);

/// Explicit term lists for the four families:
///   1: T(X v ~X) >= 0          2: -T(C v ~X) - T(C v X) + T(C) >= 0
///   3: -T(C) + T(C v ~X) + T(C v X) >= 0     4: -T(C) >= 0
/// Throws ValidationError when X occurs in C (kinds 1-3), C is tautological,
/// or the kind is unknown.
std::vector<SATerm> aln_gadget(int kind, const Clause& side, int principal);
/// The polynomial each family proves nonnegative.
Polynomial aln_target(int kind, const Clause& side, int principal);

/// Sherali-Adams proof of T(goal) from the hypothesis clauses of a witnessed
/// circular proof: flow / B(s) times each inference polynomial and -B(u)/B(s)
/// times T(A_u), each written with the gadgets above. Identical (q, P) terms
/// are merged. Throws ValidationError when the flow is not a witness or a
/// hypothesis or the goal is tautological.
SAProof circular_to_sa(const ProofGraph& graph, const FlowAssignment& flow);

/// Clamps every exponent to 1.
Monomial multilinearize(const Monomial& m);

enum class NormalKind { Hypothesis, NegXXbar, OneMinusXMinusXbar, XPlusXbarMinusOne, One };

struct NormalTerm {
    Rational coefficient;
    Monomial q;  // multilinear, disjoint from the variables of P
    NormalKind kind;
    int index = 0;

    friend bool operator==(const NormalTerm&, const NormalTerm&) = default;
};

struct NormalizedProof {
    std::vector<Clause> hypotheses;
    Clause goal;
    std::vector<NormalTerm> terms;
};

Polynomial expand_normal(const NormalTerm& t, const std::vector<Clause>& hypotheses);

/// Rewrites each term into multilinear q' * P' with P' a hypothesis, -X X̄,
/// 1 - X - X̄, X + X̄ - 1 or 1, agreeing with q * P at every 0-1 point where X
/// and X̄ vary independently; X - X² and X² - X terms vanish. Hypothesis terms
/// whose product holds a complementary pair become -X X̄ terms.
NormalizedProof normalize_sa(const SAProof& proof);

/// Sum of the normalized terms equals T(goal) exactly.
bool check_normalized(const NormalizedProof& proof);

/// Circular proof from a checked Sherali-Adams proof: split chains weaken
/// hypotheses, axiom plus split chains give weakened axioms, 1 - X - X̄ terms
/// become splits and X + X̄ - 1 terms become cuts, all with the term's
/// coefficient as flow. One vertex per clause, except that a goal which is also
/// a hypothesis gets a second vertex fed by the hypothesis copy.
/// Throws ValidationError when the proof does not check or has tautological
/// hypotheses or goal.
struct FlowProofResult {
    ProofGraph graph;
    FlowAssignment flow;
};
FlowProofResult sa_to_circular(const SAProof& proof);

}  // namespace circres
