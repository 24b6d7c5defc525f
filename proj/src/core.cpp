#include "circres/core.hpp"

#include <algorithm>

namespace circres {

Literal::Literal(int variable, bool negative) : variable_(variable), negative_(negative) {
    if (variable < 1) {
        throw MalformedLiteral("variable index must be >= 1, got " + std::to_string(variable));
    }
}

Literal Literal::from_dimacs(int code) {
    if (code == 0) throw MalformedLiteral("literal code 0 is not a literal");
    return code > 0 ? positive(code) : negative(-code);
}

Clause::Clause(std::initializer_list<Literal> literals) : literals_(literals) { normalize(); }

Clause::Clause(std::span<const Literal> literals)
    : literals_(literals.begin(), literals.end()) {
    normalize();
}

Clause Clause::from_dimacs(std::span<const int> codes) {
    std::vector<Literal> lits;
    lits.reserve(codes.size());
    for (int code : codes) lits.push_back(Literal::from_dimacs(code));
    return Clause(std::span<const Literal>(lits));
}

void Clause::normalize() {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::contains(Literal lit) const {
    return std::binary_search(literals_.begin(), literals_.end(), lit);
}

bool Clause::mentions(int variable) const {
    return std::any_of(literals_.begin(), literals_.end(),
                       [variable](Literal l) { return l.variable() == variable; });
}

bool Clause::is_tautology() const {
    // Complementary literals are adjacent in the canonical order.
    for (std::size_t i = 1; i < literals_.size(); ++i) {
        if (literals_[i].variable() == literals_[i - 1].variable()) return true;
    }
    return false;
}

int Clause::max_variable() const noexcept {
    return literals_.empty() ? 0 : literals_.back().variable();
}

Clause Clause::with(Literal lit) const {
    Clause out = *this;
    auto pos = std::lower_bound(out.literals_.begin(), out.literals_.end(), lit);
    if (pos == out.literals_.end() || *pos != lit) out.literals_.insert(pos, lit);
    return out;
}

Clause Clause::with(const Clause& other) const {
    Clause out;
    out.literals_.reserve(width() + other.width());
    std::set_union(literals_.begin(), literals_.end(), other.literals_.begin(),
                   other.literals_.end(), std::back_inserter(out.literals_));
    return out;
}

Clause Clause::without(int variable) const {
    Clause out;
    for (Literal l : literals_) {
        if (l.variable() != variable) out.literals_.push_back(l);
    }
    return out;
}

std::vector<int> Clause::to_dimacs() const {
    std::vector<int> codes;
    codes.reserve(literals_.size());
    for (Literal l : literals_) codes.push_back(l.to_dimacs());
    return codes;
}

std::string Clause::to_string() const {
    if (literals_.empty()) return "0";
    std::string out = "(";
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i > 0) out += " v ";
        if (literals_[i].is_negative()) out += "~";
        out += "x" + std::to_string(literals_[i].variable());
    }
    return out + ")";
}

Clause normalize_clause(std::span<const Literal> literals) { return Clause(literals); }

std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Literal l : c) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.to_dimacs()));
        h *= 0x100000001b3ULL;
    }
    return h;
}

CnfFormula::CnfFormula(int num_variables, std::vector<Clause> clauses)
    : num_variables_(num_variables), clauses_(std::move(clauses)) {
    if (num_variables_ < 0) throw ValidationError("negative variable count");
    for (const Clause& c : clauses_) {
        if (c.max_variable() > num_variables_) {
            throw ValidationError("clause " + c.to_string() + " exceeds declared variable count " +
                                  std::to_string(num_variables_));
        }
    }
}

Assignment Assignment::from_bits(int num_variables, std::uint64_t bits) {
    std::vector<bool> values(static_cast<std::size_t>(num_variables));
    for (int i = 0; i < num_variables; ++i) values[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
    return Assignment(std::move(values));
}

bool Assignment::value(int variable) const {
    if (variable < 1 || variable > size()) {
        throw IncompleteAssignment("assignment does not cover variable " + std::to_string(variable));
    }
    return values_[static_cast<std::size_t>(variable - 1)];
}

void Assignment::set(int variable, bool value) {
    if (variable < 1) throw MalformedLiteral("variable index must be >= 1");
    if (variable > size()) values_.resize(static_cast<std::size_t>(variable), false);
    values_[static_cast<std::size_t>(variable - 1)] = value;
}

bool evaluate(const Clause& clause, const Assignment& alpha) {
    bool satisfied = false;
    // Every literal is checked so that an uncovered variable always raises.
    for (Literal l : clause) satisfied = alpha.value(l) || satisfied;
    return satisfied;
}

bool evaluate(const CnfFormula& formula, const Assignment& alpha) {
    return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                       [&](const Clause& c) { return evaluate(c, alpha); });
}

void for_each_assignment(int num_variables, const std::function<bool(const Assignment&)>& visit) {
    if (num_variables > kOracleVariableLimit) {
        throw TooLarge("refusing to enumerate " + std::to_string(num_variables) +
                       " variables (limit " + std::to_string(kOracleVariableLimit) + ")");
    }
    const std::uint64_t total = std::uint64_t{1} << num_variables;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (!visit(Assignment::from_bits(num_variables, bits))) return;
    }
}

bool implies_oracle(const CnfFormula& hypotheses, const Clause& goal) {
    int n = std::max(hypotheses.num_variables(), goal.max_variable());
    bool implied = true;
    for_each_assignment(n, [&](const Assignment& alpha) {
        if (evaluate(hypotheses, alpha) && !evaluate(goal, alpha)) implied = false;
        return implied;
    });
    return implied;
}

}  // namespace circres
