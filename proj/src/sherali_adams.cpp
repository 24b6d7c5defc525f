#include "circres/sherali_adams.hpp"

#include "circres/flow_check.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

namespace circres {

Monomial::Monomial(std::vector<std::pair<int, int>> factors) {
    for (const auto& [twin, e] : factors) {
        if (twin == 0) throw ValidationError("monomial twin index 0");
        if (e < 1) throw ValidationError("monomial exponent below 1");
    }
    std::sort(factors.begin(), factors.end());
    for (const auto& f : factors) {
        if (!factors_.empty() && factors_.back().first == f.first) {
            factors_.back().second += f.second;
        } else {
            factors_.push_back(f);
        }
    }
}

Monomial Monomial::of(std::initializer_list<int> twins) {
    std::vector<std::pair<int, int>> f;
    for (int t : twins) f.emplace_back(t, 1);
    return Monomial(std::move(f));
}

int Monomial::degree() const noexcept {
    int d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

int Monomial::exponent(int twin) const {
    for (const auto& [t, e] : factors_) {
        if (t == twin) return e;
    }
    return 0;
}

bool Monomial::is_multilinear() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.second == 1; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    std::vector<std::pair<int, int>> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return Monomial(std::move(f));
}

Monomial Monomial::divided_by(int twin) const {
    Monomial out;
    bool found = false;
    for (const auto& [t, e] : factors_) {
        if (t == twin) {
            found = true;
            if (e > 1) out.factors_.emplace_back(t, e - 1);
        } else {
            out.factors_.emplace_back(t, e);
        }
    }
    if (!found) throw ValidationError("monomial does not contain twin " + std::to_string(twin));
    return out;
}

Monomial Monomial::without_variable(int var) const {
    Monomial out;
    for (const auto& f : factors_) {
        if (std::abs(f.first) != var) out.factors_.push_back(f);
    }
    return out;
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [t, e] : factors_) {
        if (!s.empty()) s += ' ';
        s += std::to_string(t);
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

Polynomial Polynomial::constant(const Rational& c) { return monomial(Monomial(), c); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p;
    p.add(m, c);
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Polynomial::add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    out += other;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + other.scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : other.terms_) out.add(m1 * m2, c1 * c2);
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out;
    for (const auto& [m, v] : terms_) out.add(m, v * c);
    return out;
}

Polynomial Polynomial::times(const Monomial& m) const {
    Polynomial out;
    for (const auto& [m2, v] : terms_) out.add(m * m2, v);
    return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x, const std::vector<Rational>& xbar) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (const auto& [t, e] : m.factors()) {
            const auto& src = t > 0 ? x : xbar;
            auto i = static_cast<std::size_t>(std::abs(t));
            if (i >= src.size()) throw ValidationError("point does not cover twin " + std::to_string(t));
            for (int k = 0; k < e; ++k) v *= src[i];
        }
        total += v;
    }
    return total;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += circres::to_string(c);
        if (!m.is_one()) s += "*[" + m.to_string() + "]";
    }
    return s;
}

Monomial falsity_monomial(const Clause& c) {
    std::vector<std::pair<int, int>> f;
    for (const Literal& l : c) f.emplace_back(-l.to_dimacs(), 1);
    return Monomial(std::move(f));
}

Polynomial encode_clause_unchecked(const Clause& c) { return Polynomial::monomial(falsity_monomial(c), -1); }

Polynomial encode_clause(const Clause& c) {
    if (c.is_tautology()) throw ValidationError("tautological clause " + c.to_string() + " has no encoding");
    return encode_clause_unchecked(c);
}

Clause clause_of_monomial(const Monomial& m) {
    std::vector<Literal> lits;
    for (const auto& f : m.factors()) lits.push_back(Literal::from_dimacs(-f.first));
    return Clause(std::span<const Literal>(lits));
}

namespace {

void require_variable(int i) {
    if (i < 1) throw ValidationError("basic polynomial variable " + std::to_string(i) + " out of range");
}

}  // namespace

Polynomial expand_reference(const RefPolynomial& p, const std::vector<Clause>& hypotheses) {
    const int i = p.index;
    Polynomial out;
    switch (p.kind) {
        case RefKind::Hypothesis:
            if (i < 1 || i > static_cast<int>(hypotheses.size())) {
                throw ValidationError("hypothesis index " + std::to_string(i) + " out of range");
            }
            return encode_clause(hypotheses[static_cast<std::size_t>(i - 1)]);
        case RefKind::XMinusXsq:
            require_variable(i);
            out.add(Monomial::of({i}), 1);
            out.add(Monomial::of({i, i}), -1);
            return out;
        case RefKind::XsqMinusX:
            require_variable(i);
            out.add(Monomial::of({i, i}), 1);
            out.add(Monomial::of({i}), -1);
            return out;
        case RefKind::OneMinusXMinusXbar:
            require_variable(i);
            out.add(Monomial(), 1);
            out.add(Monomial::of({i}), -1);
            out.add(Monomial::of({-i}), -1);
            return out;
        case RefKind::XPlusXbarMinusOne:
            require_variable(i);
            out.add(Monomial(), -1);
            out.add(Monomial::of({i}), 1);
            out.add(Monomial::of({-i}), 1);
            return out;
        case RefKind::One:
            return Polynomial::constant(1);
    }
    throw ValidationError("unknown polynomial kind");
}

int reference_degree(const RefPolynomial& p, const std::vector<Clause>& hypotheses) {
    return expand_reference(p, hypotheses).degree();
}

SACheck check_sa(const std::vector<SATerm>& terms, const std::vector<Clause>& hypotheses,
                 const Polynomial& target) {
    SACheck out;
    out.target = target;
    for (const SATerm& t : terms) {
        if (t.coefficient <= 0) {
            throw ValidationError("coefficient " + to_string(t.coefficient) + " is not positive");
        }
        Polynomial p = expand_reference(t.p, hypotheses);
        out.degree = std::max(out.degree, t.q.degree() + p.degree());
        out.monomial_size += p.monomial_size();
        out.lhs += p.times(t.q).scaled(t.coefficient);
    }
    out.valid = out.lhs == target;
    return out;
}

SACheck check_sa(const SAProof& proof) {
    auto check_var = [&](int v) {
        if (v > proof.num_variables) {
            throw ValidationError("variable " + std::to_string(v) + " exceeds the declared " +
                                  std::to_string(proof.num_variables));
        }
    };
    for (const Clause& h : proof.hypotheses) check_var(h.max_variable());
    check_var(proof.goal.max_variable());
    for (const SATerm& t : proof.terms) {
        for (const auto& f : t.q.factors()) check_var(std::abs(f.first));
        if (t.p.kind != RefKind::Hypothesis && t.p.kind != RefKind::One) check_var(t.p.index);
    }
    return check_sa(proof.terms, proof.hypotheses, encode_clause(proof.goal));
}

namespace {

void require_side(const Clause& side, int principal, bool needs_principal) {
    if (side.is_tautology()) throw ValidationError("side clause " + side.to_string() + " is tautological");
    if (needs_principal) {
        if (principal < 1) throw ValidationError("principal variable must be positive");
        if (side.mentions(principal)) {
            throw ValidationError("principal x" + std::to_string(principal) + " occurs in " +
                                  side.to_string());
        }
    }
}

}  // namespace

std::vector<SATerm> aln_gadget(int kind, const Clause& side, int principal) {
    if (kind < 1 || kind > 4) throw ValidationError("gadget kind must be 1, 2, 3 or 4");
    require_side(side, principal, kind != 4);
    const int x = principal;
    const Monomial m = falsity_monomial(side);
    switch (kind) {
        case 1:
            return {{1, Monomial::of({x}), RefPolynomial::one_minus_x_minus_xbar(x)},
                    {1, Monomial(), RefPolynomial::xsq_minus_x(x)}};
        case 2:
            return {{1, m, RefPolynomial::x_plus_xbar_minus_one(x)}};
        case 3:
            return {{1, m, RefPolynomial::one_minus_x_minus_xbar(x)}};
        default:
            return {{1, m, RefPolynomial::one()}};
    }
}

Polynomial aln_target(int kind, const Clause& side, int principal) {
    if (kind < 1 || kind > 4) throw ValidationError("gadget kind must be 1, 2, 3 or 4");
    require_side(side, principal, kind != 4);
    const Literal pos = Literal::positive(std::max(principal, 1));
    const Literal neg = pos.complement();
    auto t = [](const Clause& c) { return encode_clause_unchecked(c); };
    switch (kind) {
        case 1:
            return t(Clause{pos, neg});
        case 2:
            return t(side) - t(side.with(neg)) - t(side.with(pos));
        case 3:
            return t(side.with(neg)) + t(side.with(pos)) - t(side);
        default:
            return t(side).scaled(-1);
    }
}

namespace {

class TermCollector {
public:
    void add(const Rational& c, const Monomial& q, const RefPolynomial& p) {
        if (c == 0) return;
        terms_[{q, p}] += c;
    }

    std::vector<SATerm> take() const {
        std::vector<SATerm> out;
        for (const auto& [key, c] : terms_) out.push_back({c, key.first, key.second});
        return out;
    }

private:
    std::map<std::pair<Monomial, RefPolynomial>, Rational> terms_;
};

// -M' X X̄ = T(C v l v ~l) where M' is the falsity monomial of `rest`.
void add_weakened_axiom(TermCollector& acc, const Rational& c, const Clause& rest, int x) {
    const Monomial m = falsity_monomial(rest);
    acc.add(c, m * Monomial::of({x}), RefPolynomial::one_minus_x_minus_xbar(x));
    acc.add(c, m, RefPolynomial::xsq_minus_x(x));
}

}  // namespace

SAProof circular_to_sa(const ProofGraph& graph, const FlowAssignment& flow) {
    if (!graph.goal_id()) throw ValidationError("proof graph has no goal vertex");
    const int goal_id = *graph.goal_id();
    if (!validate_rules(graph).empty()) throw ValidationError("proof graph violates inference rules");
    if (!verify_flow(graph, flow, goal_id)) throw ValidationError("flow does not witness the goal");

    SAProof proof;
    proof.num_variables = graph.max_variable();
    proof.hypotheses = graph.hypothesis_clauses();
    proof.goal = graph.formula(goal_id).clause;
    for (const Clause& h : proof.hypotheses) {
        if (h.is_tautology()) throw ValidationError("hypothesis " + h.to_string() + " is tautological");
    }
    if (proof.goal.is_tautology()) throw ValidationError("goal " + proof.goal.to_string() + " is tautological");

    const auto b = balances(graph, flow);
    const auto& formulas = graph.formula_vertices();
    const Rational bs = b[graph.formula_index(goal_id)];
    TermCollector acc;

    for (const InferenceVertex& w : graph.inference_vertices()) {
        const Rational c = flow.at(w.id) / bs;
        const int x = w.principal;
        const Literal pos = Literal::positive(x);
        const Literal neg = Literal::negative(x);
        switch (w.rule) {
            case Rule::Axiom:
                add_weakened_axiom(acc, c, Clause(), x);
                break;
            case Rule::Cut: {
                const Clause& out = graph.formula(w.out.front()).clause;
                if (out.mentions(x)) {
                    // One antecedent equals the consequent; the other is C v ~l.
                    const Literal l = out.contains(pos) ? pos : neg;
                    acc.add(c, falsity_monomial(out.with(l.complement())), RefPolynomial::one());
                } else {
                    acc.add(c, falsity_monomial(out), RefPolynomial::x_plus_xbar_minus_one(x));
                }
                break;
            }
            case Rule::Split: {
                const Clause& in = graph.formula(w.in.front()).clause;
                std::vector<Clause> outs;
                for (int o : w.out) outs.push_back(graph.formula(o).clause);
                auto produced = [&](const Clause& d) { return std::find(outs.begin(), outs.end(), d) != outs.end(); };
                if (in.mentions(x)) {
                    if (in.contains(pos) && in.contains(neg)) break;  // consequents equal the antecedent
                    const Literal l = in.contains(pos) ? pos : neg;
                    const Clause wide = in.with(l.complement());
                    if (produced(wide)) add_weakened_axiom(acc, c, in.without(x), x);
                    if (!produced(in)) acc.add(c, falsity_monomial(in), RefPolynomial::one());
                } else {
                    acc.add(c, falsity_monomial(in), RefPolynomial::one_minus_x_minus_xbar(x));
                    for (const Clause& d : {in.with(pos), in.with(neg)}) {
                        if (!produced(d)) acc.add(c, falsity_monomial(d), RefPolynomial::one());
                    }
                }
                break;
            }
        }
    }

    for (std::size_t u = 0; u < formulas.size(); ++u) {
        if (formulas[u].id == goal_id || b[u] == 0) continue;
        const Clause& a = formulas[u].clause;
        if (b[u] < 0) {
            auto it = std::lower_bound(proof.hypotheses.begin(), proof.hypotheses.end(), a);
            const int index = static_cast<int>(it - proof.hypotheses.begin()) + 1;
            acc.add(-b[u] / bs, Monomial(), RefPolynomial::hypothesis(index));
        } else {
            acc.add(b[u] / bs, falsity_monomial(a), RefPolynomial::one());
        }
    }

    proof.terms = acc.take();
    if (!check_sa(proof).valid) throw std::logic_error("translated proof does not sum to T(goal)");
    return proof;
}

Monomial multilinearize(const Monomial& m) {
    std::vector<std::pair<int, int>> f;
    for (const auto& [t, e] : m.factors()) f.emplace_back(t, 1);
    return Monomial(std::move(f));
}

Polynomial expand_normal(const NormalTerm& t, const std::vector<Clause>& hypotheses) {
    Polynomial p;
    switch (t.kind) {
        case NormalKind::Hypothesis:
            p = expand_reference(RefPolynomial::hypothesis(t.index), hypotheses);
            break;
        case NormalKind::NegXXbar:
            p = Polynomial::monomial(Monomial::of({t.index, -t.index}), -1);
            break;
        case NormalKind::OneMinusXMinusXbar:
            p = expand_reference(RefPolynomial::one_minus_x_minus_xbar(t.index), hypotheses);
            break;
        case NormalKind::XPlusXbarMinusOne:
            p = expand_reference(RefPolynomial::x_plus_xbar_minus_one(t.index), hypotheses);
            break;
        case NormalKind::One:
            p = Polynomial::constant(1);
            break;
    }
    return p.times(t.q).scaled(t.coefficient);
}

namespace {

std::optional<int> complementary_variable(const Monomial& m) {
    for (const auto& f : m.factors()) {
        if (f.first > 0 && m.contains(-f.first)) return f.first;
    }
    return std::nullopt;
}

}  // namespace

NormalizedProof normalize_sa(const SAProof& proof) {
    NormalizedProof out{proof.hypotheses, proof.goal, {}};
    std::map<std::tuple<NormalKind, int, Monomial>, Rational> merged;
    auto emit = [&](NormalKind kind, int index, const Monomial& q, const Rational& c) {
        merged[{kind, index, q}] += c;
    };

    for (const SATerm& t : proof.terms) {
        const Monomial m = multilinearize(t.q);
        const int x = t.p.index;
        switch (t.p.kind) {
            case RefKind::Hypothesis: {
                const Clause& a = proof.hypotheses.at(static_cast<std::size_t>(x - 1));
                const Monomial product = multilinearize(m * falsity_monomial(a));
                if (auto k = complementary_variable(product)) {
                    emit(NormalKind::NegXXbar, *k, product.without_variable(*k), t.coefficient);
                } else {
                    Monomial q = m;
                    for (const Literal& l : a) q = q.without_variable(l.variable());
                    emit(NormalKind::Hypothesis, x, q, t.coefficient);
                }
                break;
            }
            case RefKind::XMinusXsq:
            case RefKind::XsqMinusX:
                break;
            case RefKind::OneMinusXMinusXbar: {
                const bool has_x = m.contains(x), has_xbar = m.contains(-x);
                if (!has_x && !has_xbar) {
                    emit(NormalKind::OneMinusXMinusXbar, x, m, t.coefficient);
                } else {
                    emit(NormalKind::NegXXbar, x, m.without_variable(x), t.coefficient);
                }
                break;
            }
            case RefKind::XPlusXbarMinusOne: {
                const bool has_x = m.contains(x), has_xbar = m.contains(-x);
                if (!has_x && !has_xbar) {
                    emit(NormalKind::XPlusXbarMinusOne, x, m, t.coefficient);
                } else if (has_x && has_xbar) {
                    emit(NormalKind::One, 0, m, t.coefficient);
                } else {
                    const int twin = has_x ? -x : x;
                    emit(NormalKind::One, 0, m * Monomial::of({twin}), t.coefficient);
                }
                break;
            }
            case RefKind::One:
                emit(NormalKind::One, 0, m, t.coefficient);
                break;
        }
    }
    for (const auto& [key, c] : merged) {
        out.terms.push_back({c, std::get<2>(key), std::get<0>(key), std::get<1>(key)});
    }
    return out;
}

bool check_normalized(const NormalizedProof& proof) {
    Polynomial sum;
    for (const NormalTerm& t : proof.terms) {
        if (t.coefficient <= 0 || !t.q.is_multilinear()) return false;
        sum += expand_normal(t, proof.hypotheses);
    }
    return sum == encode_clause(proof.goal);
}

namespace {

class CircularBuilder {
public:
    explicit CircularBuilder(const Clause& goal, bool goal_is_hypothesis) : goal_(goal) {
        if (goal_is_hypothesis) hypothesis_goal_ = graph_.add_formula(goal);
    }

    int vertex(const Clause& c) {
        auto [it, inserted] = ids_.try_emplace(c, 0);
        if (inserted) it->second = graph_.add_formula(c);
        return it->second;
    }

    // The vertex I_0 chains start from.
    int hypothesis_vertex(const Clause& c) {
        return hypothesis_goal_ && c == goal_ ? *hypothesis_goal_ : vertex(c);
    }

    void inference(Rule rule, int x, std::vector<int> in, std::vector<int> out, const Rational& f) {
        auto key = std::make_tuple(rule, x, in, out);
        auto it = inferences_.find(key);
        if (it == inferences_.end()) {
            int id = graph_.add_inference(rule, x, std::move(in), std::move(out));
            it = inferences_.emplace(key, id).first;
            flows_[id] = 0;
        }
        flows_[it->second] += f;
    }

    // 1-out splits from `start`, adding the literals of `extra` in order.
    void weaken(int start, const Clause& from, const Clause& extra, const Rational& f) {
        Clause cur = from;
        int id = start;
        for (const Literal& l : extra) {
            Clause next = cur.with(l);
            int next_id = vertex(next);
            inference(Rule::Split, l.variable(), {id}, {next_id}, f);
            cur = next;
            id = next_id;
        }
    }

    std::optional<int> hypothesis_goal() const { return hypothesis_goal_; }
    ProofGraph& graph() { return graph_; }

    FlowAssignment flow() const {
        FlowAssignment out;
        for (const auto& [id, f] : flows_) out.set(id, f);
        return out;
    }

private:
    Clause goal_;
    ProofGraph graph_;
    std::optional<int> hypothesis_goal_;
    std::map<Clause, int> ids_;
    std::map<std::tuple<Rule, int, std::vector<int>, std::vector<int>>, int> inferences_;
    std::map<int, Rational> flows_;
};

}  // namespace

FlowProofResult sa_to_circular(const SAProof& proof) {
    const SACheck check = check_sa(proof);
    if (!check.valid) throw ValidationError("Sherali-Adams proof does not sum to T(goal)");
    const NormalizedProof normal = normalize_sa(proof);
    if (!check_normalized(normal)) throw std::logic_error("normalization changed the proof polynomial");

    const bool goal_is_hypothesis =
        std::find(proof.hypotheses.begin(), proof.hypotheses.end(), proof.goal) != proof.hypotheses.end();
    CircularBuilder b(proof.goal, goal_is_hypothesis);

    for (const NormalTerm& t : normal.terms) {
        const Clause side = clause_of_monomial(t.q);
        const int x = t.index;
        switch (t.kind) {
            case NormalKind::Hypothesis: {
                const Clause& a = proof.hypotheses[static_cast<std::size_t>(x - 1)];
                if (!side.empty()) b.weaken(b.hypothesis_vertex(a), a, side, t.coefficient);
                break;
            }
            case NormalKind::NegXXbar: {
                const Clause axiom{Literal::positive(x), Literal::negative(x)};
                const int id = b.vertex(axiom);
                b.inference(Rule::Axiom, x, {}, {id}, t.coefficient);
                b.weaken(id, axiom, side, t.coefficient);
                break;
            }
            case NormalKind::OneMinusXMinusXbar:
                b.inference(Rule::Split, x, {b.vertex(side)},
                            {b.vertex(side.with(Literal::positive(x))), b.vertex(side.with(Literal::negative(x)))},
                            t.coefficient);
                break;
            case NormalKind::XPlusXbarMinusOne:
                b.inference(Rule::Cut, x,
                            {b.vertex(side.with(Literal::positive(x))), b.vertex(side.with(Literal::negative(x)))},
                            {b.vertex(side)}, t.coefficient);
                break;
            case NormalKind::One:
                break;
        }
    }

    const int goal = b.vertex(proof.goal);
    FlowAssignment flow = b.flow();
    Rational goal_balance = balance(b.graph(), flow, goal);
    if (goal_balance <= 0) {
        if (!b.hypothesis_goal()) throw std::logic_error("goal vertex without positive balance");
        // Feed the goal from its hypothesis copy with an idempotent split.
        const Rational f = 1 - goal_balance;
        const int h = *b.hypothesis_goal();
        if (!proof.goal.empty()) {
            const Literal l = proof.goal.literals().front();
            b.inference(Rule::Split, l.variable(), {h}, {goal}, f);
        } else {
            const int p = b.vertex(Clause{Literal::positive(1)});
            const int n = b.vertex(Clause{Literal::negative(1)});
            b.inference(Rule::Split, 1, {h}, {p, n}, f);
            b.inference(Rule::Cut, 1, {p, n}, {goal}, f);
        }
        flow = b.flow();
    }

    FlowProofResult out{std::move(b.graph()), std::move(flow)};
    out.graph.set_hypothesis_clauses(proof.hypotheses);
    out.graph.set_goal(goal);
    if (!validate_rules(out.graph).empty() || !verify_flow(out.graph, out.flow, goal)) {
        throw std::logic_error("translated circular proof does not check");
    }
    return out;
}

}  // namespace circres
