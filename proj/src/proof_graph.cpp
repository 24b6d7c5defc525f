#include "circres/proof_graph.hpp"

#include <algorithm>
#include <sstream>

namespace circres {

const char* rule_name(Rule rule) noexcept {
    switch (rule) {
        case Rule::Axiom: return "ax";
        case Rule::Cut: return "cut";
        case Rule::Split: return "split";
    }
    return "?";
}

const Rational& FlowAssignment::at(int inference_id) const {
    auto it = flows_.find(inference_id);
    if (it == flows_.end()) {
        throw IncompleteFlow("no flow for inference vertex " + std::to_string(inference_id));
    }
    return it->second;
}

Rational FlowAssignment::total() const {
    Rational sum = 0;
    for (const auto& [id, f] : flows_) sum += f;
    return sum;
}

bool FlowAssignment::all_integral() const {
    return std::all_of(flows_.begin(), flows_.end(),
                       [](const auto& entry) { return is_integral(entry.second); });
}

int ProofGraph::add_formula(Clause clause) {
    int id = next_formula_id_;
    add_formula(id, std::move(clause));
    return id;
}

void ProofGraph::add_formula(int id, Clause clause) {
    if (!formula_pos_.emplace(id, formulas_.size()).second) {
        throw StructuralError("duplicate formula vertex id " + std::to_string(id));
    }
    formulas_.push_back({id, std::move(clause)});
    next_formula_id_ = std::max(next_formula_id_, id + 1);
}

int ProofGraph::add_axiom(int variable, int out) {
    return add_inference(Rule::Axiom, variable, {}, {out});
}

int ProofGraph::add_cut(int variable, int in_pos, int in_neg, int out) {
    return add_inference(Rule::Cut, variable, {in_pos, in_neg}, {out});
}

int ProofGraph::add_split(int variable, int in, std::vector<int> outs) {
    return add_inference(Rule::Split, variable, {in}, std::move(outs));
}

int ProofGraph::add_inference(Rule rule, int principal, std::vector<int> in, std::vector<int> out) {
    int id = next_inference_id_;
    add_inference({id, rule, principal, std::move(in), std::move(out)});
    return id;
}

void ProofGraph::add_inference(InferenceVertex vertex) {
    if (!inference_pos_.emplace(vertex.id, inferences_.size()).second) {
        throw StructuralError("duplicate inference vertex id " + std::to_string(vertex.id));
    }
    next_inference_id_ = std::max(next_inference_id_, vertex.id + 1);
    inferences_.push_back(std::move(vertex));
}

void ProofGraph::mark_hypothesis(int formula_id) {
    formula_index(formula_id);
    hypotheses_.insert(formula_id);
}

void ProofGraph::set_hypothesis_clauses(const std::vector<Clause>& clauses) {
    std::vector<Clause> sorted = clauses;
    std::sort(sorted.begin(), sorted.end());
    hypotheses_.clear();
    for (const FormulaVertex& f : formulas_) {
        if (std::binary_search(sorted.begin(), sorted.end(), f.clause)) hypotheses_.insert(f.id);
    }
}

void ProofGraph::set_goal(int formula_id) {
    formula_index(formula_id);
    goal_ = formula_id;
}

std::size_t ProofGraph::formula_index(int id) const {
    auto it = formula_pos_.find(id);
    if (it == formula_pos_.end()) {
        throw StructuralError("unknown formula vertex id " + std::to_string(id));
    }
    return it->second;
}

std::size_t ProofGraph::inference_index(int id) const {
    auto it = inference_pos_.find(id);
    if (it == inference_pos_.end()) {
        throw StructuralError("unknown inference vertex id " + std::to_string(id));
    }
    return it->second;
}

std::vector<Clause> ProofGraph::hypothesis_clauses() const {
    std::vector<Clause> out;
    for (int id : hypotheses_) out.push_back(formula(id).clause);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<bool> ProofGraph::legal_sources() const {
    std::vector<Clause> hyps = hypothesis_clauses();
    std::vector<bool> legal(formulas_.size(), false);
    for (std::size_t i = 0; i < formulas_.size(); ++i) {
        legal[i] = std::binary_search(hyps.begin(), hyps.end(), formulas_[i].clause);
    }
    return legal;
}

std::vector<int> ProofGraph::vertices_with_clause(const Clause& clause) const {
    std::vector<int> ids;
    for (const FormulaVertex& f : formulas_) {
        if (f.clause == clause) ids.push_back(f.id);
    }
    return ids;
}

std::size_t ProofGraph::width() const {
    std::size_t w = 0;
    for (const FormulaVertex& f : formulas_) w = std::max(w, f.clause.width());
    return w;
}

int ProofGraph::max_variable() const {
    int n = 0;
    for (const FormulaVertex& f : formulas_) n = std::max(n, f.clause.max_variable());
    for (const InferenceVertex& w : inferences_) n = std::max(n, w.principal);
    return n;
}

Incidence build_incidence(const ProofGraph& graph) {
    const auto& formulas = graph.formula_vertices();
    const auto& inferences = graph.inference_vertices();
    Incidence inc;
    inc.producers.resize(formulas.size());
    inc.consumers.resize(formulas.size());
    inc.in.resize(inferences.size());
    inc.out.resize(inferences.size());
    for (std::size_t w = 0; w < inferences.size(); ++w) {
        for (int id : inferences[w].in) {
            std::size_t u = graph.formula_index(id);
            inc.in[w].push_back(u);
            inc.consumers[u].push_back(w);
        }
        for (int id : inferences[w].out) {
            std::size_t u = graph.formula_index(id);
            inc.out[w].push_back(u);
            inc.producers[u].push_back(w);
        }
    }
    return inc;
}

namespace {

bool has_duplicates(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
}

std::string check_inference(const ProofGraph& graph, const InferenceVertex& w) {
    if (w.principal < 1) return "principal variable must be >= 1";
    if (has_duplicates(w.in) || has_duplicates(w.out)) return "repeated neighbour id";
    const Literal pos = Literal::positive(w.principal);
    const Literal neg = Literal::negative(w.principal);
    auto clause_of = [&](int id) -> const Clause& { return graph.formula(id).clause; };

    switch (w.rule) {
        case Rule::Axiom: {
            if (!w.in.empty() || w.out.size() != 1) return "axiom needs 0 antecedents and 1 consequent";
            if (clause_of(w.out[0]) != Clause{pos, neg}) {
                return "axiom consequent " + clause_of(w.out[0]).to_string() + " is not " +
                       Clause{pos, neg}.to_string();
            }
            return {};
        }
        case Rule::Cut: {
            if (w.in.size() != 2 || w.out.size() != 1) return "cut needs 2 antecedents and 1 consequent";
            const Clause& side = clause_of(w.out[0]);
            const Clause with_pos = side.with(pos);
            const Clause with_neg = side.with(neg);
            const Clause& a = clause_of(w.in[0]);
            const Clause& b = clause_of(w.in[1]);
            bool ok = (a == with_pos && b == with_neg) || (a == with_neg && b == with_pos);
            if (!ok) {
                return "antecedents " + a.to_string() + ", " + b.to_string() +
                       " do not share side clause " + side.to_string() + " on x" +
                       std::to_string(w.principal);
            }
            return {};
        }
        case Rule::Split: {
            if (w.in.size() != 1 || w.out.empty() || w.out.size() > 2) {
                return "split needs 1 antecedent and 1 or 2 consequents";
            }
            const Clause& side = clause_of(w.in[0]);
            const Clause with_pos = side.with(pos);
            const Clause with_neg = side.with(neg);
            for (int id : w.out) {
                const Clause& c = clause_of(id);
                if (c != with_pos && c != with_neg) {
                    return "consequent " + c.to_string() + " is not " + side.to_string() +
                           " extended by x" + std::to_string(w.principal);
                }
            }
            if (w.out.size() == 2 && clause_of(w.out[0]) == clause_of(w.out[1])) {
                return "split consequents must differ";
            }
            return {};
        }
    }
    return "unknown rule";
}

}  // namespace

std::vector<RuleViolation> validate_rules(const ProofGraph& graph) {
    build_incidence(graph);  // dangling ids raise here
    std::vector<RuleViolation> violations;
    for (const InferenceVertex& w : graph.inference_vertices()) {
        std::string problem = check_inference(graph, w);
        if (!problem.empty()) violations.push_back({w.id, std::move(problem)});
    }
    return violations;
}

std::vector<Rational> balances(const ProofGraph& graph, const FlowAssignment& flow) {
    std::vector<Rational> b(graph.formula_vertices().size(), Rational(0));
    for (const InferenceVertex& w : graph.inference_vertices()) {
        const Rational& f = flow.at(w.id);
        for (int id : w.in) b[graph.formula_index(id)] -= f;
        for (int id : w.out) b[graph.formula_index(id)] += f;
    }
    return b;
}

Rational balance(const ProofGraph& graph, const FlowAssignment& flow, int formula_id) {
    graph.formula_index(formula_id);
    Rational b = 0;
    for (const InferenceVertex& w : graph.inference_vertices()) {
        for (int id : w.in) {
            if (id == formula_id) b -= flow.at(w.id);
        }
        for (int id : w.out) {
            if (id == formula_id) b += flow.at(w.id);
        }
    }
    return b;
}

SourcesAndSinks sources_and_sinks(const ProofGraph& graph, const FlowAssignment& flow) {
    std::vector<Rational> b = balances(graph, flow);
    SourcesAndSinks out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        int id = graph.formula_vertices()[i].id;
        if (b[i] < 0) out.sources.insert(id);
        if (b[i] > 0) out.sinks.insert(id);
    }
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const ProofGraph& graph, const FlowAssignment* flow) {
    std::ostringstream os;
    os << "digraph proof {\n";
    os << "  rankdir=LR;\n";
    for (const FormulaVertex& f : graph.formula_vertices()) {
        os << "  f" << f.id << " [shape=box, label=\"" << dot_escape(f.clause.to_string()) << "\"";
        if (graph.hypothesis_ids().count(f.id)) os << ", style=filled, fillcolor=lightgrey";
        if (graph.goal_id() == f.id) os << ", peripheries=2";
        os << "];\n";
    }
    for (const InferenceVertex& w : graph.inference_vertices()) {
        std::string label = std::string(rule_name(w.rule)) + " x" + std::to_string(w.principal);
        if (flow != nullptr && flow->contains(w.id)) label += "\\n" + to_string(flow->at(w.id));
        os << "  i" << w.id << " [shape=circle, label=\"" << label << "\"];\n";
    }
    for (const InferenceVertex& w : graph.inference_vertices()) {
        for (int id : w.in) os << "  f" << id << " -> i" << w.id << ";\n";
        for (int id : w.out) os << "  i" << w.id << " -> f" << id << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace circres
