#pragma once

#include "circres/core.hpp"
#include "circres/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace circres {

enum class Rule { Axiom, Cut, Split };

const char* rule_name(Rule rule) noexcept;

struct FormulaVertex {
    int id;
    Clause clause;
};

/// One inference step. Every rule carries its principal variable X:
///   axiom  -> (X v ~X)
///   cut    C v X, C v ~X -> C
///   split  C -> C v X [, C v ~X]   (one consequent may be suppressed)
struct InferenceVertex {
    int id;
    Rule rule;
    int principal;
    std::vector<int> in;
    std::vector<int> out;
};

/// Positive weights on inference vertices, keyed by inference id.
class FlowAssignment {
public:
    FlowAssignment() = default;

    void set(int inference_id, Rational flow) { flows_[inference_id] = std::move(flow); }
    bool contains(int inference_id) const { return flows_.count(inference_id) != 0; }
    /// Throws IncompleteFlow when the id has no entry.
    const Rational& at(int inference_id) const;
    void erase(int inference_id) { flows_.erase(inference_id); }

    std::size_t size() const noexcept { return flows_.size(); }
    auto begin() const noexcept { return flows_.begin(); }
    auto end() const noexcept { return flows_.end(); }

    Rational total() const;
    bool all_integral() const;

    friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;

private:
    std::map<int, Rational> flows_;
};

/// Compact graph representation of a circular pre-proof: formula vertices and
/// inference vertices, with backedges already contracted so cycles are legal.
/// Formula and inference ids live in separate namespaces.
class ProofGraph {
public:
    /// Adds a formula vertex with the next free id and returns it.
    int add_formula(Clause clause);
    /// Throws StructuralError if the id is taken.
    void add_formula(int id, Clause clause);

    int add_axiom(int variable, int out);
    int add_cut(int variable, int in_pos, int in_neg, int out);
    int add_split(int variable, int in, std::vector<int> outs);
    /// Throws StructuralError if the id is taken. Neighbour ids are checked lazily.
    void add_inference(InferenceVertex vertex);
    int add_inference(Rule rule, int principal, std::vector<int> in, std::vector<int> out);

    void mark_hypothesis(int formula_id);
    void clear_hypotheses() { hypotheses_.clear(); }
    /// Marks exactly the vertices whose clause occurs in `clauses`.
    void set_hypothesis_clauses(const std::vector<Clause>& clauses);
    void set_goal(int formula_id);
    void clear_goal() { goal_.reset(); }

    const std::vector<FormulaVertex>& formula_vertices() const noexcept { return formulas_; }
    const std::vector<InferenceVertex>& inference_vertices() const noexcept { return inferences_; }
    const std::set<int>& hypothesis_ids() const noexcept { return hypotheses_; }
    std::optional<int> goal_id() const noexcept { return goal_; }

    bool has_formula(int id) const { return formula_pos_.count(id) != 0; }
    bool has_inference(int id) const { return inference_pos_.count(id) != 0; }
    /// Position of a vertex in its list. Throws StructuralError for unknown ids.
    std::size_t formula_index(int id) const;
    std::size_t inference_index(int id) const;
    const FormulaVertex& formula(int id) const { return formulas_[formula_index(id)]; }
    const InferenceVertex& inference(int id) const { return inferences_[inference_index(id)]; }

    /// Clauses of the marked hypothesis vertices, deduplicated and sorted.
    std::vector<Clause> hypothesis_clauses() const;
    /// Set semantics: any vertex whose clause is a hypothesis clause may be a source.
    std::vector<bool> legal_sources() const;
    std::vector<int> vertices_with_clause(const Clause& clause) const;

    /// Largest clause width over formula vertices.
    std::size_t width() const;
    /// Number of vertices, |I| + |J|.
    std::size_t length() const noexcept { return formulas_.size() + inferences_.size(); }
    int max_variable() const;

private:
    std::vector<FormulaVertex> formulas_;
    std::vector<InferenceVertex> inferences_;
    std::unordered_map<int, std::size_t> formula_pos_;
    std::unordered_map<int, std::size_t> inference_pos_;
    std::set<int> hypotheses_;
    std::optional<int> goal_;
    int next_formula_id_ = 1;
    int next_inference_id_ = 1;
};

/// Per-formula-vertex producer and consumer lists, by vertex index.
struct Incidence {
    std::vector<std::vector<std::size_t>> producers;
    std::vector<std::vector<std::size_t>> consumers;
    /// in[i] / out[i]: formula indices of inference i's neighbours.
    std::vector<std::vector<std::size_t>> in;
    std::vector<std::vector<std::size_t>> out;
};

/// Throws StructuralError on dangling neighbour ids.
Incidence build_incidence(const ProofGraph& graph);

struct RuleViolation {
    int inference_id;
    std::string message;
};

/// Empty iff every inference vertex matches its rule template up to clause
/// normalization. Throws StructuralError on dangling neighbour ids.
std::vector<RuleViolation> validate_rules(const ProofGraph& graph);

/// Inflow minus outflow of one formula vertex.
Rational balance(const ProofGraph& graph, const FlowAssignment& flow, int formula_id);
/// Balances of all formula vertices, indexed like formula_vertices().
std::vector<Rational> balances(const ProofGraph& graph, const FlowAssignment& flow);

struct SourcesAndSinks {
    std::set<int> sources;  // balance < 0
    std::set<int> sinks;    // balance > 0
};

SourcesAndSinks sources_and_sinks(const ProofGraph& graph, const FlowAssignment& flow);

/// Graphviz rendering: boxes for formula vertices, circles for inference
/// vertices, flow labels when a flow is given.
std::string export_dot(const ProofGraph& graph, const FlowAssignment* flow = nullptr);

}  // namespace circres
