#pragma once

#include "circres/core.hpp"
#include "circres/lp.hpp"
#include "circres/proof_graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace circres {

struct CheckReport {
    bool witnessed = false;
    /// The goal vertex the flow was found for (the last candidate tried on failure).
    std::optional<int> goal_id;
    std::optional<FlowAssignment> flow;
    /// Exact balances under `flow`, keyed by formula-vertex id.
    std::map<int, Rational> balances;
    std::vector<std::string> violations;
    lp::SolveStats lp_stats;
    /// Largest bit size of a flow value (diagnostic only).
    std::size_t max_flow_bits = 0;
};

/// Program (P): goal balance >= 1, balance >= 0 at every vertex whose clause
/// is not a hypothesis, Y_w >= 1. Variable k is the k-th inference vertex.
lp::LinearProgram build_witness_program(const ProofGraph& graph, int goal_id);

/// Solves (P) for the graph's designated goal vertex. Throws ValidationError
/// when rules are violated or no goal is set.
CheckReport find_witness(const ProofGraph& graph);
/// Tries every vertex labelled `goal` in turn and reports the first success.
CheckReport find_witness(const ProofGraph& graph, const Clause& goal);

/// Every flow positive, every negative-balance vertex labelled by a
/// hypothesis clause, and B(goal) > 0. Throws IncompleteFlow on missing entries.
bool verify_flow(const ProofGraph& graph, const FlowAssignment& flow, int goal_id);

/// Positive integral flow with exactly the same sources and sinks. Clears
/// denominators when the result stays below l!, otherwise re-solves a
/// {-1,0,1} program whose vertices are bounded by l!.
/// Throws ValidationError when the flow is not positive or has illegal sources.
FlowAssignment integralize(const ProofGraph& graph, const FlowAssignment& flow);

/// l! for l = number of vertices of the graph.
Integer length_factorial(const ProofGraph& graph);

struct TraceResult {
    int source_id;
    std::size_t iterations;
};

/// Follows falsified antecedents from a falsified sink, shrinking flow by
/// delta = min(B(s), F(r)) at every step, until it meets a falsified source.
/// Throws ValidationError when alpha satisfies the sink, the sink has no
/// positive balance, or the flow is not positive and integral.
TraceResult trace_falsified_source(const ProofGraph& graph, const FlowAssignment& flow, int sink_id,
                                   const Assignment& alpha);

/// Weights for the semantic inequalities of a witnessed proof.
struct DualCertificate {
    int goal_id;
    /// Vertices whose inequality is -(1 - Z) >= 0; all must carry hypothesis clauses.
    std::set<int> sources;
    std::map<int, Rational> b;  // per formula vertex
    std::map<int, Rational> c;  // per inference vertex
};

/// c_w = F(w)/B(s); b_u = -B(u)/B(s) on sources and B(u)/B(s) elsewhere.
/// Throws ValidationError when the flow does not witness a proof of the goal.
DualCertificate dual_certificate(const ProofGraph& graph, const FlowAssignment& flow, int goal_id);

/// Semantic system over Z_u (one variable per formula vertex, in vertex order):
/// rows for formula vertices first, then rows for inference vertices.
///   goal: -Z >= 0;  source: -(1-Z) >= 0;  other: (1-Z) >= 0
///   axiom: -(1-Z_a) >= 0;  cut: (1-Z_a)+(1-Z_b)-(1-Z_c) >= 0;
///   split: (1-Z_a) - sum over consequents (1-Z_o) >= 0
lp::LinearProgram build_semantic_system(const ProofGraph& graph, int goal_id,
                                        const std::set<int>& sources);

/// Weighted sum of the semantic inequalities, as sum_u coeff[u] Z_u + constant >= 0.
struct Combination {
    std::map<int, Rational> coefficients;  // zero entries omitted
    Rational constant = 0;
};

Combination combine(const ProofGraph& graph, const DualCertificate& cert);

/// The sources carry hypothesis clauses, weights are nonnegative, and the
/// combination is exactly -1 >= 0, that is 0 >= 1.
bool verify_dual_certificate(const ProofGraph& graph, const DualCertificate& cert);

}  // namespace circres
