#pragma once

#include "circres/core.hpp"
#include "circres/proof_graph.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace circres {

/// Left vertices (pigeons) 1..left, right vertices (holes) 1..right.
class BipartiteGraph {
public:
    BipartiteGraph(int left, int right);

    static BipartiteGraph complete(int left, int right);

    /// Throws ValidationError for out-of-range endpoints. Repeats are ignored.
    void add_edge(int u, int v);

    int left_size() const noexcept { return left_; }
    int right_size() const noexcept { return right_; }
    const std::set<std::pair<int, int>>& edges() const noexcept { return edges_; }

    std::vector<int> left_neighbours(int u) const;
    std::vector<int> right_neighbours(int v) const;
    int max_degree() const;

    /// Edges are numbered 1.. in lexicographic (u, v) order. Throws
    /// ValidationError when (u, v) is not an edge.
    int edge_variable(int u, int v) const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    int left_;
    int right_;
    std::set<std::pair<int, int>> edges_;
};

/// A bipartite graph with left = n + 1, right = n where every hole has
/// degree 3 and every pigeon degree at most 3, built deterministically
/// from `seed`. Requires n >= 3.
BipartiteGraph sparse_php_graph(int n, std::uint64_t seed);

/// Pigeon clauses (one per left vertex, in order) followed by hole clauses
/// (per right vertex, pairs of its neighbours in order).
/// Throws ValidationError when a left vertex has no edges.
CnfFormula gen_php(const BipartiteGraph& g);

struct FlowProof {
    ProofGraph graph;
    FlowAssignment flow;
};

/// Circular refutation of G-PHP with width at most the maximum degree and
/// flow 1 per construction step. Hypotheses are the G-PHP clauses, the goal
/// is the empty clause with balance |U| - |V| (holes without edges add nothing).
/// Throws ValidationError unless |U| > |V|.
FlowProof php_refutation(const BipartiteGraph& g);

/// Deterministic random proof on variables 1..num_vars: a dag built from
/// random hypotheses with `budget` inference steps, flows assigned in reverse
/// creation order, then equal clauses optionally identified (which closes
/// cycles). The goal is a sink, non-tautological when possible. Unused
/// hypotheses are dropped and no split repeats its antecedent as its only
/// consequent. Budget 1 gives a lone axiom.
FlowProof random_circular_proof(std::uint64_t seed, int num_vars, int budget, int max_width = 4);

/// Random pre-proof with one vertex per clause and arbitrary (often cyclic)
/// wiring, random hypotheses and a random goal vertex. Carries no flow and is
/// usually not a proof; used to fuzz the checker against the semantic oracle.
ProofGraph random_preproof(std::uint64_t seed, int num_vars, int num_inferences, int max_width = 3);

}  // namespace circres
