#pragma once

#include "circres/core.hpp"
#include "circres/lp.hpp"
#include "circres/proof_graph.hpp"

#include <cstddef>
#include <optional>
#include <set>

namespace circres {

inline constexpr std::size_t kDefaultGuardRows = 2'000'000;

struct SearchOptions {
    /// Refuse when rows plus columns of the flow program would exceed this.
    std::size_t guard_rows = kDefaultGuardRows;
};

struct SearchStats {
    std::size_t clauses = 0;      // formula vertices laid down
    std::size_t inferences = 0;   // inference vertices laid down
    lp::SolveStats lp;
};

struct SearchResult {
    /// Witnessed proof pruned to positive-flow inferences, when one exists.
    std::optional<ProofGraph> graph;
    std::optional<FlowAssignment> flow;
    SearchStats stats;

    bool found() const noexcept { return graph.has_value(); }
};

/// Number of non-tautological clauses of width <= w over n variables.
std::size_t lattice_size(int num_variables, int width);

/// Rows plus columns of the search program, computed without building it.
std::size_t search_program_size(int num_variables, int width);

/// One vertex per non-tautological clause of width <= w (plus X v ~X when
/// w >= 2), every axiom, every cut and every two-consequent split inside that
/// lattice, then a flow program with free hypothesis rows, goal balance >= 1
/// and nonnegative flows, solved exactly with floating-point guidance. A goal
/// that is itself a hypothesis gets the trivial proof from a hypothesis copy.
/// Throws UsageError when w is below a hypothesis or goal width or the goal is tautological, and ResourceGuard when the program
/// would exceed the guard.
SearchResult circular_search(const CnfFormula& hypotheses, const Clause& goal, int width,
                             const SearchOptions& options = {});

/// Closure of the hypotheses under resolution with non-tautological
/// resolvents of width <= w. Weakening adds only clauses subsumed by members,
/// so derivability is decided by `saturation_derives`.
/// Throws UsageError when w is below a hypothesis width.
std::set<Clause> daglike_width_saturate(const CnfFormula& hypotheses, int width);

/// Some member of the closure is a subset of `goal`.
bool saturation_derives(const std::set<Clause>& closure, const Clause& goal);

}  // namespace circres
