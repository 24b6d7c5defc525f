#include "circres/search.hpp"

#include "circres/flow_check.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace circres {

namespace {

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

// Non-tautological clauses over 1..n of width <= w, narrowest first.
void enumerate(int n, int w, int next, std::vector<Literal>& cur, std::vector<Clause>& out) {
    out.emplace_back(std::span<const Literal>(cur));
    if (static_cast<int>(cur.size()) == w) return;
    for (int v = next; v <= n; ++v) {
        for (bool neg : {false, true}) {
            cur.push_back(Literal(v, neg));
            enumerate(n, w, v + 1, cur, out);
            cur.pop_back();
        }
    }
}

struct Column {
    Rule rule;
    int principal;
    std::vector<std::size_t> in;
    std::vector<std::size_t> out;
};

}  // namespace

std::size_t lattice_size(int num_variables, int width) {
    std::size_t total = 0;
    for (int k = 0; k <= std::min(width, num_variables); ++k) total += binomial(num_variables, k) << k;
    return total;
}

std::size_t search_program_size(int num_variables, int width) {
    const int n = num_variables;
    std::size_t rows = lattice_size(n, width) + (width >= 2 ? static_cast<std::size_t>(n) : 0);
    std::size_t columns = width >= 2 ? static_cast<std::size_t>(n) : 0;
    // A cut and a split for every clause of width k < w and variable outside it.
    for (int k = 0; k < std::min(width, n + 1); ++k) {
        columns += 2 * (binomial(n, k) << k) * static_cast<std::size_t>(n - k);
    }
    return rows + columns;
}

SearchResult circular_search(const CnfFormula& hypotheses, const Clause& goal, int width,
                             const SearchOptions& options) {
    const int n = std::max(hypotheses.num_variables(), goal.max_variable());
    for (const Clause& h : hypotheses.clauses()) {
        if (static_cast<int>(h.width()) > width) {
            throw UsageError("width " + std::to_string(width) + " is below hypothesis width " +
                             std::to_string(h.width()));
        }
    }
    if (static_cast<int>(goal.width()) > width) throw UsageError("width is below the goal width");
    if (goal.is_tautology()) throw UsageError("goal " + goal.to_string() + " is tautological");
    const std::size_t size = search_program_size(n, width);
    if (size > options.guard_rows) {
        throw ResourceGuard("search program needs " + std::to_string(size) + " rows and columns over " +
                            std::to_string(n) + " variables at width " + std::to_string(width) +
                            ", above the guard of " + std::to_string(options.guard_rows));
    }

    // A hypothesis goal cannot be its own sink in a one-vertex-per-clause
    // graph, so it is fed from a hypothesis copy: an idempotent split, or for
    // the empty clause a split on x1 and a cut back (needs width 1).
    const auto& hyps = hypotheses.clauses();
    if (std::find(hyps.begin(), hyps.end(), goal) != hyps.end() && (!goal.empty() || width >= 1)) {
        SearchResult result;
        ProofGraph graph;
        FlowAssignment flow;
        const int copy = graph.add_formula(goal);
        const int g = graph.add_formula(goal);
        if (!goal.empty()) {
            flow.set(graph.add_split(goal.literals().front().variable(), copy, {g}), Rational(1));
        } else {
            const int pos = graph.add_formula(Clause{Literal::positive(1)});
            const int neg = graph.add_formula(Clause{Literal::negative(1)});
            flow.set(graph.add_split(1, copy, {pos, neg}), Rational(1));
            flow.set(graph.add_cut(1, pos, neg, g), Rational(1));
        }
        graph.set_hypothesis_clauses(hyps);
        graph.set_goal(g);
        result.graph = std::move(graph);
        result.flow = std::move(flow);
        return result;
    }

    std::vector<Clause> clauses;
    std::vector<Literal> scratch;
    enumerate(n, width, 1, scratch, clauses);
    std::unordered_map<Clause, std::size_t, ClauseHash> index;
    for (std::size_t i = 0; i < clauses.size(); ++i) index.emplace(clauses[i], i);
    auto lookup = [&](const Clause& c) {
        auto [it, inserted] = index.try_emplace(c, clauses.size());
        if (inserted) clauses.push_back(c);
        return it->second;
    };

    std::vector<Column> columns;
    if (width >= 2) {
        for (int x = 1; x <= n; ++x) {
            columns.push_back({Rule::Axiom, x, {}, {lookup(Clause{Literal::positive(x), Literal::negative(x)})}});
        }
    }
    const std::size_t lattice = index.size();
    for (std::size_t i = 0; i < lattice; ++i) {
        const Clause c = clauses[i];
        if (static_cast<int>(c.width()) >= width || c.is_tautology()) continue;
        for (int x = 1; x <= n; ++x) {
            if (c.mentions(x)) continue;
            std::size_t pos = index.at(c.with(Literal::positive(x)));
            std::size_t neg = index.at(c.with(Literal::negative(x)));
            columns.push_back({Rule::Cut, x, {pos, neg}, {i}});
            columns.push_back({Rule::Split, x, {i}, {pos, neg}});
        }
    }

    SearchResult result;
    result.stats.clauses = clauses.size();
    result.stats.inferences = columns.size();

    std::vector<bool> legal(clauses.size(), false);
    for (const Clause& h : hypotheses.clauses()) {
        if (!h.is_tautology()) legal[index.at(h)] = true;
    }
    const std::size_t g = index.at(goal);

    // Balance row per non-hypothesis clause, goal balance >= 1, flows >= 0.
    std::vector<std::vector<lp::Term>> rows(clauses.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const int var = static_cast<int>(k);
        for (std::size_t u : columns[k].out) rows[u].push_back({var, Rational(1)});
        for (std::size_t u : columns[k].in) rows[u].push_back({var, Rational(-1)});
    }
    lp::LinearProgram program(static_cast<int>(columns.size()));
    for (std::size_t u = 0; u < clauses.size(); ++u) {
        if (u != g && legal[u]) continue;
        program.add_constraint(std::move(rows[u]), u == g ? 1 : 0);
    }
    for (int k = 0; k < program.num_vars(); ++k) program.add_constraint({{k, Rational(1)}}, 0);

    lp::Solution sol = lp::solve(program, {.float_guided = true});
    result.stats.lp = sol.stats;
    if (!sol.point) return result;
    const std::vector<Rational>& point = *sol.point;

    // Keep positive-flow inferences and the clauses they touch.
    ProofGraph graph;
    FlowAssignment flow;
    std::map<std::size_t, int> ids;
    auto vertex = [&](std::size_t u) {
        auto [it, inserted] = ids.try_emplace(u, 0);
        if (inserted) it->second = graph.add_formula(clauses[u]);
        return it->second;
    };
    vertex(g);
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const Rational& y = point[k];
        if (y <= 0) continue;
        std::vector<int> in, out;
        for (std::size_t u : columns[k].in) in.push_back(vertex(u));
        for (std::size_t u : columns[k].out) out.push_back(vertex(u));
        flow.set(graph.add_inference(columns[k].rule, columns[k].principal, in, out), y);
    }
    graph.set_hypothesis_clauses(hypotheses.clauses());
    const int goal_id = ids.at(g);
    graph.set_goal(goal_id);
    if (!validate_rules(graph).empty() || !verify_flow(graph, flow, goal_id)) {
        throw std::logic_error("search returned a flow that does not witness the goal");
    }
    result.graph = std::move(graph);
    result.flow = std::move(flow);
    return result;
}

std::set<Clause> daglike_width_saturate(const CnfFormula& hypotheses, int width) {
    std::set<Clause> closure;
    std::vector<Clause> work;
    for (const Clause& h : hypotheses.clauses()) {
        if (static_cast<int>(h.width()) > width) {
            throw UsageError("width " + std::to_string(width) + " is below hypothesis width " +
                             std::to_string(h.width()));
        }
        if (!h.is_tautology() && closure.insert(h).second) work.push_back(h);
    }
    // Clauses by literal, for finding resolution partners.
    std::map<Literal, std::vector<Clause>> containing;
    for (const Clause& c : work) {
        for (const Literal& l : c) containing[l].push_back(c);
    }
    while (!work.empty()) {
        Clause c = std::move(work.back());
        work.pop_back();
        for (const Literal& l : c) {
            auto it = containing.find(l.complement());
            if (it == containing.end()) continue;
            const std::vector<Clause> partners = it->second;
            for (const Clause& d : partners) {
                Clause r = c.without(l.variable()).with(d.without(l.variable()));
                if (static_cast<int>(r.width()) > width || r.is_tautology()) continue;
                if (!closure.insert(r).second) continue;
                for (const Literal& m : r) containing[m].push_back(r);
                work.push_back(std::move(r));
            }
        }
    }
    return closure;
}

bool saturation_derives(const std::set<Clause>& closure, const Clause& goal) {
    return std::any_of(closure.begin(), closure.end(), [&](const Clause& c) {
        return std::includes(goal.begin(), goal.end(), c.begin(), c.end());
    });
}

}  // namespace circres
