#include "circres/flow_check.hpp"

#include <algorithm>

namespace circres {

namespace {

void require_valid_rules(const ProofGraph& graph) {
    auto violations = validate_rules(graph);
    if (!violations.empty()) {
        throw ValidationError("inference vertex " + std::to_string(violations.front().inference_id) +
                              ": " + violations.front().message);
    }
}

std::vector<Rational> flow_vector(const ProofGraph& graph, const FlowAssignment& flow) {
    std::vector<Rational> f;
    f.reserve(graph.inference_vertices().size());
    for (const auto& w : graph.inference_vertices()) f.push_back(flow.at(w.id));
    return f;
}

std::vector<Rational> balances_of(const Incidence& inc, const std::vector<Rational>& f,
                                  std::size_t num_formulas) {
    std::vector<Rational> b(num_formulas, Rational(0));
    for (std::size_t w = 0; w < f.size(); ++w) {
        for (std::size_t u : inc.in[w]) b[u] -= f[w];
        for (std::size_t u : inc.out[w]) b[u] += f[w];
    }
    return b;
}

bool all_positive(const FlowAssignment& flow) {
    return std::all_of(flow.begin(), flow.end(), [](const auto& e) { return e.second > 0; });
}

}  // namespace

lp::LinearProgram build_witness_program(const ProofGraph& graph, int goal_id) {
    const auto& formulas = graph.formula_vertices();
    const std::size_t goal = graph.formula_index(goal_id);
    Incidence inc = build_incidence(graph);
    std::vector<bool> legal = graph.legal_sources();

    lp::LinearProgram p(static_cast<int>(graph.inference_vertices().size()));
    auto balance_row = [&](std::size_t u) {
        std::vector<lp::Term> row;
        for (std::size_t w : inc.producers[u]) row.push_back({static_cast<int>(w), Rational(1)});
        for (std::size_t w : inc.consumers[u]) row.push_back({static_cast<int>(w), Rational(-1)});
        return row;
    };
    p.add_constraint(balance_row(goal), 1);
    for (std::size_t u = 0; u < formulas.size(); ++u) {
        if (u == goal || legal[u]) continue;
        p.add_constraint(balance_row(u), 0);
    }
    for (int w = 0; w < p.num_vars(); ++w) p.add_constraint({{w, Rational(1)}}, 1);
    return p;
}

CheckReport find_witness(const ProofGraph& graph) {
    require_valid_rules(graph);
    if (!graph.goal_id()) throw ValidationError("no goal vertex designated");
    const int goal_id = *graph.goal_id();

    CheckReport report;
    report.goal_id = goal_id;
    lp::Solution sol = lp::solve(build_witness_program(graph, goal_id));
    report.lp_stats = sol.stats;
    if (!sol.point) {
        report.violations.push_back("program (P) is infeasible for goal vertex " + std::to_string(goal_id));
        return report;
    }
    FlowAssignment flow;
    const auto& inferences = graph.inference_vertices();
    for (std::size_t w = 0; w < inferences.size(); ++w) {
        report.max_flow_bits = std::max(report.max_flow_bits, bit_size((*sol.point)[w]));
        flow.set(inferences[w].id, std::move((*sol.point)[w]));
    }
    std::vector<Rational> b = balances(graph, flow);
    for (std::size_t u = 0; u < b.size(); ++u) report.balances[graph.formula_vertices()[u].id] = b[u];
    report.witnessed = verify_flow(graph, flow, goal_id);
    if (!report.witnessed) throw std::logic_error("program (P) returned a non-witnessing flow");
    report.flow = std::move(flow);
    return report;
}

CheckReport find_witness(const ProofGraph& graph, const Clause& goal) {
    std::vector<int> candidates = graph.vertices_with_clause(goal);
    if (candidates.empty()) {
        require_valid_rules(graph);
        CheckReport report;
        report.violations.push_back("no vertex is labelled " + goal.to_string());
        return report;
    }
    CheckReport last;
    for (int id : candidates) {
        ProofGraph g = graph;
        g.set_goal(id);
        last = find_witness(g);
        if (last.witnessed) return last;
    }
    return last;
}

bool verify_flow(const ProofGraph& graph, const FlowAssignment& flow, int goal_id) {
    const std::size_t goal = graph.formula_index(goal_id);
    for (const auto& w : graph.inference_vertices()) {
        if (flow.at(w.id) <= 0) return false;
    }
    if (flow.size() != graph.inference_vertices().size()) return false;
    std::vector<Rational> b = balances(graph, flow);
    std::vector<bool> legal = graph.legal_sources();
    for (std::size_t u = 0; u < b.size(); ++u) {
        if (b[u] < 0 && !legal[u]) return false;
    }
    return b[goal] > 0;
}

Integer length_factorial(const ProofGraph& graph) {
    Integer f = 1;
    for (std::size_t k = 2; k <= graph.length(); ++k) f *= static_cast<unsigned long>(k);
    return f;
}

FlowAssignment integralize(const ProofGraph& graph, const FlowAssignment& flow) {
    Incidence inc = build_incidence(graph);
    std::vector<Rational> f = flow_vector(graph, flow);
    if (!all_positive(flow)) throw ValidationError("flow is not strictly positive");
    const std::size_t nf = graph.formula_vertices().size();
    std::vector<Rational> b = balances_of(inc, f, nf);
    std::vector<bool> legal = graph.legal_sources();
    for (std::size_t u = 0; u < nf; ++u) {
        if (b[u] < 0 && !legal[u]) {
            throw ValidationError("vertex " + std::to_string(graph.formula_vertices()[u].id) +
                                  " is a source without a hypothesis clause");
        }
    }

    const Integer bound = length_factorial(graph);
    auto scaled = [&](const std::vector<Rational>& values) {
        Integer l = 1;
        for (const Rational& q : values) l = boost::multiprecision::lcm(l, denominator_of(q));
        std::vector<Integer> out;
        out.reserve(values.size());
        for (const Rational& q : values) out.push_back(numerator_of(q) * (l / denominator_of(q)));
        return out;
    };
    auto within = [&](const std::vector<Integer>& values) {
        return std::all_of(values.begin(), values.end(), [&](const Integer& v) { return v <= bound; });
    };

    std::vector<Integer> ints = scaled(f);
    if (!within(ints)) {
        // Fix the sign of every balance: sinks >= 1, sources <= -1, others = 0.
        lp::LinearProgram q(static_cast<int>(f.size()));
        for (std::size_t u = 0; u < nf; ++u) {
            std::vector<lp::Term> row;
            for (std::size_t w : inc.producers[u]) row.push_back({static_cast<int>(w), Rational(1)});
            for (std::size_t w : inc.consumers[u]) row.push_back({static_cast<int>(w), Rational(-1)});
            std::vector<lp::Term> negated = row;
            for (auto& t : negated) t.coeff = -t.coeff;
            if (b[u] > 0) {
                q.add_constraint(row, 1);
            } else if (b[u] < 0) {
                q.add_constraint(negated, 1);
            } else {
                q.add_constraint(row, 0);
                q.add_constraint(negated, 0);
            }
        }
        for (int w = 0; w < q.num_vars(); ++w) q.add_constraint({{w, Rational(1)}}, 1);
        auto point = lp::feasible(q);
        if (!point) throw std::logic_error("sign-pattern program infeasible for a feasible flow");
        ints = scaled(*point);
    }

    FlowAssignment out;
    const auto& inferences = graph.inference_vertices();
    for (std::size_t w = 0; w < inferences.size(); ++w) out.set(inferences[w].id, Rational(ints[w]));
    return out;
}

TraceResult trace_falsified_source(const ProofGraph& graph, const FlowAssignment& flow, int sink_id,
                                   const Assignment& alpha) {
    Incidence inc = build_incidence(graph);
    std::vector<Rational> f = flow_vector(graph, flow);
    for (const Rational& q : f) {
        if (q <= 0 || !is_integral(q)) throw ValidationError("flow must be positive and integral");
    }
    const auto& formulas = graph.formula_vertices();
    const auto& inferences = graph.inference_vertices();
    std::vector<Rational> b = balances_of(inc, f, formulas.size());

    std::size_t s = graph.formula_index(sink_id);
    if (b[s] <= 0) throw ValidationError("vertex " + std::to_string(sink_id) + " is not a sink");
    if (evaluate(formulas[s].clause, alpha)) {
        throw ValidationError("assignment satisfies the sink clause " + formulas[s].clause.to_string());
    }

    std::size_t iterations = 0;
    while (true) {
        ++iterations;
        // A falsified consequent has a falsified antecedent, since every rule is sound.
        std::size_t r = inferences.size();
        for (std::size_t w : inc.producers[s]) {
            if (f[w] > 0) {
                r = w;
                break;
            }
        }
        if (r == inferences.size()) throw std::logic_error("sink without a positive producer");
        std::size_t u = formulas.size();
        for (std::size_t v : inc.in[r]) {
            if (!evaluate(formulas[v].clause, alpha)) {
                u = v;
                break;
            }
        }
        if (u == formulas.size()) {
            throw std::logic_error("inference " + std::to_string(inferences[r].id) +
                                   " has a falsified consequent but no falsified antecedent");
        }
        if (b[u] < 0) return {formulas[u].id, iterations};

        Rational delta = std::min(b[s], f[r]);
        f[r] -= delta;
        for (std::size_t v : inc.in[r]) b[v] += delta;
        for (std::size_t v : inc.out[r]) b[v] -= delta;
        s = u;
    }
}

DualCertificate dual_certificate(const ProofGraph& graph, const FlowAssignment& flow, int goal_id) {
    if (!verify_flow(graph, flow, goal_id)) {
        throw ValidationError("flow does not witness a proof of vertex " + std::to_string(goal_id));
    }
    std::vector<Rational> b = balances(graph, flow);
    const Rational bs = b[graph.formula_index(goal_id)];
    DualCertificate cert;
    cert.goal_id = goal_id;
    const auto& formulas = graph.formula_vertices();
    for (std::size_t u = 0; u < formulas.size(); ++u) {
        if (b[u] < 0) {
            cert.sources.insert(formulas[u].id);
            cert.b[formulas[u].id] = -b[u] / bs;
        } else {
            cert.b[formulas[u].id] = b[u] / bs;
        }
    }
    for (const auto& w : graph.inference_vertices()) cert.c[w.id] = flow.at(w.id) / bs;
    return cert;
}

namespace {

/// One semantic inequality as sum coeff*Z + constant >= 0.
struct Affine {
    std::vector<std::pair<std::size_t, int>> z;
    int constant = 0;
};

Affine formula_inequality(std::size_t u, bool is_goal, bool is_source) {
    if (is_goal) return {{{u, -1}}, 0};
    if (is_source) return {{{u, 1}}, -1};
    return {{{u, -1}}, 1};
}

/// (1 - Z_in...) - (1 - Z_out...) with the axiom as the empty-antecedent case.
Affine inference_inequality(const Incidence& inc, std::size_t w) {
    Affine a;
    for (std::size_t v : inc.in[w]) {
        a.z.push_back({v, -1});
        a.constant += 1;
    }
    for (std::size_t v : inc.out[w]) {
        a.z.push_back({v, 1});
        a.constant -= 1;
    }
    return a;
}

}  // namespace

lp::LinearProgram build_semantic_system(const ProofGraph& graph, int goal_id,
                                        const std::set<int>& sources) {
    Incidence inc = build_incidence(graph);
    const auto& formulas = graph.formula_vertices();
    const std::size_t goal = graph.formula_index(goal_id);
    lp::LinearProgram p(static_cast<int>(formulas.size()));
    auto add = [&](const Affine& a) {
        std::vector<lp::Term> row;
        for (auto [v, c] : a.z) row.push_back({static_cast<int>(v), Rational(c)});
        p.add_constraint(std::move(row), Rational(-a.constant));
    };
    for (std::size_t u = 0; u < formulas.size(); ++u) {
        add(formula_inequality(u, u == goal, sources.count(formulas[u].id) != 0));
    }
    for (std::size_t w = 0; w < graph.inference_vertices().size(); ++w) add(inference_inequality(inc, w));
    return p;
}

Combination combine(const ProofGraph& graph, const DualCertificate& cert) {
    Incidence inc = build_incidence(graph);
    const auto& formulas = graph.formula_vertices();
    const std::size_t goal = graph.formula_index(cert.goal_id);
    std::vector<Rational> z(formulas.size(), Rational(0));
    Combination out;
    auto accumulate = [&](const Rational& weight, const Affine& a) {
        for (auto [v, c] : a.z) z[v] += weight * c;
        out.constant += weight * a.constant;
    };
    for (std::size_t u = 0; u < formulas.size(); ++u) {
        auto it = cert.b.find(formulas[u].id);
        if (it == cert.b.end()) continue;
        accumulate(it->second, formula_inequality(u, u == goal, cert.sources.count(formulas[u].id) != 0));
    }
    const auto& inferences = graph.inference_vertices();
    for (std::size_t w = 0; w < inferences.size(); ++w) {
        auto it = cert.c.find(inferences[w].id);
        if (it == cert.c.end()) continue;
        accumulate(it->second, inference_inequality(inc, w));
    }
    for (std::size_t u = 0; u < formulas.size(); ++u) {
        if (z[u] != 0) out.coefficients[formulas[u].id] = z[u];
    }
    return out;
}

bool verify_dual_certificate(const ProofGraph& graph, const DualCertificate& cert) {
    if (!graph.has_formula(cert.goal_id)) return false;
    std::vector<bool> legal = graph.legal_sources();
    for (int id : cert.sources) {
        if (!graph.has_formula(id) || !legal[graph.formula_index(id)] || id == cert.goal_id) return false;
    }
    for (const auto& [id, q] : cert.b) {
        if (!graph.has_formula(id) || q < 0) return false;
    }
    for (const auto& [id, q] : cert.c) {
        if (!graph.has_inference(id) || q < 0) return false;
    }
    Combination sum = combine(graph, cert);
    return sum.coefficients.empty() && sum.constant == -1;
}

}  // namespace circres
