#include "circres/generators.hpp"

#include "circres/flow_check.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace circres {

BipartiteGraph::BipartiteGraph(int left, int right) : left_(left), right_(right) {
    if (left < 0 || right < 0) throw ValidationError("negative side size");
}

BipartiteGraph BipartiteGraph::complete(int left, int right) {
    BipartiteGraph g(left, right);
    for (int u = 1; u <= left; ++u) {
        for (int v = 1; v <= right; ++v) g.add_edge(u, v);
    }
    return g;
}

void BipartiteGraph::add_edge(int u, int v) {
    if (u < 1 || u > left_ || v < 1 || v > right_) {
        throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    edges_.emplace(u, v);
}

std::vector<int> BipartiteGraph::left_neighbours(int u) const {
    std::vector<int> out;
    for (auto it = edges_.lower_bound({u, 0}); it != edges_.end() && it->first == u; ++it) {
        out.push_back(it->second);
    }
    return out;
}

std::vector<int> BipartiteGraph::right_neighbours(int v) const {
    std::vector<int> out;
    for (const auto& [u, w] : edges_) {
        if (w == v) out.push_back(u);
    }
    return out;
}

int BipartiteGraph::max_degree() const {
    std::vector<int> deg_l(static_cast<std::size_t>(left_) + 1, 0);
    std::vector<int> deg_r(static_cast<std::size_t>(right_) + 1, 0);
    int d = 0;
    for (const auto& [u, v] : edges_) {
        d = std::max({d, ++deg_l[static_cast<std::size_t>(u)], ++deg_r[static_cast<std::size_t>(v)]});
    }
    return d;
}

int BipartiteGraph::edge_variable(int u, int v) const {
    auto it = edges_.find({u, v});
    if (it == edges_.end()) {
        throw ValidationError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    }
    return static_cast<int>(std::distance(edges_.begin(), it)) + 1;
}

BipartiteGraph sparse_php_graph(int n, std::uint64_t seed) {
    if (n < 3) throw ValidationError("sparse pigeonhole graphs need n >= 3");
    std::mt19937_64 rng(seed);
    // Pigeon stubs: degree 3 except three pigeons of degree 2; hole stubs: 3 each.
    std::vector<int> pigeon_stubs;
    for (int u = 1; u <= n + 1; ++u) {
        int d = u <= 3 ? 2 : 3;
        for (int k = 0; k < d; ++k) pigeon_stubs.push_back(u);
    }
    for (int attempt = 0;; ++attempt) {
        std::vector<int> stubs = pigeon_stubs;
        for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng() % i]);
        BipartiteGraph g(n + 1, n);
        bool simple = true;
        for (std::size_t k = 0; k < stubs.size() && simple; ++k) {
            int v = static_cast<int>(k / 3) + 1;
            if (g.edges().count({stubs[k], v})) simple = false;
            g.add_edge(stubs[k], v);
        }
        if (simple) return g;
    }
}

CnfFormula gen_php(const BipartiteGraph& g) {
    std::vector<Clause> clauses;
    for (int u = 1; u <= g.left_size(); ++u) {
        std::vector<Literal> lits;
        for (int v : g.left_neighbours(u)) lits.push_back(Literal::positive(g.edge_variable(u, v)));
        if (lits.empty()) throw ValidationError("pigeon " + std::to_string(u) + " has no holes");
        clauses.emplace_back(lits);
    }
    for (int v = 1; v <= g.right_size(); ++v) {
        std::vector<int> us = g.right_neighbours(v);
        for (std::size_t a = 0; a < us.size(); ++a) {
            for (std::size_t b = a + 1; b < us.size(); ++b) {
                clauses.push_back(Clause{Literal::negative(g.edge_variable(us[a], v)),
                                         Literal::negative(g.edge_variable(us[b], v))});
            }
        }
    }
    return CnfFormula(static_cast<int>(g.edges().size()), std::move(clauses));
}

namespace {

/// An inference over clause labels; vertices are assigned when pieces are patched.
struct Step {
    Rule rule;
    int var;
    std::vector<Clause> in;
    std::vector<Clause> out;

    friend bool operator<(const Step& a, const Step& b) {
        return std::tie(a.rule, a.var, a.in, a.out) < std::tie(b.rule, b.var, b.in, b.out);
    }
};

using Piece = std::vector<Step>;

Step split_step(int var, const Clause& c, bool both, bool positive = true) {
    Step s{Rule::Split, var, {c}, {}};
    if (both || positive) s.out.push_back(c.with(Literal::positive(var)));
    if (both || !positive) s.out.push_back(c.with(Literal::negative(var)));
    return s;
}

Step cut_step(int var, const Clause& side) {
    return {Rule::Cut, var, {side.with(Literal::positive(var)), side.with(Literal::negative(var))}, {side}};
}

Piece prefixed(const Piece& piece, Literal lit) {
    Piece out = piece;
    for (Step& s : out) {
        for (Clause& c : s.in) c = c.with(lit);
        for (Clause& c : s.out) c = c.with(lit);
    }
    return out;
}

Piece pigeon_piece(const BipartiteGraph& g, int u) {
    std::vector<int> xs;
    for (int v : g.left_neighbours(u)) xs.push_back(g.edge_variable(u, v));
    Piece piece;
    for (std::size_t j = xs.size(); j >= 1; --j) {
        // ~x_j  ->  ~x_j v x_1 v ... v x_{j-1}, then cut with C_j to get C_{j-1}
        Clause current{Literal::negative(xs[j - 1])};
        Clause prefix;
        for (std::size_t k = 1; k < j; ++k) {
            piece.push_back(split_step(xs[k - 1], current, false, true));
            current = piece.back().out[0];
            prefix = prefix.with(Literal::positive(xs[k - 1]));
        }
        piece.push_back(cut_step(xs[j - 1], prefix));
    }
    return piece;
}

Piece hole_piece(const BipartiteGraph& g, int v) {
    std::vector<int> ys;
    for (int u : g.right_neighbours(v)) ys.push_back(g.edge_variable(u, v));
    if (ys.empty()) return {};
    Piece piece{split_step(ys[0], Clause{}, true)};
    for (std::size_t i = 1; i < ys.size(); ++i) {
        piece = prefixed(piece, Literal::positive(ys[i]));
        for (std::size_t j = 0; j < i; ++j) piece.push_back(cut_step(ys[i], Clause{Literal::negative(ys[j])}));
        piece.push_back(split_step(ys[i], Clause{}, true));
    }
    return piece;
}

bool subsumes(const Clause& small, const Clause& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

FlowProof assemble(const std::map<Step, Rational>& steps) {
    FlowProof out;
    std::map<Clause, int> ids;
    auto vertex = [&](const Clause& c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        int id = out.graph.add_formula(c);
        ids.emplace(c, id);
        return id;
    };
    for (const auto& [s, f] : steps) {
        std::vector<int> in, outs;
        for (const Clause& c : s.in) in.push_back(vertex(c));
        for (const Clause& c : s.out) outs.push_back(vertex(c));
        int w = out.graph.add_inference(s.rule, s.var, std::move(in), std::move(outs));
        out.flow.set(w, f);
    }
    return out;
}

}  // namespace

FlowProof php_refutation(const BipartiteGraph& g) {
    if (g.left_size() <= g.right_size()) {
        throw ValidationError("pigeonhole refutation needs more pigeons than holes");
    }
    CnfFormula php = gen_php(g);

    std::map<Step, Rational> steps;
    auto patch = [&](const Piece& piece) {
        for (const Step& s : piece) steps[s] += 1;
    };
    for (int u = 1; u <= g.left_size(); ++u) patch(pigeon_piece(g, u));
    for (int v = 1; v <= g.right_size(); ++v) patch(hole_piece(g, v));

    // Prefixing turns hole clauses into weakenings of themselves; derive those
    // from the hole clause by a chain of one-sided splits.
    FlowProof draft = assemble(steps);
    draft.graph.set_hypothesis_clauses(php.clauses());
    std::vector<Rational> b = balances(draft.graph, draft.flow);
    std::vector<bool> legal = draft.graph.legal_sources();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= 0 || legal[i]) continue;
        const Clause& target = draft.graph.formula_vertices()[i].clause;
        auto h = std::find_if(php.clauses().begin(), php.clauses().end(),
                              [&](const Clause& c) { return subsumes(c, target); });
        if (h == php.clauses().end()) {
            throw std::logic_error("unexpected source " + target.to_string() + " in pigeonhole proof");
        }
        Clause current = *h;
        for (Literal l : target) {
            if (current.contains(l)) continue;
            Step s{Rule::Split, l.variable(), {current}, {current.with(l)}};
            current = s.out[0];
            steps[s] += -b[i];
        }
    }

    FlowProof out = assemble(steps);
    out.graph.set_hypothesis_clauses(php.clauses());
    auto empty = out.graph.vertices_with_clause(Clause{});
    out.graph.set_goal(empty.at(0));
    return out;
}

namespace {

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}
    std::size_t below(std::size_t k) { return static_cast<std::size_t>(rng_() % k); }
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
    bool coin() { return (rng_() & 1U) != 0; }

    Clause clause(int num_vars, int width) {
        std::vector<int> vars(static_cast<std::size_t>(num_vars));
        for (int i = 0; i < num_vars; ++i) vars[static_cast<std::size_t>(i)] = i + 1;
        std::vector<Literal> lits;
        for (int k = 0; k < width; ++k) {
            std::size_t j = static_cast<std::size_t>(k) + below(vars.size() - static_cast<std::size_t>(k));
            std::swap(vars[static_cast<std::size_t>(k)], vars[j]);
            lits.push_back(Literal(vars[static_cast<std::size_t>(k)], coin()));
        }
        return Clause(std::span<const Literal>(lits));
    }

private:
    std::mt19937_64 rng_;
};

Clause remove_literal(const Clause& c, Literal lit) {
    std::vector<Literal> lits;
    for (Literal l : c) {
        if (l != lit) lits.push_back(l);
    }
    return Clause(std::span<const Literal>(lits));
}

/// Rewrites every reference to a vertex in `group` to the group's first vertex,
/// unless that would give some inference a repeated neighbour.
bool merge_group(ProofGraph& g, const std::vector<int>& group) {
    std::set<int> others(group.begin() + 1, group.end());
    std::vector<InferenceVertex> rewired = g.inference_vertices();
    for (InferenceVertex& w : rewired) {
        for (auto* list : {&w.in, &w.out}) {
            for (int& id : *list) {
                if (others.count(id)) id = group.front();
            }
            std::vector<int> sorted = *list;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        }
    }
    ProofGraph merged;
    for (const FormulaVertex& f : g.formula_vertices()) {
        if (!others.count(f.id)) merged.add_formula(f.id, f.clause);
    }
    for (InferenceVertex& w : rewired) merged.add_inference(std::move(w));
    g = std::move(merged);
    return true;
}

}  // namespace

FlowProof random_circular_proof(std::uint64_t seed, int num_vars, int budget, int max_width) {
    if (num_vars < 1 || budget < 1 || max_width < 1) throw ValidationError("bad generator parameters");
    Random rng(seed);
    FlowProof out;
    ProofGraph g;

    if (budget == 1) {
        int x = rng.between(1, num_vars);
        int a = g.add_formula(Clause{Literal::positive(x), Literal::negative(x)});
        out.flow.set(g.add_axiom(x, a), 1);
        g.set_goal(a);
        out.graph = std::move(g);
        return out;
    }

    const int hyp_width = std::min(max_width, num_vars);
    std::vector<Clause> hyps;
    const int num_hyps = rng.between(1, 3);
    std::vector<int> vertices;
    for (int k = 0; k < num_hyps; ++k) {
        // The first hypothesis leaves room for a fallback split.
        int width = rng.between(1, k == 0 ? std::max(1, hyp_width - 1) : hyp_width);
        Clause c = rng.clause(num_vars, width);
        hyps.push_back(c);
        vertices.push_back(g.add_formula(c));
    }
    auto clause_of = [&](int id) -> const Clause& { return g.formula(id).clause; };

    for (int step = 0; step < budget; ++step) {
        std::size_t kind = rng.below(10);
        if (kind < 2) {
            if (max_width < 2) continue;
            int x = rng.between(1, num_vars);
            int a = g.add_formula(Clause{Literal::positive(x), Literal::negative(x)});
            g.add_axiom(x, a);
            vertices.push_back(a);
        } else if (kind < 6) {
            int a = vertices[rng.below(vertices.size())];
            int x = rng.between(1, num_vars);
            const Clause c = clause_of(a);
            Clause pos = c.with(Literal::positive(x));
            Clause neg = c.with(Literal::negative(x));
            std::vector<Clause> outs;
            if (pos != neg && pos.width() <= static_cast<std::size_t>(max_width) &&
                neg.width() <= static_cast<std::size_t>(max_width) && rng.coin()) {
                outs = {pos, neg};
            } else {
                Clause pick = rng.coin() ? pos : neg;
                if (pick == c) pick = pick == pos ? neg : pos;  // a split onto itself proves nothing
                if (pick == c || pick.width() > static_cast<std::size_t>(max_width)) continue;
                outs = {pick};
            }
            std::vector<int> ids;
            for (const Clause& o : outs) ids.push_back(g.add_formula(o));
            g.add_split(x, a, ids);
            vertices.insert(vertices.end(), ids.begin(), ids.end());
        } else {
            // Find any cuttable pair, scanning from a random starting vertex.
            std::map<Clause, int> by_clause;
            for (int id : vertices) by_clause.emplace(clause_of(id), id);
            std::size_t start = rng.below(vertices.size());
            bool done = false;
            for (std::size_t k = 0; k < vertices.size() && !done; ++k) {
                int a = vertices[(start + k) % vertices.size()];
                const Clause d = clause_of(a);
                for (Literal l : d) {
                    Clause side = remove_literal(d, l);
                    if (side.contains(l.complement())) continue;  // antecedents would coincide
                    auto partner = by_clause.find(side.with(l.complement()));
                    if (partner == by_clause.end() || partner->second == a) continue;
                    int c = g.add_formula(side);
                    if (l.is_negative()) {
                        g.add_cut(l.variable(), partner->second, a, c);
                    } else {
                        g.add_cut(l.variable(), a, partner->second, c);
                    }
                    vertices.push_back(c);
                    done = true;
                    break;
                }
            }
        }
    }

    if (g.inference_vertices().empty()) {
        // Split the narrowest hypothesis on one of its own variables: the
        // consequents are the clause itself and a tautology one literal wider.
        int a = vertices.front();
        for (int k = 0; k < num_hyps; ++k) {
            if (clause_of(vertices[static_cast<std::size_t>(k)]).width() < clause_of(a).width()) {
                a = vertices[static_cast<std::size_t>(k)];
            }
        }
        const Clause c = clause_of(a);
        int fresh = 1;
        while (fresh <= num_vars && c.mentions(fresh)) ++fresh;
        if (fresh <= num_vars && c.width() < static_cast<std::size_t>(max_width)) {
            g.add_split(fresh, a, {g.add_formula(c.with(Literal::positive(fresh)))});
        } else {
            Literal l = *c.begin();
            g.add_split(l.variable(), a, {g.add_formula(c), g.add_formula(c.with(l.complement()))});
        }
    }

    {
        // Hypotheses nothing consumes would only pad the width.
        std::set<int> used;
        for (const auto& w : g.inference_vertices()) {
            used.insert(w.in.begin(), w.in.end());
            used.insert(w.out.begin(), w.out.end());
        }
        ProofGraph pruned;
        std::vector<Clause> kept;
        for (const FormulaVertex& f : g.formula_vertices()) {
            if (!used.count(f.id)) continue;
            pruned.add_formula(f.id, f.clause);
            if (std::find(hyps.begin(), hyps.end(), f.clause) != hyps.end()) kept.push_back(f.clause);
        }
        for (const auto& w : g.inference_vertices()) pruned.add_inference(w);
        hyps = kept;
        g = std::move(pruned);
    }

    // Reverse creation order: every vertex is consumed only by later inferences.
    const auto& inferences = g.inference_vertices();
    std::map<int, Rational> outflow;
    static const Rational extras[] = {Rational(0), Rational(0), Rational(1, 2), Rational(1, 3), Rational(2)};
    for (auto it = inferences.rbegin(); it != inferences.rend(); ++it) {
        Rational need = 1;
        for (int o : it->out) need = std::max(need, outflow[o]);
        Rational f = need + extras[rng.below(5)];
        for (int i : it->in) outflow[i] += f;
        out.flow.set(it->id, f);
    }

    ProofGraph merged = g;
    std::size_t mode = rng.below(3);
    if (mode != 0) {
        std::map<Clause, std::vector<int>> groups;
        for (const FormulaVertex& f : merged.formula_vertices()) groups[f.clause].push_back(f.id);
        for (const auto& [clause, ids] : groups) {
            if (ids.size() < 2 || (mode == 2 && rng.coin())) continue;
            merge_group(merged, ids);
        }
    }

    for (ProofGraph* candidate : {&merged, &g}) {
        candidate->set_hypothesis_clauses(hyps);
        std::vector<Rational> b = balances(*candidate, out.flow);
        std::vector<int> sinks, plain;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] <= 0) continue;
            const FormulaVertex& f = candidate->formula_vertices()[i];
            sinks.push_back(f.id);
            if (!f.clause.is_tautology()) plain.push_back(f.id);
        }
        if (sinks.empty()) continue;
        const std::vector<int>& pool = plain.empty() ? sinks : plain;
        candidate->set_goal(pool[rng.below(pool.size())]);
        out.graph = std::move(*candidate);
        return out;
    }
    throw std::logic_error("random proof without a sink");
}

ProofGraph random_preproof(std::uint64_t seed, int num_vars, int num_inferences, int max_width) {
    if (num_vars < 1 || num_inferences < 0 || max_width < 1) throw ValidationError("bad generator parameters");
    Random rng(seed);
    ProofGraph g;
    std::map<Clause, int> ids;
    auto vertex = [&](const Clause& c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        int id = g.add_formula(c);
        ids.emplace(c, id);
        return id;
    };
    auto random_vertex_clause = [&]() {
        if (ids.empty() || rng.below(3) == 0) {
            return rng.clause(num_vars, rng.between(0, std::min(max_width, num_vars)));
        }
        auto it = ids.begin();
        std::advance(it, static_cast<long>(rng.below(ids.size())));
        return it->first;
    };
    std::set<std::tuple<int, int, std::vector<int>, std::vector<int>>> seen;
    auto add = [&](Rule rule, int x, std::vector<int> in, std::vector<int> out) {
        if (seen.emplace(static_cast<int>(rule), x, in, out).second) g.add_inference(rule, x, in, out);
    };
    for (int k = 0; k < num_inferences; ++k) {
        std::size_t kind = rng.below(8);
        int x = rng.between(1, num_vars);
        Literal pos = Literal::positive(x);
        Literal neg = Literal::negative(x);
        if (kind == 0 && max_width >= 2) {
            add(Rule::Axiom, x, {}, {vertex(Clause{pos, neg})});
        } else if (kind < 4) {
            Clause c = random_vertex_clause();
            Clause a = c.with(pos), b = c.with(neg);
            if (a.width() > static_cast<std::size_t>(max_width) || b.width() > static_cast<std::size_t>(max_width)) {
                continue;
            }
            if (a == b || rng.coin()) {
                add(Rule::Split, x, {vertex(c)}, {vertex(rng.coin() ? a : b)});
            } else {
                add(Rule::Split, x, {vertex(c)}, {vertex(a), vertex(b)});
            }
        } else {
            Clause c = random_vertex_clause();
            if (rng.coin()) c = c.without(x);
            Clause a = c.with(pos), b = c.with(neg);
            if (a == b || a.width() > static_cast<std::size_t>(max_width) ||
                b.width() > static_cast<std::size_t>(max_width)) {
                continue;
            }
            int va = vertex(a), vb = vertex(b), vc = vertex(c);
            add(Rule::Cut, x, {va, vb}, {vc});
        }
    }
    if (ids.empty()) vertex(Clause{});
    std::vector<Clause> hyps;
    for (const auto& [c, id] : ids) {
        if (!c.is_tautology() && rng.coin()) hyps.push_back(c);
    }
    g.set_hypothesis_clauses(hyps);
    // Prefer derived goals; a goal nothing produces is rarely interesting.
    std::vector<int> produced;
    for (const auto& w : g.inference_vertices()) produced.insert(produced.end(), w.out.begin(), w.out.end());
    if (produced.empty()) {
        const auto& fs = g.formula_vertices();
        g.set_goal(fs[rng.below(fs.size())].id);
    } else {
        g.set_goal(produced[rng.below(produced.size())]);
    }
    return g;
}

}  // namespace circres
