#include "circres/cli.hpp"

#include "circres/flow_check.hpp"
#include "circres/formats.hpp"
#include "circres/generators.hpp"
#include "circres/search.hpp"
#include "circres/sherali_adams.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace circres::cli {

namespace {

/// Maps library exceptions onto exit codes; everything else propagates.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const ResourceGuard& e) {
        err << "resource guard: " << e.what() << '\n';
        return kResourceGuard;
    } catch (const TooLarge& e) {
        err << "resource guard: " << e.what() << '\n';
        return kResourceGuard;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "invalid input: " << e.what() << '\n';
    }
    return kInputError;
}

void write_dot(const std::string& path, const ProofGraph& graph, const FlowAssignment* flow) {
    if (!path.empty()) write_file(path, export_dot(graph, flow));
}

void dump_flow(std::ostream& out, const FlowAssignment& flow) {
    for (const auto& [id, value] : flow) out << "w " << id << ' ' << to_string(value) << '\n';
}

std::string shape(const ProofGraph& g) {
    std::ostringstream os;
    os << g.formula_vertices().size() << " formula and " << g.inference_vertices().size()
       << " inference vertices, length " << g.length() << ", width " << g.width();
    return os.str();
}

}  // namespace

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        CresFile file = parse_cres(read_file(options.proof_path));
        ProofGraph& g = file.graph;
        if (!options.cnf_path.empty()) {
            CnfFormula cnf = parse_cnf(read_file(options.cnf_path));
            const auto& allowed = cnf.clauses();
            for (int id : g.hypothesis_ids()) {
                const Clause& c = g.formula(id).clause;
                if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) {
                    throw ValidationError("vertex " + std::to_string(id) + " is marked as hypothesis but " +
                                          c.to_string() + " is not in the CNF");
                }
            }
            g.set_hypothesis_clauses(allowed);
        }
        out << "proof: " << shape(g) << '\n';

        if (file.flow) {
            if (!g.goal_id()) throw ValidationError("flows given but no goal vertex designated");
            bool ok = validate_rules(g).empty() && verify_flow(g, *file.flow, *g.goal_id());
            out << "given flows: " << (ok ? "verified" : "rejected") << '\n';
        }

        CheckReport report = options.goal ? find_witness(g, parse_goal_spec(*options.goal)) : find_witness(g);
        out << "program: " << report.lp_stats.rows << " rows, " << report.lp_stats.columns << " columns\n";
        if (!report.witnessed) {
            for (const std::string& v : report.violations) out << "reason: " << v << '\n';
            out << "NOT-WITNESSED\n";
            write_dot(options.dot_path, g, nullptr);
            return static_cast<int>(kNegative);
        }
        const int goal = *report.goal_id;
        out << "WITNESSED goal " << goal << ' ' << g.formula(goal).clause.to_string() << " balance "
            << to_string(report.balances.at(goal)) << '\n';
        dump_flow(out, *report.flow);
        write_dot(options.dot_path, g, &*report.flow);
        return static_cast<int>(kSuccess);
    });
}

int cmd_gen_php(const GenPhpOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const int sources = (options.complete != 0) + (options.sparse != 0) + !options.graph_path.empty();
        if (sources != 1) throw UsageError("choose exactly one of --complete, --sparse and --graph");
        if (options.complete < 0 || options.sparse < 0) throw UsageError("size must be positive");
        if (options.cnf_out.empty() || options.proof_out.empty()) throw UsageError("--cnf and --proof are required");

        std::optional<BipartiteGraph> graph;
        if (options.complete > 0) graph = BipartiteGraph::complete(options.complete + 1, options.complete);
        else if (options.sparse > 0) graph = sparse_php_graph(options.sparse, options.seed);
        else graph = parse_bigraph(read_file(options.graph_path));
        if (graph->left_size() <= graph->right_size()) {
            throw UsageError("need more pigeons than holes, got " + std::to_string(graph->left_size()) + " and " +
                             std::to_string(graph->right_size()));
        }

        CnfFormula cnf = gen_php(*graph);
        FlowProof proof = php_refutation(*graph);

        std::ostringstream map;
        map << "pigeonhole formula: " << graph->left_size() << " pigeons, " << graph->right_size() << " holes\n";
        for (const auto& [u, v] : graph->edges()) {
            map << "x" << graph->edge_variable(u, v) << " = pigeon " << u << " in hole " << v << '\n';
        }
        write_file(options.cnf_out, serialize_cnf(cnf, map.str()));
        write_file(options.proof_out, serialize_cres(proof.graph, options.emit_flows ? &proof.flow : nullptr,
                                                     "circular refutation of " + options.cnf_out));
        if (!options.graph_out.empty()) write_file(options.graph_out, serialize_bigraph(*graph));
        write_dot(options.dot_path, proof.graph, &proof.flow);

        const int goal = *proof.graph.goal_id();
        out << "proof: " << shape(proof.graph) << '\n';
        out << "goal balance " << to_string(balance(proof.graph, proof.flow, goal)) << '\n';
        return static_cast<int>(kSuccess);
    });
}

int cmd_translate(const TranslateOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.out_path.empty()) throw UsageError("--out is required");
        if (options.direction == "c2s") {
            CresFile file = parse_cres(read_file(options.in_path));
            const ProofGraph& g = file.graph;
            if (!g.goal_id()) throw ValidationError("input has no goal vertex");
            if (!validate_rules(g).empty()) throw ValidationError("input violates the inference rules");
            FlowAssignment flow;
            if (file.flow && verify_flow(g, *file.flow, *g.goal_id())) {
                flow = *file.flow;
            } else {
                CheckReport report = find_witness(g);
                if (!report.witnessed) throw ValidationError("input is not a witnessed circular proof");
                flow = *report.flow;
            }
            SAProof sa = circular_to_sa(g, flow);
            SACheck check = check_sa(sa);
            if (!check.valid) throw std::logic_error("translation produced an invalid Sherali-Adams proof");
            write_file(options.out_path, serialize_sap(sa));
            out << "c2s: length " << g.length() << " width " << g.width() << " -> degree " << check.degree
                << " size " << check.monomial_size << '\n';
            out << "degree equals width: " << (static_cast<std::size_t>(check.degree) == g.width() ? "yes" : "no")
                << ", size within 3*length: " << (check.monomial_size <= 3 * g.length() ? "yes" : "no") << '\n';
            return static_cast<int>(kSuccess);
        }
        if (options.direction == "s2c") {
            SAProof sa = parse_sap(read_file(options.in_path));
            SACheck check = check_sa(sa);
            if (!check.valid) throw ValidationError("input is not a valid Sherali-Adams proof");
            FlowProofResult result = sa_to_circular(sa);
            const ProofGraph& g = result.graph;
            if (!validate_rules(g).empty() || !verify_flow(g, result.flow, *g.goal_id())) {
                throw std::logic_error("translation produced an unwitnessed circular proof");
            }
            write_file(options.out_path, serialize_cres(g, &result.flow));
            write_dot(options.dot_path, g, &result.flow);
            out << "s2c: degree " << check.degree << " size " << check.monomial_size << " -> length " << g.length()
                << " width " << g.width() << '\n';
            out << "width equals degree: " << (g.width() == static_cast<std::size_t>(check.degree) ? "yes" : "no")
                << '\n';
            return static_cast<int>(kSuccess);
        }
        throw UsageError("direction must be c2s or s2c");
    });
}

int cmd_search(const SearchCliOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        CnfFormula cnf = parse_cnf(read_file(options.cnf_path));
        Clause goal = parse_goal_spec(options.goal);
        SearchOptions search;
        if (options.guard_rows > 0) search.guard_rows = options.guard_rows;
        const std::size_t size = search_program_size(cnf.num_variables(), options.width);
        if (size > search.guard_rows) {
            out << "program: " << size << " rows plus columns for " << cnf.num_variables() << " variables at width "
                << options.width << ", guard " << search.guard_rows << '\n';
        }

        const auto start = std::chrono::steady_clock::now();
        SearchResult result = circular_search(cnf, goal, options.width, search);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const lp::SolveStats& lp = result.stats.lp;
        out << "lattice: " << result.stats.clauses << " clauses, " << result.stats.inferences << " inferences\n";
        out << "program: " << lp.rows << " rows, " << lp.columns << " columns, presolved to " << lp.presolved_rows
            << " x " << lp.presolved_columns << ", " << lp.float_iterations << " float iterations, " << lp.pivots
            << " exact pivots\n";
        out << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
        if (!result.found()) {
            out << "NOT-WITNESSED\n";
            return static_cast<int>(kNegative);
        }
        out << "WITNESSED proof: " << shape(*result.graph) << '\n';
        if (!options.out_path.empty()) {
            write_file(options.out_path, serialize_cres(*result.graph, options.emit_flows ? &*result.flow : nullptr,
                                                        "width " + std::to_string(options.width) + " proof of " +
                                                            goal.to_string() + " from " + options.cnf_path));
        }
        write_dot(options.dot_path, *result.graph, &*result.flow);
        return static_cast<int>(kSuccess);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Circular resolution proofs: checking, generation, translation and search"};
    app.require_subcommand(1);

    CheckOptions check;
    std::string check_goal;
    auto* c = app.add_subcommand("check", "Decide whether a proof file is a witnessed circular proof");
    c->add_option("proof", check.proof_path, ".cres proof")->required();
    c->add_option("cnf", check.cnf_path, "DIMACS hypotheses (default: the h marks)");
    auto* goal_opt = c->add_option("--goal", check_goal, "goal clause \"lit... 0\", or empty");
    c->add_option("--dot", check.dot_path, "write the graph as DOT");

    GenPhpOptions gen;
    auto* g = app.add_subcommand("gen-php", "Pigeonhole formula with its circular refutation");
    g->add_option("--complete", gen.complete, "K_{n+1,n}");
    g->add_option("--sparse", gen.sparse, "degree-3 graph with n holes");
    g->add_option("--graph", gen.graph_path, "bigraph file");
    g->add_option("--seed", gen.seed, "seed for --sparse");
    g->add_option("--cnf", gen.cnf_out, "output CNF")->required();
    g->add_option("--proof", gen.proof_out, "output .cres")->required();
    g->add_option("--graph-out", gen.graph_out, "write the bigraph used");
    g->add_flag("--emit-flows", gen.emit_flows, "include flows in the proof file");
    g->add_option("--dot", gen.dot_path, "write the proof as DOT");

    TranslateOptions tr;
    auto* t = app.add_subcommand("translate", "Convert between circular and Sherali-Adams proofs");
    t->add_option("direction", tr.direction, "c2s or s2c")->required()->check(CLI::IsMember({"c2s", "s2c"}));
    t->add_option("input", tr.in_path, "input proof")->required();
    t->add_option("-o,--out", tr.out_path, "output proof")->required();
    t->add_option("--dot", tr.dot_path, "write the circular proof as DOT (s2c)");

    SearchCliOptions se;
    auto* s = app.add_subcommand("search", "Search for a circular proof of bounded width");
    s->add_option("cnf", se.cnf_path, "DIMACS hypotheses")->required();
    s->add_option("--width", se.width, "clause width bound")->required();
    s->add_option("--goal", se.goal, "goal clause \"lit... 0\", or empty (default)");
    s->add_option("--guard-rows", se.guard_rows, "refuse larger programs");
    s->add_option("-o,--out", se.out_path, "output .cres");
    s->add_flag("--emit-flows", se.emit_flows, "include flows in the proof file");
    s->add_option("--dot", se.dot_path, "write the proof as DOT");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kInputError;
    }

    if (c->parsed()) {
        if (goal_opt->count() > 0) check.goal = check_goal;
        return cmd_check(check, out, err);
    }
    if (g->parsed()) return cmd_gen_php(gen, out, err);
    if (t->parsed()) return cmd_translate(tr, out, err);
    return cmd_search(se, out, err);
}

}  // namespace circres::cli
