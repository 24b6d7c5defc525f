#pragma once

#include "circres/core.hpp"
#include "circres/generators.hpp"
#include "circres/proof_graph.hpp"
#include "circres/sherali_adams.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace circres {

/// Text formats. Every parser throws ParseError with the 1-based line (and
/// column when a single token is at fault); every serializer emits the
/// canonical form, so serialize(parse(serialize(x))) == serialize(x).

/// DIMACS CNF. The header must precede all clauses, clauses may span lines,
/// and the declared clause count must match. Variables above the declared
/// count are rejected.
CnfFormula parse_cnf(std::string_view text);
/// "p cnf <vars> <clauses>" then one normalized clause per line.
std::string serialize_cnf(const CnfFormula& formula, const std::string& comment = {});

/// A proof graph with optional flows. Flows are all-or-nothing: a file with
/// some "w" lines must give one for every inference vertex.
struct CresFile {
    ProofGraph graph;
    std::optional<FlowAssignment> flow;
};

/// Line-oriented proof format:
///   p cres <#formula vertices> <#inference vertices>
///   f <id> <lit>... 0
///   i <id> ax <var> <out>
///   i <id> cut <var> <in C v X> <in C v ~X> <out>
///   i <id> split <var> <in> <out1> [<out2>]
///   h <fid>      g <fid>      w <iid> <num>/<den>      c <comment>
CresFile parse_cres(std::string_view text);
/// Vertices, marks and flows sorted by id.
std::string serialize_cres(const ProofGraph& graph, const FlowAssignment* flow = nullptr,
                           const std::string& comment = {});

/// Sherali-Adams proof:
///   p sap <nvars> <nhyps>
///   h <lit>... 0      g <lit>... 0
///   t <num>/<den> <mono> ; <P>
/// where <mono> is "1" or tokens "+i^e" / "-i^e" (X_i / X̄_i, exponent
/// optional) and <P> is one of "H i", "B xxsq i", "B xsqx i", "B 1mxx i",
/// "B xxm1 i", "B one". Terms keep their order.
SAProof parse_sap(std::string_view text);
std::string serialize_sap(const SAProof& proof, const std::string& comment = {});

/// Bipartite graph: "p bigraph <left> <right>" then "e <u> <v>" per edge.
BipartiteGraph parse_bigraph(std::string_view text);
std::string serialize_bigraph(const BipartiteGraph& graph);

/// Goal clause from "<lit>... 0"; "0", "" and "empty" give the empty clause.
/// Throws UsageError on malformed text.
Clause parse_goal_spec(std::string_view text);
/// "<lit>... 0", or "0" for the empty clause.
std::string goal_spec(const Clause& clause);

/// Whole file as a string. Throws UsageError when it cannot be read.
std::string read_file(const std::string& path);
/// Throws UsageError when it cannot be written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace circres
