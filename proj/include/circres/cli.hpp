#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace circres::cli {

/// Stable exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kNegative = 1,       // sound negative result: not witnessed, no proof found
    kInputError = 2,     // parse, validation or usage error
    kResourceGuard = 3,  // a size limit would be exceeded
};

struct CheckOptions {
    std::string proof_path;
    /// Hypotheses come from this CNF when given, otherwise from the "h" marks.
    std::string cnf_path;
    /// Overrides the "g" mark: every vertex with this clause is tried.
    std::optional<std::string> goal;
    std::string dot_path;
};

/// Reads a .cres proof, solves the flow program and prints "WITNESSED" with the
/// flow dump, or "NOT-WITNESSED". Flows stored in the file are verified and
/// reported separately; the verdict always comes from the program.
int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);

struct GenPhpOptions {
    int complete = 0;        // K_{n+1,n} when > 0
    int sparse = 0;          // degree-3 graph with n holes when > 0
    std::uint64_t seed = 1;  // for the sparse graph
    std::string graph_path;  // bigraph file
    std::string cnf_out;
    std::string proof_out;
    std::string graph_out;
    bool emit_flows = false;
    std::string dot_path;
};

/// Writes the pigeonhole CNF and its circular refutation. Exactly one graph
/// source must be chosen; |U| <= |V| is a usage error.
int cmd_gen_php(const GenPhpOptions& options, std::ostream& out, std::ostream& err);

struct TranslateOptions {
    std::string direction;  // "c2s" or "s2c"
    std::string in_path;
    std::string out_path;
    std::string dot_path;  // s2c only
};

/// c2s: .cres (flows given or recomputed) to .sap; s2c: .sap to .cres with
/// flows. The input must check under its own checker and the output is
/// checked before it is written. Prints length, size, width and degree.
int cmd_translate(const TranslateOptions& options, std::ostream& out, std::ostream& err);

struct SearchCliOptions {
    std::string cnf_path;
    std::string goal = "0";
    int width = 0;
    std::size_t guard_rows = 0;  // 0 keeps the library default
    std::string out_path;
    bool emit_flows = false;
    std::string dot_path;
};

/// Runs the width-bounded flow search. Always prints the program dimensions and
/// wall time; writes the proof on success.
int cmd_search(const SearchCliOptions& options, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) into one of the subcommands
/// check, gen-php, translate and search.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circres::cli
