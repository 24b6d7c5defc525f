#include "circres/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace circres {

namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

struct Line {
    int number;
    std::vector<Token> tokens;
};

/// Non-blank lines split on whitespace; comment lines starting with "c" are dropped.
std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!line.tokens.empty() && line.tokens[0].text != "c") lines.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

int to_int(const Line& line, const Token& tok, const char* what) {
    int value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("expected " + std::string(what) + ", got '" + std::string(tok.text) + "'", line.number,
                         tok.column);
    }
    return value;
}

int to_positive(const Line& line, const Token& tok, const char* what) {
    int value = to_int(line, tok, what);
    if (value < 1) throw ParseError(std::string(what) + " must be positive", line.number, tok.column);
    return value;
}

int to_count(const Line& line, const Token& tok, const char* what) {
    int value = to_int(line, tok, what);
    if (value < 0) throw ParseError(std::string(what) + " must be nonnegative", line.number, tok.column);
    return value;
}

Rational to_rational(const Line& line, const Token& tok) {
    try {
        return parse_rational(tok.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line.number, tok.column);
    }
}

void expect_arity(const Line& line, std::size_t min, std::size_t max, const char* what) {
    if (line.tokens.size() < min || line.tokens.size() > max) {
        throw ParseError("wrong number of fields for " + std::string(what), line.number);
    }
}

/// Literals from tokens [first, end) terminated by a single trailing 0.
Clause clause_from(const Line& line, std::size_t first, int num_variables) {
    if (line.tokens.size() <= first || line.tokens.back().text != "0") {
        throw ParseError("clause must end with 0", line.number);
    }
    std::vector<int> codes;
    for (std::size_t k = first; k + 1 < line.tokens.size(); ++k) {
        int code = to_int(line, line.tokens[k], "literal");
        if (code == 0) throw ParseError("0 inside a clause", line.number, line.tokens[k].column);
        if (std::abs(code) > num_variables) {
            throw ParseError("variable " + std::to_string(std::abs(code)) + " exceeds declared count", line.number,
                             line.tokens[k].column);
        }
        codes.push_back(code);
    }
    return Clause::from_dimacs(std::span<const int>(codes));
}

std::string clause_line(const Clause& c) {
    std::string s;
    for (int code : c.to_dimacs()) s += std::to_string(code) + ' ';
    return s + '0';
}

void emit_comment(std::ostringstream& os, const std::string& comment) {
    std::istringstream in(comment);
    std::string line;
    while (std::getline(in, line)) os << "c " << line << '\n';
}

}  // namespace

CnfFormula parse_cnf(std::string_view text) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty() || lines[0].tokens[0].text != "p") throw ParseError("missing 'p cnf' header", 1);
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[1].text != "cnf") {
        throw ParseError("header must be 'p cnf <vars> <clauses>'", header.number);
    }
    const int num_vars = to_count(header, header.tokens[2], "variable count");
    const int num_clauses = to_count(header, header.tokens[3], "clause count");

    std::vector<Clause> clauses;
    std::vector<int> pending;
    int pending_line = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens[0].text == "p") throw ParseError("second header", line.number);
        if (line.tokens[0].text == "%") break;
        for (const Token& tok : line.tokens) {
            int code = to_int(line, tok, "literal");
            if (std::abs(code) > num_vars) {
                throw ParseError("variable " + std::to_string(std::abs(code)) + " exceeds declared count " +
                                     std::to_string(num_vars),
                                 line.number, tok.column);
            }
            if (pending.empty()) pending_line = line.number;
            if (code == 0) {
                clauses.push_back(Clause::from_dimacs(std::span<const int>(pending)));
                pending.clear();
                if (static_cast<int>(clauses.size()) > num_clauses) {
                    throw ParseError("more clauses than the header declares (" + std::to_string(num_clauses) + ")",
                                     line.number, tok.column);
                }
            } else {
                pending.push_back(code);
            }
        }
    }
    if (!pending.empty()) throw ParseError("clause without terminating 0", pending_line);
    if (static_cast<int>(clauses.size()) != num_clauses) {
        throw ParseError("header declares " + std::to_string(num_clauses) + " clauses, found " +
                             std::to_string(clauses.size()),
                         header.number);
    }
    return CnfFormula(num_vars, std::move(clauses));
}

std::string serialize_cnf(const CnfFormula& formula, const std::string& comment) {
    std::ostringstream os;
    emit_comment(os, comment);
    os << "p cnf " << formula.num_variables() << ' ' << formula.clauses().size() << '\n';
    for (const Clause& c : formula.clauses()) os << clause_line(c) << '\n';
    return os.str();
}

CresFile parse_cres(std::string_view text) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty() || lines[0].tokens[0].text != "p") throw ParseError("missing 'p cres' header", 1);
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[1].text != "cres") {
        throw ParseError("header must be 'p cres <#f> <#i>'", header.number);
    }
    const int num_formulas = to_count(header, header.tokens[2], "formula count");
    const int num_inferences = to_count(header, header.tokens[3], "inference count");

    CresFile file;
    ProofGraph& g = file.graph;
    FlowAssignment flow;
    std::map<int, int> inference_line;
    std::vector<std::pair<int, int>> marks;  // (line, fid) for h
    std::optional<std::pair<int, int>> goal;
    std::vector<std::pair<int, int>> flow_lines;  // (line, iid)

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        std::string_view kind = line.tokens[0].text;
        if (kind == "f") {
            if (line.tokens.size() < 3) throw ParseError("formula line needs an id and a clause", line.number);
            int id = to_positive(line, line.tokens[1], "formula id");
            if (g.has_formula(id)) throw ParseError("duplicate formula id " + std::to_string(id), line.number);
            g.add_formula(id, clause_from(line, 2, 1 << 30));
        } else if (kind == "i") {
            if (line.tokens.size() < 3) throw ParseError("inference line needs an id and a rule", line.number);
            int id = to_positive(line, line.tokens[1], "inference id");
            if (g.has_inference(id)) throw ParseError("duplicate inference id " + std::to_string(id), line.number);
            std::string_view rule = line.tokens[2].text;
            InferenceVertex v{id, Rule::Axiom, 0, {}, {}};
            if (rule == "ax") {
                expect_arity(line, 5, 5, "ax");
                v.out = {to_positive(line, line.tokens[4], "formula id")};
            } else if (rule == "cut") {
                expect_arity(line, 7, 7, "cut");
                v.rule = Rule::Cut;
                v.in = {to_positive(line, line.tokens[4], "formula id"), to_positive(line, line.tokens[5], "formula id")};
                v.out = {to_positive(line, line.tokens[6], "formula id")};
            } else if (rule == "split") {
                expect_arity(line, 6, 7, "split");
                v.rule = Rule::Split;
                v.in = {to_positive(line, line.tokens[4], "formula id")};
                for (std::size_t t = 5; t < line.tokens.size(); ++t) {
                    v.out.push_back(to_positive(line, line.tokens[t], "formula id"));
                }
            } else {
                throw ParseError("unknown rule '" + std::string(rule) + "'", line.number, line.tokens[2].column);
            }
            v.principal = to_positive(line, line.tokens[3], "variable");
            inference_line[id] = line.number;
            g.add_inference(std::move(v));
        } else if (kind == "h") {
            expect_arity(line, 2, 2, "h");
            marks.emplace_back(line.number, to_positive(line, line.tokens[1], "formula id"));
        } else if (kind == "g") {
            expect_arity(line, 2, 2, "g");
            if (goal) throw ParseError("second goal mark", line.number);
            goal.emplace(line.number, to_positive(line, line.tokens[1], "formula id"));
        } else if (kind == "w") {
            expect_arity(line, 3, 3, "w");
            int id = to_positive(line, line.tokens[1], "inference id");
            if (flow.contains(id)) throw ParseError("second flow for inference " + std::to_string(id), line.number);
            flow.set(id, to_rational(line, line.tokens[2]));
            flow_lines.emplace_back(line.number, id);
        } else if (kind == "p") {
            throw ParseError("second header", line.number);
        } else {
            throw ParseError("unknown line type '" + std::string(kind) + "'", line.number, line.tokens[0].column);
        }
    }

    if (static_cast<int>(g.formula_vertices().size()) != num_formulas ||
        static_cast<int>(g.inference_vertices().size()) != num_inferences) {
        throw ParseError("header declares " + std::to_string(num_formulas) + " formula and " +
                             std::to_string(num_inferences) + " inference vertices, found " +
                             std::to_string(g.formula_vertices().size()) + " and " +
                             std::to_string(g.inference_vertices().size()),
                         header.number);
    }
    for (const InferenceVertex& v : g.inference_vertices()) {
        for (const auto* list : {&v.in, &v.out}) {
            for (int id : *list) {
                if (!g.has_formula(id)) {
                    throw ParseError("unknown formula id " + std::to_string(id), inference_line[v.id]);
                }
            }
        }
    }
    for (const auto& [number, id] : marks) {
        if (!g.has_formula(id)) throw ParseError("unknown formula id " + std::to_string(id), number);
        g.mark_hypothesis(id);
    }
    if (goal) {
        if (!g.has_formula(goal->second)) {
            throw ParseError("unknown formula id " + std::to_string(goal->second), goal->first);
        }
        g.set_goal(goal->second);
    }
    for (const auto& [number, id] : flow_lines) {
        if (!g.has_inference(id)) throw ParseError("flow for unknown inference " + std::to_string(id), number);
    }
    if (!flow_lines.empty()) {
        if (flow.size() != g.inference_vertices().size()) {
            throw ParseError("flows must be given for every inference vertex or none", flow_lines.front().first);
        }
        file.flow = std::move(flow);
    }
    return file;
}

std::string serialize_cres(const ProofGraph& graph, const FlowAssignment* flow, const std::string& comment) {
    std::ostringstream os;
    emit_comment(os, comment);
    os << "p cres " << graph.formula_vertices().size() << ' ' << graph.inference_vertices().size() << '\n';

    std::vector<const FormulaVertex*> fs;
    for (const FormulaVertex& f : graph.formula_vertices()) fs.push_back(&f);
    std::sort(fs.begin(), fs.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const FormulaVertex* f : fs) os << "f " << f->id << ' ' << clause_line(f->clause) << '\n';

    std::vector<const InferenceVertex*> is;
    for (const InferenceVertex& v : graph.inference_vertices()) is.push_back(&v);
    std::sort(is.begin(), is.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const InferenceVertex* v : is) {
        os << "i " << v->id << ' ';
        switch (v->rule) {
            case Rule::Axiom: os << "ax"; break;
            case Rule::Cut: os << "cut"; break;
            case Rule::Split: os << "split"; break;
        }
        os << ' ' << v->principal;
        for (int id : v->in) os << ' ' << id;
        for (int id : v->out) os << ' ' << id;
        os << '\n';
    }
    for (int id : graph.hypothesis_ids()) os << "h " << id << '\n';
    if (graph.goal_id()) os << "g " << *graph.goal_id() << '\n';
    if (flow != nullptr) {
        for (const auto& [id, value] : *flow) os << "w " << id << ' ' << to_string(value) << '\n';
    }
    return os.str();
}

namespace {

Monomial monomial_from(const Line& line, std::size_t first, std::size_t end, int num_variables) {
    if (end == first + 1 && line.tokens[first].text == "1") return Monomial();
    if (end == first) throw ParseError("missing monomial", line.number);
    std::vector<std::pair<int, int>> factors;
    for (std::size_t k = first; k < end; ++k) {
        const Token& tok = line.tokens[k];
        std::string_view t = tok.text;
        auto caret = t.find('^');
        Token base{t.substr(0, caret), tok.column};
        int twin = to_int(line, base, "twin");
        int exponent = 1;
        if (caret != std::string_view::npos) {
            exponent = to_positive(line, Token{t.substr(caret + 1), tok.column}, "exponent");
        }
        if (twin == 0 || std::abs(twin) > num_variables) {
            throw ParseError("twin " + std::string(base.text) + " out of range", line.number, tok.column);
        }
        factors.emplace_back(twin, exponent);
    }
    return Monomial(std::move(factors));
}

std::string monomial_text(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (const auto& [twin, e] : m.factors()) {
        if (!s.empty()) s += ' ';
        s += (twin > 0 ? "+" : "") + std::to_string(twin);
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

}  // namespace

SAProof parse_sap(std::string_view text) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty() || lines[0].tokens[0].text != "p") throw ParseError("missing 'p sap' header", 1);
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[1].text != "sap") {
        throw ParseError("header must be 'p sap <nvars> <nhyps>'", header.number);
    }
    SAProof proof;
    proof.num_variables = to_count(header, header.tokens[2], "variable count");
    const int num_hyps = to_count(header, header.tokens[3], "hypothesis count");
    bool have_goal = false;

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        std::string_view kind = line.tokens[0].text;
        if (kind == "h") {
            proof.hypotheses.push_back(clause_from(line, 1, proof.num_variables));
        } else if (kind == "g") {
            if (have_goal) throw ParseError("second goal", line.number);
            proof.goal = clause_from(line, 1, proof.num_variables);
            have_goal = true;
        } else if (kind == "t") {
            auto semi = std::find_if(line.tokens.begin(), line.tokens.end(), [](const Token& t) { return t.text == ";"; });
            if (line.tokens.size() < 4 || semi == line.tokens.end()) {
                throw ParseError("term must be 't <coef> <mono> ; <P>'", line.number);
            }
            const std::size_t s = static_cast<std::size_t>(semi - line.tokens.begin());
            SATerm term{to_rational(line, line.tokens[1]), monomial_from(line, 2, s, proof.num_variables),
                        RefPolynomial::one()};
            const std::size_t rest = line.tokens.size() - s - 1;
            if (rest == 0) throw ParseError("missing reference polynomial", line.number);
            std::string_view ref = line.tokens[s + 1].text;
            if (ref == "H") {
                if (rest != 2) throw ParseError("'H' takes one index", line.number);
                int i = to_positive(line, line.tokens[s + 2], "hypothesis index");
                if (i > num_hyps) throw ParseError("hypothesis index out of range", line.number, line.tokens[s + 2].column);
                term.p = RefPolynomial::hypothesis(i);
            } else if (ref == "B") {
                if (rest < 2) throw ParseError("'B' needs a kind", line.number);
                std::string_view b = line.tokens[s + 2].text;
                if (b == "one") {
                    if (rest != 2) throw ParseError("'B one' takes no index", line.number);
                } else {
                    if (rest != 3) throw ParseError("'B " + std::string(b) + "' takes one variable", line.number);
                    int v = to_positive(line, line.tokens[s + 3], "variable");
                    if (v > proof.num_variables) {
                        throw ParseError("variable out of range", line.number, line.tokens[s + 3].column);
                    }
                    if (b == "xxsq") term.p = RefPolynomial::x_minus_xsq(v);
                    else if (b == "xsqx") term.p = RefPolynomial::xsq_minus_x(v);
                    else if (b == "1mxx") term.p = RefPolynomial::one_minus_x_minus_xbar(v);
                    else if (b == "xxm1") term.p = RefPolynomial::x_plus_xbar_minus_one(v);
                    else throw ParseError("unknown basic polynomial '" + std::string(b) + "'", line.number, line.tokens[s + 2].column);
                }
            } else {
                throw ParseError("reference must start with H or B", line.number, line.tokens[s + 1].column);
            }
            proof.terms.push_back(std::move(term));
        } else if (kind == "p") {
            throw ParseError("second header", line.number);
        } else {
            throw ParseError("unknown line type '" + std::string(kind) + "'", line.number, line.tokens[0].column);
        }
    }
    if (static_cast<int>(proof.hypotheses.size()) != num_hyps) {
        throw ParseError("header declares " + std::to_string(num_hyps) + " hypotheses, found " +
                             std::to_string(proof.hypotheses.size()),
                         header.number);
    }
    if (!have_goal) throw ParseError("missing goal line", header.number);
    return proof;
}

std::string serialize_sap(const SAProof& proof, const std::string& comment) {
    std::ostringstream os;
    emit_comment(os, comment);
    os << "p sap " << proof.num_variables << ' ' << proof.hypotheses.size() << '\n';
    for (const Clause& h : proof.hypotheses) os << "h " << clause_line(h) << '\n';
    os << "g " << clause_line(proof.goal) << '\n';
    for (const SATerm& t : proof.terms) {
        os << "t " << to_string(t.coefficient) << ' ' << monomial_text(t.q) << " ; ";
        switch (t.p.kind) {
            case RefKind::Hypothesis: os << "H " << t.p.index; break;
            case RefKind::XMinusXsq: os << "B xxsq " << t.p.index; break;
            case RefKind::XsqMinusX: os << "B xsqx " << t.p.index; break;
            case RefKind::OneMinusXMinusXbar: os << "B 1mxx " << t.p.index; break;
            case RefKind::XPlusXbarMinusOne: os << "B xxm1 " << t.p.index; break;
            case RefKind::One: os << "B one"; break;
        }
        os << '\n';
    }
    return os.str();
}

BipartiteGraph parse_bigraph(std::string_view text) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty() || lines[0].tokens[0].text != "p") throw ParseError("missing 'p bigraph' header", 1);
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[1].text != "bigraph") {
        throw ParseError("header must be 'p bigraph <left> <right>'", header.number);
    }
    BipartiteGraph g(to_count(header, header.tokens[2], "left size"), to_count(header, header.tokens[3], "right size"));
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens[0].text != "e") {
            throw ParseError("unknown line type '" + std::string(line.tokens[0].text) + "'", line.number, 1);
        }
        expect_arity(line, 3, 3, "e");
        int u = to_positive(line, line.tokens[1], "left vertex");
        int v = to_positive(line, line.tokens[2], "right vertex");
        if (u > g.left_size()) throw ParseError("left vertex out of range", line.number, line.tokens[1].column);
        if (v > g.right_size()) throw ParseError("right vertex out of range", line.number, line.tokens[2].column);
        g.add_edge(u, v);
    }
    return g;
}

std::string serialize_bigraph(const BipartiteGraph& graph) {
    std::ostringstream os;
    os << "p bigraph " << graph.left_size() << ' ' << graph.right_size() << '\n';
    for (const auto& [u, v] : graph.edges()) os << "e " << u << ' ' << v << '\n';
    return os.str();
}

Clause parse_goal_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "empty")) return Clause{};
    if (tokens.back() != "0") throw UsageError("goal must be literals terminated by 0, got '" + std::string(text) + "'");
    std::vector<int> codes;
    for (std::size_t k = 0; k + 1 < tokens.size(); ++k) {
        int code = 0;
        auto [ptr, ec] = std::from_chars(tokens[k].data(), tokens[k].data() + tokens[k].size(), code);
        if (ec != std::errc() || ptr != tokens[k].data() + tokens[k].size() || code == 0) {
            throw UsageError("bad goal literal '" + tokens[k] + "'");
        }
        codes.push_back(code);
    }
    return Clause::from_dimacs(std::span<const int>(codes));
}

std::string goal_spec(const Clause& clause) { return clause_line(clause); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << contents)) throw UsageError("cannot write '" + path + "'");
}

}  // namespace circres
