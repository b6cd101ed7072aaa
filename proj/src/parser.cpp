#include "foq/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace foq {

std::string ParseError::message() const {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
    }
    if (expected.empty()) msg = "unexpected input";
    return msg + ", found " + found;
}

namespace {

std::string join_errors(const std::vector<ParseError>& errors) {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += "\n";
        out += e.to_string();
    }
    return out;
}

}  // namespace

ParseException::ParseException(std::vector<ParseError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

// ---------------------------------------------------------------------------
// Macros

StmtPtr macro_h(const QubitExpr& q, SourceSpan span) {
    auto ry = make_assign(q, OperatorExpr::ry(PhaseExpr::constant_pi_over(4), int_lit(0)), span);
    auto nt = make_assign(q, OperatorExpr::make_not(), span);
    return make_seq(ry, nt, span);
}

StmtPtr macro_cnot(const QubitExpr& control, const QubitExpr& target, SourceSpan span) {
    return make_qcase(control, make_skip(span), make_assign(target, OperatorExpr::make_not(), span), span);
}

StmtPtr macro_swap(const QubitExpr& a, const QubitExpr& b, SourceSpan span) {
    return make_block({macro_cnot(a, b, span), macro_cnot(b, a, span), macro_cnot(a, b, span)});
}

StmtPtr expand_multiqcase(const SetExprPtr& set, const std::vector<IntExprPtr>& indices,
                          const std::vector<std::pair<std::string, StmtPtr>>& branches, SourceSpan span) {
    const std::size_t k = indices.size();
    if (k == 0) throw std::invalid_argument("quantum case needs at least one control qubit");
    if (k > 16) throw std::invalid_argument("quantum case has too many control qubits");
    std::map<std::string, StmtPtr> by_label;
    for (const auto& [label, stmt] : branches) {
        if (label.size() != k || label.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("branch label '" + label + "' is not a bitstring of length " +
                                        std::to_string(k));
        }
        if (!by_label.emplace(label, stmt).second) {
            throw std::invalid_argument("duplicate branch label '" + label + "'");
        }
    }
    if (by_label.size() != (std::size_t{1} << k)) {
        for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) {
            std::string label(k, '0');
            for (std::size_t b = 0; b < k; ++b) {
                if ((w >> (k - 1 - b)) & 1U) label[b] = '1';
            }
            if (!by_label.count(label)) throw std::invalid_argument("missing branch " + label);
        }
    }
    // Builds the subtree for a fixed prefix of control values.
    auto build = [&](auto&& self, const std::string& prefix) -> StmtPtr {
        if (prefix.size() == k) return by_label.at(prefix);
        QubitExpr control{set, indices[prefix.size()]};
        return make_qcase(control, self(self, prefix + "0"), self(self, prefix + "1"), span);
    };
    return build(build, "");
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End:
            return "end of input";
        case Tok::Int:
            return "integer '" + t.text + "'";
        case Tok::Ident:
            return "'" + t.text + "'";
        case Tok::Sym:
            return "'" + t.text + "'";
    }
    return "?";
}

struct Failure {
    ParseError error;
};

std::vector<Token> lex(const std::string& text, const std::string& file) {
    static const std::vector<std::string> symbols = {"::", "*=", "->", ">=", "<=", ">", "<", "=", "+", "-", "*",
                                                     "/",  "^",  "\\", "(",  ")",  "[", "]", "{", "}", ",", ";"};
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto here = [&](std::size_t len) { return SourceSpan{file, i, i + len, line, col}; };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            out.push_back({Tok::Ident, text.substr(i, j - i), here(j - i)});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Int, text.substr(i, j - i), here(j - i)});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const auto& s : symbols) {
            if (text.compare(i, s.size(), s) == 0) {
                out.push_back({Tok::Sym, s, here(s.size())});
                advance(s.size());
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw Failure{ParseError{here(1), {}, "character '" + std::string(1, c) + "'"}};
        }
    }
    out.push_back({Tok::End, "", here(0)});
    return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

const std::set<std::string> kKeywords = {"decl", "skip", "if",  "then", "else", "qcase", "of",   "call",
                                         "nil",  "size", "and", "or",   "not",  "NOT",   "RY",   "PH",
                                         "pi",   "H",    "CNOT", "SWAP"};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        while (is_ident("decl")) p.decls.push_back(decl());
        expect_sym("::");
        std::vector<StmtPtr> main;
        while (!at_end()) main.push_back(stmt());
        p.main = main.empty() ? make_skip(peek().span) : make_block(main);
        return p;
    }

    StmtPtr statements_to_end() {
        std::vector<StmtPtr> out;
        while (!at_end()) out.push_back(stmt());
        if (out.empty()) fail({"statement"});
        return make_block(out);
    }

  private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_sym(const std::string& s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
    }
    bool is_ident(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw Failure{ParseError{peek().span, std::move(expected), describe(peek())}};
    }

    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Token expect_sym(const std::string& s) {
        if (!is_sym(s)) fail({"'" + s + "'"});
        return take();
    }

    Token expect_ident(const std::string& s) {
        if (!is_ident(s)) fail({"'" + s + "'"});
        return take();
    }

    std::string name() {
        if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail({"identifier"});
        return take().text;
    }

    std::int64_t integer() {
        if (peek().kind != Tok::Int) fail({"integer"});
        const auto t = take();
        try {
            return std::stoll(t.text);
        } catch (const std::out_of_range&) {
            throw Failure{ParseError{t.span, {"integer in range"}, describe(t)}};
        }
    }

    ProcDecl decl() {
        ProcDecl d;
        d.span = expect_ident("decl").span;
        d.name = name();
        if (is_sym("[")) {
            take();
            d.int_param = name();
            expect_sym("]");
        }
        expect_sym("(");
        d.set_param = name();
        expect_sym(")");
        d.body = block();
        if (is_sym(",")) take();
        return d;
    }

    StmtPtr block() {
        expect_sym("{");
        std::vector<StmtPtr> body;
        while (!is_sym("}")) {
            if (at_end()) fail({"'}'"});
            body.push_back(stmt());
        }
        take();
        if (body.empty()) fail({"statement"});
        return make_block(body);
    }

    bool at_branch_end() const { return at_end() || is_sym("}") || is_sym(",") || is_ident("else"); }

    StmtPtr branch() {
        if (is_sym("{")) return block();
        std::vector<StmtPtr> body;
        while (!at_branch_end()) body.push_back(stmt());
        if (body.empty()) fail({"statement"});
        return make_block(body);
    }

    void optional_semicolon() {
        if (is_sym(";")) take();
    }

    StmtPtr stmt() {
        const SourceSpan span = peek().span;
        if (is_sym("{")) return block();
        if (is_ident("skip")) {
            take();
            expect_sym(";");
            return make_skip(span);
        }
        if (is_ident("if")) {
            take();
            auto cond = bexpr();
            expect_ident("then");
            auto t = branch();
            expect_ident("else");
            auto e = branch();
            return make_if(cond, t, e, span);
        }
        if (is_ident("qcase")) return qcase();
        if (is_ident("call")) {
            take();
            std::string proc = name();
            IntExprPtr arg;
            if (is_sym("[")) {
                take();
                arg = iexpr();
                expect_sym("]");
            }
            expect_sym("(");
            auto set = sexpr();
            expect_sym(")");
            expect_sym(";");
            return make_call(proc, arg, set, span);
        }
        if (is_ident("H")) {
            take();
            expect_sym("(");
            auto q = qexpr();
            expect_sym(")");
            optional_semicolon();
            return macro_h(q, span);
        }
        if (is_ident("CNOT") || is_ident("SWAP")) {
            const bool swap = take().text == "SWAP";
            expect_sym("(");
            auto a = qexpr();
            if (!is_sym(",")) fail({"',' (macro takes two qubits)"});
            take();
            auto b = qexpr();
            if (!is_sym(")")) fail({"')' (macro takes two qubits)"});
            take();
            optional_semicolon();
            return swap ? macro_swap(a, b, span) : macro_cnot(a, b, span);
        }
        auto target = qexpr();
        expect_sym("*=");
        if (is_ident("H")) {
            take();
            expect_sym(";");
            return macro_h(target, span);
        }
        auto op = oper();
        expect_sym(";");
        return make_assign(target, op, span);
    }

    StmtPtr qcase() {
        const SourceSpan span = take().span;
        auto set = sexpr();
        expect_sym("[");
        std::vector<IntExprPtr> idx{iexpr()};
        while (is_sym(",")) {
            take();
            idx.push_back(iexpr());
        }
        expect_sym("]");
        expect_ident("of");
        expect_sym("{");
        std::vector<std::pair<std::string, StmtPtr>> branches;
        while (true) {
            if (peek().kind != Tok::Int) fail({"branch label"});
            std::string label = take().text;
            expect_sym("->");
            branches.emplace_back(label, branch());
            if (is_sym(",")) {
                take();
                if (is_sym("}")) break;
                continue;
            }
            break;
        }
        if (!is_sym("}")) fail({"','", "'}'"});
        const Token close = take();
        try {
            return expand_multiqcase(set, idx, branches, span);
        } catch (const std::invalid_argument& e) {
            throw Failure{ParseError{close.span, {"complete set of branches"}, e.what()}};
        }
    }

    OperatorExpr oper() {
        if (is_ident("NOT")) {
            take();
            return OperatorExpr::make_not();
        }
        if (is_ident("RY") || is_ident("PH")) {
            const bool ry = take().text == "RY";
            expect_sym("[");
            phase_var_.reset();
            auto root = phase_sum();
            expect_sym("]");
            PhaseExpr f(phase_var_.value_or("y"), root);
            expect_sym("(");
            auto arg = iexpr();
            expect_sym(")");
            return ry ? OperatorExpr::ry(f, arg) : OperatorExpr::ph(f, arg);
        }
        fail({"'NOT'", "'H'", "'RY'", "'PH'"});
    }

    // Phase expressions: sum := term (("+"|"-") term)*, term := unary (("*"|"/") unary)*,
    // unary := "-" unary | power, power := "2" "^" atom | atom.
    PhaseNodePtr phase_sum() {
        auto lhs = phase_term();
        while (is_sym("+") || is_sym("-")) {
            auto kind = take().text == "+" ? PhaseNode::Kind::Add : PhaseNode::Kind::Sub;
            lhs = phase_binary(kind, lhs, phase_term());
        }
        return lhs;
    }

    PhaseNodePtr phase_term() {
        auto lhs = phase_unary_expr();
        while (is_sym("*") || is_sym("/")) {
            auto kind = take().text == "*" ? PhaseNode::Kind::Mul : PhaseNode::Kind::Div;
            lhs = phase_binary(kind, lhs, phase_unary_expr());
        }
        return lhs;
    }

    PhaseNodePtr phase_unary_expr() {
        if (is_sym("-")) {
            take();
            return phase_unary(PhaseNode::Kind::Neg, phase_unary_expr());
        }
        if (peek().kind == Tok::Int && is_sym("^", 1)) {
            if (peek().text != "2") fail({"base 2 for '^'"});
            take();
            take();
            return phase_unary(PhaseNode::Kind::Pow2, phase_atom());
        }
        return phase_atom();
    }

    PhaseNodePtr phase_atom() {
        if (peek().kind == Tok::Int) return phase_int(integer());
        if (is_ident("pi")) {
            take();
            return phase_pi();
        }
        if (is_sym("(")) {
            take();
            auto inner = phase_sum();
            expect_sym(")");
            return inner;
        }
        if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) {
            if (phase_var_ && *phase_var_ != peek().text) fail({"'" + *phase_var_ + "' (one bound variable)"});
            phase_var_ = take().text;
            return phase_var();
        }
        fail({"phase expression"});
    }

    QubitExpr qexpr() {
        auto set = sexpr();
        expect_sym("[");
        auto idx = iexpr();
        expect_sym("]");
        return {set, idx};
    }

    SetExprPtr sexpr() {
        SetExprPtr base;
        if (is_ident("nil")) {
            take();
            base = set_nil();
        } else if (is_sym("(")) {
            take();
            base = sexpr();
            expect_sym(")");
        } else {
            base = set_var(name());
        }
        while (is_sym("\\")) {
            take();
            expect_sym("[");
            std::vector<IntExprPtr> idx{iexpr()};
            while (is_sym(",")) {
                take();
                idx.push_back(iexpr());
            }
            expect_sym("]");
            base = set_remove(base, std::move(idx));
        }
        return base;
    }

    IntExprPtr iexpr() {
        auto e = iatom();
        while ((is_sym("+") || is_sym("-")) && peek(1).kind == Tok::Int) {
            const bool plus = take().text == "+";
            const auto n = integer();
            e = int_offset(e, plus ? n : -n);
        }
        return e;
    }

    IntExprPtr iatom() {
        if (peek().kind == Tok::Int) return int_lit(integer());
        if (is_sym("-") && peek(1).kind == Tok::Int) {
            take();
            return int_lit(-integer());
        }
        if (is_ident("size")) {
            take();
            expect_sym("(");
            auto s = sexpr();
            expect_sym(")");
            return int_size(s);
        }
        if (is_sym("(")) {
            take();
            auto e = iexpr();
            expect_sym(")");
            return e;
        }
        if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) return int_var(take().text);
        fail({"integer expression"});
    }

    BoolExprPtr bexpr() {
        auto lhs = band();
        while (is_ident("or")) {
            take();
            lhs = bool_or(lhs, band());
        }
        return lhs;
    }

    BoolExprPtr band() {
        auto lhs = bnot();
        while (is_ident("and")) {
            take();
            lhs = bool_and(lhs, bnot());
        }
        return lhs;
    }

    BoolExprPtr bnot() {
        if (is_ident("not")) {
            take();
            return bool_not(bnot());
        }
        if (is_sym("(")) {
            // Either a parenthesized boolean or a comparison whose left side
            // starts with a parenthesized integer expression.
            const std::size_t save = pos_;
            try {
                take();
                auto inner = bexpr();
                expect_sym(")");
                return inner;
            } catch (const Failure&) {
                pos_ = save;
            }
        }
        return bcmp();
    }

    BoolExprPtr bcmp() {
        auto lhs = iexpr();
        if (is_sym(">") || is_sym(">=") || is_sym("=") || is_sym("<") || is_sym("<=")) {
            const std::string op = take().text;
            auto rhs = iexpr();
            if (op == ">") return bool_cmp(CmpOp::Gt, lhs, rhs);
            if (op == ">=") return bool_cmp(CmpOp::Ge, lhs, rhs);
            if (op == "=") return bool_cmp(CmpOp::Eq, lhs, rhs);
            if (op == "<") return bool_cmp(CmpOp::Gt, rhs, lhs);
            return bool_cmp(CmpOp::Ge, rhs, lhs);
        }
        fail({"'>'", "'>='", "'='"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<std::string> phase_var_;
};

}  // namespace

ParseResult parse_program(const std::string& text, const std::string& file) {
    ParseResult result;
    try {
        Parser parser(lex(text, file));
        result.program = parser.program();
    } catch (const Failure& f) {
        result.errors.push_back(f.error);
    }
    return result;
}

Program parse_program_or_throw(const std::string& text, const std::string& file) {
    auto r = parse_program(text, file);
    if (!r.ok()) throw ParseException(std::move(r.errors));
    return std::move(*r.program);
}

StmtPtr parse_statement(const std::string& text) {
    try {
        Parser parser(lex(text, ""));
        return parser.statements_to_end();
    } catch (const Failure& f) {
        throw ParseException({f.error});
    }
}

}  // namespace foq
