#include "normlog/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace normlog {
namespace {

enum class Tok {
    Ident,
    Var,
    Number,
    LParen,
    RParen,
    Comma,
    Dot,
    If,     // :-
    Query,  // ?-
    Minus,
    Plus,
    Star,
    Slash,
    Cmp,
    Directive,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
    CmpOp cmp = CmpOp::Eq;
};

const char* describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Var: return "variable";
        case Tok::Number: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::If: return "':-'";
        case Tok::Query: return "'?-'";
        case Tok::Minus: return "'-'";
        case Tok::Plus: return "'+'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Cmp: return "comparison";
        case Tok::Directive: return "directive";
        case Tok::End: return "end of input";
    }
    return "token";
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token tok;
            tok.span = here();
            if (pos_ >= text_.size()) {
                tok.kind = Tok::End;
                tok.span.end = tok.span.start;
                out.push_back(tok);
                return out;
            }
            lex_one(tok);
            tok.span.end = pos_;
            tok.text = std::string(text_.substr(tok.span.start, pos_ - tok.span.start));
            out.push_back(std::move(tok));
        }
    }

private:
    SourceSpan here() const { return SourceSpan{pos_, pos_, line_, col_}; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    [[noreturn]] void fail(const std::string& msg) const {
        SourceSpan span = here();
        span.end = std::min(pos_ + 1, text_.size());
        throw Error(ErrorCode::SyntaxError, msg, span);
    }

    void lex_one(Token& tok) {
        char c = peek();
        if (std::islower(static_cast<unsigned char>(c))) {
            tok.kind = Tok::Ident;
            while (ident_char(peek())) advance();
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            tok.kind = Tok::Var;
            while (ident_char(peek())) advance();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok.kind = Tok::Number;
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
            return;
        }
        static constexpr std::pair<std::string_view, CmpOp> kOps[] = {
            {".>=.", CmpOp::Ge}, {".=<.", CmpOp::Le}, {".>.", CmpOp::Gt},
            {".<.", CmpOp::Lt},  {".=.", CmpOp::Eq},  {"\\=", CmpOp::Ne},
        };
        for (const auto& [text, op] : kOps) {
            if (starts_with(text)) {
                tok.kind = Tok::Cmp;
                tok.cmp = op;
                advance(text.size());
                return;
            }
        }
        if (starts_with(":-")) {
            tok.kind = Tok::If;
            advance(2);
            return;
        }
        if (starts_with("?-")) {
            tok.kind = Tok::Query;
            advance(2);
            return;
        }
        if (c == '#') {
            advance();
            if (!std::islower(static_cast<unsigned char>(peek()))) fail("expected directive name after '#'");
            tok.kind = Tok::Directive;
            while (ident_char(peek())) advance();
            return;
        }
        switch (c) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case ',': tok.kind = Tok::Comma; break;
            case '.': tok.kind = Tok::Dot; break;
            case '-': tok.kind = Tok::Minus; break;
            case '+': tok.kind = Tok::Plus; break;
            case '*': tok.kind = Tok::Star; break;
            case '/': tok.kind = Tok::Slash; break;
            default: fail(std::string("unexpected character '") + c + "'");
        }
        advance();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    Program program() {
        Program prog;
        while (!at(Tok::End)) {
            if (at(Tok::Directive)) {
                directive(prog);
            } else {
                prog.rules.push_back(rule());
            }
        }
        signature(prog);
        return prog;
    }

    DeonticTheory theory() {
        DeonticTheory out;
        std::set<Literal> abducibles;
        while (!at(Tok::End)) {
            const Token& first = cur();
            if (first.kind == Tok::Ident && first.text == "show") {
                next();
                sig_list(out.show);
                continue;
            }
            DeonticStatement stmt = statement();
            if (const auto* ab = std::get_if<AbducibleStatement>(&stmt.value)) {
                if (!abducibles.insert(ab->literal).second) {
                    throw Error(ErrorCode::DuplicateDeclaration,
                                "duplicate abducible '" + ab->literal.to_string() + "'", stmt.span);
                }
            }
            out.statements.push_back(std::move(stmt));
        }
        // Arity consistency across the whole theory.
        Program probe;
        for (const auto& s : out.statements) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, RawRule>) {
                        probe.rules.push_back(v.rule);
                    } else if constexpr (std::is_same_v<T, FactStatement>) {
                        probe.rules.push_back(Rule{v.literal, {}, s.span});
                    } else if constexpr (std::is_same_v<T, AbducibleStatement>) {
                        probe.abducibles.push_back(v.literal);
                    } else if constexpr (std::is_same_v<T, Permission>) {
                        Rule r{v.target, v.conditions, s.span};
                        for (const auto& e : v.exceptions) r.body.push_back(BodyElem::naf(e));
                        probe.rules.push_back(std::move(r));
                    } else {
                        Rule r{v.target, v.conditions, s.span};
                        if (v.unless) r.body.push_back(BodyElem::pos(*v.unless));
                        probe.rules.push_back(std::move(r));
                    }
                },
                s.value);
        }
        signature(probe);
        return out;
    }

    std::vector<BodyElem> query() {
        if (at(Tok::Query)) next();
        std::vector<BodyElem> goals;
        if (at(Tok::End) || at(Tok::Dot)) {
            if (at(Tok::Dot)) next();
            expect_end();
            return goals;
        }
        for (;;) {
            BodyElem e = body_elem();
            bool is_true = e.is_pos() && !e.literal().strong_neg && e.literal().atom.predicate == "true" &&
                           e.literal().atom.args.empty();
            if (!is_true) goals.push_back(std::move(e));
            if (!accept(Tok::Comma)) break;
        }
        accept(Tok::Dot);
        expect_end();
        return goals;
    }

    Literal single_literal() {
        Literal lit = literal();
        accept(Tok::Dot);
        expect_end();
        return lit;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& look(std::size_t ahead) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at(Tok kind) const { return cur().kind == kind; }
    bool at_ident(std::string_view text) const { return at(Tok::Ident) && cur().text == text; }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok kind) {
        if (!at(kind)) return false;
        next();
        return true;
    }

    [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const {
        throw Error(code, msg, cur().span);
    }

    const Token& expect(Tok kind) {
        if (!at(kind)) {
            fail(std::string("expected ") + describe(kind) + ", found " +
                 (at(Tok::End) ? std::string("end of input") : "'" + cur().text + "'"));
        }
        return next();
    }

    void expect_end() {
        if (!at(Tok::End)) fail("unexpected '" + cur().text + "'");
    }

    SourceSpan span_from(const SourceSpan& start) const {
        SourceSpan s = start;
        std::size_t last = pos_ > 0 ? pos_ - 1 : 0;
        s.end = std::max(start.start, toks_[last].span.end);
        return s;
    }

    bool literal_start() const {
        return at(Tok::Ident) || (at(Tok::Minus) && look(1).kind == Tok::Ident);
    }

    bool arith_start() const {
        return at(Tok::Var) || at(Tok::Number) || at(Tok::LParen) ||
               (at(Tok::Minus) && look(1).kind == Tok::Number);
    }

    Term term() {
        if (at(Tok::Var)) return Term::variable(next().text);
        if (at(Tok::Ident)) {
            Term t = Term::constant(next().text);
            if (at(Tok::LParen)) fail("nested function terms are not supported");
            return t;
        }
        bool negative = false;
        if (at(Tok::Minus) && look(1).kind == Tok::Number) {
            next();
            negative = true;
        }
        if (at(Tok::Number)) {
            Rational r;
            const Token& t = cur();
            if (!Rational::parse(t.text, r)) fail("malformed number '" + t.text + "'");
            next();
            return Term::number(negative ? -r : r);
        }
        fail(std::string("expected a term, found ") + describe(cur().kind));
    }

    Literal literal() {
        bool neg = accept(Tok::Minus);
        if (!at(Tok::Ident)) fail("expected a predicate name");
        Literal lit;
        lit.strong_neg = neg;
        lit.atom.predicate = next().text;
        if (lit.atom.predicate == "not") fail("'not' cannot be used as a predicate name");
        if (accept(Tok::LParen)) {
            for (;;) {
                lit.atom.args.push_back(term());
                if (accept(Tok::Comma)) continue;
                expect(Tok::RParen);
                break;
            }
        }
        return lit;
    }

    ArithExpr factor() {
        if (accept(Tok::LParen)) {
            ArithExpr e = arith();
            expect(Tok::RParen);
            return e;
        }
        return ArithExpr(term());
    }

    ArithExpr product() {
        ArithExpr e = factor();
        while (accept(Tok::Star)) e = ArithExpr::binary(ArithExpr::Op::Mul, std::move(e), factor());
        return e;
    }

    ArithExpr arith() {
        ArithExpr e = product();
        for (;;) {
            if (accept(Tok::Plus)) {
                e = ArithExpr::binary(ArithExpr::Op::Add, std::move(e), product());
            } else if (accept(Tok::Minus)) {
                e = ArithExpr::binary(ArithExpr::Op::Sub, std::move(e), product());
            } else {
                return e;
            }
        }
    }

    BodyElem builtin() {
        SourceSpan start = cur().span;
        ArithExpr lhs = arith();
        if (!at(Tok::Cmp)) fail("expected a comparison operator");
        CmpOp op = next().cmp;
        ArithExpr rhs = arith();
        return BodyElem(Comparison{op, std::move(lhs), std::move(rhs)}, span_from(start));
    }

    // A bare constant followed by an operator starts a builtin, e.g. `jones \= X`.
    bool constant_expression_ahead() const {
        if (!at(Tok::Ident)) return false;
        Tok after = look(1).kind;
        return after == Tok::Cmp || after == Tok::Plus || after == Tok::Star ||
               (after == Tok::Minus && look(2).kind != Tok::Ident);
    }

    BodyElem body_elem() {
        SourceSpan start = cur().span;
        if (at_ident("not") && look(1).kind != Tok::LParen) {
            next();
            if (arith_start() || constant_expression_ahead()) {
                fail("default negation cannot be applied to a builtin", ErrorCode::NafOnBuiltin);
            }
            Literal lit = literal();
            if (at(Tok::Cmp)) fail("default negation cannot be applied to a builtin", ErrorCode::NafOnBuiltin);
            return BodyElem(BodyElem::Naf{std::move(lit)}, span_from(start));
        }
        if (arith_start() || constant_expression_ahead()) return builtin();
        if (!literal_start()) fail(std::string("expected a body element, found ") + describe(cur().kind));
        Literal lit = literal();
        if (at(Tok::Cmp)) fail("a literal cannot be compared; use a variable or constant");
        return BodyElem(BodyElem::Pos{std::move(lit)}, span_from(start));
    }

    std::vector<BodyElem> body() {
        std::vector<BodyElem> out;
        out.push_back(body_elem());
        while (accept(Tok::Comma)) out.push_back(body_elem());
        return out;
    }

    Rule rule() {
        SourceSpan start = cur().span;
        Rule r;
        if (accept(Tok::If)) {
            if (at(Tok::Dot)) fail("denial with an empty body", ErrorCode::EmptyRule);
            r.body = body();
        } else {
            Literal head = literal();
            bool false_head = !head.strong_neg && head.atom.predicate == "false" && head.atom.args.empty();
            if (!false_head) r.head = std::move(head);
            if (accept(Tok::If)) {
                r.body = body();
            } else if (false_head) {
                fail("'false' needs a body", ErrorCode::EmptyRule);
            }
        }
        expect(Tok::Dot);
        r.span = span_from(start);
        return r;
    }

    PredicateSig sig() {
        PredicateSig s;
        s.strong_neg = accept(Tok::Minus);
        s.name = expect(Tok::Ident).text;
        expect(Tok::Slash);
        const Token& n = expect(Tok::Number);
        Rational r;
        if (!Rational::parse(n.text, r) || !r.is_integer() || r.num() < 0) fail("arity must be a natural number");
        s.arity = static_cast<std::size_t>(r.num());
        return s;
    }

    void sig_list(std::vector<PredicateSig>& out) {
        if (accept(Tok::Dot)) return;
        for (;;) {
            out.push_back(sig());
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::Dot);
    }

    void directive(Program& prog) {
        const Token& d = next();
        std::string_view name = std::string_view(d.text).substr(1);
        if (name == "abducible") {
            for (;;) {
                prog.abducibles.push_back(literal());
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::Dot);
        } else if (name == "show") {
            sig_list(prog.show);
        } else if (name == "exceptions") {
            sig_list(prog.exceptions);
        } else {
            throw Error(ErrorCode::SyntaxError, "unknown directive '" + d.text + "'", d.span);
        }
    }

    std::optional<Literal> unless_clause() {
        if (!at_ident("unless")) return std::nullopt;
        next();
        return literal();
    }

    std::vector<BodyElem> when_clause() {
        if (!at_ident("when")) return {};
        next();
        return body();
    }

    DeonticStatement statement() {
        SourceSpan start = cur().span;
        if (!at(Tok::Ident)) fail("expected a statement keyword");
        std::string kw = next().text;
        DeonticStatement stmt;
        if (kw == "obligatory" || kw == "forbidden") {
            Literal target = literal();
            auto conds = when_clause();
            auto unless = unless_clause();
            if (unless && *unless == target) {
                throw Error(ErrorCode::UnlessEqualsTarget,
                            "'unless' literal must differ from the target '" + target.to_string() + "'",
                            span_from(start));
            }
            if (kw == "obligatory") {
                stmt.value = Obligation{std::move(target), std::move(conds), std::move(unless)};
            } else {
                stmt.value = Impermissibility{std::move(target), std::move(conds), std::move(unless)};
            }
        } else if (kw == "permitted") {
            Permission p;
            p.target = literal();
            p.conditions = when_clause();
            if (at_ident("except")) {
                next();
                for (;;) {
                    p.exceptions.push_back(literal());
                    if (!accept(Tok::Comma)) break;
                }
            }
            stmt.value = std::move(p);
        } else if (kw == "fact") {
            Literal lit = literal();
            if (!lit.atom.is_ground()) fail("facts must be ground");
            stmt.value = FactStatement{std::move(lit)};
        } else if (kw == "abducible") {
            stmt.value = AbducibleStatement{literal()};
        } else if (kw == "rule") {
            Rule r = rule();
            stmt.value = RawRule{std::move(r)};
            stmt.span = span_from(start);
            return stmt;
        } else {
            throw Error(ErrorCode::SyntaxError, "unknown statement keyword '" + kw + "'", start);
        }
        expect(Tok::Dot);
        stmt.span = span_from(start);
        return stmt;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string join_body(const std::vector<BodyElem>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) out += ", ";
        out += body[i].to_string();
    }
    return out;
}

std::string sig_line(std::string_view directive, const std::vector<PredicateSig>& sigs) {
    std::string out(directive);
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        out += i ? ", " : " ";
        out += sigs[i].to_string();
    }
    return out + ".";
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

DeonticTheory parse_deontic(std::string_view text) { return Parser(text).theory(); }

std::vector<BodyElem> parse_query(std::string_view text) { return Parser(text).query(); }

Literal parse_literal(std::string_view text) { return Parser(text).single_literal(); }

std::string render_program(const Program& program) {
    std::string out;
    for (const auto& a : program.abducibles) out += "#abducible " + a.to_string() + ".\n";
    if (!program.show.empty()) out += sig_line("#show", program.show) + "\n";
    if (!program.exceptions.empty()) out += sig_line("#exceptions", program.exceptions) + "\n";
    for (const auto& r : program.rules) out += r.to_string() + "\n";
    return out;
}

std::string DeonticStatement::to_string() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Obligation> || std::is_same_v<T, Impermissibility>) {
                std::string out = std::is_same_v<T, Obligation> ? "obligatory " : "forbidden ";
                out += v.target.to_string();
                if (!v.conditions.empty()) out += " when " + join_body(v.conditions);
                if (v.unless) out += " unless " + v.unless->to_string();
                return out + ".";
            } else if constexpr (std::is_same_v<T, Permission>) {
                std::string out = "permitted " + v.target.to_string();
                if (!v.conditions.empty()) out += " when " + join_body(v.conditions);
                for (std::size_t i = 0; i < v.exceptions.size(); ++i) {
                    out += i ? ", " : " except ";
                    out += v.exceptions[i].to_string();
                }
                return out + ".";
            } else if constexpr (std::is_same_v<T, FactStatement>) {
                return "fact " + v.literal.to_string() + ".";
            } else if constexpr (std::is_same_v<T, AbducibleStatement>) {
                return "abducible " + v.literal.to_string() + ".";
            } else {
                return "rule " + v.rule.to_string();
            }
        },
        value);
}

std::string render_theory(const DeonticTheory& theory) {
    std::string out;
    if (!theory.show.empty()) out += sig_line("show", theory.show) + "\n";
    for (const auto& s : theory.statements) out += s.to_string() + "\n";
    return out;
}

}  // namespace normlog
