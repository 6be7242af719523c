#include "normlog/ast.hpp"

#include <algorithm>
#include <map>

namespace normlog {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::ArityConflict: return "ArityConflict";
        case ErrorCode::NafOnBuiltin: return "NafOnBuiltin";
        case ErrorCode::EmptyRule: return "EmptyRule";
        case ErrorCode::UnlessEqualsTarget: return "UnlessEqualsTarget";
        case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
        case ErrorCode::EmptyConditions: return "EmptyConditions";
        case ErrorCode::FreshNameCollision: return "FreshNameCollision";
        case ErrorCode::UnsafeRule: return "UnsafeRule";
        case ErrorCode::UnboundArithmetic: return "UnboundArithmetic";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorCode::GroundingLimit: return "GroundingLimit";
        case ErrorCode::InconsistentCandidate: return "InconsistentCandidate";
        case ErrorCode::LiteralNotInModel: return "LiteralNotInModel";
        case ErrorCode::NonFactNarrative: return "NonFactNarrative";
        case ErrorCode::Io: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(message), code_(code), span_(span) {}

std::string Error::diagnostic() const {
    std::string out;
    if (span_) out += std::to_string(span_->line) + ":" + std::to_string(span_->column) + ": ";
    out += to_string(code_);
    out += ": ";
    out += what();
    return out;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::constant(std::string name) {
    Term t;
    t.kind_ = Kind::Constant;
    t.name_ = std::move(name);
    return t;
}

Term Term::number(Rational value) {
    Term t;
    t.kind_ = Kind::Number;
    t.value_ = value;
    return t;
}

std::string Term::to_string() const { return kind_ == Kind::Number ? value_.to_string() : name_; }

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Atom::to_string() const {
    if (args.empty()) return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].to_string();
    }
    out += ')';
    return out;
}

std::string Literal::to_string() const { return strong_neg ? "-" + atom.to_string() : atom.to_string(); }

Literal make_literal(std::string predicate, std::vector<Term> args, bool strong_neg) {
    return Literal{Atom{std::move(predicate), std::move(args)}, strong_neg};
}

Literal complement(const Literal& lit) { return Literal{lit.atom, !lit.strong_neg}; }

ArithExpr::ArithExpr(Term term) : op_(Op::Leaf), term_(std::move(term)) {}

ArithExpr ArithExpr::binary(Op op, ArithExpr lhs, ArithExpr rhs) {
    ArithExpr e;
    e.op_ = op;
    e.lhs_ = std::make_shared<const ArithExpr>(std::move(lhs));
    e.rhs_ = std::make_shared<const ArithExpr>(std::move(rhs));
    return e;
}

bool operator==(const ArithExpr& a, const ArithExpr& b) {
    if (a.op_ != b.op_) return false;
    if (a.is_leaf()) return a.term_ == b.term_;
    return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
}

namespace {

int precedence(ArithExpr::Op op) {
    switch (op) {
        case ArithExpr::Op::Leaf: return 3;
        case ArithExpr::Op::Mul: return 2;
        default: return 1;
    }
}

void render(const ArithExpr& e, std::string& out) {
    if (e.is_leaf()) {
        out += e.term().to_string();
        return;
    }
    int prec = precedence(e.op());
    // Operators are left-associative: the right operand needs parentheses at
    // equal precedence, the left one only at lower precedence.
    bool paren_left = precedence(e.lhs().op()) < prec;
    bool paren_right = precedence(e.rhs().op()) <= prec;
    if (paren_left) out += '(';
    render(e.lhs(), out);
    if (paren_left) out += ')';
    switch (e.op()) {
        case ArithExpr::Op::Add: out += " + "; break;
        case ArithExpr::Op::Sub: out += " - "; break;
        default: out += '*'; break;
    }
    if (paren_right) out += '(';
    render(e.rhs(), out);
    if (paren_right) out += ')';
}

}  // namespace

std::string ArithExpr::to_string() const {
    std::string out;
    render(*this, out);
    return out;
}

std::string_view to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Gt: return ".>.";
        case CmpOp::Lt: return ".<.";
        case CmpOp::Ge: return ".>=.";
        case CmpOp::Le: return ".=<.";
        case CmpOp::Eq: return ".=.";
        case CmpOp::Ne: return "\\=";
    }
    return "?";
}

std::string Comparison::to_string() const {
    std::string out = lhs.to_string();
    out += ' ';
    out += normlog::to_string(op);
    out += ' ';
    out += rhs.to_string();
    return out;
}

const Literal& BodyElem::literal() const {
    if (const auto* p = std::get_if<Pos>(&value_)) return p->literal;
    return std::get<Naf>(value_).literal;
}

std::string BodyElem::to_string() const {
    if (const auto* p = std::get_if<Pos>(&value_)) return p->literal.to_string();
    if (const auto* n = std::get_if<Naf>(&value_)) return "not " + n->literal.to_string();
    return std::get<Comparison>(value_).to_string();
}

std::string Rule::to_string() const {
    std::string out;
    if (head) out += head->to_string();
    if (!body.empty()) {
        out += head ? " :- " : ":- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i].to_string();
        }
    }
    out += '.';
    return out;
}

std::string PredicateSig::to_string() const {
    return (strong_neg ? "-" : "") + name + "/" + std::to_string(arity);
}

namespace {

void note_predicate(const Atom& atom, std::map<std::string, std::size_t>& seen, std::set<PredicateSig>& out,
                    const SourceSpan* span) {
    auto [it, inserted] = seen.emplace(atom.predicate, atom.arity());
    if (!inserted && it->second != atom.arity()) {
        std::optional<SourceSpan> where;
        if (span) where = *span;
        throw Error(ErrorCode::ArityConflict,
                    "predicate '" + atom.predicate + "' used with arities " + std::to_string(it->second) + " and " +
                        std::to_string(atom.arity()),
                    where);
    }
    out.insert(PredicateSig{false, atom.predicate, atom.arity()});
}

}  // namespace

std::set<PredicateSig> signature(const Program& program) {
    std::map<std::string, std::size_t> seen;
    std::set<PredicateSig> out;
    for (const auto& rule : program.rules) {
        if (rule.head) note_predicate(rule.head->atom, seen, out, &rule.span);
        for (const auto& elem : rule.body) {
            if (!elem.is_builtin()) note_predicate(elem.literal().atom, seen, out, &elem.span());
        }
    }
    for (const auto& lit : program.abducibles) note_predicate(lit.atom, seen, out, nullptr);
    return out;
}

namespace {

void add_unique(std::vector<std::string>& out, const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

}  // namespace

void collect_variables(const ArithExpr& expr, std::vector<std::string>& out) {
    if (expr.is_leaf()) {
        if (expr.term().is_variable()) add_unique(out, expr.term().name());
        return;
    }
    collect_variables(expr.lhs(), out);
    collect_variables(expr.rhs(), out);
}

void collect_variables(const Literal& lit, std::vector<std::string>& out) {
    for (const auto& t : lit.atom.args) {
        if (t.is_variable()) add_unique(out, t.name());
    }
}

void collect_variables(const BodyElem& elem, std::vector<std::string>& out) {
    if (elem.is_builtin()) {
        collect_variables(elem.comparison().lhs, out);
        collect_variables(elem.comparison().rhs, out);
    } else {
        collect_variables(elem.literal(), out);
    }
}

std::vector<std::string> rule_variables(const Rule& rule) {
    std::vector<std::string> out;
    if (rule.head) collect_variables(*rule.head, out);
    for (const auto& elem : rule.body) collect_variables(elem, out);
    return out;
}

bool is_fresh_name(std::string_view predicate) { return predicate.substr(0, kFreshPrefix.size()) == kFreshPrefix; }

}  // namespace normlog
