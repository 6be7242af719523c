#pragma once

// Object language of answer-set programs with strong negation: terms,
// literals, rules and programs. All types are immutable values once built.

#include "normlog/error.hpp"
#include "normlog/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace normlog {

/// Prefix reserved for compiler-generated predicates.
inline constexpr std::string_view kFreshPrefix = "o_";

class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, Number };

    static Term variable(std::string name);
    static Term constant(std::string name);
    static Term number(Rational value);

    Kind kind() const noexcept { return kind_; }
    bool is_variable() const noexcept { return kind_ == Kind::Variable; }
    bool is_number() const noexcept { return kind_ == Kind::Number; }
    /// Variable or constant name; empty for numbers.
    const std::string& name() const noexcept { return name_; }
    const Rational& value() const noexcept { return value_; }

    std::string to_string() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

private:
    Kind kind_ = Kind::Constant;
    std::string name_;
    Rational value_;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const;
    std::string to_string() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
};

struct Literal {
    Atom atom;
    bool strong_neg = false;

    std::string to_string() const;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal&, const Literal&) = default;
};

Literal make_literal(std::string predicate, std::vector<Term> args = {}, bool strong_neg = false);

/// Flips the strong-negation mark.
Literal complement(const Literal& lit);

class ArithExpr {
public:
    enum class Op : std::uint8_t { Leaf, Add, Sub, Mul };

    ArithExpr() = default;
    /* implicit */ ArithExpr(Term term);
    static ArithExpr binary(Op op, ArithExpr lhs, ArithExpr rhs);

    Op op() const noexcept { return op_; }
    bool is_leaf() const noexcept { return op_ == Op::Leaf; }
    const Term& term() const noexcept { return term_; }
    const ArithExpr& lhs() const { return *lhs_; }
    const ArithExpr& rhs() const { return *rhs_; }

    std::string to_string() const;

    friend bool operator==(const ArithExpr& a, const ArithExpr& b);

private:
    Op op_ = Op::Leaf;
    Term term_;
    std::shared_ptr<const ArithExpr> lhs_;
    std::shared_ptr<const ArithExpr> rhs_;
};

enum class CmpOp : std::uint8_t { Gt, Lt, Ge, Le, Eq, Ne };

std::string_view to_string(CmpOp op);

struct Comparison {
    CmpOp op = CmpOp::Eq;
    ArithExpr lhs;
    ArithExpr rhs;

    std::string to_string() const;
    friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// Body element: a positive literal, a default-negated literal, or a builtin.
class BodyElem {
public:
    struct Pos {
        Literal literal;
        friend bool operator==(const Pos&, const Pos&) = default;
    };
    struct Naf {
        Literal literal;
        friend bool operator==(const Naf&, const Naf&) = default;
    };
    using Value = std::variant<Pos, Naf, Comparison>;

    BodyElem() = default;
    BodyElem(Value value, SourceSpan span = {}) : value_(std::move(value)), span_(span) {}

    static BodyElem pos(Literal lit) { return BodyElem(Pos{std::move(lit)}); }
    static BodyElem naf(Literal lit) { return BodyElem(Naf{std::move(lit)}); }
    static BodyElem builtin(CmpOp op, ArithExpr lhs, ArithExpr rhs) {
        return BodyElem(Comparison{op, std::move(lhs), std::move(rhs)});
    }

    const Value& value() const noexcept { return value_; }
    bool is_pos() const noexcept { return std::holds_alternative<Pos>(value_); }
    bool is_naf() const noexcept { return std::holds_alternative<Naf>(value_); }
    bool is_builtin() const noexcept { return std::holds_alternative<Comparison>(value_); }
    /// The wrapped literal; precondition: !is_builtin().
    const Literal& literal() const;
    const Comparison& comparison() const { return std::get<Comparison>(value_); }
    const SourceSpan& span() const noexcept { return span_; }

    std::string to_string() const;

    // Spans are diagnostics only and do not take part in equality.
    friend bool operator==(const BodyElem& a, const BodyElem& b) { return a.value_ == b.value_; }

private:
    Value value_;
    SourceSpan span_;
};

struct Rule {
    std::optional<Literal> head;  // absent for denials
    std::vector<BodyElem> body;
    SourceSpan span;

    bool is_denial() const noexcept { return !head.has_value(); }
    bool is_fact() const noexcept { return head.has_value() && body.empty(); }
    std::string to_string() const;

    friend bool operator==(const Rule& a, const Rule& b) { return a.head == b.head && a.body == b.body; }
};

struct PredicateSig {
    bool strong_neg = false;
    std::string name;
    std::size_t arity = 0;

    std::string to_string() const;
    friend bool operator==(const PredicateSig&, const PredicateSig&) = default;
    friend std::strong_ordering operator<=>(const PredicateSig&, const PredicateSig&) = default;
};

struct Program {
    std::vector<Rule> rules;
    std::vector<Literal> abducibles;
    std::vector<PredicateSig> show;
    /// Names of exception atoms (heads of preemptable norms) for compliance reports.
    std::vector<PredicateSig> exceptions;

    friend bool operator==(const Program&, const Program&) = default;
};

/// Every predicate/arity occurring in a head, body or abducible declaration.
/// Strong negation does not create a distinct predicate. Throws
/// ArityConflict when one name is used with two arities.
std::set<PredicateSig> signature(const Program& program);

/// Variables of a term/expression/body element/rule, in first-occurrence order.
void collect_variables(const ArithExpr& expr, std::vector<std::string>& out);
void collect_variables(const Literal& lit, std::vector<std::string>& out);
void collect_variables(const BodyElem& elem, std::vector<std::string>& out);
std::vector<std::string> rule_variables(const Rule& rule);

bool is_fresh_name(std::string_view predicate);

}  // namespace normlog
