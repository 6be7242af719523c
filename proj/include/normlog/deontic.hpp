#pragma once

// Surface statements of the normative DSL (.deon files).

#include "normlog/ast.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace normlog {

/// `obligatory L [when B] [unless C].`
struct Obligation {
    Literal target;
    std::vector<BodyElem> conditions;
    std::optional<Literal> unless;
    friend bool operator==(const Obligation&, const Obligation&) = default;
};

/// `forbidden L [when B] [unless C].`
struct Impermissibility {
    Literal target;
    std::vector<BodyElem> conditions;
    std::optional<Literal> unless;
    friend bool operator==(const Impermissibility&, const Impermissibility&) = default;
};

/// `permitted L [when B] [except E1, E2].`
struct Permission {
    Literal target;
    std::vector<BodyElem> conditions;
    std::vector<Literal> exceptions;
    friend bool operator==(const Permission&, const Permission&) = default;
};

struct FactStatement {
    Literal literal;
    friend bool operator==(const FactStatement&, const FactStatement&) = default;
};

struct RawRule {
    Rule rule;
    friend bool operator==(const RawRule&, const RawRule&) = default;
};

struct AbducibleStatement {
    Literal literal;
    friend bool operator==(const AbducibleStatement&, const AbducibleStatement&) = default;
};

struct DeonticStatement {
    using Value = std::variant<Obligation, Impermissibility, Permission, FactStatement, RawRule, AbducibleStatement>;

    Value value;
    SourceSpan span;

    std::string to_string() const;
    friend bool operator==(const DeonticStatement& a, const DeonticStatement& b) { return a.value == b.value; }
};

struct DeonticTheory {
    std::vector<DeonticStatement> statements;
    std::vector<PredicateSig> show;

    friend bool operator==(const DeonticTheory&, const DeonticTheory&) = default;
};

}  // namespace normlog
