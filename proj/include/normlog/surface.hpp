#pragma once

// Parsers and printers for the two surface languages: the ASP object
// language (.asp) and the normative DSL (.deon). Both use `%` line comments.

#include "normlog/ast.hpp"
#include "normlog/deontic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace normlog {

/// Rules in source order plus `#abducible`, `#show` and `#exceptions`
/// directives. `false :- B.` is accepted and canonicalized to `:- B.`.
/// Throws Error (SyntaxError, ArityConflict, NafOnBuiltin, EmptyRule).
Program parse_program(std::string_view text);

/// Statements of the DSL:
///   obligatory L [when B] [unless C].
///   forbidden L [when B] [unless C].
///   permitted L [when B] [except E, ...].
///   fact L.   abducible L.   rule H :- B.   show p/n, ...
DeonticTheory parse_deontic(std::string_view text);

/// Goals for a query such as `?- warning_sign.` or `go, not tell`. The
/// prefix `?-` and trailing `.` are optional; the goal `true` is dropped.
std::vector<BodyElem> parse_query(std::string_view text);

/// A single literal, e.g. `-batterylvl(c,0,200)`.
Literal parse_literal(std::string_view text);

/// Canonical text: directives first, then one rule per line.
/// parse_program(render_program(p)) == p.
std::string render_program(const Program& program);

std::string render_theory(const DeonticTheory& theory);

}  // namespace normlog
