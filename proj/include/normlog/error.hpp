#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace normlog {

/// Location of a parsed node in its source text.
struct SourceSpan {
    std::size_t start = 0;  ///< byte offset, inclusive
    std::size_t end = 0;    ///< byte offset, exclusive
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class ErrorCode {
    SyntaxError,
    ArityConflict,
    NafOnBuiltin,
    EmptyRule,
    UnlessEqualsTarget,
    DuplicateDeclaration,
    EmptyConditions,
    FreshNameCollision,
    UnsafeRule,
    UnboundArithmetic,
    TypeMismatch,
    ArithmeticOverflow,
    GroundingLimit,
    InconsistentCandidate,
    LiteralNotInModel,
    NonFactNarrative,
    Io,
};

const char* to_string(ErrorCode code);

/// The single exception type thrown by the library. Every error carries a
/// code; errors attributable to source text also carry a span.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }

    /// "line:col: Code: message" when a span is known.
    std::string diagnostic() const;

private:
    ErrorCode code_;
    std::optional<SourceSpan> span_;
};

}  // namespace normlog
