#pragma once

#include <stdexcept>
#include <string>

namespace relmatch {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed matrix documents, streams or other input formats.
struct ParseError : Error {
    using Error::Error;
};

/// Unknown, duplicate or out-of-alphabet symbols.
struct SymbolError : Error {
    using Error::Error;
};

/// Operator/matrix incompatibilities, degenerate relations, violated
/// engine preconditions (e.g. building a sublinear matcher for a
/// linear-space relation).
struct RelationError : Error {
    using Error::Error;
};

/// Broken state serialization: bad version, truncated payload,
/// mismatched engine kind or configuration.
struct StateError : Error {
    using Error::Error;
};

/// A violated internal invariant. Thrown instead of silently producing
/// wrong answers (e.g. a non-collinear candidate in the fingerprint
/// matcher's occurrence progression).
struct InternalError : Error {
    using Error::Error;
};

} // namespace relmatch
