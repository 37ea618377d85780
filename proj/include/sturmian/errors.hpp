#pragma once

#include <stdexcept>
#include <string>

namespace sturmian {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument or value outside the mathematical domain of an operation
// (zero divisor, rational where an irrational is required, out-of-range index).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A bounded quotient source or finite word was asked for more data than it has.
struct SourceExhausted : Error {
    explicit SourceExhausted(const std::string& msg) : Error(msg) {}
};

// A word failed a structural check that every Sturmian word of the given
// slope must satisfy (no admissible decomposition at some level).
struct NotSturmianError : Error {
    explicit NotSturmianError(const std::string& msg) : Error(msg) {}
};

// Derived data disagrees with itself (illegal case transition, chain/word
// mismatch, prediction vs. observation divergence when that is fatal).
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

// Not enough levels/letters were available to answer the query exactly.
struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

// Malformed literal (continued fraction, chain, or number syntax).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace sturmian
