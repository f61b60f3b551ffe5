/*
 * errors.hpp
 * ----------
 * Exception types thrown by the quiverloop library. Each maps to one
 * documented failure mode of the public operations.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace quiverloop {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error { using Error::Error; };
struct SpecializationPole : Error { using Error::Error; };
struct SignatureMismatch : Error { using Error::Error; };
struct UnknownVertex : Error { using Error::Error; };
struct UnknownSymbol : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };
struct NotNonIncreasing : Error { using Error::Error; };
struct InexactDivision : Error { using Error::Error; };
struct SignatureOverflow : Error { using Error::Error; };
struct NotALaurentPolynomial : Error { using Error::Error; };
struct TruncationUnstable : Error { using Error::Error; };
struct WindowExhausted : Error { using Error::Error; };

// Config / text-form parse failure; carries a 1-based line number when the
// source is a file (0 for inline strings).
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

} // namespace quiverloop
