#pragma once

#include <stdexcept>
#include <string>

namespace riflab {

/// Failure categories surfaced by the library. Verdict-style outcomes
/// (Unknown, inconclusive, ...) are ordinary return values, not errors;
/// only contract violations and undefined evaluations throw.
enum class ErrorKind {
    InvalidArgument,
    NotInner,           // torus modulus check failed for a candidate RIF
    ZeroInOpenBidisc,   // candidate denominator vanishes inside the open bidisc
    NearSingularity,    // evaluation within 1e-14 of a denominator zero
    NoStableLimit,      // radial extrapolation did not settle
    SingularAtPoint,    // derivative probe at (or too close to) a singularity
    EmptyRegion,        // no sample hit a region that cannot be empty
    NonPositiveVolume,  // power-law fit fed a zero/negative volume
    OutOfRange,         // parameter outside its documented domain
    DivergentRatio,     // gap negative beyond tolerance: no finite infimum
    QuadratureUnstable, // Gram assembly failed its internal consistency check
    NotIsolatedZero,    // decay fit anchored at a non-isolated torus zero
    BadFit,             // regression rejected (low r^2 or bound violated)
    ParseError,         // malformed input file
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::NotInner: return "not inner";
        case ErrorKind::ZeroInOpenBidisc: return "zero in open bidisc";
        case ErrorKind::NearSingularity: return "near singularity";
        case ErrorKind::NoStableLimit: return "no stable limit";
        case ErrorKind::SingularAtPoint: return "singular at point";
        case ErrorKind::EmptyRegion: return "empty region";
        case ErrorKind::NonPositiveVolume: return "non-positive volume";
        case ErrorKind::OutOfRange: return "out of range";
        case ErrorKind::DivergentRatio: return "divergent ratio";
        case ErrorKind::QuadratureUnstable: return "quadrature unstable";
        case ErrorKind::NotIsolatedZero: return "not isolated zero";
        case ErrorKind::BadFit: return "bad fit";
        case ErrorKind::ParseError: return "parse error";
    }
    return "unknown error";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace riflab
