#pragma once

// Exact arithmetic scalar types shared by every symbolic module.
// All symbolic computation in this project is over Q; floating point
// appears only in the numeric Mordell-Weil module.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace elfic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // lowest terms, den > 0

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::complex<double> to_complex(const Rational& r) {
    return {to_double(r), 0.0};
}

// Base class for all errors raised by the exact modules.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression text; carries a 0-based character position.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

// Structurally invalid model or matrix input.
struct InputError : Error {
    using Error::Error;
};

// A mathematical cross-check failed (internal inconsistency or invalid data).
struct CheckError : Error {
    using Error::Error;
};

}  // namespace elfic
