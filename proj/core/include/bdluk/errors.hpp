#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdluk {

// Base class for every failure caused by user-supplied input: malformed
// formulas, model files that fail validation, proof files with bad
// references, and so on.  The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in a formula or file, carrying the byte offset into the
// source text at which the problem was detected.
struct ParseError : InputError {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& message)
      : InputError(message + " (at byte " + std::to_string(off) + ")"),
        offset(off) {}
};

// A formula uses a connective or atom that the requested dialect forbids.
struct DialectError : InputError {
  using InputError::InputError;
};

// A configured resource cap was exceeded: too many propositional variables
// for exhaustive enumeration, or a tableau branch budget ran out.  The CLI
// maps these to exit code 3.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bdluk
