#pragma once

#include <stdexcept>
#include <string>

namespace tilegate {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cyclotomic modulus does not support the requested value or operand.
class ModulusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer overflow or a modulus beyond the supported field size.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input (fraction strings, JSON documents).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tiling that cannot be verified at all: mismatched moduli, degenerate
/// or clockwise triangles, non-real coordinates.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tilegate
