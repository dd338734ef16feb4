#pragma once

#include <stdexcept>
#include <string>

namespace circiso {

// Malformed text input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponential-time check was asked to run beyond its configured size limit.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate produced by the pipeline failed verification. Never expected.
class CertificateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A structural invariant of an internal data structure was violated.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A circular-arc model violates the precondition of an operation.
class ModelError : public std::runtime_error {
 public:
  enum class Kind { NotProper, CoversCircle, NormalizationFailed, NotHelly };

  ModelError(Kind kind, int arc_a, int arc_b, const std::string& what)
      : std::runtime_error(what), kind(kind), arc_a(arc_a), arc_b(arc_b) {}

  Kind kind;
  int arc_a;
  int arc_b;
};

}  // namespace circiso
