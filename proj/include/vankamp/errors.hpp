#pragma once

#include <stdexcept>
#include <string>

namespace vk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A word uses a symbol that does not belong to the expected alphabet.
class AlphabetMismatch : public Error {
 public:
  explicit AlphabetMismatch(const std::string& what) : Error(what) {}
};

/// Malformed textual input (presentations, words, serialized diagrams).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// A bounded search exhausted its configured cap.
class Overflow : public Error {
 public:
  Overflow(const std::string& what, long long cap) : Error(what), cap(cap) {}
  long long cap;
};

/// A standard filling was requested for a boundary word with a trivial
/// proper prefix product, which would require an identity parabolic letter.
class DegeneratePrefix : public Error {
 public:
  DegeneratePrefix(const std::string& what, int prefix_length)
      : Error(what), prefix_length(prefix_length) {}
  int prefix_length;
};

/// A surgery chord was requested for an arc whose endpoints coincide in the
/// group, which would require an identity-labeled chord.
class DegenerateArc : public Error {
 public:
  explicit DegenerateArc(const std::string& what) : Error(what) {}
};

/// An area computation was requested for a word that is not trivial in the
/// ambient group and therefore bounds no diagram.
class NotTrivialError : public Error {
 public:
  explicit NotTrivialError(const std::string& what) : Error(what) {}
};

/// A round of the detection loop ran out of its word budget before the
/// verdict settled. Carries the partial progress.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, long long done) : Error(what), done(done) {}
  long long done;
};

/// A structural invariant that valid inputs cannot violate failed anyway.
/// Indicates a construction bug, not bad user input.
class InternalInvariantError : public Error {
 public:
  explicit InternalInvariantError(const std::string& what) : Error(what) {}
};

}  // namespace vk
