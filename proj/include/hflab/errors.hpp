#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hflab {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual or JSON input.  Carries the byte offset of the first
/// offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed input that violates a semantic precondition: an unassigned
/// variable, an arity violation, a non-minimal condition, an unresolved
/// name reference, and so on.
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// A configurable resource bound was reached before the operation finished.
/// Operations that can explode combinatorially fail with this instead of
/// exhausting memory or stalling.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace hflab
