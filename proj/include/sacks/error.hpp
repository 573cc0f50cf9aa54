#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sacks {

enum class ErrorKind {
  Precondition,
  IncompleteFamily,
  NotANode,
  AmalgamationDomain,
  FusionPrecondition,
  Width,
  IncompatibleConditions,
  Domain,
  Decode,
  UndecodablePattern,
  MalformedPattern,
  Syntax,
  Resource,
  Input,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace sacks
