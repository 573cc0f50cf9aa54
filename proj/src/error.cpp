#include "sacks/error.hpp"

namespace sacks {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::IncompleteFamily: return "incomplete-family";
    case ErrorKind::NotANode: return "not-a-node";
    case ErrorKind::AmalgamationDomain: return "amalgamation-domain";
    case ErrorKind::FusionPrecondition: return "fusion-precondition";
    case ErrorKind::Width: return "width";
    case ErrorKind::IncompatibleConditions: return "incompatible-conditions";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Decode: return "decode";
    case ErrorKind::UndecodablePattern: return "undecodable-pattern";
    case ErrorKind::MalformedPattern: return "malformed-pattern";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Input: return "input";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorKind::Syntax, "at position " + std::to_string(position) + ": " + message),
      position_(position) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace sacks
