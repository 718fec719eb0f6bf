// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hinreg {

/// Failure categories shared by the C++ core and the C API.
enum class Status : int {
  Ok = 0,
  InvalidArgument = 1,
  UnknownType = 2,
  TypeMismatch = 3,
  NegativeWeight = 4,
  AlreadyAugmented = 5,
  NotAugmented = 6,
  NoSuchPair = 7,
  ParseError = 8,
  ChainMismatch = 9,
  BadExclusion = 10,
  SchemaMismatch = 11,
  PathExplosion = 12,
  ShapeMismatch = 13,
  EmptySubset = 14,
  Singular = 15,
  Underdetermined = 16,
  DegenerateSplit = 17,
  TooFewEdges = 18,
  UncategorizedNode = 19,
  PivotNotOnPath = 20,
  IoError = 21,
  Internal = 22,
};

const char* status_name(Status s);

/// Exception carrying a Status code. The C API catches these at the
/// boundary and stores the message in thread-local storage.
class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Status code() const noexcept { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void raise(Status code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hinreg
