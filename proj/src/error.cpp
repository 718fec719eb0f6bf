// SPDX-License-Identifier: Apache-2.0
#include "hinreg/error.hpp"

namespace hinreg {

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InvalidArgument: return "invalid-argument";
    case Status::UnknownType: return "unknown-type";
    case Status::TypeMismatch: return "type-mismatch";
    case Status::NegativeWeight: return "negative-weight";
    case Status::AlreadyAugmented: return "already-augmented";
    case Status::NotAugmented: return "not-augmented";
    case Status::NoSuchPair: return "no-such-pair";
    case Status::ParseError: return "parse-error";
    case Status::ChainMismatch: return "chain-mismatch";
    case Status::BadExclusion: return "bad-exclusion";
    case Status::SchemaMismatch: return "schema-mismatch";
    case Status::PathExplosion: return "path-explosion";
    case Status::ShapeMismatch: return "shape-mismatch";
    case Status::EmptySubset: return "empty-subset";
    case Status::Singular: return "singular";
    case Status::Underdetermined: return "underdetermined";
    case Status::DegenerateSplit: return "degenerate-split";
    case Status::TooFewEdges: return "too-few-edges";
    case Status::UncategorizedNode: return "uncategorized-node";
    case Status::PivotNotOnPath: return "pivot-not-on-path";
    case Status::IoError: return "io-error";
    case Status::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace hinreg
