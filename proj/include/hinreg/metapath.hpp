// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hinreg/graph.hpp"

namespace hinreg {

/// Walk constraint: the node visited at slot `banned_at` must differ from
/// the node visited at slot `seen_at`. Slots index the node positions
/// 0..n of an n-step meta-path, so `seen_at < banned_at <= n` and both
/// slots must carry the same node type.
struct Exclusion {
  std::uint32_t seen_at = 0;
  std::uint32_t banned_at = 0;

  auto operator<=>(const Exclusion&) const = default;
};

/// A schema-level path: an ordered sequence of link types, chain-compatible
/// end to end, plus revisit-exclusion constraints. Exclusions are kept
/// sorted and deduplicated.
struct MetaPath {
  std::vector<LinkTypeId> steps;
  std::vector<Exclusion> exclusions;

  std::size_t length() const noexcept { return steps.size(); }
  bool operator==(const MetaPath&) const = default;
};

/// Ordered regressor set; all members are expected to share source and
/// target node types.
using MetaPathSet = std::vector<MetaPath>;

/// Node types at slots 0..n. Raises ChainMismatch if consecutive steps do
/// not chain, UnknownType if a step id is out of range, InvalidArgument on
/// an empty path.
std::vector<NodeTypeId> node_slots(const MetaPath& mp, const Schema& schema);

/// Full validation: chaining plus exclusion sanity (ordering, range, equal
/// node types at both slots). Raises BadExclusion on violations.
void validate_metapath(const MetaPath& mp, const Schema& schema);

/// Adds the standard revisit exclusions:
///   - (0, n-1) when the penultimate slot has the source's node type, so a
///     walk never sits on its own source right before the final step;
///   - (1, 3) on 4-step paths shaped T0->T1->X->T1->T0, so the walk cannot
///     return to the slot-1 node on its way back.
MetaPath with_default_exclusions(MetaPath mp, const Schema& schema);

/// The exclusions with_default_exclusions would add to a path.
std::vector<Exclusion> default_exclusions(const MetaPath& mp, const Schema& schema);

/// Parses the textual form `Name(-Name)*` with optional `!(a,b)` exclusion
/// clauses, e.g. "RT-UH" or "AP-PP-PA !(1,3)". Default exclusions are added
/// unless auto_exclusions is false. Raises UnknownType / ChainMismatch /
/// BadExclusion / ParseError.
MetaPath parse_metapath(std::string_view text, const Schema& schema,
                        bool auto_exclusions = true);

/// Canonical textual form: step names joined by '-', followed by `!(a,b)`
/// clauses for exclusions beyond the defaults. parse(format(mp)) == mp for
/// any path carrying at least its default exclusions.
std::string format_metapath(const MetaPath& mp, const Schema& schema);

/// All chain-compatible link-type sequences of length 1..max_len from src_t
/// to dst_t, except the single-step path equal to `exclude`. Deterministic
/// order: length-major, then lexicographic by link-type id sequence. Default
/// exclusions are attached unless auto_exclusions is false.
MetaPathSet enumerate_metapaths(const Schema& schema, NodeTypeId src_t,
                                NodeTypeId dst_t, std::size_t max_len,
                                std::optional<LinkTypeId> exclude = std::nullopt,
                                bool auto_exclusions = true);

}  // namespace hinreg
