// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hinreg/graph.hpp"

namespace hinreg {

/// A typed graph together with the opaque string ids it was loaded from.
/// Names are per node type, indexed by the dense NodeId assigned in
/// first-seen order.
struct LoadedGraph {
  TypedGraph graph;
  std::vector<std::vector<std::string>> node_names;

  std::optional<NodeId> find_node(NodeTypeId type, std::string_view name) const;

  bool operator==(const LoadedGraph&) const = default;
};

/// Reads the tab-separated edge-list format:
///
///   src_type <TAB> src_id <TAB> link_type <TAB> dst_type <TAB> dst_id <TAB> weight
///
/// Lines starting with '#' and blank lines are skipped; with has_header the
/// first data line is skipped too. Node and link types are discovered in
/// first-seen order; ids are opaque strings mapped to dense indices in
/// first-seen order. A link type is pinned to the endpoint types of its
/// first edge; later disagreement is a TypeMismatch. Weights must parse as
/// finite non-negative decimals. Errors name the offending file and line.
LoadedGraph load_edgelist(const std::string& path, bool has_header = false);

/// Same, from an already-open stream; `display_path` is used in messages.
LoadedGraph load_edgelist(std::istream& in, const std::string& display_path,
                          bool has_header = false);

/// Writes the graph back in the same format (real nodes and edges only),
/// link type by link type, rows ascending. Loading the dump reproduces the
/// graph and its name tables exactly.
void dump_edgelist(const LoadedGraph& g, std::ostream& out);
void dump_edgelist(const LoadedGraph& g, const std::string& path);

}  // namespace hinreg
