// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hinreg/sparse.hpp"

namespace hinreg {

using NodeTypeId = std::uint32_t;
using LinkTypeId = std::uint32_t;

/// Node index scoped to its node type. Each type has its own contiguous
/// 0-based index space; the hole node, once present, sits at the last index
/// so real-node indices are stable across augmentation.
using NodeId = Index;

struct NodeTypeDecl {
  std::string name;
  Index count = 0;  // real nodes; the hole is not counted

  bool operator==(const NodeTypeDecl&) const = default;
};

struct LinkTypeDecl {
  std::string name;
  NodeTypeId source = 0;
  NodeTypeId target = 0;

  bool operator==(const LinkTypeDecl&) const = default;
};

struct WeightedEdge {
  LinkTypeId link = 0;
  NodeId source = 0;
  NodeId target = 0;
  double weight = 0.0;
};

/// Meta-level view of a typed graph: a digraph whose nodes are node types
/// and whose labelled edges are link types.
struct Schema {
  struct Edge {
    std::string name;
    NodeTypeId source = 0;
    NodeTypeId target = 0;

    bool operator==(const Edge&) const = default;
  };

  std::vector<std::string> node_types;
  std::vector<Edge> link_types;

  std::optional<NodeTypeId> find_node_type(std::string_view name) const;
  std::optional<LinkTypeId> find_link_type(std::string_view name) const;

  bool operator==(const Schema&) const = default;
};

/// Weighted directed multigraph with typed nodes and links.
///
/// Stored per link type as a sparse weight matrix; parallel edges of the same
/// type are canonicalized into a single weighted entry at build time.
/// Instances are immutable after construction and safe to share across
/// threads; augmentation, hole stripping and link-type collapsing all return
/// new graphs.
class TypedGraph {
 public:
  TypedGraph() = default;

  /// Validates declarations and edges, merges duplicate (src, dst, link)
  /// entries by summing their weights, drops exact-zero weights, and returns
  /// the unaugmented graph.
  static TypedGraph build(std::vector<NodeTypeDecl> node_types,
                          std::vector<LinkTypeDecl> link_types,
                          std::span<const WeightedEdge> edges);

  std::size_t node_type_count() const noexcept { return node_types_.size(); }
  std::size_t link_type_count() const noexcept { return link_types_.size(); }
  const NodeTypeDecl& node_type(NodeTypeId t) const;
  const LinkTypeDecl& link_type(LinkTypeId e) const;
  std::optional<NodeTypeId> find_node_type(std::string_view name) const;
  std::optional<LinkTypeId> find_link_type(std::string_view name) const;

  bool augmented() const noexcept { return augmented_; }

  /// Real-node count of a type (holes excluded).
  Index real_count(NodeTypeId t) const;
  /// Stored count: real nodes plus the hole when augmented.
  Index stored_count(NodeTypeId t) const;
  /// Index of the hole node; only valid on augmented graphs.
  NodeId hole_node(NodeTypeId t) const;

  /// Raw weight matrix of one link type, shaped
  /// (stored_count(source), stored_count(target)).
  const CsrMatrix& adjacency(LinkTypeId e) const;

  /// Transition probability matrix of one link type: each row divided by its
  /// row sum. Requires an augmented graph, which guarantees positive row
  /// sums; rows then sum to 1 within 1e-12.
  CsrMatrix stochastic(LinkTypeId e) const;

  Schema schema() const;

  /// Appends a hole node to every node type. For each link type, dangling
  /// real rows get a single unit edge to the target type's hole, rows with
  /// positive sum are untouched, and the hole row gets a single unit edge to
  /// the target hole.
  TypedGraph augment_with_holes() const;

  /// Removes hole nodes and all their incident edges.
  TypedGraph strip_holes() const;

  /// Replaces all link types between the given pair of node types by a
  /// single link type named "ALL" (appended last) whose weight matrix is the
  /// entry-wise sum; other link types keep their relative order. Must run
  /// before augmentation.
  TypedGraph collapse_link_types(NodeTypeId src_t, NodeTypeId dst_t) const;

  bool operator==(const TypedGraph&) const = default;

 private:
  std::vector<NodeTypeDecl> node_types_;
  std::vector<LinkTypeDecl> link_types_;
  std::vector<CsrMatrix> adjacency_;
  bool augmented_ = false;
};

}  // namespace hinreg
