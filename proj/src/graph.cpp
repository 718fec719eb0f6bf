// SPDX-License-Identifier: Apache-2.0
#include "hinreg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hinreg/error.hpp"

namespace hinreg {

std::optional<NodeTypeId> Schema::find_node_type(std::string_view name) const {
  for (std::size_t i = 0; i < node_types.size(); ++i) {
    if (node_types[i] == name) return static_cast<NodeTypeId>(i);
  }
  return std::nullopt;
}

std::optional<LinkTypeId> Schema::find_link_type(std::string_view name) const {
  for (std::size_t i = 0; i < link_types.size(); ++i) {
    if (link_types[i].name == name) return static_cast<LinkTypeId>(i);
  }
  return std::nullopt;
}

TypedGraph TypedGraph::build(std::vector<NodeTypeDecl> node_types,
                             std::vector<LinkTypeDecl> link_types,
                             std::span<const WeightedEdge> edges) {
  for (const auto& lt : link_types) {
    if (lt.source >= node_types.size() || lt.target >= node_types.size()) {
      raise(Status::UnknownType,
            "link type '" + lt.name + "' references an undeclared node type");
    }
  }

  std::vector<std::vector<Triplet>> triplets(link_types.size());
  for (const auto& e : edges) {
    if (e.link >= link_types.size()) {
      raise(Status::UnknownType,
            "edge references undeclared link type id " + std::to_string(e.link));
    }
    const auto& lt = link_types[e.link];
    if (e.source >= node_types[lt.source].count) {
      raise(Status::TypeMismatch,
            "edge source " + std::to_string(e.source) + " is not a node of type '" +
                node_types[lt.source].name + "' required by link type '" + lt.name + "'");
    }
    if (e.target >= node_types[lt.target].count) {
      raise(Status::TypeMismatch,
            "edge target " + std::to_string(e.target) + " is not a node of type '" +
                node_types[lt.target].name + "' required by link type '" + lt.name + "'");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      raise(Status::NegativeWeight,
            "edge weight must be finite and non-negative, got " +
                std::to_string(e.weight));
    }
    if (e.weight > 0.0) {
      triplets[e.link].push_back({e.source, e.target, e.weight});
    }
  }

  TypedGraph g;
  g.node_types_ = std::move(node_types);
  g.link_types_ = std::move(link_types);
  g.adjacency_.reserve(g.link_types_.size());
  for (std::size_t e = 0; e < g.link_types_.size(); ++e) {
    const auto& lt = g.link_types_[e];
    g.adjacency_.push_back(CsrMatrix::from_triplets(
        g.node_types_[lt.source].count, g.node_types_[lt.target].count,
        std::move(triplets[e])));
  }
  return g;
}

const NodeTypeDecl& TypedGraph::node_type(NodeTypeId t) const {
  if (t >= node_types_.size()) {
    raise(Status::UnknownType, "node type id " + std::to_string(t) + " out of range");
  }
  return node_types_[t];
}

const LinkTypeDecl& TypedGraph::link_type(LinkTypeId e) const {
  if (e >= link_types_.size()) {
    raise(Status::UnknownType, "link type id " + std::to_string(e) + " out of range");
  }
  return link_types_[e];
}

std::optional<NodeTypeId> TypedGraph::find_node_type(std::string_view name) const {
  for (std::size_t i = 0; i < node_types_.size(); ++i) {
    if (node_types_[i].name == name) return static_cast<NodeTypeId>(i);
  }
  return std::nullopt;
}

std::optional<LinkTypeId> TypedGraph::find_link_type(std::string_view name) const {
  for (std::size_t i = 0; i < link_types_.size(); ++i) {
    if (link_types_[i].name == name) return static_cast<LinkTypeId>(i);
  }
  return std::nullopt;
}

Index TypedGraph::real_count(NodeTypeId t) const { return node_type(t).count; }

Index TypedGraph::stored_count(NodeTypeId t) const {
  return node_type(t).count + (augmented_ ? 1 : 0);
}

NodeId TypedGraph::hole_node(NodeTypeId t) const {
  if (!augmented_) raise(Status::NotAugmented, "graph has no hole nodes");
  return node_type(t).count;
}

const CsrMatrix& TypedGraph::adjacency(LinkTypeId e) const {
  link_type(e);
  return adjacency_[e];
}

CsrMatrix TypedGraph::stochastic(LinkTypeId e) const {
  if (!augmented_) {
    raise(Status::NotAugmented,
          "stochastic matrix of link type '" + link_type(e).name +
              "' requires hole augmentation; zero rows would be undefined");
  }
  return adjacency(e).row_normalized();
}

Schema TypedGraph::schema() const {
  Schema s;
  s.node_types.reserve(node_types_.size());
  for (const auto& nt : node_types_) s.node_types.push_back(nt.name);
  s.link_types.reserve(link_types_.size());
  for (const auto& lt : link_types_) {
    s.link_types.push_back({lt.name, lt.source, lt.target});
  }
  return s;
}

TypedGraph TypedGraph::augment_with_holes() const {
  if (augmented_) raise(Status::AlreadyAugmented, "graph is already augmented");

  TypedGraph g;
  g.node_types_ = node_types_;
  g.link_types_ = link_types_;
  g.augmented_ = true;
  g.adjacency_.reserve(link_types_.size());
  std::vector<std::pair<Index, double>> rowbuf;
  for (std::size_t e = 0; e < link_types_.size(); ++e) {
    const auto& lt = link_types_[e];
    const auto& w = adjacency_[e];
    const Index n_src = node_types_[lt.source].count;
    const Index n_dst = node_types_[lt.target].count;
    const Index hole_dst = n_dst;
    CsrBuilder b(n_src + 1, n_dst + 1);
    for (Index r = 0; r < n_src; ++r) {
      if (w.row_nnz(r) == 0) {
        rowbuf.assign(1, {hole_dst, 1.0});
        b.push_row(rowbuf);
      } else {
        rowbuf.clear();
        auto cols = w.row_cols(r);
        auto vals = w.row_vals(r);
        for (std::size_t i = 0; i < cols.size(); ++i) {
          rowbuf.emplace_back(cols[i], vals[i]);
        }
        b.push_row(rowbuf);
      }
    }
    rowbuf.assign(1, {hole_dst, 1.0});
    b.push_row(rowbuf);
    g.adjacency_.push_back(b.finish());
  }
  return g;
}

TypedGraph TypedGraph::strip_holes() const {
  if (!augmented_) raise(Status::NotAugmented, "graph has no hole nodes to strip");

  TypedGraph g;
  g.node_types_ = node_types_;
  g.link_types_ = link_types_;
  g.adjacency_.reserve(link_types_.size());
  std::vector<std::pair<Index, double>> rowbuf;
  for (std::size_t e = 0; e < link_types_.size(); ++e) {
    const auto& lt = link_types_[e];
    const auto& w = adjacency_[e];
    const Index n_src = node_types_[lt.source].count;
    const Index n_dst = node_types_[lt.target].count;
    CsrBuilder b(n_src, n_dst);
    for (Index r = 0; r < n_src; ++r) {
      rowbuf.clear();
      auto cols = w.row_cols(r);
      auto vals = w.row_vals(r);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] < n_dst) rowbuf.emplace_back(cols[i], vals[i]);
      }
      b.push_row(rowbuf);
    }
    g.adjacency_.push_back(b.finish());
  }
  return g;
}

TypedGraph TypedGraph::collapse_link_types(NodeTypeId src_t, NodeTypeId dst_t) const {
  node_type(src_t);
  node_type(dst_t);
  if (augmented_) {
    raise(Status::AlreadyAugmented,
          "collapse link types before hole augmentation; hole edges must not "
          "be summed");
  }

  std::vector<LinkTypeId> group;
  for (std::size_t e = 0; e < link_types_.size(); ++e) {
    if (link_types_[e].source == src_t && link_types_[e].target == dst_t) {
      group.push_back(static_cast<LinkTypeId>(e));
    }
  }
  if (group.empty()) {
    raise(Status::NoSuchPair,
          "no link type connects '" + node_types_[src_t].name + "' to '" +
              node_types_[dst_t].name + "'");
  }

  TypedGraph g;
  g.node_types_ = node_types_;
  g.augmented_ = augmented_;
  for (std::size_t e = 0; e < link_types_.size(); ++e) {
    if (link_types_[e].source == src_t && link_types_[e].target == dst_t) continue;
    if (link_types_[e].name == "ALL") {
      raise(Status::InvalidArgument,
            "a link type named 'ALL' already exists; cannot collapse");
    }
    g.link_types_.push_back(link_types_[e]);
    g.adjacency_.push_back(adjacency_[e]);
  }
  CsrMatrix sum = adjacency_[group[0]];
  for (std::size_t i = 1; i < group.size(); ++i) {
    sum = sum.add(adjacency_[group[i]]);
  }
  g.link_types_.push_back({"ALL", src_t, dst_t});
  g.adjacency_.push_back(std::move(sum));
  return g;
}

}  // namespace hinreg
