// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include "hinreg/edgelist.hpp"
#include "hinreg/graph.hpp"
#include "hinreg/metapath.hpp"

namespace hinreg::testing {

/// Four users and four hashtags joined by reply (RP) and posting (UH) links.
/// u2's walk distributions are known in closed form: UH gives (1/2, 1/2, 0, 0),
/// RP-UH gives (1/3, 1/3, 1/3, 0) and RP-RP-UH with the return ban gives
/// (0, 0, 1/2, 1/2).
inline LoadedGraph reply_fixture() {
  LoadedGraph out;
  std::vector<NodeTypeDecl> nodes = {{"user", 4}, {"hashtag", 4}};
  std::vector<LinkTypeDecl> links = {{"RP", 0, 0}, {"UH", 0, 1}};
  std::vector<WeightedEdge> edges = {
      {0, 1, 0, 1.0},                                  // u2 -> u1
      {0, 0, 1, 1.0}, {0, 0, 2, 1.0}, {0, 0, 3, 1.0},  // u1 -> u2,u3,u4
      {1, 0, 0, 1.0}, {1, 0, 1, 1.0}, {1, 0, 2, 1.0},  // u1 posts h1,h2,h3
      {1, 1, 0, 1.0}, {1, 1, 1, 1.0},                  // u2 posts h1,h2
      {1, 2, 2, 1.0},                                  // u3 posts h3
      {1, 3, 3, 1.0},                                  // u4 posts h4
  };
  out.graph = TypedGraph::build(nodes, links, edges);
  out.node_names = {{"u1", "u2", "u3", "u4"}, {"h1", "h2", "h3", "h4"}};
  return out;
}

/// Five authors, four papers, two venues, three topics with binary
/// write/cite/publish/belong links; the row-stochastic matrices after
/// augmentation are known entry by entry (p3 cites nothing, so its citation
/// row points at the hole).
inline LoadedGraph biblio_fixture() {
  LoadedGraph out;
  std::vector<NodeTypeDecl> nodes = {
      {"author", 5}, {"paper", 4}, {"venue", 2}, {"topic", 3}};
  std::vector<LinkTypeDecl> links = {
      {"AP", 0, 1}, {"PP", 1, 1}, {"PV", 1, 2}, {"PT", 1, 3}};
  std::vector<WeightedEdge> edges;
  auto ap = [&](NodeId a, NodeId p) { edges.push_back({0, a, p, 1.0}); };
  auto pp = [&](NodeId p, NodeId q) { edges.push_back({1, p, q, 1.0}); };
  auto pv = [&](NodeId p, NodeId v) { edges.push_back({2, p, v, 1.0}); };
  auto pt = [&](NodeId p, NodeId t) { edges.push_back({3, p, t, 1.0}); };
  ap(0, 0);
  ap(1, 0), ap(1, 1);
  ap(2, 0), ap(2, 2);
  ap(3, 1), ap(3, 2), ap(3, 3);
  ap(4, 2), ap(4, 3);
  pp(0, 1), pp(0, 2);
  pp(1, 2);
  pp(3, 2);
  pv(0, 0), pv(1, 0), pv(2, 0), pv(3, 1);
  pt(0, 0), pt(1, 0), pt(2, 1), pt(3, 2);
  out.graph = TypedGraph::build(nodes, links, edges);
  out.node_names = {{"a1", "a2", "a3", "a4", "a5"},
                    {"p1", "p2", "p3", "p4"},
                    {"v1", "v2"},
                    {"t1", "t2", "t3"}};
  return out;
}

/// Planted community graph: 6 communities of 10 users, 4 hashtags each.
/// Users post their community's hashtags (a flat base profile plus a small
/// per-user jitter whose column sums are exactly zero, so no hashtag is
/// globally more popular than another) and interact mostly inside the
/// community: RT to three neighbours, RP to two, MT to one arbitrary user
/// anywhere. Neighbour hashtag mixes therefore approximate a user's own
/// distribution, while a degree-preserving reshuffle leaves nothing to
/// regress on, not even a popularity signal.
inline LoadedGraph community_fixture() {
  constexpr int kCommunities = 6;
  constexpr int kUsersPer = 40;
  constexpr int kTagsPer = 4;
  constexpr int kUsers = kCommunities * kUsersPer;

  LoadedGraph out;
  std::vector<NodeTypeDecl> nodes = {
      {"user", kUsers}, {"hashtag", kCommunities * kTagsPer}};
  std::vector<LinkTypeDecl> links = {
      {"RT", 0, 0}, {"RP", 0, 0}, {"MT", 0, 0}, {"UH", 0, 1}};
  std::vector<WeightedEdge> edges;

  for (int u = 0; u < kUsers; ++u) {
    const int c = u / kUsersPer;
    const int l = u % kUsersPer;
    auto same = [&](int offset) {
      return static_cast<NodeId>(c * kUsersPer + (l + offset) % kUsersPer);
    };
    const double rt_w = 1.0 + (u % 2);
    edges.push_back({0, static_cast<NodeId>(u), same(1), rt_w});
    edges.push_back({0, static_cast<NodeId>(u), same(3), rt_w});
    edges.push_back({0, static_cast<NodeId>(u), same(7), 1.0});
    edges.push_back({1, static_cast<NodeId>(u), same(2), 1.0});
    edges.push_back({1, static_cast<NodeId>(u), same(6), 1.0});
    edges.push_back({2, static_cast<NodeId>(u),
                     static_cast<NodeId>((u * 7 + 13) % kUsers), 1.0});
    for (int t = 0; t < kTagsPer; ++t) {
      const int h = c * kTagsPer + t;
      // (u + 7h) mod 5 is uniform over u for any fixed h (the community size
      // is a multiple of 5), so each hashtag's total weight is exactly
      // kUsersPer * 1.0. No neighbour offset is divisible by 5, so no user
      // sees its own jitter pattern through a neighbour.
      const double w = 1.0 + 0.1 * (((u + 7 * h) % 5) - 2);
      edges.push_back({3, static_cast<NodeId>(u), static_cast<NodeId>(h), w});
    }
  }
  out.graph = TypedGraph::build(nodes, links, edges);
  out.node_names.resize(2);
  for (int u = 0; u < kUsers; ++u) {
    out.node_names[0].push_back("u" + std::to_string(u));
  }
  for (int h = 0; h < kCommunities * kTagsPer; ++h) {
    out.node_names[1].push_back("h" + std::to_string(h));
  }
  return out;
}

/// Bibliographic network with explicit inverse link types and a
/// co-authorship link type whose weights count shared papers. Three topics,
/// each with its own authors, papers and venue; papers carry exactly one
/// topic, so per-topic division partitions them.
inline LoadedGraph biblio_cv_fixture() {
  constexpr int kTopics = 3;
  constexpr int kPapersPer = 10;
  constexpr int kAuthorsPer = 8;
  constexpr int kPapers = kTopics * kPapersPer;
  constexpr int kAuthors = kTopics * kAuthorsPer;

  LoadedGraph out;
  std::vector<NodeTypeDecl> nodes = {{"author", kAuthors},
                                     {"paper", kPapers},
                                     {"venue", kTopics},
                                     {"topic", kTopics}};
  std::vector<LinkTypeDecl> links = {
      {"CoAuth", 0, 0}, {"AP", 0, 1}, {"PA", 1, 0}, {"PP", 1, 1},
      {"PPi", 1, 1},    {"PV", 1, 2}, {"VP", 2, 1}, {"PT", 1, 3},
      {"TP", 3, 1}};
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<double>> coauth(kAuthors, std::vector<double>(kAuthors, 0.0));

  for (int c = 0; c < kTopics; ++c) {
    for (int i = 0; i < kPapersPer; ++i) {
      const NodeId p = static_cast<NodeId>(c * kPapersPer + i);
      const NodeId writers[3] = {
          static_cast<NodeId>(c * kAuthorsPer + i % kAuthorsPer),
          static_cast<NodeId>(c * kAuthorsPer + (i + 1) % kAuthorsPer),
          static_cast<NodeId>(c * kAuthorsPer + (i + 3) % kAuthorsPer)};
      for (NodeId a : writers) {
        edges.push_back({1, a, p, 1.0});
        edges.push_back({2, p, a, 1.0});
      }
      for (NodeId a : writers) {
        for (NodeId b : writers) {
          if (a != b) coauth[a][b] += 1.0;
        }
      }
      const NodeId cites[2] = {static_cast<NodeId>(c * kPapersPer + (i + 1) % kPapersPer),
                               static_cast<NodeId>(c * kPapersPer + (i + 2) % kPapersPer)};
      for (NodeId q : cites) {
        edges.push_back({3, p, q, 1.0});
        edges.push_back({4, q, p, 1.0});
      }
      edges.push_back({5, p, static_cast<NodeId>(c), 1.0});
      edges.push_back({6, static_cast<NodeId>(c), p, 1.0});
      edges.push_back({7, p, static_cast<NodeId>(c), 1.0});
      edges.push_back({8, static_cast<NodeId>(c), p, 1.0});
    }
  }
  for (int a = 0; a < kAuthors; ++a) {
    for (int b = 0; b < kAuthors; ++b) {
      if (coauth[a][b] > 0.0) {
        edges.push_back({0, static_cast<NodeId>(a), static_cast<NodeId>(b),
                         coauth[a][b]});
      }
    }
  }

  out.graph = TypedGraph::build(nodes, links, edges);
  out.node_names.resize(4);
  for (int a = 0; a < kAuthors; ++a) out.node_names[0].push_back("a" + std::to_string(a));
  for (int p = 0; p < kPapers; ++p) out.node_names[1].push_back("p" + std::to_string(p));
  for (int v = 0; v < kTopics; ++v) out.node_names[2].push_back("v" + std::to_string(v));
  for (int t = 0; t < kTopics; ++t) out.node_names[3].push_back("t" + std::to_string(t));
  return out;
}

/// Random typed graph for property tests. Dangling rows are common by
/// construction so hole handling is always exercised.
inline TypedGraph random_hin(std::mt19937_64& rng, Index max_nodes_per_type = 12,
                             std::size_t max_link_types = 4) {
  std::uniform_int_distribution<int> n_types_d(2, 3);
  const int n_types = n_types_d(rng);
  std::vector<NodeTypeDecl> nodes;
  std::uniform_int_distribution<Index> count_d(3, max_nodes_per_type);
  for (int t = 0; t < n_types; ++t) {
    nodes.push_back({"T" + std::to_string(t), count_d(rng)});
  }

  std::uniform_int_distribution<std::size_t> n_links_d(2, max_link_types);
  const std::size_t n_links = n_links_d(rng);
  std::vector<LinkTypeDecl> links;
  std::uniform_int_distribution<NodeTypeId> type_d(0, static_cast<NodeTypeId>(n_types - 1));
  for (std::size_t e = 0; e < n_links; ++e) {
    links.push_back({"L" + std::to_string(e), type_d(rng), type_d(rng)});
  }

  std::vector<WeightedEdge> edges;
  std::uniform_real_distribution<double> weight_d(0.25, 4.0);
  std::uniform_int_distribution<int> degree_d(0, 4);
  for (std::size_t e = 0; e < n_links; ++e) {
    const Index n_src = nodes[links[e].source].count;
    const Index n_dst = nodes[links[e].target].count;
    std::uniform_int_distribution<Index> dst_d(0, n_dst - 1);
    for (Index s = 0; s < n_src; ++s) {
      const int degree = degree_d(rng);
      for (int k = 0; k < degree; ++k) {
        edges.push_back({static_cast<LinkTypeId>(e), s, dst_d(rng), weight_d(rng)});
      }
    }
  }
  return TypedGraph::build(nodes, links, edges);
}

/// Random chain-compatible meta-path over the schema, or empty steps when
/// the schema has no walk of the requested length.
inline MetaPath random_metapath(const Schema& schema, std::mt19937_64& rng,
                                std::size_t length) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    MetaPath mp;
    std::uniform_int_distribution<std::size_t> first_d(0, schema.link_types.size() - 1);
    LinkTypeId step = static_cast<LinkTypeId>(first_d(rng));
    mp.steps.push_back(step);
    NodeTypeId at = schema.link_types[step].target;
    bool dead = false;
    while (mp.steps.size() < length) {
      std::vector<LinkTypeId> options;
      for (std::size_t e = 0; e < schema.link_types.size(); ++e) {
        if (schema.link_types[e].source == at) {
          options.push_back(static_cast<LinkTypeId>(e));
        }
      }
      if (options.empty()) {
        dead = true;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      step = options[pick(rng)];
      mp.steps.push_back(step);
      at = schema.link_types[step].target;
    }
    if (!dead) return mp;
  }
  return {};
}

}  // namespace hinreg::testing
