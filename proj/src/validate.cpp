// SPDX-License-Identifier: Apache-2.0
#include "hinreg/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "hinreg/error.hpp"

namespace hinreg {

namespace {

std::pair<double, double> mean_stddev(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

}  // namespace

CvReport monte_carlo_cv(const CsrMatrix& target,
                        std::span<const RegressorTable> candidates,
                        double alpha, const CvConfig& cfg,
                        const FitOptions& opts) {
  const Index n_sources = target.rows() - 1;  // hole excluded
  if (n_sources < 2) {
    raise(Status::InvalidArgument, "cross-validation needs at least 2 real sources");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    raise(Status::InvalidArgument, "train_fraction must lie in (0, 1)");
  }
  if (cfg.n_splits < 1) raise(Status::InvalidArgument, "n_splits must be >= 1");

  const auto n_train = static_cast<Index>(std::ceil(
      cfg.train_fraction * static_cast<double>(n_sources)));
  if (n_train == 0 || n_train >= n_sources) {
    raise(Status::InvalidArgument,
          "train_fraction " + std::to_string(cfg.train_fraction) + " leaves " +
              std::to_string(n_sources - n_train) + " of " +
              std::to_string(n_sources) + " sources for testing");
  }

  CvReport report;
  report.splits.resize(cfg.n_splits);
  std::vector<double> train_scores;
  std::vector<double> test_scores;

  for (std::size_t s = 0; s < cfg.n_splits; ++s) {
    CvSplit& split = report.splits[s];
    split.split = s;

    // Independent stream per split keeps splits order-insensitive.
    std::mt19937_64 rng(cfg.rng_seed + s);
    std::vector<NodeId> ids(n_sources);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    for (Index i = 0; i < n_train; ++i) {
      std::uniform_int_distribution<Index> pick(i, n_sources - 1);
      std::swap(ids[i], ids[pick(rng)]);
    }
    split.train_sources.assign(ids.begin(), ids.begin() + n_train);
    split.test_sources.assign(ids.begin() + n_train, ids.end());
    std::sort(split.train_sources.begin(), split.train_sources.end());
    std::sort(split.test_sources.begin(), split.test_sources.end());

    const SelectionTrace trace =
        forward_select(target, candidates, split.train_sources, alpha, opts);
    split.train_r2 = trace.final_fit().r2;
    std::vector<RegressorTable> chosen;
    for (std::size_t c : trace.selected) {
      chosen.push_back(candidates[c]);
      split.selected.push_back(candidates[c].name);
    }
    split.beta = trace.final_fit().beta;

    const DesignMatrix test_design =
        assemble_design(target, chosen, split.test_sources, opts);
    try {
      split.test_r2 = frozen_r2(test_design, trace.final_fit());
    } catch (const Error& e) {
      if (e.code() != Status::DegenerateSplit) throw;
      split.degenerate = true;
      ++report.degenerate_count;
      continue;
    }
    train_scores.push_back(split.train_r2);
    test_scores.push_back(split.test_r2);
  }

  if (report.degenerate_count == cfg.n_splits) {
    raise(Status::DegenerateSplit,
          "every split had a constant test response; no score can be formed");
  }
  std::tie(report.train_r2_mean, report.train_r2_stddev) = mean_stddev(train_scores);
  std::tie(report.test_r2_mean, report.test_r2_stddev) = mean_stddev(test_scores);
  return report;
}

CvReport monte_carlo_cv(const TypedGraph& g, LinkTypeId target_link,
                        const MetaPathSet& candidates, double alpha,
                        const CvConfig& cfg, const FitOptions& opts) {
  const Schema schema = g.schema();
  const PcrwResult target = pcrw(g, MetaPath{{target_link}, {}});
  const auto tables = pcrw_batch(g, candidates);
  std::vector<RegressorTable> regs;
  regs.reserve(tables.size());
  for (const auto& t : tables) {
    regs.push_back({format_metapath(t.metapath, schema), t.table});
  }
  return monte_carlo_cv(target.table, regs, alpha, cfg, opts);
}

TypedGraph null_model(const TypedGraph& g, LinkTypeId link, NullMode mode,
                      std::uint64_t rng_seed) {
  if (g.augmented()) {
    raise(Status::AlreadyAugmented, "reshuffle the raw graph, before augmentation");
  }
  const auto& lt = g.link_type(link);
  const auto& w = g.adjacency(link);
  if (w.nnz() < 2) {
    raise(Status::TooFewEdges,
          "link type '" + lt.name + "' has " + std::to_string(w.nnz()) +
              " edges; reshuffling needs at least 2");
  }

  struct Edge {
    NodeId src;
    NodeId dst;
    double weight;
  };
  std::vector<Edge> edges;
  edges.reserve(w.nnz());
  for (Index r = 0; r < w.rows(); ++r) {
    auto cols = w.row_cols(r);
    auto vals = w.row_vals(r);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      edges.push_back({r, cols[i], vals[i]});
    }
  }

  std::mt19937_64 rng(rng_seed);
  std::set<std::pair<NodeId, NodeId>> present;

  if (mode == NullMode::OutDegree) {
    // Permute the target endpoints across edge slots, then repair the rare
    // collisions by extra swaps so per-source edge counts stay exact.
    for (std::size_t i = edges.size(); i-- > 1;) {
      std::uniform_int_distribution<std::size_t> pick(0, i);
      std::swap(edges[i].dst, edges[pick(rng)].dst);
    }
    for (const auto& e : edges) present.insert({e.src, e.dst});
    std::size_t attempts = 20 * edges.size();
    bool collided = present.size() < edges.size();
    while (collided && attempts-- > 0) {
      collided = false;
      present.clear();
      for (auto& e : edges) {
        if (!present.insert({e.src, e.dst}).second) {
          std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
          std::swap(e.dst, edges[pick(rng)].dst);
          collided = true;
        }
      }
    }
    // Any leftover duplicates merge additively when the matrix is rebuilt.
  } else {
    for (const auto& e : edges) present.insert({e.src, e.dst});
    const std::size_t attempts = 10 * edges.size();
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    for (std::size_t a = 0; a < attempts; ++a) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i == j) continue;
      Edge& ei = edges[i];
      Edge& ej = edges[j];
      if (ei.src == ej.src || ei.dst == ej.dst) continue;
      if (present.count({ei.src, ej.dst}) || present.count({ej.src, ei.dst})) continue;
      present.erase({ei.src, ei.dst});
      present.erase({ej.src, ej.dst});
      std::swap(ei.dst, ej.dst);
      present.insert({ei.src, ei.dst});
      present.insert({ej.src, ej.dst});
    }
  }

  std::vector<NodeTypeDecl> node_types;
  for (std::size_t t = 0; t < g.node_type_count(); ++t) {
    node_types.push_back(g.node_type(static_cast<NodeTypeId>(t)));
  }
  std::vector<LinkTypeDecl> link_types;
  for (std::size_t e = 0; e < g.link_type_count(); ++e) {
    link_types.push_back(g.link_type(static_cast<LinkTypeId>(e)));
  }
  std::vector<WeightedEdge> all_edges;
  for (std::size_t e = 0; e < g.link_type_count(); ++e) {
    if (e == link) {
      for (const auto& edge : edges) {
        all_edges.push_back({link, edge.src, edge.dst, edge.weight});
      }
      continue;
    }
    const auto& m = g.adjacency(static_cast<LinkTypeId>(e));
    for (Index r = 0; r < m.rows(); ++r) {
      auto cols = m.row_cols(r);
      auto vals = m.row_vals(r);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        all_edges.push_back({static_cast<LinkTypeId>(e), r, cols[i], vals[i]});
      }
    }
  }
  return TypedGraph::build(std::move(node_types), std::move(link_types), all_edges);
}

std::vector<CategorySubgraph> divide_by_category(
    const TypedGraph& g, NodeTypeId pivot_type,
    const std::map<NodeId, std::string>& category_of, const MetaPath& anchor) {
  if (g.augmented()) {
    raise(Status::AlreadyAugmented, "divide the raw graph, before augmentation");
  }
  const Schema schema = g.schema();
  validate_metapath(anchor, schema);
  const auto slots = node_slots(anchor, schema);

  std::size_t pivot_slot = slots.size();
  for (std::size_t i = 1; i + 1 < slots.size(); ++i) {
    if (slots[i] == pivot_type) {
      pivot_slot = i;
      break;
    }
  }
  if (pivot_slot == slots.size()) {
    raise(Status::PivotNotOnPath,
          "anchor meta-path does not pass through node type '" +
              g.node_type(pivot_type).name + "' at an interior slot");
  }

  const Index n_pivot = g.real_count(pivot_type);
  for (NodeId v = 0; v < n_pivot; ++v) {
    auto it = category_of.find(v);
    if (it == category_of.end() || it->second.empty()) {
      raise(Status::UncategorizedNode,
            "pivot node " + std::to_string(v) + " of type '" +
                g.node_type(pivot_type).name + "' has no category");
    }
  }

  std::vector<std::string> categories;
  for (const auto& [node, cat] : category_of) {
    if (node < n_pivot) categories.push_back(cat);
  }
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()), categories.end());

  const std::size_t n_types = g.node_type_count();
  std::vector<CategorySubgraph> out;
  out.reserve(categories.size());

  for (const auto& cat : categories) {
    // Kept node sets per type, as flags.
    std::vector<std::vector<char>> keep(n_types);
    for (std::size_t t = 0; t < n_types; ++t) {
      keep[t].assign(g.real_count(static_cast<NodeTypeId>(t)), 0);
    }
    std::vector<char> on_path(n_types, 0);
    for (NodeTypeId t : slots) on_path[t] = 1;

    for (NodeId v = 0; v < n_pivot; ++v) {
      if (category_of.at(v) == cat) keep[pivot_type][v] = 1;
    }

    // Walk the anchor outward from the pivot slot, collecting the nodes that
    // can reach (or be reached from) the kept set through each step.
    std::vector<std::vector<char>> slot_keep(slots.size());
    slot_keep[pivot_slot] = keep[pivot_type];
    for (std::size_t q = pivot_slot; q-- > 0;) {
      const auto& w = g.adjacency(anchor.steps[q]);  // step q+1: slot q -> q+1
      slot_keep[q].assign(g.real_count(slots[q]), 0);
      for (Index r = 0; r < w.rows(); ++r) {
        for (Index c : w.row_cols(r)) {
          if (slot_keep[q + 1][c]) {
            slot_keep[q][r] = 1;
            break;
          }
        }
      }
    }
    for (std::size_t q = pivot_slot + 1; q < slots.size(); ++q) {
      const auto& w = g.adjacency(anchor.steps[q - 1]);
      slot_keep[q].assign(g.real_count(slots[q]), 0);
      for (Index r = 0; r < w.rows(); ++r) {
        if (!slot_keep[q - 1][r]) continue;
        for (Index c : w.row_cols(r)) slot_keep[q][c] = 1;
      }
    }
    for (std::size_t q = 0; q < slots.size(); ++q) {
      for (Index v = 0; v < slot_keep[q].size(); ++v) {
        if (slot_keep[q][v]) keep[slots[q]][v] = 1;
      }
    }

    // Types off the anchor keep whatever is reachable from the kept core
    // without passing through a dropped on-path node.
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t e = 0; e < g.link_type_count(); ++e) {
        const auto& lt = g.link_type(static_cast<LinkTypeId>(e));
        if (on_path[lt.source] && on_path[lt.target]) continue;
        const auto& w = g.adjacency(static_cast<LinkTypeId>(e));
        for (Index r = 0; r < w.rows(); ++r) {
          for (Index c : w.row_cols(r)) {
            const bool sk = keep[lt.source][r];
            const bool tk = keep[lt.target][c];
            if (sk && !tk && !on_path[lt.target]) {
              keep[lt.target][c] = 1;
              grew = true;
            } else if (tk && !sk && !on_path[lt.source]) {
              keep[lt.source][r] = 1;
              grew = true;
            }
          }
        }
      }
    }

    CategorySubgraph sub;
    sub.category = cat;
    sub.kept.resize(n_types);
    std::vector<std::vector<NodeId>> remap(n_types);
    std::vector<NodeTypeDecl> node_types;
    for (std::size_t t = 0; t < n_types; ++t) {
      remap[t].assign(g.real_count(static_cast<NodeTypeId>(t)),
                      static_cast<NodeId>(-1));
      for (Index v = 0; v < keep[t].size(); ++v) {
        if (keep[t][v]) {
          remap[t][v] = static_cast<NodeId>(sub.kept[t].size());
          sub.kept[t].push_back(v);
        }
      }
      node_types.push_back({g.node_type(static_cast<NodeTypeId>(t)).name,
                            static_cast<Index>(sub.kept[t].size())});
    }
    std::vector<LinkTypeDecl> link_types;
    std::vector<WeightedEdge> edges;
    for (std::size_t e = 0; e < g.link_type_count(); ++e) {
      const auto& lt = g.link_type(static_cast<LinkTypeId>(e));
      link_types.push_back(lt);
      const auto& w = g.adjacency(static_cast<LinkTypeId>(e));
      for (Index r = 0; r < w.rows(); ++r) {
        if (remap[lt.source][r] == static_cast<NodeId>(-1)) continue;
        auto cols = w.row_cols(r);
        auto vals = w.row_vals(r);
        for (std::size_t i = 0; i < cols.size(); ++i) {
          if (remap[lt.target][cols[i]] == static_cast<NodeId>(-1)) continue;
          edges.push_back({static_cast<LinkTypeId>(e), remap[lt.source][r],
                           remap[lt.target][cols[i]], vals[i]});
        }
      }
    }
    sub.graph = TypedGraph::build(std::move(node_types), std::move(link_types), edges);
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace hinreg
