// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinreg/regress.hpp"

namespace hinreg {

struct CvConfig {
  double train_fraction = 0.8;
  std::size_t n_splits = 10;
  std::uint64_t rng_seed = 0;
};

struct CvSplit {
  std::size_t split = 0;
  std::vector<NodeId> train_sources;  // ascending
  std::vector<NodeId> test_sources;   // ascending, complement of train
  double train_r2 = 0.0;
  double test_r2 = 0.0;
  std::vector<std::string> selected;  // regressor names, selection order
  std::vector<double> beta;           // intercept first
  bool degenerate = false;            // test response had zero variance
};

struct CvReport {
  std::vector<CvSplit> splits;
  double train_r2_mean = 0.0;
  double train_r2_stddev = 0.0;
  double test_r2_mean = 0.0;
  double test_r2_stddev = 0.0;
  std::size_t degenerate_count = 0;
};

/// Repeated random sub-sampling validation over source nodes.
///
/// Each split samples ceil(train_fraction * n) of the real sources without
/// replacement (the hole never participates), runs forward selection on the
/// training rows, and scores the frozen model on the held-out rows with TSS
/// centered on the test mean (out-of-sample r^2 may be negative). Split i
/// draws from an independent stream seeded with rng_seed + i, so reports are
/// bit-identical for a fixed seed. A split whose test response is constant
/// is flagged degenerate and excluded from the aggregates; if every split
/// degenerates, DegenerateSplit is raised.
CvReport monte_carlo_cv(const CsrMatrix& target,
                        std::span<const RegressorTable> candidates,
                        double alpha, const CvConfig& cfg,
                        const FitOptions& opts);

/// Convenience overload: the response is the single-step walk on
/// target_link; candidate tables are computed with pcrw_batch.
CvReport monte_carlo_cv(const TypedGraph& g, LinkTypeId target_link,
                        const MetaPathSet& candidates, double alpha,
                        const CvConfig& cfg, const FitOptions& opts);

enum class NullMode {
  /// Randomly permute target endpoints across the link type's edges:
  /// preserves each source's out-degree and the per-edge weight multiset.
  OutDegree,
  /// Degree-preserving double-edge swaps (10 * |E| attempts): preserves both
  /// the in- and the out-degree sequence.
  InOutDegree,
};

/// Degree-preserving reshuffle of one link type; all other link types are
/// untouched. Operates on the raw graph, before hole augmentation.
/// Deterministic for a fixed seed. Raises TooFewEdges below 2 edges.
TypedGraph null_model(const TypedGraph& g, LinkTypeId link, NullMode mode,
                      std::uint64_t rng_seed);

/// One per-category sub-HIN produced by divide_by_category.
struct CategorySubgraph {
  std::string category;
  TypedGraph graph;
  /// Original node ids kept per node type, ascending; positions give the
  /// sub-HIN's new indices.
  std::vector<std::vector<NodeId>> kept;
};

/// Splits a raw graph into per-category sub-HINs around a pivot node type.
///
/// The anchor meta-path must pass through the pivot type at an interior
/// slot. For each category: pivot nodes of that category are kept, node sets
/// at the other anchor slots are propagated outward through the anchor's
/// steps, types off the anchor keep nodes reachable from the kept core, and
/// every link type is restricted to its induced edges. Categories with no
/// pivot nodes yield empty sub-HINs rather than errors. Output order is
/// lexicographic by category name.
std::vector<CategorySubgraph> divide_by_category(
    const TypedGraph& g, NodeTypeId pivot_type,
    const std::map<NodeId, std::string>& category_of, const MetaPath& anchor);

std::string cv_report_to_json(const CvReport& report, const CvConfig& cfg);
std::string cv_report_to_csv(const CvReport& report);

}  // namespace hinreg
