// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hinreg/edgelist.hpp"
#include "hinreg/validate.hpp"

namespace hinreg {

/// Where a run's candidate regressors come from: bounded enumeration over
/// the schema, an explicit meta-path list, or named feature groups whose
/// member tables are aggregated into one column each.
struct CandidateSpec {
  enum class Kind { Enumerate, Paths, Features };

  struct FeatureGroup {
    std::string name;
    std::vector<std::string> paths;
  };

  Kind kind = Kind::Enumerate;
  std::size_t max_len = 4;
  std::vector<std::string> paths;
  std::vector<FeatureGroup> features;
};

struct NullSettings {
  NullMode mode = NullMode::OutDegree;
  std::size_t replicates = 15;
  std::uint64_t seed = 0;
  /// Link type names to reshuffle; empty means every link type with at
  /// least 2 edges.
  std::vector<std::string> links;
};

struct CategorySettings {
  std::string pivot_type;
  std::string file;    // node-id <TAB> category lines
  std::string anchor;  // meta-path passing through the pivot type
};

struct ExperimentConfig {
  std::string input;
  bool has_header = false;
  std::string target;
  CandidateSpec candidates;
  double alpha = 0.05;
  bool keep_holes = false;
  AggMode feature_agg = AggMode::Mean;
  bool auto_exclusions = true;
  CvConfig cv;
  NullSettings null_model;
  std::optional<CategorySettings> categories;
  std::string out_dir = "out";
};

/// Reads a JSON config. Relative input/category paths are resolved against
/// the config file's directory; out_dir stays relative to the working
/// directory. Validates that exactly one candidate source is given and that
/// alpha lies in (0, 1).
ExperimentConfig load_config(const std::string& path);

struct DescribeOutcome {
  SelectionTrace trace;
  std::vector<std::string> files;
};

struct RecoverOutcome {
  /// One report per run; category is empty for the whole-graph run. Skipped
  /// categories carry a status message instead of a report.
  struct Entry {
    std::string category;
    bool ok = false;
    std::string status;
    CvReport report;
  };
  std::vector<Entry> entries;
  std::vector<std::string> files;
};

struct NullcheckOutcome {
  struct Replicate {
    std::size_t index = 0;
    bool ok = false;
    std::string error;
    double r2 = 0.0;
    std::vector<std::string> selected;
  };

  SelectionTrace real_trace;
  std::vector<Replicate> replicates;
  double null_r2_mean = 0.0;
  double null_r2_max = 0.0;
  std::size_t significant_replicates = 0;  // replicates that selected anything
  std::vector<std::string> files;
};

/// Full-data forward selection; writes selection_trace.{csv,json} and
/// observed_vs_fitted.csv into out_dir.
DescribeOutcome run_describe(const ExperimentConfig& cfg);

/// Monte Carlo cross-validation; writes cv_report.{csv,json}. With
/// per_category the graph is divided first (anchor candidates are dropped)
/// and one report per category is written plus cv_summary.json.
RecoverOutcome run_recover(const ExperimentConfig& cfg, bool per_category);

/// The real pipeline against degree-preserving reshuffles; writes
/// nullcheck.{csv,json}. replicates_override, when set, replaces the
/// configured replicate count.
NullcheckOutcome run_nullcheck(const ExperimentConfig& cfg,
                               std::optional<std::size_t> replicates_override);

}  // namespace hinreg
