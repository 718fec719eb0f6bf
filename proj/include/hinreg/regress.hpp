// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hinreg/pcrw.hpp"

namespace hinreg {

/// A named regression column backed by a walk table (a real PCRW result or
/// an aggregate feature built from several of them).
struct RegressorTable {
  std::string name;
  CsrMatrix table;
};

struct FitOptions {
  bool intercept = true;
  /// Drop the hole target column from the response and regressors.
  bool drop_holes = true;
  /// Forward selection stops when the best admissible candidate improves
  /// r^2 by less than this.
  double min_improvement = 1e-12;
  /// Condition estimate above which the design is declared singular.
  double condition_limit = 1e12;
};

/// Stacked least-squares problem. Rows cover the chosen source nodes times
/// the retained target columns; the intercept column is implicit.
struct DesignMatrix {
  std::size_t n_rows = 0;
  bool intercept = true;
  std::vector<double> y;
  std::vector<std::string> names;           // one per regressor column
  std::vector<std::vector<double>> columns; // regressor columns, no intercept
  std::vector<std::pair<NodeId, NodeId>> row_index;  // (source, target) per row
};

struct FitResult {
  /// Coefficients, intercept first when present.
  std::vector<double> beta;
  /// Two-sided p-values per non-intercept coefficient, in column order.
  std::vector<double> p_values;
  /// Standard errors per non-intercept coefficient, in column order.
  std::vector<double> std_errors;
  double r2 = 0.0;
  double rss = 0.0;
  double tss = 0.0;
  std::size_t dof = 0;
  /// Ratio of extreme diagonal magnitudes of the triangular factor.
  double condition = 0.0;

  double intercept_value(const DesignMatrix& d) const {
    return d.intercept ? beta.front() : 0.0;
  }
};

enum class StopReason {
  NoCandidate,            // nothing left to try
  NoImprovement,          // best admissible candidate does not raise r^2
  SignificanceViolation,  // no candidate keeps every coefficient significant
};

const char* stop_reason_name(StopReason r);

struct SelectionStep {
  std::size_t candidate = 0;  // index into the candidate list
  std::string name;
  FitResult fit;
};

struct SelectionTrace {
  FitResult null_fit;  // intercept-only model
  std::vector<SelectionStep> steps;
  std::vector<std::size_t> selected;  // candidate indices in selection order
  StopReason stop_reason = StopReason::NoCandidate;

  const FitResult& final_fit() const {
    return steps.empty() ? null_fit : steps.back().fit;
  }
};

/// Stacks the response and regressor tables into a design matrix. All tables
/// must share their shape; the hole source row is always dropped and the
/// hole target column is dropped iff opts.drop_holes. Sources appear in
/// subset order, targets in ascending order within each source.
DesignMatrix assemble_design(const CsrMatrix& target,
                             std::span<const RegressorTable> regressors,
                             std::span<const NodeId> source_subset,
                             const FitOptions& opts);

/// Ordinary least squares through column-pivoted Householder QR, with
/// coefficient p-values from two-sided t-tests and r^2 = 1 - RSS/TSS (TSS
/// centered on the response mean). Raises Underdetermined when rows do not
/// exceed columns and Singular on rank deficiency or when the condition
/// estimate exceeds the limit, naming the offending column.
FitResult ols(const DesignMatrix& d, double condition_limit = 1e12);

/// Greedy forward selection: starting from the intercept-only model, each
/// round adds the candidate that maximizes r^2 subject to every coefficient
/// in the resulting model having p <= alpha. Equal r^2 breaks ties toward
/// the earliest candidate; candidates that make the design singular are
/// skipped. Stops when no admissible candidate improves r^2.
SelectionTrace forward_select(const CsrMatrix& target,
                              std::span<const RegressorTable> candidates,
                              std::span<const NodeId> source_subset,
                              double alpha, const FitOptions& opts);

/// Convenience overload evaluating the walk tables first: the response is
/// the single-step walk on target_link and the candidates are computed with
/// pcrw_batch.
SelectionTrace forward_select(const TypedGraph& g, LinkTypeId target_link,
                              const MetaPathSet& candidates,
                              std::span<const NodeId> source_subset,
                              double alpha, const FitOptions& opts);

enum class AggMode { Mean, Sum };

/// Combines member tables entry-wise into one feature column. Mean keeps
/// each row a probability distribution; Sum is available behind the flag.
RegressorTable aggregate_feature(std::string name,
                                 std::span<const CsrMatrix* const> members,
                                 AggMode mode = AggMode::Mean);

/// Fitted values of a frozen model over a design (no refit).
std::vector<double> predict(const DesignMatrix& d, const FitResult& fit);

/// Out-of-sample fit quality: 1 - RSS/TSS with TSS centered on the given
/// design's own response mean. Raises DegenerateSplit when TSS is zero.
double frozen_r2(const DesignMatrix& d, const FitResult& fit);

/// All real source node ids of a table (every row except the hole).
std::vector<NodeId> all_real_sources(const CsrMatrix& table);

std::string selection_trace_to_json(const SelectionTrace& trace, double alpha);
std::string selection_trace_to_csv(const SelectionTrace& trace);

}  // namespace hinreg
