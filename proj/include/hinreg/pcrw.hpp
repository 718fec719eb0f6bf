// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "hinreg/graph.hpp"
#include "hinreg/metapath.hpp"

namespace hinreg {

/// Endpoint distribution table of a path-constrained random walk.
///
/// Rows are source nodes of the path's first node type, columns target nodes
/// of its last node type, both including the hole at the final index. Entry
/// (s, t) is the probability that a walk started at s and constrained to the
/// meta-path ends at t; every row sums to 1 within 1e-9, with the hole
/// column absorbing dangling mass.
struct PcrwResult {
  MetaPath metapath;
  CsrMatrix table;
};

/// Computes the walk table for one meta-path on an augmented graph.
///
/// Exclusion-free paths reduce to a chained product of the per-step
/// transition matrices. Paths with exclusions are propagated per source row:
/// at a transition entering a constrained slot, the recorded forbidden node
/// is removed from the candidate set and the remaining probabilities are
/// renormalized; if nothing remains, the mass routes to the target type's
/// hole. Source rows are processed concurrently with a fixed per-row
/// reduction order, so results do not depend on scheduling.
PcrwResult pcrw(const TypedGraph& g, const MetaPath& mp);

/// Element-wise pcrw over a set, with per-link-type transition matrices
/// computed once. Results are in input order; the first failing path is
/// reported with its index.
std::vector<PcrwResult> pcrw_batch(const TypedGraph& g, const MetaPathSet& mps);

/// Exhaustive verification oracle: enumerates every concrete path that
/// satisfies the meta-path and its exclusions, summing products of per-step
/// (renormalized) transition probabilities. Independent of the matrix
/// evaluation path. Raises PathExplosion beyond path_budget explored edges.
std::vector<double> pcrw_oracle(const TypedGraph& g, const MetaPath& mp,
                                NodeId source, std::size_t path_budget = 1000000);

/// Writes a table as CSV triples `src,dst,prob`, optionally restricted to
/// one source row. Node names are optional; indices are used otherwise, and
/// holes print as "__hole__".
void dump_pcrw_csv(const PcrwResult& result, std::ostream& os,
                   const std::vector<std::string>* source_names = nullptr,
                   const std::vector<std::string>* target_names = nullptr,
                   std::optional<NodeId> source = std::nullopt);

}  // namespace hinreg
