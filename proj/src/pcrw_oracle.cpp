// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive path-sum reference for pcrw(). Deliberately shares nothing
// with the matrix evaluation: it walks raw adjacency weights path by path,
// renormalizing over the allowed candidate set at every step, and never
// merges partial walks.
#include <string>
#include <vector>

#include "hinreg/error.hpp"
#include "hinreg/pcrw.hpp"

namespace hinreg {

namespace {

struct OracleContext {
  const TypedGraph* g = nullptr;
  std::vector<const CsrMatrix*> weights;  // raw adjacency per step
  std::vector<Exclusion> exclusions;
  std::vector<NodeId> path;  // concrete nodes at slots 0..n
  std::vector<double> out;
  std::size_t explored = 0;
  std::size_t budget = 0;
};

void walk(OracleContext& ctx, std::size_t slot, double prob) {
  const std::size_t n = ctx.weights.size();
  if (slot == n) {
    ctx.out[ctx.path[n]] += prob;
    return;
  }

  const CsrMatrix& w = *ctx.weights[slot];
  const NodeId at = ctx.path[slot];
  auto cols = w.row_cols(at);
  auto vals = w.row_vals(at);

  auto forbidden = [&](Index c) {
    for (const auto& ex : ctx.exclusions) {
      if (ex.banned_at == slot + 1 && ctx.path[ex.seen_at] == c) return true;
    }
    return false;
  };

  double allowed_sum = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (!forbidden(cols[i])) allowed_sum += vals[i];
  }

  if (allowed_sum <= 0.0) {
    if (++ctx.explored > ctx.budget) {
      raise(Status::PathExplosion, "oracle path budget exceeded");
    }
    ctx.path[slot + 1] = w.cols() - 1;  // hole
    walk(ctx, slot + 1, prob);
    return;
  }
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (forbidden(cols[i])) continue;
    if (++ctx.explored > ctx.budget) {
      raise(Status::PathExplosion, "oracle path budget exceeded");
    }
    ctx.path[slot + 1] = cols[i];
    walk(ctx, slot + 1, prob * vals[i] / allowed_sum);
  }
}

}  // namespace

std::vector<double> pcrw_oracle(const TypedGraph& g, const MetaPath& mp,
                                NodeId source, std::size_t path_budget) {
  if (!g.augmented()) {
    raise(Status::NotAugmented, "pcrw_oracle requires a hole-augmented graph");
  }
  const Schema schema = g.schema();
  try {
    validate_metapath(mp, schema);
  } catch (const Error& e) {
    raise(Status::SchemaMismatch, std::string("meta-path does not fit the graph: ") + e.what());
  }
  const auto slots = node_slots(mp, schema);
  if (source >= g.stored_count(slots[0])) {
    raise(Status::InvalidArgument, "oracle source " + std::to_string(source) + " out of range");
  }

  OracleContext ctx;
  ctx.g = &g;
  for (LinkTypeId e : mp.steps) ctx.weights.push_back(&g.adjacency(e));
  ctx.exclusions = mp.exclusions;
  ctx.path.assign(mp.steps.size() + 1, 0);
  ctx.path[0] = source;
  ctx.out.assign(g.stored_count(slots.back()), 0.0);
  ctx.budget = path_budget;

  walk(ctx, 0, 1.0);
  return ctx.out;
}

}  // namespace hinreg
