// SPDX-License-Identifier: Apache-2.0
#include "hinreg/pcrw.hpp"

#include <iomanip>
#include <map>
#include <string>

#include "hinreg/error.hpp"
#include "parallel.hpp"

namespace hinreg {

namespace {

constexpr NodeId kNoRecord = static_cast<NodeId>(-1);

void check_inputs(const TypedGraph& g, const MetaPath& mp) {
  if (!g.augmented()) {
    raise(Status::NotAugmented, "pcrw requires a hole-augmented graph");
  }
  try {
    validate_metapath(mp, g.schema());
  } catch (const Error& e) {
    raise(Status::SchemaMismatch, std::string("meta-path does not fit the graph: ") + e.what());
  }
}

/// Recorded walk position plus the pending exclusion references. One entry
/// per exclusion, kNoRecord while outside the [seen_at, banned_at) window.
struct WalkState {
  NodeId node = 0;
  std::vector<NodeId> recorded;

  bool operator<(const WalkState& o) const {
    if (node != o.node) return node < o.node;
    return recorded < o.recorded;
  }
};

/// One source row of an exclusion-bearing walk, slot by slot. States are
/// keyed on (node, recorded) so paths that differ only in already-consumed
/// constraints merge; map ordering fixes the reduction order.
std::vector<double> propagate_row(const std::vector<const CsrMatrix*>& steps,
                                  const std::vector<Exclusion>& exclusions,
                                  NodeId source) {
  std::map<WalkState, double> states;
  {
    WalkState init{source, std::vector<NodeId>(exclusions.size(), kNoRecord)};
    for (std::size_t e = 0; e < exclusions.size(); ++e) {
      if (exclusions[e].seen_at == 0) init.recorded[e] = source;
    }
    states.emplace(std::move(init), 1.0);
  }

  const std::size_t n = steps.size();
  for (std::size_t j = 1; j <= n; ++j) {
    const CsrMatrix& s = *steps[j - 1];
    const Index hole_col = s.cols() - 1;
    std::map<WalkState, double> next;

    auto push = [&](const WalkState& from, Index target, double mass) {
      WalkState key{target, from.recorded};
      for (std::size_t e = 0; e < exclusions.size(); ++e) {
        if (exclusions[e].banned_at == j) key.recorded[e] = kNoRecord;
        if (exclusions[e].seen_at == j) key.recorded[e] = target;
      }
      next[std::move(key)] += mass;
    };

    for (const auto& [st, prob] : states) {
      auto cols = s.row_cols(st.node);
      auto vals = s.row_vals(st.node);

      bool constrained = false;
      for (std::size_t e = 0; e < exclusions.size(); ++e) {
        if (exclusions[e].banned_at == j) constrained = true;
      }
      if (!constrained) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          push(st, cols[i], prob * vals[i]);
        }
        continue;
      }

      auto forbidden = [&](Index c) {
        for (std::size_t e = 0; e < exclusions.size(); ++e) {
          if (exclusions[e].banned_at == j && st.recorded[e] == c) return true;
        }
        return false;
      };
      double allowed_sum = 0.0;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (!forbidden(cols[i])) allowed_sum += vals[i];
      }
      if (allowed_sum <= 0.0) {
        // The forbidden node was the sole candidate; route to the hole.
        push(st, hole_col, prob);
      } else {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          if (!forbidden(cols[i])) push(st, cols[i], prob * vals[i] / allowed_sum);
        }
      }
    }
    states = std::move(next);
  }

  std::vector<double> out(steps.back()->cols(), 0.0);
  for (const auto& [st, prob] : states) out[st.node] += prob;
  return out;
}

PcrwResult pcrw_with_cache(const TypedGraph& g, const MetaPath& mp,
                           std::vector<std::optional<CsrMatrix>>& cache) {
  check_inputs(g, mp);

  std::vector<const CsrMatrix*> steps;
  steps.reserve(mp.steps.size());
  for (LinkTypeId e : mp.steps) {
    if (!cache[e]) cache[e] = g.stochastic(e);
    steps.push_back(&*cache[e]);
  }

  if (mp.exclusions.empty()) {
    CsrMatrix table = *steps[0];
    for (std::size_t i = 1; i < steps.size(); ++i) {
      table = table.multiply(*steps[i]);
    }
    return {mp, std::move(table)};
  }

  const Index rows = steps.front()->rows();
  std::vector<std::vector<double>> dense(rows);
  detail::parallel_for(rows, [&](std::size_t r) {
    dense[r] = propagate_row(steps, mp.exclusions, static_cast<NodeId>(r));
  });
  CsrBuilder b(rows, steps.back()->cols());
  for (Index r = 0; r < rows; ++r) b.push_dense_row(dense[r]);
  return {mp, b.finish()};
}

}  // namespace

PcrwResult pcrw(const TypedGraph& g, const MetaPath& mp) {
  std::vector<std::optional<CsrMatrix>> cache(g.link_type_count());
  return pcrw_with_cache(g, mp, cache);
}

std::vector<PcrwResult> pcrw_batch(const TypedGraph& g, const MetaPathSet& mps) {
  std::vector<std::optional<CsrMatrix>> cache(g.link_type_count());
  std::vector<PcrwResult> out;
  out.reserve(mps.size());
  for (std::size_t i = 0; i < mps.size(); ++i) {
    try {
      out.push_back(pcrw_with_cache(g, mps[i], cache));
    } catch (const Error& e) {
      raise(e.code(), "meta-path " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

void dump_pcrw_csv(const PcrwResult& result, std::ostream& os,
                   const std::vector<std::string>* source_names,
                   const std::vector<std::string>* target_names,
                   std::optional<NodeId> source) {
  const auto& t = result.table;
  auto name_of = [](const std::vector<std::string>* names, Index i,
                    Index last) -> std::string {
    if (i == last) return "__hole__";
    if (names && i < names->size()) return (*names)[i];
    return std::to_string(i);
  };

  os << "src,dst,prob\n";
  os << std::setprecision(17);
  const Index src_hole = t.rows() - 1;
  const Index dst_hole = t.cols() - 1;
  for (Index r = 0; r < t.rows(); ++r) {
    if (source && *source != r) continue;
    auto cols = t.row_cols(r);
    auto vals = t.row_vals(r);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << name_of(source_names, r, src_hole) << ','
         << name_of(target_names, cols[i], dst_hole) << ',' << vals[i] << '\n';
    }
  }
}

}  // namespace hinreg
