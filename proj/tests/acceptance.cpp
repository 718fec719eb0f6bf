// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any fail. Tolerances are fixed here, not
// configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hinreg/pcrw.hpp"
#include "hinreg/regress.hpp"
#include "hinreg/tdist.hpp"
#include "hinreg/validate.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hinreg;
using hinreg::testing::community_fixture;
using hinreg::testing::reply_fixture;
using hinreg::testing::t_sf_quadrature;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool rows_sum_to_one(const CsrMatrix& table, double tol) {
  for (Index r = 0; r < table.rows(); ++r) {
    if (std::fabs(table.row_sum(r) - 1.0) > tol) return false;
  }
  return true;
}

// --------------------------------------------------------------- fixtures

TypedGraph random_walk_graph(std::mt19937_64& rng, Index max_nodes) {
  std::uniform_int_distribution<Index> count_d(4, max_nodes);
  std::uniform_int_distribution<int> n_types_d(2, 3);
  const int n_types = n_types_d(rng);
  std::vector<NodeTypeDecl> nodes;
  for (int t = 0; t < n_types; ++t) {
    nodes.push_back({"T" + std::to_string(t), count_d(rng)});
  }
  std::uniform_int_distribution<std::size_t> n_links_d(2, 4);
  const std::size_t n_links = n_links_d(rng);
  std::vector<LinkTypeDecl> links;
  std::uniform_int_distribution<NodeTypeId> type_d(0, static_cast<NodeTypeId>(n_types - 1));
  for (std::size_t e = 0; e < n_links; ++e) {
    links.push_back({"L" + std::to_string(e), type_d(rng), type_d(rng)});
  }
  std::vector<WeightedEdge> edges;
  std::uniform_real_distribution<double> w_d(0.25, 4.0);
  std::uniform_int_distribution<int> deg_d(0, 6);
  for (std::size_t e = 0; e < n_links; ++e) {
    const Index n_src = nodes[links[e].source].count;
    const Index n_dst = nodes[links[e].target].count;
    std::uniform_int_distribution<Index> dst_d(0, n_dst - 1);
    for (Index s = 0; s < n_src; ++s) {
      for (int k = deg_d(rng); k > 0; --k) {
        edges.push_back({static_cast<LinkTypeId>(e), s, dst_d(rng), w_d(rng)});
      }
    }
  }
  return TypedGraph::build(nodes, links, edges);
}

/// Twitter-shaped random graph for the planted-selection criterion.
TypedGraph random_twitter_graph(std::mt19937_64& rng) {
  const Index n_users = 30, n_tags = 12;
  std::vector<NodeTypeDecl> nodes = {{"user", n_users}, {"hashtag", n_tags}};
  std::vector<LinkTypeDecl> links = {
      {"RT", 0, 0}, {"RP", 0, 0}, {"MT", 0, 0}, {"UH", 0, 1}};
  std::vector<WeightedEdge> edges;
  std::uniform_int_distribution<Index> user_d(0, n_users - 1);
  std::uniform_int_distribution<Index> tag_d(0, n_tags - 1);
  std::uniform_real_distribution<double> w_d(1.0, 3.0);
  for (Index u = 0; u < n_users; ++u) {
    for (LinkTypeId e = 0; e < 3; ++e) {
      for (int k = 0; k < 3; ++k) {
        Index v = user_d(rng);
        if (v == u) v = (v + 1) % n_users;
        edges.push_back({e, u, v, w_d(rng)});
      }
    }
    for (int k = 0; k < 3; ++k) {
      edges.push_back({3, u, tag_d(rng), w_d(rng)});
    }
  }
  return TypedGraph::build(nodes, links, edges);
}

struct CommunityTables {
  CsrMatrix target;
  std::vector<RegressorTable> regressors;
};

CommunityTables community_tables(const TypedGraph& aug) {
  const Schema s = aug.schema();
  CommunityTables out;
  out.target = pcrw(aug, parse_metapath("UH", s)).table;
  for (const char* text : {"RT-UH", "RP-UH", "MT-UH"}) {
    out.regressors.push_back({text, pcrw(aug, parse_metapath(text, s)).table});
  }
  return out;
}

// -------------------------------------------------------------- criteria

Outcome criterion_reply_fixture() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto g = reply_fixture().graph.augment_with_holes();
  const Schema s = g.schema();
  const double tol = 1e-12;

  auto check_row = [&](const char* path, const std::vector<double>& expect) {
    const auto res = pcrw(g, parse_metapath(path, s));
    const auto row = res.table.dense_row(1);  // u2
    for (std::size_t i = 0; i < expect.size(); ++i) {
      if (std::fabs(row[i] - expect[i]) > tol) {
        o.fail(std::string(path) + " column " + std::to_string(i) + " is " +
               std::to_string(row[i]) + ", want " + std::to_string(expect[i]));
        return;
      }
    }
  };
  check_row("UH", {0.5, 0.5, 0.0, 0.0, 0.0});
  check_row("RP-UH", {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0, 0.0});
  check_row("RP-RP-UH", {0.0, 0.0, 0.5, 0.5, 0.0});
  o.require(seconds_since(start) < 1.0, "runtime exceeded 1 s");
  return o;
}

Outcome criterion_biblio_matrices() {
  Outcome o;
  const auto g = hinreg::testing::biblio_fixture().graph.augment_with_holes();
  const double tol = 1e-12;
  const double th = 1.0 / 3;

  const std::vector<std::vector<std::vector<double>>> expected = {
      // AP
      {{1, 0, 0, 0, 0},
       {0.5, 0.5, 0, 0, 0},
       {0.5, 0, 0.5, 0, 0},
       {0, th, th, th, 0},
       {0, 0, 0.5, 0.5, 0},
       {0, 0, 0, 0, 1}},
      // PP
      {{0, 0.5, 0.5, 0, 0},
       {0, 0, 1, 0, 0},
       {0, 0, 0, 0, 1},
       {0, 0, 1, 0, 0},
       {0, 0, 0, 0, 1}},
      // PV
      {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      // PT
      {{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
  };
  const char* names[] = {"AP", "PP", "PV", "PT"};
  for (LinkTypeId e = 0; e < 4; ++e) {
    const auto s = g.stochastic(e);
    const auto& want = expected[e];
    if (s.rows() != want.size() || s.cols() != want[0].size()) {
      o.fail(std::string(names[e]) + " has shape " + std::to_string(s.rows()) +
             "x" + std::to_string(s.cols()));
      continue;
    }
    for (Index r = 0; r < s.rows(); ++r) {
      const auto row = s.dense_row(r);
      for (Index c = 0; c < s.cols(); ++c) {
        if (std::fabs(row[c] - want[r][c]) > tol) {
          o.fail(std::string(names[e]) + "[" + std::to_string(r) + "][" +
                 std::to_string(c) + "] = " + std::to_string(row[c]) +
                 ", want " + std::to_string(want[r][c]));
        }
      }
    }
  }
  return o;
}

Outcome criterion_oracle_equivalence(bool& rows_ok) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> len_d(1, 4);

  rows_ok = true;
  int with_exclusions = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_walk_graph(rng, 50).augment_with_holes();
    const Schema s = g.schema();
    MetaPath mp = hinreg::testing::random_metapath(s, rng, len_d(rng));
    if (mp.steps.empty()) continue;
    if (trial % 2 == 0) {
      mp = with_default_exclusions(std::move(mp), s);
    }
    if (!mp.exclusions.empty()) ++with_exclusions;

    const auto res = pcrw(g, mp);
    if (!rows_sum_to_one(res.table, 1e-9)) {
      rows_ok = false;
      o.fail("row sums off on trial " + std::to_string(trial));
    }
    const auto slots = node_slots(mp, s);
    for (NodeId src = 0; src < g.stored_count(slots.front()); ++src) {
      const auto expect = pcrw_oracle(g, mp, src, 4000000);
      const auto got = res.table.dense_row(src);
      for (std::size_t i = 0; i < expect.size(); ++i) {
        if (std::fabs(expect[i] - got[i]) > 1e-10) {
          o.fail("trial " + std::to_string(trial) + " source " +
                 std::to_string(src) + " differs by " +
                 std::to_string(std::fabs(expect[i] - got[i])));
          src = g.stored_count(slots.front());
          break;
        }
      }
    }
  }
  o.require(with_exclusions >= 20, "too few exclusion-bearing trials");
  const double took = seconds_since(start);
  o.require(took < 60.0, "runtime " + std::to_string(took) + " s exceeded 60 s");
  return o;
}

Outcome criterion_ols() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 1000;
  const std::vector<double> beta_true = {0.5, 1.5, -0.3};

  DesignMatrix d;
  d.n_rows = n;
  d.intercept = true;
  d.columns.assign(3, std::vector<double>(n));
  d.names = {"x0", "x1", "x2"};
  d.y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      d.columns[c][i] = u(rng);
      d.y[i] += beta_true[c] * d.columns[c][i];
    }
    d.y[i] += noise(rng);
  }
  const auto fit = ols(d);

  for (std::size_t c = 0; c < 3; ++c) {
    o.require(std::fabs(fit.beta[c + 1] - beta_true[c]) <= 3.0 * fit.std_errors[c],
              "beta" + std::to_string(c) + " off by " +
                  std::to_string(std::fabs(fit.beta[c + 1] - beta_true[c])) +
                  " vs 3 se = " + std::to_string(3.0 * fit.std_errors[c]));
    o.require(fit.p_values[c] < 0.001, "p-value not significant");
  }

  std::vector<double> resid(n);
  double y_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = fit.beta[0];
    for (std::size_t c = 0; c < 3; ++c) pred += fit.beta[c + 1] * d.columns[c][i];
    resid[i] = d.y[i] - pred;
    y_norm += d.y[i] * d.y[i];
  }
  y_norm = std::sqrt(y_norm);
  for (std::size_t c = 0; c < 3; ++c) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += d.columns[c][i] * resid[i];
    o.require(std::fabs(dot) <= 1e-8 * y_norm, "residuals not orthogonal");
  }
  o.require(std::fabs(fit.r2 - (1.0 - fit.rss / fit.tss)) <= 1e-12,
            "r2 identity violated");
  return o;
}

Outcome criterion_tdist() {
  Outcome o;
  for (std::uint64_t dof : {1ULL, 2ULL, 5ULL, 10ULL, 100ULL, 10000ULL}) {
    for (double t = 0.0; t <= 6.0 + 1e-9; t += 0.25) {
      const double got = t_sf(t, dof);
      const double want = t_sf_quadrature(t, static_cast<double>(dof));
      if (std::fabs(got - want) > 1e-8) {
        o.fail("dof " + std::to_string(dof) + " t " + std::to_string(t) +
               " differs by " + std::to_string(std::fabs(got - want)));
      }
    }
    o.require(t_sf(0.0, dof) == 1.0, "t_sf(0) not exactly 1");
  }
  const double norm_limit = t_sf(1.96, 10000000ULL);
  o.require(std::fabs(norm_limit - 0.0500) <= 5e-4,
            "large-dof value at 1.96 is " + std::to_string(norm_limit));
  return o;
}

Outcome criterion_forward_selection() {
  Outcome o;
  // The decoy clears alpha = 0.05 by chance in about 5 of 100 trials, so the
  // pass mark sits at the binomial mean; the trial set is frozen by seed.
  std::mt19937_64 master(2);
  int exact = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(master());
    const auto g = random_twitter_graph(rng).augment_with_holes();
    const Schema s = g.schema();
    const auto t1 = pcrw(g, parse_metapath("RT-UH", s)).table;
    const auto t2 = pcrw(g, parse_metapath("RP-UH", s)).table;
    const auto t3 = pcrw(g, parse_metapath("MT-UH", s)).table;

    std::normal_distribution<double> noise(0.0, 0.01);
    const Index rows = t1.rows(), cols = t1.cols();
    CsrBuilder yb(rows, cols);
    std::vector<double> buf(cols, 0.0);
    for (Index r = 0; r + 1 < rows; ++r) {
      for (Index c = 0; c + 1 < cols; ++c) {
        buf[c] = 0.58 * t1.at(r, c) + 0.40 * t2.at(r, c) + noise(rng);
      }
      buf[cols - 1] = 0.0;
      yb.push_dense_row(buf);
    }
    std::fill(buf.begin(), buf.end(), 0.0);
    buf[cols - 1] = 1.0;
    yb.push_dense_row(buf);
    const auto target = yb.finish();

    std::vector<RegressorTable> cands = {{"P1", t1}, {"P2", t2}, {"P3", t3}};
    const auto trace =
        forward_select(target, cands, all_real_sources(target), 0.05, {});

    double prev = trace.null_fit.r2;
    for (const auto& step : trace.steps) {
      if (step.fit.r2 < prev - 1e-12) {
        o.fail("r2 decreased along the trace in trial " + std::to_string(trial));
      }
      prev = step.fit.r2;
    }

    std::set<std::string> picked;
    for (const auto& step : trace.steps) picked.insert(step.name);
    if (picked == std::set<std::string>{"P1", "P2"}) ++exact;
  }
  o.require(exact >= 95, "exact recovery in only " + std::to_string(exact) +
                             " of 100 trials");
  return o;
}

Outcome criterion_cv() {
  Outcome o;
  const auto aug = community_fixture().graph.augment_with_holes();
  const auto t = community_tables(aug);
  const CvConfig cfg{0.8, 10, 424242};
  const auto report = monte_carlo_cv(t.target, t.regressors, 0.05, cfg, {});
  o.require(report.splits.size() == 10, "expected 10 splits");
  o.require(report.degenerate_count == 0, "degenerate splits");
  o.require(std::fabs(report.train_r2_mean - report.test_r2_mean) <= 0.05,
            "train/test gap " +
                std::to_string(std::fabs(report.train_r2_mean - report.test_r2_mean)));
  const auto again = monte_carlo_cv(t.target, t.regressors, 0.05, cfg, {});
  o.require(cv_report_to_json(report, cfg) == cv_report_to_json(again, cfg),
            "reports not bit-identical under a fixed seed");
  return o;
}

Outcome criterion_null_model() {
  Outcome o;
  const auto raw = community_fixture().graph;
  const auto aug = raw.augment_with_holes();
  const auto t = community_tables(aug);
  const auto sources = all_real_sources(t.target);
  const auto real = forward_select(t.target, t.regressors, sources, 0.05, {});
  const double real_r2 = real.final_fit().r2;
  o.require(!real.steps.empty(), "no regressor selected on the real graph");
  if (!real.steps.empty()) {
    o.require(real.steps[0].fit.p_values[0] <= 0.05,
              "first selected regressor not significant");
  }

  double max_null = 0.0;
  int silent = 0;
  const int replicates = 15;
  for (int rep = 0; rep < replicates; ++rep) {
    TypedGraph shuffled = raw;
    for (std::size_t e = 0; e < raw.link_type_count(); ++e) {
      shuffled = null_model(shuffled, static_cast<LinkTypeId>(e),
                            NullMode::OutDegree, 5000 + rep * 1000003ULL + e * 101ULL);
    }
    const auto null_aug = shuffled.augment_with_holes();
    const auto nt = community_tables(null_aug);
    const auto trace = forward_select(nt.target, nt.regressors, sources, 0.05, {});
    max_null = std::max(max_null, trace.final_fit().r2);
    if (trace.steps.empty()) ++silent;
  }
  o.require(max_null < 0.5 * real_r2,
            "max null r2 " + std::to_string(max_null) + " vs real " +
                std::to_string(real_r2));
  o.require(silent >= 12, "only " + std::to_string(silent) +
                              " of 15 null replicates were silent");
  return o;
}

Outcome criterion_enumeration() {
  Outcome o;
  Schema s;
  s.node_types = {"user", "hashtag"};
  s.link_types = {{"RT", 0, 0}, {"RP", 0, 0}, {"MT", 0, 0}, {"UH", 0, 1}};
  const auto set = enumerate_metapaths(s, 0, 1, 4, LinkTypeId{3});
  o.require(set.size() == 39,
            "enumerated " + std::to_string(set.size()) + " paths, want 39");
  const auto counted = hinreg::testing::schema_walk_count(s, 0, 1, 4) - 1;
  o.require(set.size() == counted,
            "matrix-power count " + std::to_string(counted) + " disagrees");
  std::size_t by_len[5] = {0, 0, 0, 0, 0};
  for (const auto& mp : set) ++by_len[mp.steps.size()];
  o.require(by_len[2] == 3 && by_len[3] == 9 && by_len[4] == 27,
            "length split is not 3/9/27");
  return o;
}

}  // namespace

int main() {
  bool corpus_rows_ok = true;

  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"reply-fixture walk distributions exact to 1e-12, under 1 s",
       criterion_reply_fixture},
      {"bibliographic fixture stochastic matrices exact to 1e-12",
       criterion_biblio_matrices},
      {"matrix walks match the path-sum oracle on 200 random graphs (1e-10, <60 s)",
       [&] { return criterion_oracle_equivalence(corpus_rows_ok); }},
      {"every walk table row sums to 1 within 1e-9 across the corpus",
       [&] {
         Outcome o;
         o.require(corpus_rows_ok, "a corpus row sum was off");
         const auto g = reply_fixture().graph.augment_with_holes();
         const Schema s = g.schema();
         for (const char* p : {"UH", "RP-UH", "RP-RP-UH"}) {
           o.require(rows_sum_to_one(pcrw(g, parse_metapath(p, s)).table, 1e-9),
                     std::string("fixture path ") + p);
         }
         return o;
       }},
      {"ols recovers planted coefficients; residuals orthogonal; r2 identity",
       criterion_ols},
      {"t survival function matches quadrature (1e-8) and the normal limit",
       criterion_tdist},
      {"forward selection recovers the planted pair in >= 95 of 100 trials",
       criterion_forward_selection},
      {"monte carlo cv: test r2 within 0.05 of train r2, bit-identical reruns",
       criterion_cv},
      {"null reshuffles: max null r2 < half of real, >= 12 of 15 silent",
       criterion_null_model},
      {"meta-path enumeration counts match matrix-power counting (39 paths)",
       criterion_enumeration},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2zu. %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
