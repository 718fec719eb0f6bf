// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>
#include <sstream>
#include <tuple>

#include "hinreg/edgelist.hpp"
#include "hinreg/error.hpp"
#include "support/fixtures.hpp"

using namespace hinreg;

namespace {

LoadedGraph load_text(const std::string& text, bool has_header = false) {
  std::istringstream in(text);
  return load_edgelist(in, "<memory>", has_header);
}

using EdgeKey = std::tuple<std::string, std::string, std::string, std::string,
                           std::string, double>;

std::multiset<EdgeKey> edge_set(const LoadedGraph& g) {
  std::multiset<EdgeKey> out;
  const auto& graph = g.graph;
  for (std::size_t e = 0; e < graph.link_type_count(); ++e) {
    const auto& lt = graph.link_type(static_cast<LinkTypeId>(e));
    const auto& w = graph.adjacency(static_cast<LinkTypeId>(e));
    for (Index r = 0; r < w.rows(); ++r) {
      auto cols = w.row_cols(r);
      auto vals = w.row_vals(r);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        out.insert({graph.node_type(lt.source).name, g.node_names[lt.source][r],
                    lt.name, graph.node_type(lt.target).name,
                    g.node_names[lt.target][cols[i]], vals[i]});
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("edgelist") {

TEST_CASE("loads types, ids and weights in first-seen order") {
  const auto g = load_text(
      "user\tu1\tRT\tuser\tu2\t2\n"
      "# a comment line\n"
      "user\tu2\tUH\thashtag\th1\t1.5\n"
      "\n"
      "user\tu1\tUH\thashtag\th2\t1\n");
  CHECK(g.graph.node_type_count() == 2);
  CHECK(g.graph.node_type(0).name == "user");
  CHECK(g.graph.node_type(1).name == "hashtag");
  CHECK(g.graph.real_count(0) == 2);
  CHECK(g.graph.real_count(1) == 2);
  CHECK(g.graph.link_type_count() == 2);
  CHECK(g.node_names[0] == std::vector<std::string>{"u1", "u2"});
  CHECK(g.node_names[1] == std::vector<std::string>{"h1", "h2"});
  CHECK(g.graph.adjacency(0).at(0, 1) == 2.0);
  CHECK(g.find_node(1, "h2") == NodeId{1});
  CHECK(!g.find_node(1, "h9"));
}

TEST_CASE("header is skipped when requested") {
  const std::string body = "user\tu1\tRT\tuser\tu2\t1\n";
  const auto g = load_text("src_type\tsrc\tlink\tdst_type\tdst\tw\n" + body, true);
  CHECK(g.graph.real_count(0) == 2);
  CHECK_THROWS_AS(load_text("src_type\tsrc\tlink\tdst_type\tdst\tw\n" + body, false),
                  Error);  // header parsed as data: weight 'w' is malformed
}

TEST_CASE("errors name the line") {
  CHECK_THROWS_WITH_AS(load_text("user\tu1\tRT\tuser\tu2\t1\n"
                                 "user\tu1\tRT\tuser\tu2\n"),
                       doctest::Contains(":2"), Error);
  CHECK_THROWS_WITH_AS(load_text("# c\n"
                                 "user\tu1\tRT\tuser\tu2\t1\n"
                                 "# c\n"
                                 "# c\n"
                                 "# c\n"
                                 "# c\n"
                                 "user\tu1\tUH\thashtag\th1\tabc\n"),
                       doctest::Contains(":7"), Error);
  CHECK_THROWS_WITH_AS(load_text("user\tu1\tRT\tuser\tu2\t-1\n"),
                       doctest::Contains("negative"), Error);
}

TEST_CASE("link type endpoints are pinned by first use") {
  CHECK_THROWS_WITH_AS(load_text("author\ta1\tAP\tpaper\tp1\t1\n"
                                 "author\ta1\tAP\thashtag\th1\t1\n"),
                       doctest::Contains("connects"), Error);
}

TEST_CASE("duplicate lines merge additively") {
  const auto g = load_text(
      "user\tu1\tRT\tuser\tu2\t1\n"
      "user\tu1\tRT\tuser\tu2\t1\n");
  CHECK(g.graph.adjacency(0).at(0, 1) == 2.0);
  CHECK(g.graph.adjacency(0).nnz() == 1);
}

TEST_CASE("round trip: load, dump, load") {
  const auto fixture = hinreg::testing::community_fixture();
  std::ostringstream dumped;
  dump_edgelist(fixture, dumped);

  const auto reloaded = load_text(dumped.str());
  CHECK(edge_set(reloaded) == edge_set(fixture));
  CHECK(reloaded.graph.node_type_count() == fixture.graph.node_type_count());
  for (std::size_t t = 0; t < reloaded.graph.node_type_count(); ++t) {
    std::set<std::string> a(reloaded.node_names[t].begin(), reloaded.node_names[t].end());
    std::set<std::string> b(fixture.node_names[t].begin(), fixture.node_names[t].end());
    CHECK(a == b);
  }

  // A reloaded dump is a fixed point up to the same edge set, and weights
  // survive the decimal round trip bit-exactly.
  std::ostringstream again;
  dump_edgelist(reloaded, again);
  CHECK(edge_set(load_text(again.str())) == edge_set(fixture));
}

TEST_CASE("dump of an augmented graph keeps holes out of the file") {
  auto fixture = hinreg::testing::reply_fixture();
  LoadedGraph aug{fixture.graph.augment_with_holes(), fixture.node_names};
  std::ostringstream os;
  dump_edgelist(aug, os);
  CHECK(os.str().find("__hole__") == std::string::npos);
  const auto reloaded = load_text(os.str());
  CHECK(edge_set(reloaded) == edge_set(fixture));
}

}  // TEST_SUITE
