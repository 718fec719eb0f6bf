// SPDX-License-Identifier: Apache-2.0
//
// hinreg command line front end. Talks to the core exclusively through the
// shared library's C API.
#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>

#include "hinreg.h"

namespace {

int fail(const char* what, hinreg_status rc) {
  std::fprintf(stderr, "hinreg: %s: %s (%s)\n", what, hinreg_last_error(),
               hinreg_status_name(rc));
  return 1;
}

struct GraphHandle {
  hinreg_graph* g = nullptr;
  ~GraphHandle() { hinreg_graph_free(g); }
};

struct ConfigHandle {
  hinreg_config* cfg = nullptr;
  ~ConfigHandle() { hinreg_config_free(cfg); }
};

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  double alpha = -1.0;
  long long seed = -1;
  bool keep_holes = false;
  std::string feature_agg;
};

int load_config(const CommonFlags& flags, ConfigHandle& config) {
  if (flags.config_path.empty()) {
    std::fprintf(stderr, "hinreg: this command needs --config PATH\n");
    return 1;
  }
  hinreg_status rc = hinreg_config_load(flags.config_path.c_str(), &config.cfg);
  if (rc != HINREG_OK) return fail("loading config", rc);
  if (!flags.out_dir.empty()) {
    hinreg_config_set_out_dir(config.cfg, flags.out_dir.c_str());
  }
  if (flags.alpha >= 0.0) {
    rc = hinreg_config_set_alpha(config.cfg, flags.alpha);
    if (rc != HINREG_OK) return fail("setting alpha", rc);
  }
  if (flags.seed >= 0) {
    hinreg_config_set_seed(config.cfg, static_cast<unsigned long long>(flags.seed));
  }
  if (flags.keep_holes) hinreg_config_set_keep_holes(config.cfg, 1);
  if (!flags.feature_agg.empty()) {
    rc = hinreg_config_set_feature_agg(config.cfg, flags.feature_agg.c_str());
    if (rc != HINREG_OK) return fail("setting feature aggregation", rc);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Recovers link weights in typed weighted digraphs by regressing the "
      "target relation on meta-path constrained random walk distributions."};
  app.require_subcommand(1);
  app.fallthrough();

  CommonFlags flags;
  app.add_option("--config", flags.config_path, "Experiment config (JSON)");
  app.add_option("--out", flags.out_dir, "Output directory (overrides config)");
  app.add_option("--alpha", flags.alpha, "Significance threshold in (0,1)");
  app.add_option("--seed", flags.seed, "Master RNG seed (overrides config)");
  app.add_flag("--keep-holes", flags.keep_holes,
               "Keep hole target columns in the regression");
  app.add_option("--feature-agg", flags.feature_agg,
                 "Feature aggregation: mean or sum");

  auto* describe = app.add_subcommand(
      "describe", "Forward selection on the full data; writes the trace");
  auto* recover = app.add_subcommand(
      "recover", "Monte Carlo cross-validation; writes per-split scores");
  bool per_category = false;
  recover->add_flag("--per-category", per_category,
                    "Divide by the configured categories first");
  auto* nullcheck = app.add_subcommand(
      "nullcheck", "Compare the real fit against degree-preserving reshuffles");
  long long replicates = -1;
  nullcheck->add_option("--replicates", replicates,
                        "Number of reshuffled replicates (overrides config)");

  auto* pcrw = app.add_subcommand(
      "pcrw", "Dump one walk-distribution table as CSV triples");
  std::string pcrw_input, pcrw_path_text, pcrw_source, pcrw_out;
  bool pcrw_header = false;
  bool no_auto_exclusions = false;
  pcrw->add_option("--input", pcrw_input, "Edge list (TSV)")->required();
  pcrw->add_option("--metapath", pcrw_path_text, "Meta-path, e.g. RP-UH")->required();
  pcrw->add_option("--source", pcrw_source, "Restrict to one source node id");
  pcrw->add_option("--to", pcrw_out, "Write CSV here instead of stdout");
  pcrw->add_flag("--has-header", pcrw_header, "Skip the first data line");
  pcrw->add_flag("--no-auto-exclusions", no_auto_exclusions,
                 "Do not attach the standard revisit bans");

  auto* schema = app.add_subcommand("schema", "Print the derived schema");
  std::string schema_input;
  bool schema_header = false;
  schema->add_option("--input", schema_input, "Edge list (TSV)")->required();
  schema->add_flag("--has-header", schema_header, "Skip the first data line");

  CLI11_PARSE(app, argc, argv);

  if (describe->parsed() || recover->parsed() || nullcheck->parsed()) {
    ConfigHandle config;
    if (int rc = load_config(flags, config); rc != 0) return rc;
    hinreg_status rc = HINREG_OK;
    const char* what = "";
    if (describe->parsed()) {
      what = "describe";
      rc = hinreg_run_describe(config.cfg);
    } else if (recover->parsed()) {
      what = "recover";
      rc = hinreg_run_recover(config.cfg, per_category ? 1 : 0);
    } else {
      what = "nullcheck";
      rc = hinreg_run_nullcheck(config.cfg, replicates);
    }
    if (rc != HINREG_OK) return fail(what, rc);
    return 0;
  }

  if (pcrw->parsed()) {
    GraphHandle raw;
    hinreg_status rc = hinreg_graph_load(pcrw_input.c_str(), pcrw_header ? 1 : 0,
                                         &raw.g);
    if (rc != HINREG_OK) return fail("loading edge list", rc);
    GraphHandle aug;
    rc = hinreg_graph_augment(raw.g, &aug.g);
    if (rc != HINREG_OK) return fail("augmenting", rc);

    hinreg_metapath* mp = nullptr;
    rc = hinreg_metapath_parse(aug.g, pcrw_path_text.c_str(),
                               no_auto_exclusions ? 0 : 1, &mp);
    if (rc != HINREG_OK) return fail("parsing meta-path", rc);
    std::unique_ptr<hinreg_metapath, decltype(&hinreg_metapath_free)> mp_guard(
        mp, &hinreg_metapath_free);

    long source = -1;
    if (!pcrw_source.empty()) {
      size_t src_type = 0;
      hinreg_metapath_source_type(mp, &src_type);
      size_t idx = 0;
      rc = hinreg_graph_node_index(aug.g, src_type, pcrw_source.c_str(), &idx);
      if (rc != HINREG_OK) return fail("resolving source node", rc);
      source = static_cast<long>(idx);
    }

    hinreg_pcrw* table = nullptr;
    rc = hinreg_pcrw_compute(aug.g, mp, &table);
    if (rc != HINREG_OK) return fail("computing walk table", rc);
    std::unique_ptr<hinreg_pcrw, decltype(&hinreg_pcrw_free)> table_guard(
        table, &hinreg_pcrw_free);

    rc = hinreg_pcrw_dump_csv(table, aug.g,
                              pcrw_out.empty() ? nullptr : pcrw_out.c_str(),
                              source);
    if (rc != HINREG_OK) return fail("writing table", rc);
    return 0;
  }

  if (schema->parsed()) {
    GraphHandle g;
    hinreg_status rc = hinreg_graph_load(schema_input.c_str(),
                                         schema_header ? 1 : 0, &g.g);
    if (rc != HINREG_OK) return fail("loading edge list", rc);

    std::printf("node types:\n");
    for (size_t t = 0; t < hinreg_graph_node_type_count(g.g); ++t) {
      std::printf("  %-12s %zu nodes\n", hinreg_graph_node_type_name(g.g, t),
                  hinreg_graph_node_count(g.g, t));
    }
    std::printf("link types:\n");
    for (size_t e = 0; e < hinreg_graph_link_type_count(g.g); ++e) {
      size_t src = 0, dst = 0;
      hinreg_graph_link_type_endpoints(g.g, e, &src, &dst);
      std::printf("  %-12s %s -> %s, %zu edges\n",
                  hinreg_graph_link_type_name(g.g, e),
                  hinreg_graph_node_type_name(g.g, src),
                  hinreg_graph_node_type_name(g.g, dst),
                  hinreg_graph_edge_count(g.g, e));
    }
    return 0;
  }

  return 0;
}
