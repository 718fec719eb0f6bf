// SPDX-License-Identifier: Apache-2.0
#include "hinreg.h"

#include <cstring>
#include <memory>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hinreg/edgelist.hpp"
#include "hinreg/error.hpp"
#include "hinreg/experiment.hpp"
#include "hinreg/metapath.hpp"
#include "hinreg/pcrw.hpp"

using hinreg::Error;
using hinreg::Status;

struct hinreg_graph {
  hinreg::LoadedGraph data;
  hinreg::Schema schema;
};

struct hinreg_metapath {
  hinreg::MetaPath path;
  hinreg::Schema schema;  // schema the path was parsed against
};

struct hinreg_pcrw {
  hinreg::PcrwResult result;
};

struct hinreg_config {
  hinreg::ExperimentConfig cfg;
};

namespace {

thread_local std::string t_last_error;

hinreg_status set_error(Status code, const std::string& message) {
  t_last_error = message;
  return static_cast<hinreg_status>(static_cast<int>(code));
}

template <typename Fn>
hinreg_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return HINREG_OK;
  } catch (const Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(Status::Internal, e.what());
  } catch (...) {
    return set_error(Status::Internal, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* hinreg_status_name(hinreg_status status) {
  return hinreg::status_name(static_cast<Status>(static_cast<int>(status)));
}

const char* hinreg_last_error(void) { return t_last_error.c_str(); }

/* -------------------------------------------------------------- graph */

hinreg_status hinreg_graph_load(const char* path, int has_header,
                                hinreg_graph** out) {
  if (!path || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    auto g = std::make_unique<hinreg_graph>();
    g->data = hinreg::load_edgelist(path, has_header != 0);
    g->schema = g->data.graph.schema();
    *out = g.release();
  });
}

hinreg_status hinreg_graph_dump(const hinreg_graph* g, const char* path) {
  if (!g || !path) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] { hinreg::dump_edgelist(g->data, path); });
}

void hinreg_graph_free(hinreg_graph* g) { delete g; }

hinreg_status hinreg_graph_augment(const hinreg_graph* g, hinreg_graph** out) {
  if (!g || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    auto aug = std::make_unique<hinreg_graph>();
    aug->data.graph = g->data.graph.augment_with_holes();
    aug->data.node_names = g->data.node_names;
    aug->schema = g->schema;
    *out = aug.release();
  });
}

int hinreg_graph_is_augmented(const hinreg_graph* g) {
  return g && g->data.graph.augmented() ? 1 : 0;
}

size_t hinreg_graph_node_type_count(const hinreg_graph* g) {
  return g ? g->data.graph.node_type_count() : 0;
}

const char* hinreg_graph_node_type_name(const hinreg_graph* g, size_t type) {
  if (!g || type >= g->data.graph.node_type_count()) return nullptr;
  return g->data.graph.node_type(static_cast<hinreg::NodeTypeId>(type)).name.c_str();
}

size_t hinreg_graph_node_count(const hinreg_graph* g, size_t type) {
  if (!g || type >= g->data.graph.node_type_count()) return 0;
  return g->data.graph.real_count(static_cast<hinreg::NodeTypeId>(type));
}

size_t hinreg_graph_link_type_count(const hinreg_graph* g) {
  return g ? g->data.graph.link_type_count() : 0;
}

const char* hinreg_graph_link_type_name(const hinreg_graph* g, size_t link) {
  if (!g || link >= g->data.graph.link_type_count()) return nullptr;
  return g->data.graph.link_type(static_cast<hinreg::LinkTypeId>(link)).name.c_str();
}

hinreg_status hinreg_graph_link_type_endpoints(const hinreg_graph* g, size_t link,
                                               size_t* src_type, size_t* dst_type) {
  if (!g || !src_type || !dst_type) {
    return set_error(Status::InvalidArgument, "null argument");
  }
  return guarded([&] {
    const auto& lt = g->data.graph.link_type(static_cast<hinreg::LinkTypeId>(link));
    *src_type = lt.source;
    *dst_type = lt.target;
  });
}

size_t hinreg_graph_edge_count(const hinreg_graph* g, size_t link) {
  if (!g || link >= g->data.graph.link_type_count()) return 0;
  return g->data.graph.adjacency(static_cast<hinreg::LinkTypeId>(link)).nnz();
}

hinreg_status hinreg_graph_node_index(const hinreg_graph* g, size_t type,
                                      const char* name, size_t* out) {
  if (!g || !name || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    if (type >= g->data.graph.node_type_count()) {
      hinreg::raise(Status::UnknownType, "node type index out of range");
    }
    auto id = g->data.find_node(static_cast<hinreg::NodeTypeId>(type), name);
    if (!id) {
      hinreg::raise(Status::InvalidArgument,
                    std::string("unknown node id '") + name + "'");
    }
    *out = *id;
  });
}

const char* hinreg_graph_node_name(const hinreg_graph* g, size_t type,
                                   size_t index) {
  if (!g || type >= g->data.graph.node_type_count()) return nullptr;
  const auto& names = g->data.node_names[type];
  if (index < names.size()) return names[index].c_str();
  if (g->data.graph.augmented() &&
      index == g->data.graph.real_count(static_cast<hinreg::NodeTypeId>(type))) {
    return "__hole__";
  }
  return nullptr;
}

/* ----------------------------------------------------------- metapath */

hinreg_status hinreg_metapath_parse(const hinreg_graph* g, const char* text,
                                    int auto_exclusions, hinreg_metapath** out) {
  if (!g || !text || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    auto mp = std::make_unique<hinreg_metapath>();
    mp->schema = g->schema;
    mp->path = hinreg::parse_metapath(text, mp->schema, auto_exclusions != 0);
    *out = mp.release();
  });
}

void hinreg_metapath_free(hinreg_metapath* mp) { delete mp; }

size_t hinreg_metapath_length(const hinreg_metapath* mp) {
  return mp ? mp->path.steps.size() : 0;
}

hinreg_status hinreg_metapath_source_type(const hinreg_metapath* mp, size_t* out) {
  if (!mp || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] { *out = hinreg::node_slots(mp->path, mp->schema).front(); });
}

hinreg_status hinreg_metapath_target_type(const hinreg_metapath* mp, size_t* out) {
  if (!mp || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] { *out = hinreg::node_slots(mp->path, mp->schema).back(); });
}

hinreg_status hinreg_metapath_format(const hinreg_metapath* mp, char* buf,
                                     size_t cap, size_t* needed) {
  if (!mp) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    const std::string text = hinreg::format_metapath(mp->path, mp->schema);
    if (needed) *needed = text.size();
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

/* --------------------------------------------------------------- pcrw */

hinreg_status hinreg_pcrw_compute(const hinreg_graph* g,
                                  const hinreg_metapath* mp, hinreg_pcrw** out) {
  if (!g || !mp || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    auto p = std::make_unique<hinreg_pcrw>();
    p->result = hinreg::pcrw(g->data.graph, mp->path);
    *out = p.release();
  });
}

void hinreg_pcrw_free(hinreg_pcrw* p) { delete p; }

size_t hinreg_pcrw_rows(const hinreg_pcrw* p) {
  return p ? p->result.table.rows() : 0;
}

size_t hinreg_pcrw_cols(const hinreg_pcrw* p) {
  return p ? p->result.table.cols() : 0;
}

double hinreg_pcrw_at(const hinreg_pcrw* p, size_t row, size_t col) {
  if (!p || row >= p->result.table.rows() || col >= p->result.table.cols()) {
    return 0.0;
  }
  return p->result.table.at(static_cast<hinreg::Index>(row),
                            static_cast<hinreg::Index>(col));
}

size_t hinreg_pcrw_row_nnz(const hinreg_pcrw* p, size_t row) {
  if (!p || row >= p->result.table.rows()) return 0;
  return p->result.table.row_nnz(static_cast<hinreg::Index>(row));
}

hinreg_status hinreg_pcrw_row_entries(const hinreg_pcrw* p, size_t row,
                                      size_t* cols, double* probs, size_t cap,
                                      size_t* written) {
  if (!p || !cols || !probs) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    if (row >= p->result.table.rows()) {
      hinreg::raise(Status::InvalidArgument, "row out of range");
    }
    auto rc = p->result.table.row_cols(static_cast<hinreg::Index>(row));
    auto rv = p->result.table.row_vals(static_cast<hinreg::Index>(row));
    const size_t n = std::min(cap, rc.size());
    for (size_t i = 0; i < n; ++i) {
      cols[i] = rc[i];
      probs[i] = rv[i];
    }
    if (written) *written = n;
  });
}

hinreg_status hinreg_pcrw_dump_csv(const hinreg_pcrw* p, const hinreg_graph* g,
                                   const char* path, long source) {
  if (!p || !g) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    const auto slots = hinreg::node_slots(p->result.metapath, g->schema);
    const auto* src_names = &g->data.node_names[slots.front()];
    const auto* dst_names = &g->data.node_names[slots.back()];
    std::optional<hinreg::NodeId> src;
    if (source >= 0) {
      if (static_cast<size_t>(source) >= p->result.table.rows()) {
        hinreg::raise(Status::InvalidArgument, "source row out of range");
      }
      src = static_cast<hinreg::NodeId>(source);
    }
    if (path) {
      std::ofstream out(path);
      if (!out) hinreg::raise(Status::IoError, std::string("cannot write '") + path + "'");
      hinreg::dump_pcrw_csv(p->result, out, src_names, dst_names, src);
    } else {
      hinreg::dump_pcrw_csv(p->result, std::cout, src_names, dst_names, src);
    }
  });
}

/* ------------------------------------------------------- experiments */

hinreg_status hinreg_config_load(const char* path, hinreg_config** out) {
  if (!path || !out) return set_error(Status::InvalidArgument, "null argument");
  return guarded([&] {
    auto cfg = std::make_unique<hinreg_config>();
    cfg->cfg = hinreg::load_config(path);
    *out = cfg.release();
  });
}

void hinreg_config_free(hinreg_config* cfg) { delete cfg; }

hinreg_status hinreg_config_set_seed(hinreg_config* cfg, unsigned long long seed) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  cfg->cfg.cv.rng_seed = seed;
  cfg->cfg.null_model.seed = seed;
  return HINREG_OK;
}

hinreg_status hinreg_config_set_alpha(hinreg_config* cfg, double alpha) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return set_error(Status::InvalidArgument, "alpha must lie in (0, 1)");
  }
  cfg->cfg.alpha = alpha;
  return HINREG_OK;
}

hinreg_status hinreg_config_set_out_dir(hinreg_config* cfg, const char* dir) {
  if (!cfg || !dir) return set_error(Status::InvalidArgument, "null argument");
  cfg->cfg.out_dir = dir;
  return HINREG_OK;
}

hinreg_status hinreg_config_set_keep_holes(hinreg_config* cfg, int keep) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  cfg->cfg.keep_holes = keep != 0;
  return HINREG_OK;
}

hinreg_status hinreg_config_set_feature_agg(hinreg_config* cfg, const char* agg) {
  if (!cfg || !agg) return set_error(Status::InvalidArgument, "null argument");
  const std::string mode = agg;
  if (mode == "mean") {
    cfg->cfg.feature_agg = hinreg::AggMode::Mean;
  } else if (mode == "sum") {
    cfg->cfg.feature_agg = hinreg::AggMode::Sum;
  } else {
    return set_error(Status::InvalidArgument, "feature_agg must be 'mean' or 'sum'");
  }
  return HINREG_OK;
}

hinreg_status hinreg_run_describe(const hinreg_config* cfg) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  return guarded([&] { hinreg::run_describe(cfg->cfg); });
}

hinreg_status hinreg_run_recover(const hinreg_config* cfg, int per_category) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  return guarded([&] { hinreg::run_recover(cfg->cfg, per_category != 0); });
}

hinreg_status hinreg_run_nullcheck(const hinreg_config* cfg, long replicates) {
  if (!cfg) return set_error(Status::InvalidArgument, "null config");
  return guarded([&] {
    std::optional<std::size_t> override_count;
    if (replicates >= 0) override_count = static_cast<std::size_t>(replicates);
    hinreg::run_nullcheck(cfg->cfg, override_count);
  });
}

}  // extern "C"
