// SPDX-License-Identifier: Apache-2.0
#include "hinreg/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hinreg/error.hpp"

namespace hinreg {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  ExperimentConfig cfg;
  try {
    cfg.input = j.at("input").get<std::string>();
    cfg.target = j.at("target").get<std::string>();
    cfg.has_header = j.value("has_header", false);
    cfg.alpha = j.value("alpha", 0.05);
    cfg.keep_holes = j.value("keep_holes", false);
    cfg.auto_exclusions = j.value("auto_exclusions", true);
    cfg.out_dir = j.value("out_dir", std::string("out"));

    const std::string agg = j.value("feature_agg", std::string("mean"));
    if (agg == "mean") {
      cfg.feature_agg = AggMode::Mean;
    } else if (agg == "sum") {
      cfg.feature_agg = AggMode::Sum;
    } else {
      raise(Status::ParseError, "feature_agg must be 'mean' or 'sum'");
    }

    const json& cand = j.at("candidates");
    int sources = 0;
    if (cand.contains("enumerate")) {
      ++sources;
      cfg.candidates.kind = CandidateSpec::Kind::Enumerate;
      cfg.candidates.max_len = cand.at("enumerate").value("max_len", 4);
    }
    if (cand.contains("paths")) {
      ++sources;
      cfg.candidates.kind = CandidateSpec::Kind::Paths;
      cfg.candidates.paths = cand.at("paths").get<std::vector<std::string>>();
    }
    if (cand.contains("features")) {
      ++sources;
      cfg.candidates.kind = CandidateSpec::Kind::Features;
      for (const auto& g : cand.at("features")) {
        cfg.candidates.features.push_back(
            {g.at("name").get<std::string>(),
             g.at("paths").get<std::vector<std::string>>()});
      }
    }
    if (sources != 1) {
      raise(Status::InvalidArgument,
            "config must name exactly one candidate source "
            "(enumerate | paths | features), got " + std::to_string(sources));
    }

    if (j.contains("cv")) {
      const json& cv = j.at("cv");
      cfg.cv.train_fraction = cv.value("train_fraction", 0.8);
      cfg.cv.n_splits = cv.value("n_splits", std::size_t{10});
      cfg.cv.rng_seed = cv.value("seed", std::uint64_t{0});
    }
    if (j.contains("null")) {
      const json& n = j.at("null");
      const std::string mode = n.value("mode", std::string("out-degree"));
      if (mode == "out-degree") {
        cfg.null_model.mode = NullMode::OutDegree;
      } else if (mode == "in-out-degree") {
        cfg.null_model.mode = NullMode::InOutDegree;
      } else {
        raise(Status::ParseError, "null mode must be 'out-degree' or 'in-out-degree'");
      }
      cfg.null_model.replicates = n.value("replicates", std::size_t{15});
      cfg.null_model.seed = n.value("seed", std::uint64_t{0});
      if (n.contains("links")) {
        cfg.null_model.links = n.at("links").get<std::vector<std::string>>();
      }
    }
    if (j.contains("categories")) {
      const json& c = j.at("categories");
      CategorySettings cat;
      cat.pivot_type = c.at("pivot_type").get<std::string>();
      cat.file = c.at("file").get<std::string>();
      cat.anchor = c.at("anchor").get<std::string>();
      cfg.categories = std::move(cat);
    }
  } catch (const json::exception& e) {
    raise(Status::ParseError, std::string("bad config: ") + e.what());
  }

  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    raise(Status::InvalidArgument, "alpha must lie in (0, 1)");
  }

  auto resolve = [&](std::string& p) {
    if (!p.empty() && fs::path(p).is_relative()) {
      p = (base_dir / p).string();
    }
  };
  resolve(cfg.input);
  if (cfg.categories) resolve(cfg.categories->file);
  return cfg;
}

/// Everything a single pipeline run needs, built once per graph.
struct Pipeline {
  LoadedGraph raw;
  TypedGraph aug;
  Schema schema;
  LinkTypeId target = 0;
  CsrMatrix target_table;
  std::vector<RegressorTable> regressors;
};

MetaPath parse_candidate(const std::string& text, const Schema& schema,
                         bool auto_exclusions) {
  return parse_metapath(text, schema, auto_exclusions);
}

void check_endpoints(const MetaPath& mp, const Schema& schema,
                     const Schema::Edge& target, const std::string& name) {
  const auto slots = node_slots(mp, schema);
  if (slots.front() != target.source || slots.back() != target.target) {
    raise(Status::ChainMismatch,
          "candidate '" + name + "' runs from '" + schema.node_types[slots.front()] +
              "' to '" + schema.node_types[slots.back()] + "' but the target '" +
              target.name + "' connects '" + schema.node_types[target.source] +
              "' to '" + schema.node_types[target.target] + "'");
  }
}

std::vector<RegressorTable> build_regressors(const TypedGraph& aug,
                                             const Schema& schema,
                                             LinkTypeId target,
                                             const ExperimentConfig& cfg,
                                             const MetaPath* drop_path) {
  const auto& target_edge = schema.link_types[target];
  MetaPathSet paths;
  std::vector<std::string> names;

  switch (cfg.candidates.kind) {
    case CandidateSpec::Kind::Enumerate: {
      paths = enumerate_metapaths(schema, target_edge.source, target_edge.target,
                                  cfg.candidates.max_len, target,
                                  cfg.auto_exclusions);
      for (const auto& mp : paths) names.push_back(format_metapath(mp, schema));
      break;
    }
    case CandidateSpec::Kind::Paths: {
      for (const auto& text : cfg.candidates.paths) {
        MetaPath mp = parse_candidate(text, schema, cfg.auto_exclusions);
        check_endpoints(mp, schema, target_edge, text);
        if (mp.steps.size() == 1 && mp.steps[0] == target) {
          raise(Status::InvalidArgument,
                "candidate '" + text + "' is the target link type itself");
        }
        paths.push_back(std::move(mp));
        names.push_back(text);
      }
      break;
    }
    case CandidateSpec::Kind::Features:
      break;  // handled below
  }

  std::vector<RegressorTable> out;
  if (cfg.candidates.kind == CandidateSpec::Kind::Features) {
    for (const auto& group : cfg.candidates.features) {
      MetaPathSet members;
      for (const auto& text : group.paths) {
        MetaPath mp = parse_candidate(text, schema, cfg.auto_exclusions);
        check_endpoints(mp, schema, target_edge, text);
        if (drop_path && mp.steps == drop_path->steps) continue;
        members.push_back(std::move(mp));
      }
      if (members.empty()) continue;  // group emptied by the anchor drop
      const auto tables = pcrw_batch(aug, members);
      std::vector<const CsrMatrix*> refs;
      refs.reserve(tables.size());
      for (const auto& t : tables) refs.push_back(&t.table);
      out.push_back(aggregate_feature(group.name, refs, cfg.feature_agg));
    }
    return out;
  }

  MetaPathSet kept;
  std::vector<std::string> kept_names;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (drop_path && paths[i].steps == drop_path->steps) continue;
    kept.push_back(paths[i]);
    kept_names.push_back(names[i]);
  }
  const auto tables = pcrw_batch(aug, kept);
  out.reserve(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    out.push_back({kept_names[i], tables[i].table});
  }
  return out;
}

Pipeline build_pipeline(const ExperimentConfig& cfg, LoadedGraph raw,
                        const MetaPath* drop_path = nullptr) {
  Pipeline p;
  p.raw = std::move(raw);
  auto target = p.raw.graph.find_link_type(cfg.target);
  if (!target) {
    raise(Status::UnknownType,
          "target link type '" + cfg.target + "' is not in the data");
  }
  p.target = *target;
  p.aug = p.raw.graph.augment_with_holes();
  p.schema = p.aug.schema();
  p.target_table = pcrw(p.aug, MetaPath{{p.target}, {}}).table;
  p.regressors = build_regressors(p.aug, p.schema, p.target, cfg, drop_path);
  return p;
}

Pipeline build_pipeline(const ExperimentConfig& cfg) {
  return build_pipeline(cfg, load_edgelist(cfg.input, cfg.has_header));
}

FitOptions fit_options(const ExperimentConfig& cfg) {
  FitOptions opts;
  opts.drop_holes = !cfg.keep_holes;
  return opts;
}

std::string write_file(const fs::path& dir, const std::string& name,
                       const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) raise(Status::IoError, "cannot write '" + path.string() + "'");
  out << content;
  return path.string();
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  }
  return out;
}

std::map<NodeId, std::string> load_categories(const std::string& path,
                                              const LoadedGraph& g,
                                              NodeTypeId pivot) {
  std::ifstream in(path);
  if (!in) raise(Status::IoError, "cannot open '" + path + "'");
  std::map<NodeId, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      raise(Status::ParseError, path + ":" + std::to_string(line_no) +
                                    ": expected 'node<TAB>category'");
    }
    const std::string node_name = line.substr(0, tab);
    const std::string category = line.substr(tab + 1);
    auto node = g.find_node(pivot, node_name);
    if (!node) {
      raise(Status::UncategorizedNode,
            path + ":" + std::to_string(line_no) + ": '" + node_name +
                "' is not a node of the pivot type");
    }
    out[*node] = category;
  }
  // Name any real pivot node the file missed.
  for (NodeId v = 0; v < g.graph.real_count(pivot); ++v) {
    if (!out.count(v)) {
      raise(Status::UncategorizedNode,
            "pivot node '" + g.node_names[pivot][v] + "' has no category in '" +
                path + "'");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Status::IoError, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(Status::ParseError, path + ": " + e.what());
  }
  return parse_config(j, fs::path(path).parent_path());
}

DescribeOutcome run_describe(const ExperimentConfig& cfg) {
  Pipeline p = build_pipeline(cfg);
  const FitOptions opts = fit_options(cfg);
  const auto sources = all_real_sources(p.target_table);

  DescribeOutcome out;
  out.trace = forward_select(p.target_table, p.regressors, sources, cfg.alpha, opts);

  const fs::path dir(cfg.out_dir);
  out.files.push_back(write_file(dir, "selection_trace.json",
                                 selection_trace_to_json(out.trace, cfg.alpha)));
  out.files.push_back(write_file(dir, "selection_trace.csv",
                                 selection_trace_to_csv(out.trace)));

  std::vector<RegressorTable> chosen;
  for (std::size_t c : out.trace.selected) chosen.push_back(p.regressors[c]);
  const DesignMatrix design = assemble_design(p.target_table, chosen, sources, opts);
  const auto fitted = predict(design, out.trace.final_fit());
  std::ostringstream scatter;
  scatter.precision(12);
  scatter << "observed,fitted\n";
  for (std::size_t i = 0; i < design.n_rows; ++i) {
    scatter << design.y[i] << "," << fitted[i] << "\n";
  }
  out.files.push_back(write_file(dir, "observed_vs_fitted.csv", scatter.str()));
  return out;
}

RecoverOutcome run_recover(const ExperimentConfig& cfg, bool per_category) {
  RecoverOutcome out;
  const FitOptions opts = fit_options(cfg);
  const fs::path dir(cfg.out_dir);

  if (!per_category) {
    Pipeline p = build_pipeline(cfg);
    RecoverOutcome::Entry entry;
    entry.ok = true;
    entry.report = monte_carlo_cv(p.target_table, p.regressors, cfg.alpha,
                                  cfg.cv, opts);
    out.files.push_back(write_file(dir, "cv_report.json",
                                   cv_report_to_json(entry.report, cfg.cv)));
    out.files.push_back(write_file(dir, "cv_report.csv",
                                   cv_report_to_csv(entry.report)));
    out.entries.push_back(std::move(entry));
    return out;
  }

  if (!cfg.categories) {
    raise(Status::InvalidArgument,
          "per-category recovery needs a 'categories' config section");
  }
  LoadedGraph raw = load_edgelist(cfg.input, cfg.has_header);
  auto pivot = raw.graph.find_node_type(cfg.categories->pivot_type);
  if (!pivot) {
    raise(Status::UnknownType,
          "pivot type '" + cfg.categories->pivot_type + "' is not in the data");
  }
  const Schema schema = raw.graph.schema();
  const MetaPath anchor =
      parse_metapath(cfg.categories->anchor, schema, cfg.auto_exclusions);
  const auto categories = load_categories(cfg.categories->file, raw, *pivot);
  const auto subgraphs = divide_by_category(raw.graph, *pivot, categories, anchor);

  nlohmann::json summary = nlohmann::json::array();
  for (const auto& sub : subgraphs) {
    RecoverOutcome::Entry entry;
    entry.category = sub.category;
    LoadedGraph sub_loaded;
    sub_loaded.graph = sub.graph;
    sub_loaded.node_names.resize(sub.kept.size());
    for (std::size_t t = 0; t < sub.kept.size(); ++t) {
      for (NodeId orig : sub.kept[t]) {
        sub_loaded.node_names[t].push_back(raw.node_names[t][orig]);
      }
    }
    try {
      Pipeline p = build_pipeline(cfg, std::move(sub_loaded), &anchor);
      entry.report =
          monte_carlo_cv(p.target_table, p.regressors, cfg.alpha, cfg.cv, opts);
      entry.ok = true;
      const std::string stem = "cv_report_" + sanitize(sub.category);
      out.files.push_back(write_file(dir, stem + ".json",
                                     cv_report_to_json(entry.report, cfg.cv)));
      out.files.push_back(
          write_file(dir, stem + ".csv", cv_report_to_csv(entry.report)));
    } catch (const Error& e) {
      entry.status = std::string(status_name(e.code())) + ": " + e.what();
    }
    nlohmann::json s = {{"category", sub.category}, {"ok", entry.ok}};
    if (entry.ok) {
      s["train_r2_mean"] = entry.report.train_r2_mean;
      s["test_r2_mean"] = entry.report.test_r2_mean;
      s["n_splits"] = entry.report.splits.size();
    } else {
      s["status"] = entry.status;
    }
    summary.push_back(std::move(s));
    out.entries.push_back(std::move(entry));
  }
  out.files.push_back(write_file(dir, "cv_summary.json", summary.dump(2)));
  return out;
}

NullcheckOutcome run_nullcheck(const ExperimentConfig& cfg,
                               std::optional<std::size_t> replicates_override) {
  const std::size_t replicates =
      replicates_override.value_or(cfg.null_model.replicates);
  const FitOptions opts = fit_options(cfg);

  LoadedGraph raw = load_edgelist(cfg.input, cfg.has_header);

  NullcheckOutcome out;
  {
    Pipeline p = build_pipeline(cfg, raw);
    out.real_trace = forward_select(p.target_table, p.regressors,
                                    all_real_sources(p.target_table), cfg.alpha,
                                    opts);
  }

  std::vector<LinkTypeId> eligible;
  if (cfg.null_model.links.empty()) {
    for (std::size_t e = 0; e < raw.graph.link_type_count(); ++e) {
      if (raw.graph.adjacency(static_cast<LinkTypeId>(e)).nnz() >= 2) {
        eligible.push_back(static_cast<LinkTypeId>(e));
      }
    }
  } else {
    for (const auto& name : cfg.null_model.links) {
      auto id = raw.graph.find_link_type(name);
      if (!id) {
        raise(Status::UnknownType,
              "null-model link type '" + name + "' is not in the data");
      }
      eligible.push_back(*id);
    }
  }

  std::size_t failures = 0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    NullcheckOutcome::Replicate r;
    r.index = rep;
    try {
      TypedGraph shuffled = raw.graph;
      for (LinkTypeId link : eligible) {
        const std::uint64_t seed =
            cfg.null_model.seed + rep * 1000003ULL + link * 101ULL;
        shuffled = null_model(shuffled, link, cfg.null_model.mode, seed);
      }
      LoadedGraph shuffled_loaded{std::move(shuffled), raw.node_names};
      Pipeline p = build_pipeline(cfg, std::move(shuffled_loaded));
      const SelectionTrace trace =
          forward_select(p.target_table, p.regressors,
                         all_real_sources(p.target_table), cfg.alpha, opts);
      r.ok = true;
      r.r2 = trace.final_fit().r2;
      for (const auto& step : trace.steps) r.selected.push_back(step.name);
    } catch (const Error& e) {
      r.error = std::string(status_name(e.code())) + ": " + e.what();
      ++failures;
    }
    out.replicates.push_back(std::move(r));
  }
  if (replicates > 0 && failures == replicates) {
    raise(Status::TooFewEdges, "every null replicate failed: " +
                                   out.replicates.front().error);
  }

  double sum = 0.0;
  std::size_t n_ok = 0;
  for (const auto& r : out.replicates) {
    if (!r.ok) continue;
    ++n_ok;
    sum += r.r2;
    out.null_r2_max = std::max(out.null_r2_max, r.r2);
    if (!r.selected.empty()) ++out.significant_replicates;
  }
  out.null_r2_mean = n_ok > 0 ? sum / static_cast<double>(n_ok) : 0.0;

  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : out.replicates) {
    nlohmann::json jr = {{"replicate", r.index}, {"ok", r.ok}};
    if (r.ok) {
      jr["r2"] = r.r2;
      jr["selected"] = r.selected;
    } else {
      jr["error"] = r.error;
    }
    reps.push_back(std::move(jr));
  }
  nlohmann::json real_selected = nlohmann::json::array();
  const FitResult& real_fit = out.real_trace.final_fit();
  for (std::size_t i = 0; i < out.real_trace.steps.size(); ++i) {
    real_selected.push_back({{"name", out.real_trace.steps[i].name},
                             {"coefficient", real_fit.beta[i + 1]},
                             {"p_value", real_fit.p_values[i]}});
  }
  nlohmann::json doc = {
      {"real", {{"r2", out.real_trace.final_fit().r2}, {"selected", real_selected}}},
      {"replicates", std::move(reps)},
      {"null_r2_mean", out.null_r2_mean},
      {"null_r2_max", out.null_r2_max},
      {"significant_replicates", out.significant_replicates},
  };

  std::ostringstream csv;
  csv.precision(12);
  csv << "run,r2,n_selected\n";
  csv << "real," << out.real_trace.final_fit().r2 << ","
      << out.real_trace.steps.size() << "\n";
  for (const auto& r : out.replicates) {
    if (r.ok) {
      csv << "null-" << r.index << "," << r.r2 << "," << r.selected.size() << "\n";
    } else {
      csv << "null-" << r.index << ",,\n";
    }
  }

  const fs::path dir(cfg.out_dir);
  out.files.push_back(write_file(dir, "nullcheck.json", doc.dump(2)));
  out.files.push_back(write_file(dir, "nullcheck.csv", csv.str()));
  return out;
}

}  // namespace hinreg
