// SPDX-License-Identifier: Apache-2.0
#include "hinreg/edgelist.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "hinreg/error.hpp"

namespace hinreg {

std::optional<NodeId> LoadedGraph::find_node(NodeTypeId type,
                                             std::string_view name) const {
  if (type >= node_names.size()) return std::nullopt;
  const auto& names = node_names[type];
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

LoadedGraph load_edgelist(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) raise(Status::IoError, "cannot open '" + path + "'");
  return load_edgelist(in, path, has_header);
}

LoadedGraph load_edgelist(std::istream& in, const std::string& display_path,
                          bool has_header) {
  std::vector<std::string> type_names;
  std::map<std::string, NodeTypeId, std::less<>> type_ids;
  std::vector<std::map<std::string, NodeId, std::less<>>> node_ids;
  std::vector<std::vector<std::string>> node_names;

  std::vector<LinkTypeDecl> link_types;
  std::map<std::string, LinkTypeId, std::less<>> link_ids;
  std::vector<WeightedEdge> edges;

  auto intern_type = [&](const std::string& name) -> NodeTypeId {
    auto it = type_ids.find(name);
    if (it != type_ids.end()) return it->second;
    const auto id = static_cast<NodeTypeId>(type_names.size());
    type_names.push_back(name);
    type_ids.emplace(name, id);
    node_ids.emplace_back();
    node_names.emplace_back();
    return id;
  };
  auto intern_node = [&](NodeTypeId type, const std::string& name) -> NodeId {
    auto it = node_ids[type].find(name);
    if (it != node_ids[type].end()) return it->second;
    const auto id = static_cast<NodeId>(node_names[type].size());
    node_names[type].push_back(name);
    node_ids[type].emplace(name, id);
    return id;
  };

  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos
                                              ? std::string::npos
                                              : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    auto where = display_path + ":" + std::to_string(line_no);
    if (fields.size() != 6) {
      raise(Status::ParseError,
            where + ": expected 6 tab-separated fields, got " +
                std::to_string(fields.size()));
    }
    const std::string& src_type = fields[0];
    const std::string& src_id = fields[1];
    const std::string& link_name = fields[2];
    const std::string& dst_type = fields[3];
    const std::string& dst_id = fields[4];
    const std::string& weight_text = fields[5];
    if (src_type.empty() || src_id.empty() || link_name.empty() ||
        dst_type.empty() || dst_id.empty()) {
      raise(Status::ParseError, where + ": empty field");
    }

    errno = 0;
    char* end = nullptr;
    const double weight = std::strtod(weight_text.c_str(), &end);
    if (end != weight_text.c_str() + weight_text.size() || weight_text.empty() ||
        errno == ERANGE || !std::isfinite(weight)) {
      raise(Status::ParseError,
            where + ": malformed weight '" + weight_text + "'");
    }
    if (weight < 0.0) {
      raise(Status::NegativeWeight,
            where + ": negative weight " + weight_text);
    }

    const NodeTypeId st = intern_type(src_type);
    const NodeTypeId dt = intern_type(dst_type);
    auto lit = link_ids.find(link_name);
    LinkTypeId link;
    if (lit == link_ids.end()) {
      link = static_cast<LinkTypeId>(link_types.size());
      link_types.push_back({link_name, st, dt});
      link_ids.emplace(link_name, link);
    } else {
      link = lit->second;
      const auto& decl = link_types[link];
      if (decl.source != st || decl.target != dt) {
        raise(Status::TypeMismatch,
              where + ": link type '" + link_name + "' connects '" +
                  type_names[decl.source] + "' to '" + type_names[decl.target] +
                  "', not '" + src_type + "' to '" + dst_type + "'");
      }
    }
    edges.push_back({link, intern_node(st, src_id), intern_node(dt, dst_id), weight});
  }

  std::vector<NodeTypeDecl> decls;
  decls.reserve(type_names.size());
  for (std::size_t t = 0; t < type_names.size(); ++t) {
    decls.push_back({type_names[t], static_cast<Index>(node_names[t].size())});
  }

  LoadedGraph out;
  out.graph = TypedGraph::build(std::move(decls), std::move(link_types), edges);
  out.node_names = std::move(node_names);
  return out;
}

void dump_edgelist(const LoadedGraph& g, std::ostream& out) {
  const auto& graph = g.graph;
  out << std::setprecision(17);
  for (std::size_t e = 0; e < graph.link_type_count(); ++e) {
    const auto& lt = graph.link_type(static_cast<LinkTypeId>(e));
    const auto& w = graph.adjacency(static_cast<LinkTypeId>(e));
    const Index n_src = graph.real_count(lt.source);
    const Index n_dst = graph.real_count(lt.target);
    for (Index r = 0; r < n_src && r < w.rows(); ++r) {
      auto cols = w.row_cols(r);
      auto vals = w.row_vals(r);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] >= n_dst) continue;  // hole edges never leave the process
        out << graph.node_type(lt.source).name << '\t'
            << g.node_names[lt.source][r] << '\t' << lt.name << '\t'
            << graph.node_type(lt.target).name << '\t'
            << g.node_names[lt.target][cols[i]] << '\t' << vals[i] << '\n';
      }
    }
  }
}

void dump_edgelist(const LoadedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(Status::IoError, "cannot write '" + path + "'");
  dump_edgelist(g, out);
}

}  // namespace hinreg
