// SPDX-License-Identifier: Apache-2.0
#include "hinreg/metapath.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "hinreg/error.hpp"

namespace hinreg {

namespace {

void canonicalize(std::vector<Exclusion>& ex) {
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
}

}  // namespace

std::vector<NodeTypeId> node_slots(const MetaPath& mp, const Schema& schema) {
  if (mp.steps.empty()) {
    raise(Status::InvalidArgument, "meta-path must have at least one step");
  }
  std::vector<NodeTypeId> slots;
  slots.reserve(mp.steps.size() + 1);
  for (std::size_t i = 0; i < mp.steps.size(); ++i) {
    if (mp.steps[i] >= schema.link_types.size()) {
      raise(Status::UnknownType,
            "meta-path step " + std::to_string(i) + " references link type id " +
                std::to_string(mp.steps[i]) + " outside the schema");
    }
    const auto& lt = schema.link_types[mp.steps[i]];
    if (i == 0) {
      slots.push_back(lt.source);
    } else if (slots.back() != lt.source) {
      raise(Status::ChainMismatch,
            "step " + std::to_string(i) + " ('" + lt.name + "') starts at node type '" +
                schema.node_types[lt.source] + "' but the previous step ends at '" +
                schema.node_types[slots.back()] + "'");
    }
    slots.push_back(lt.target);
  }
  return slots;
}

void validate_metapath(const MetaPath& mp, const Schema& schema) {
  const auto slots = node_slots(mp, schema);
  for (const auto& ex : mp.exclusions) {
    if (ex.seen_at >= ex.banned_at) {
      raise(Status::BadExclusion,
            "exclusion (" + std::to_string(ex.seen_at) + ", " +
                std::to_string(ex.banned_at) + ") must have seen_at < banned_at");
    }
    if (ex.banned_at >= slots.size()) {
      raise(Status::BadExclusion,
            "exclusion slot " + std::to_string(ex.banned_at) +
                " is beyond the path's last slot " + std::to_string(slots.size() - 1));
    }
    if (slots[ex.seen_at] != slots[ex.banned_at]) {
      raise(Status::BadExclusion,
            "exclusion (" + std::to_string(ex.seen_at) + ", " +
                std::to_string(ex.banned_at) + ") compares slots of different node types ('" +
                schema.node_types[slots[ex.seen_at]] + "' vs '" +
                schema.node_types[slots[ex.banned_at]] + "'); the constraint is vacuous");
    }
  }
}

std::vector<Exclusion> default_exclusions(const MetaPath& mp, const Schema& schema) {
  const auto slots = node_slots(mp, schema);
  const std::size_t n = mp.steps.size();
  std::vector<Exclusion> out;
  if (n >= 2 && slots[n - 1] == slots[0]) {
    out.push_back({0, static_cast<std::uint32_t>(n - 1)});
  }
  if (n == 4 && slots[1] == slots[3] && slots[4] == slots[0]) {
    out.push_back({1, 3});
  }
  return out;
}

MetaPath with_default_exclusions(MetaPath mp, const Schema& schema) {
  auto defaults = default_exclusions(mp, schema);
  mp.exclusions.insert(mp.exclusions.end(), defaults.begin(), defaults.end());
  canonicalize(mp.exclusions);
  validate_metapath(mp, schema);
  return mp;
}

MetaPath parse_metapath(std::string_view text, const Schema& schema,
                        bool auto_exclusions) {
  MetaPath mp;

  // Split off "!(a,b)" clauses; everything before the first '!' is the chain.
  const std::size_t bang = text.find('!');
  std::string_view chain = text.substr(0, bang);
  std::string_view clauses =
      bang == std::string_view::npos ? std::string_view{} : text.substr(bang);

  while (!chain.empty() && std::isspace(static_cast<unsigned char>(chain.back()))) {
    chain.remove_suffix(1);
  }

  std::size_t pos = 0;
  while (true) {
    std::size_t dash = chain.find('-', pos);
    std::string_view token =
        chain.substr(pos, dash == std::string_view::npos ? dash : dash - pos);
    if (token.empty()) {
      raise(Status::ParseError,
            "empty link type name at position " + std::to_string(pos) + " in '" +
                std::string(text) + "'");
    }
    auto id = schema.find_link_type(token);
    if (!id) {
      raise(Status::UnknownType,
            "unknown link type '" + std::string(token) + "' at position " +
                std::to_string(pos) + " in '" + std::string(text) + "'");
    }
    mp.steps.push_back(*id);
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }

  std::size_t c = 0;
  while (c < clauses.size()) {
    if (std::isspace(static_cast<unsigned char>(clauses[c]))) {
      ++c;
      continue;
    }
    if (clauses[c] != '!' || c + 1 >= clauses.size() || clauses[c + 1] != '(') {
      raise(Status::ParseError,
            "expected '!(a,b)' exclusion clause at position " +
                std::to_string(bang + c) + " in '" + std::string(text) + "'");
    }
    std::size_t close = clauses.find(')', c);
    if (close == std::string_view::npos) {
      raise(Status::ParseError, "unterminated exclusion clause in '" + std::string(text) + "'");
    }
    std::string_view body = clauses.substr(c + 2, close - c - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) {
      raise(Status::ParseError, "exclusion clause needs two slots in '" + std::string(text) + "'");
    }
    auto parse_slot = [&](std::string_view s) -> std::uint32_t {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        raise(Status::ParseError,
              "bad slot number '" + std::string(s) + "' in '" + std::string(text) + "'");
      }
      return v;
    };
    mp.exclusions.push_back({parse_slot(body.substr(0, comma)), parse_slot(body.substr(comma + 1))});
    c = close + 1;
  }

  if (auto_exclusions) {
    auto defaults = default_exclusions(mp, schema);
    mp.exclusions.insert(mp.exclusions.end(), defaults.begin(), defaults.end());
  }
  canonicalize(mp.exclusions);
  validate_metapath(mp, schema);
  return mp;
}

std::string format_metapath(const MetaPath& mp, const Schema& schema) {
  std::string out;
  for (std::size_t i = 0; i < mp.steps.size(); ++i) {
    if (i > 0) out += '-';
    if (mp.steps[i] >= schema.link_types.size()) {
      raise(Status::UnknownType, "meta-path step outside the schema");
    }
    out += schema.link_types[mp.steps[i]].name;
  }
  const auto defaults = default_exclusions(mp, schema);
  for (const auto& ex : mp.exclusions) {
    if (std::find(defaults.begin(), defaults.end(), ex) != defaults.end()) continue;
    out += " !(" + std::to_string(ex.seen_at) + "," + std::to_string(ex.banned_at) + ")";
  }
  return out;
}

MetaPathSet enumerate_metapaths(const Schema& schema, NodeTypeId src_t,
                                NodeTypeId dst_t, std::size_t max_len,
                                std::optional<LinkTypeId> exclude,
                                bool auto_exclusions) {
  if (max_len < 1) raise(Status::InvalidArgument, "max_len must be >= 1");
  if (src_t >= schema.node_types.size() || dst_t >= schema.node_types.size()) {
    raise(Status::UnknownType, "enumeration endpoints outside the schema");
  }

  MetaPathSet out;
  std::vector<LinkTypeId> stack;

  // Lexicographic depth-first walk over the schema digraph; link type ids
  // ascend at each step, so output order is deterministic.
  auto descend = [&](auto&& self, NodeTypeId at, std::size_t target_len) -> void {
    if (stack.size() == target_len) {
      if (at == dst_t) {
        MetaPath mp{stack, {}};
        if (target_len == 1 && exclude && stack[0] == *exclude) return;
        if (auto_exclusions) mp = with_default_exclusions(std::move(mp), schema);
        out.push_back(std::move(mp));
      }
      return;
    }
    for (std::size_t e = 0; e < schema.link_types.size(); ++e) {
      if (schema.link_types[e].source != at) continue;
      stack.push_back(static_cast<LinkTypeId>(e));
      self(self, schema.link_types[e].target, target_len);
      stack.pop_back();
    }
  };

  for (std::size_t len = 1; len <= max_len; ++len) {
    descend(descend, src_t, len);
  }
  return out;
}

}  // namespace hinreg
