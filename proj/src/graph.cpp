#include "dynseg/graph.hpp"

#include <algorithm>

namespace dynseg {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_header: return "MalformedHeader";
    case Errc::empty_input: return "EmptyInput";
    case Errc::wrong_kind: return "WrongKind";
    case Errc::invalid_epsilon: return "InvalidEpsilon";
    case Errc::non_contiguous: return "NonContiguous";
    case Errc::not_common_node: return "NotCommonNode";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::invalid_metric: return "InvalidMetric";
    case Errc::too_few_snapshots: return "TooFewSnapshots";
    case Errc::empty_series: return "EmptySeries";
    case Errc::zero_mean: return "ZeroMean";
    case Errc::span_too_short: return "SpanTooShort";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

NodeId Interner::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  NodeId id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

Snapshot::Snapshot(Interval interval, std::vector<NodeId> nodes, std::vector<Link> links)
    : interval_(interval), nodes_(std::move(nodes)) {
  links_.reserve(links.size());
  for (Link l : links) {
    nodes_.push_back(l.a);
    nodes_.push_back(l.b);
    if (l.a == l.b) continue;  // simple graphs: the node stays, the link goes
    links_.push_back(l.a < l.b ? l : Link{l.b, l.a});
  }
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

  // CSR fill. Links are sorted by (a,b), so every per-node neighbor list
  // comes out ascending without a second sort.
  adj_offsets_.assign(nodes_.size() + 1, 0);
  for (const Link& l : links_) {
    ++adj_offsets_[node_pos(l.a) + 1];
    ++adj_offsets_[node_pos(l.b) + 1];
  }
  for (std::size_t i = 1; i < adj_offsets_.size(); ++i)
    adj_offsets_[i] += adj_offsets_[i - 1];
  adj_.resize(2 * links_.size());
  std::vector<std::uint32_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const Link& l : links_) {
    adj_[cursor[node_pos(l.a)]++] = l.b;
    adj_[cursor[node_pos(l.b)]++] = l.a;
  }
}

std::size_t Snapshot::node_pos(NodeId v) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) return nodes_.size();
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Snapshot::has_node(NodeId v) const { return node_pos(v) != nodes_.size(); }

std::span<const NodeId> Snapshot::neighbors(NodeId v) const {
  std::size_t pos = node_pos(v);
  if (pos == nodes_.size()) return {};
  return neighbors_at(pos);
}

std::span<const NodeId> Snapshot::neighbors_at(std::size_t pos) const {
  return std::span<const NodeId>(adj_).subspan(adj_offsets_[pos],
                                               adj_offsets_[pos + 1] - adj_offsets_[pos]);
}

Snapshot aggregate(std::span<const Snapshot> parts) {
  if (parts.empty()) fail(Errc::non_contiguous, "aggregate of zero snapshots");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].interval().start != parts[i - 1].interval().end)
      fail(Errc::non_contiguous,
           "snapshot intervals must tile without gaps or overlap");
  }
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  for (const Snapshot& s : parts) {
    nodes.insert(nodes.end(), s.nodes().begin(), s.nodes().end());
    links.insert(links.end(), s.links().begin(), s.links().end());
  }
  Interval span{parts.front().interval().start, parts.back().interval().end};
  return Snapshot(span, std::move(nodes), std::move(links));
}

}  // namespace dynseg
