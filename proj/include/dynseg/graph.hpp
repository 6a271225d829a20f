#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynseg/errors.hpp"

namespace dynseg {

using NodeId = std::uint32_t;

// Maps actor/location strings to dense ids, assigned in first-seen order.
// Interning is case-sensitive; ids stay valid for the table's lifetime.
class Interner {
 public:
  NodeId intern(std::string_view name);
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> names_;
};

// Undirected link with canonical endpoint order a < b, so (x,y) and (y,x)
// compare equal and link sets can be intersected as sorted ranges.
struct Link {
  NodeId a = 0;
  NodeId b = 0;
  friend auto operator<=>(const Link&, const Link&) = default;
};

inline Link make_link(NodeId x, NodeId y) {
  return x < y ? Link{x, y} : Link{y, x};
}

// Half-open [start, end) interval in epoch seconds UTC.
struct Interval {
  std::int64_t start = 0;
  std::int64_t end = 0;

  std::int64_t duration() const { return end - start; }
  bool contains(std::int64_t t) const { return t >= start && t < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Immutable static network for one sub-interval. Node and link sets are
// sorted and unique; adjacency is a CSR view over the node vector. Values
// are cheap to copy around and safe to share between threads.
class Snapshot {
 public:
  Snapshot() = default;

  // `nodes` may contain duplicates and may omit link endpoints; `links` may
  // contain duplicates, uncanonical pairs, and self-pairs. Everything is
  // canonicalized here: self-links dropped, endpoints folded into the node
  // set, both sets sorted and deduplicated.
  Snapshot(Interval interval, std::vector<NodeId> nodes, std::vector<Link> links);

  const Interval& interval() const { return interval_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  bool has_node(NodeId v) const;

  // v's neighbor set, sorted ascending; empty when v is absent or isolated.
  std::span<const NodeId> neighbors(NodeId v) const;

  // Position of v in the sorted node vector, or nodes().size() if absent.
  std::size_t node_pos(NodeId v) const;
  std::span<const NodeId> neighbors_at(std::size_t pos) const;

 private:
  Interval interval_;
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  std::vector<std::uint32_t> adj_offsets_;  // size nodes_.size() + 1
  std::vector<NodeId> adj_;                 // 2 * links_.size(), sorted per node
};

// Chronologically ordered, contiguous snapshots over `span`. extract()
// produces fixed-epsilon tiles (the last may be shorter when the span is not
// a multiple of epsilon); segmentation produces variable multiples of epsilon.
struct DynamicNetwork {
  std::int64_t epsilon = 0;
  Interval span;
  std::vector<Snapshot> snapshots;

  bool ragged_tail() const {
    return !snapshots.empty() && snapshots.back().interval().duration() < epsilon;
  }
};

// Union of contiguous snapshots: interval [first.start, last.end), node and
// link sets united. Throws NonContiguous when intervals gap or overlap.
Snapshot aggregate(std::span<const Snapshot> parts);

}  // namespace dynseg
