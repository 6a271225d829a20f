#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynseg/graph.hpp"

namespace dynseg {

enum class LogKind { session, dyadic };
enum class LogFormat { wap, dyadic };

// One co-location session: an actor attached to a location for
// [connect, disconnect). Timestamps may be missing until clean().
struct SessionRecord {
  NodeId actor = 0;
  std::uint32_t location = 0;
  std::optional<std::int64_t> connect;
  std::optional<std::int64_t> disconnect;
};

// One directed interaction record expanded to one or more targets.
struct DyadicRecord {
  std::int64_t timestamp = 0;
  NodeId from = 0;
  std::vector<NodeId> to;
};

// Cleaned, chronologically ordered interaction records. Session logs sort
// by (actor, connect); dyadic logs by timestamp. Immutable once cleaned, so
// per-tile windowing can run concurrently.
struct EventLog {
  LogKind kind = LogKind::session;
  Interner actors;
  Interner locations;  // session logs only
  std::vector<SessionRecord> sessions;
  std::vector<DyadicRecord> dyads;
  Interval span;                    // tight cover of all timestamps
  std::size_t malformed_lines = 0;  // counted at parse, reported by the CLI
  std::size_t merged_records = 0;   // filled by clean()
};

// Reads one of the two CSV layouts:
//   wap:    device_id,ap_name,connect_ts,disconnect_ts   (empty field = missing)
//   dyadic: timestamp,from,to                            (to = ';'-separated list)
// Malformed data lines are counted and skipped. MalformedHeader when the
// header does not match; EmptyInput when no record survives parsing.
EventLog parse(std::istream& in, LogFormat format);
EventLog parse_file(const std::string& path, LogFormat format);

// Session logs only (WrongKind otherwise): drops records with a missing
// connect or disconnect, then merges per-actor runs of same-location records
// whose boundaries touch (prev.disconnect == next.connect), transitively.
// Idempotent; preserves total covered time per (actor, location).
EventLog clean(const EventLog& log);

// Snapshot of all sessions overlapping `window`: each overlapping actor is a
// node, and two actors sharing a location within the window are linked.
// With strict_colocation the two sessions must also overlap each other
// inside the window, not just the window itself.
Snapshot window_session(const EventLog& log, const Interval& window,
                        bool strict_colocation = false);

// Snapshot of all interactions with timestamp inside `window`; self-addressed
// targets contribute the node but no link.
Snapshot window_dyadic(const EventLog& log, const Interval& window);

struct ExtractOptions {
  bool strict_colocation = false;
};

// Tiles `span` into consecutive epsilon-length windows (last may be shorter)
// and builds one snapshot per tile with the kind-appropriate windowing.
// The parallel version fills tiles with OpenMP; output is identical to the
// serial reference.
DynamicNetwork extract(const EventLog& log, std::int64_t epsilon, Interval span,
                       const ExtractOptions& opts = {});
DynamicNetwork extract(const EventLog& log, std::int64_t epsilon,
                       const ExtractOptions& opts = {});  // span = log.span

namespace serial {
DynamicNetwork extract(const EventLog& log, std::int64_t epsilon, Interval span,
                       const ExtractOptions& opts = {});
}

// Number of epsilon tiles covering span: ceil(duration / epsilon).
std::int64_t tile_count(const Interval& span, std::int64_t epsilon);

}  // namespace dynseg
