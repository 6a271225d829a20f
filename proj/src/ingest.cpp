#include "dynseg/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>

namespace dynseg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    std::size_t pos = line.find(sep, begin);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(begin)));
      return fields;
    }
    fields.push_back(trim(line.substr(begin, pos - begin)));
    begin = pos + 1;
  }
}

std::optional<std::int64_t> parse_ts(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("bad timestamp");
  return value;
}

bool header_matches(std::string_view line, std::string_view expected) {
  auto got = split(line, ',');
  auto want = split(expected, ',');
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i] != want[i]) return false;
  return true;
}

void compute_span(EventLog& log) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  if (log.kind == LogKind::session) {
    for (const auto& r : log.sessions) {
      if (r.connect) lo = std::min(lo, *r.connect);
      if (r.disconnect) hi = std::max(hi, *r.disconnect);
    }
  } else {
    for (const auto& r : log.dyads) {
      lo = std::min(lo, r.timestamp);
      hi = std::max(hi, r.timestamp + 1);  // half-open cover of the instant
    }
  }
  if (lo > hi) lo = hi = 0;
  if (hi <= lo) hi = lo + 1;
  log.span = Interval{lo, hi};
}

void sort_records(EventLog& log) {
  if (log.kind == LogKind::session) {
    std::sort(log.sessions.begin(), log.sessions.end(),
              [](const SessionRecord& x, const SessionRecord& y) {
                auto key = [](const SessionRecord& r) {
                  return std::tuple(r.actor,
                                    r.connect.value_or(std::numeric_limits<std::int64_t>::max()),
                                    r.disconnect.value_or(std::numeric_limits<std::int64_t>::max()),
                                    r.location);
                };
                return key(x) < key(y);
              });
  } else {
    std::stable_sort(log.dyads.begin(), log.dyads.end(),
                     [](const DyadicRecord& x, const DyadicRecord& y) {
                       return x.timestamp < y.timestamp;
                     });
  }
}

}  // namespace

std::int64_t tile_count(const Interval& span, std::int64_t epsilon) {
  return (span.duration() + epsilon - 1) / epsilon;
}

EventLog parse(std::istream& in, LogFormat format) {
  std::string line;
  if (!std::getline(in, line)) fail(Errc::empty_input, "no header line");
  std::string_view header = trim(line);
  if (header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);  // UTF-8 BOM

  EventLog log;
  log.kind = format == LogFormat::wap ? LogKind::session : LogKind::dyadic;

  if (format == LogFormat::wap) {
    if (!header_matches(header, "device_id,ap_name,connect_ts,disconnect_ts"))
      fail(Errc::malformed_header,
           "expected 'device_id,ap_name,connect_ts,disconnect_ts'");
    while (std::getline(in, line)) {
      std::string_view row = trim(line);
      if (row.empty()) continue;
      auto fields = split(row, ',');
      if (fields.size() != 4 || fields[0].empty() || fields[1].empty()) {
        ++log.malformed_lines;
        continue;
      }
      SessionRecord rec;
      try {
        rec.connect = parse_ts(fields[2]);
        rec.disconnect = parse_ts(fields[3]);
      } catch (const std::invalid_argument&) {
        ++log.malformed_lines;
        continue;
      }
      if (rec.connect && rec.disconnect && *rec.connect > *rec.disconnect) {
        ++log.malformed_lines;  // inverted session
        continue;
      }
      rec.actor = log.actors.intern(fields[0]);
      rec.location = log.locations.intern(fields[1]);
      log.sessions.push_back(std::move(rec));
    }
    if (log.sessions.empty()) fail(Errc::empty_input, "no parseable records");
  } else {
    if (!header_matches(header, "timestamp,from,to"))
      fail(Errc::malformed_header, "expected 'timestamp,from,to'");
    while (std::getline(in, line)) {
      std::string_view row = trim(line);
      if (row.empty()) continue;
      auto fields = split(row, ',');
      if (fields.size() != 3 || fields[1].empty()) {
        ++log.malformed_lines;
        continue;
      }
      std::optional<std::int64_t> ts;
      try {
        ts = parse_ts(fields[0]);
      } catch (const std::invalid_argument&) {
        ++log.malformed_lines;
        continue;
      }
      if (!ts) {  // dyadic records require a timestamp
        ++log.malformed_lines;
        continue;
      }
      DyadicRecord rec;
      rec.timestamp = *ts;
      rec.from = log.actors.intern(fields[1]);
      for (std::string_view target : split(fields[2], ';'))
        if (!target.empty()) rec.to.push_back(log.actors.intern(target));
      if (rec.to.empty()) {
        ++log.malformed_lines;
        continue;
      }
      log.dyads.push_back(std::move(rec));
    }
    if (log.dyads.empty()) fail(Errc::empty_input, "no parseable records");
  }

  sort_records(log);
  compute_span(log);
  return log;
}

EventLog parse_file(const std::string& path, LogFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  return parse(in, format);
}

EventLog clean(const EventLog& log) {
  if (log.kind != LogKind::session)
    fail(Errc::wrong_kind, "clean() applies to session logs");
  EventLog out = log;
  out.sessions.clear();
  out.merged_records = 0;
  for (const SessionRecord& rec : log.sessions) {
    if (!rec.connect || !rec.disconnect) continue;  // missing timestamps
    // Records arrive sorted by (actor, connect); merge a boundary-touching
    // run at the same location into the previous record.
    if (!out.sessions.empty()) {
      SessionRecord& prev = out.sessions.back();
      if (prev.actor == rec.actor && prev.location == rec.location &&
          *prev.disconnect == *rec.connect) {
        prev.disconnect = rec.disconnect;
        ++out.merged_records;
        continue;
      }
    }
    out.sessions.push_back(rec);
  }
  if (out.sessions.empty()) fail(Errc::empty_input, "no records survive cleaning");
  compute_span(out);
  return out;
}

namespace {

// Half-open intersection test; zero-length sessions occupy nothing.
bool overlaps(std::int64_t lo, std::int64_t hi, const Interval& window) {
  return std::max(lo, window.start) < std::min(hi, window.end);
}

struct Visit {
  std::uint32_t location;
  NodeId actor;
  std::int64_t connect, disconnect;
};

// Sessions with both timestamps, treated half-open [connect, disconnect).
std::vector<Visit> valid_visits(const EventLog& log) {
  std::vector<Visit> visits;
  visits.reserve(log.sessions.size());
  for (const SessionRecord& rec : log.sessions)
    if (rec.connect && rec.disconnect)
      visits.push_back(Visit{rec.location, rec.actor, *rec.connect, *rec.disconnect});
  return visits;
}

// Co-location snapshot from the visits selected by `idx`, all of which must
// overlap `window`.
Snapshot snapshot_from_visits(const std::vector<Visit>& all,
                              std::vector<std::uint32_t> idx, const Interval& window,
                              bool strict_colocation) {
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t x, std::uint32_t y) {
    return std::tuple(all[x].location, all[x].actor, all[x].connect, x) <
           std::tuple(all[y].location, all[y].actor, all[y].connect, y);
  });
  std::vector<NodeId> nodes;
  nodes.reserve(idx.size());
  for (std::uint32_t i : idx) nodes.push_back(all[i].actor);

  std::vector<Link> links;
  std::size_t begin = 0;
  while (begin < idx.size()) {
    std::size_t end = begin;
    while (end < idx.size() && all[idx[end]].location == all[idx[begin]].location)
      ++end;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < end; ++j) {
        const Visit& a = all[idx[i]];
        const Visit& b = all[idx[j]];
        if (a.actor == b.actor) continue;
        if (strict_colocation) {
          const std::int64_t lo = std::max({a.connect, b.connect, window.start});
          const std::int64_t hi = std::min({a.disconnect, b.disconnect, window.end});
          if (lo >= hi) continue;  // never co-present inside the window
        }
        links.push_back(make_link(a.actor, b.actor));
      }
    }
    begin = end;
  }
  return Snapshot(window, std::move(nodes), std::move(links));
}

}  // namespace

Snapshot window_session(const EventLog& log, const Interval& window,
                        bool strict_colocation) {
  if (log.kind != LogKind::session)
    fail(Errc::wrong_kind, "window_session needs a session log");
  const std::vector<Visit> visits = valid_visits(log);
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < visits.size(); ++i)
    if (overlaps(visits[i].connect, visits[i].disconnect, window)) idx.push_back(i);
  return snapshot_from_visits(visits, std::move(idx), window, strict_colocation);
}

Snapshot window_dyadic(const EventLog& log, const Interval& window) {
  if (log.kind != LogKind::dyadic)
    fail(Errc::wrong_kind, "window_dyadic needs a dyadic log");

  auto lo = std::lower_bound(log.dyads.begin(), log.dyads.end(), window.start,
                             [](const DyadicRecord& r, std::int64_t t) {
                               return r.timestamp < t;
                             });
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  for (auto it = lo; it != log.dyads.end() && it->timestamp < window.end; ++it) {
    nodes.push_back(it->from);
    for (NodeId target : it->to) {
      nodes.push_back(target);
      if (target != it->from) links.push_back(make_link(it->from, target));
    }
  }
  return Snapshot(window, std::move(nodes), std::move(links));
}

namespace {

std::vector<Interval> make_tiles(const Interval& span, std::int64_t epsilon) {
  if (epsilon <= 0) fail(Errc::invalid_epsilon, "epsilon must be positive");
  if (span.duration() <= 0) fail(Errc::empty_input, "empty span");
  std::vector<Interval> tiles;
  tiles.reserve(static_cast<std::size_t>(tile_count(span, epsilon)));
  for (std::int64_t t = span.start; t < span.end; t += epsilon)
    tiles.push_back(Interval{t, std::min(t + epsilon, span.end)});
  return tiles;
}

// Visit indices grouped by the tiles each session overlaps, so windowing a
// tile touches only its own sessions instead of rescanning the whole log.
std::vector<std::vector<std::uint32_t>> bucket_visits(const std::vector<Visit>& visits,
                                                      const Interval& span,
                                                      std::int64_t epsilon,
                                                      std::size_t tiles) {
  std::vector<std::vector<std::uint32_t>> buckets(tiles);
  for (std::uint32_t i = 0; i < visits.size(); ++i) {
    const std::int64_t lo = std::max(visits[i].connect, span.start);
    const std::int64_t hi = std::min(visits[i].disconnect, span.end);
    if (lo >= hi) continue;  // outside the span or zero length
    const std::size_t first = static_cast<std::size_t>((lo - span.start) / epsilon);
    const std::size_t last = static_cast<std::size_t>((hi - 1 - span.start) / epsilon);
    for (std::size_t k = first; k <= last; ++k) buckets[k].push_back(i);
  }
  return buckets;
}

DynamicNetwork extract_impl(const EventLog& log, std::int64_t epsilon, Interval span,
                            const ExtractOptions& opts, bool parallel_tiles) {
  const std::vector<Interval> tiles = make_tiles(span, epsilon);
  DynamicNetwork net;
  net.epsilon = epsilon;
  net.span = span;
  net.snapshots.resize(tiles.size());
  const std::int64_t n = static_cast<std::int64_t>(tiles.size());

  if (log.kind == LogKind::session) {
    const std::vector<Visit> visits = valid_visits(log);
    std::vector<std::vector<std::uint32_t>> buckets =
        bucket_visits(visits, span, epsilon, tiles.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel_tiles)
    for (std::int64_t k = 0; k < n; ++k)
      net.snapshots[k] = snapshot_from_visits(visits, std::move(buckets[k]), tiles[k],
                                              opts.strict_colocation);
  } else {
#pragma omp parallel for schedule(dynamic, 4) if (parallel_tiles)
    for (std::int64_t k = 0; k < n; ++k)
      net.snapshots[k] = window_dyadic(log, tiles[k]);
  }
  return net;
}

}  // namespace

DynamicNetwork extract(const EventLog& log, std::int64_t epsilon, Interval span,
                       const ExtractOptions& opts) {
  return extract_impl(log, epsilon, span, opts, true);
}

DynamicNetwork extract(const EventLog& log, std::int64_t epsilon,
                       const ExtractOptions& opts) {
  return extract(log, epsilon, log.span, opts);
}

namespace serial {

DynamicNetwork extract(const EventLog& log, std::int64_t epsilon, Interval span,
                       const ExtractOptions& opts) {
  return extract_impl(log, epsilon, span, opts, false);
}

}  // namespace serial

}  // namespace dynseg
