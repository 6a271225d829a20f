#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "doctest.h"
#include "dynseg/ingest.hpp"

using namespace dynseg;

namespace {

EventLog parse_wap(const std::string& body) {
  std::istringstream in("device_id,ap_name,connect_ts,disconnect_ts\n" + body);
  return parse(in, LogFormat::wap);
}

EventLog parse_dyadic(const std::string& body) {
  std::istringstream in("timestamp,from,to\n" + body);
  return parse(in, LogFormat::dyadic);
}

}  // namespace

TEST_CASE("parse well-formed wap rows") {
  EventLog log = parse_wap("a,ap1,0,100\nb,ap1,50,150\nc,ap2,0,10\n");
  CHECK(log.kind == LogKind::session);
  CHECK(log.sessions.size() == 3);
  CHECK(log.malformed_lines == 0);
  CHECK(log.span == Interval{0, 150});
}

TEST_CASE("missing timestamps are kept until clean") {
  EventLog log = parse_wap("a,ap1,0,100\na,ap1,200,\n");
  REQUIRE(log.sessions.size() == 2);
  CHECK(log.malformed_lines == 0);
  int missing = 0;
  for (const auto& r : log.sessions)
    if (!r.disconnect) ++missing;
  CHECK(missing == 1);

  EventLog cleaned = clean(log);
  CHECK(cleaned.sessions.size() == 1);
}

TEST_CASE("malformed rows are counted and skipped") {
  EventLog log = parse_wap("a,ap1,0,100\nbadline\n,ap1,0,10\na,ap2,nonsense,5\na,ap3,90,10\n");
  CHECK(log.sessions.size() == 1);
  CHECK(log.malformed_lines == 4);  // wrong arity, empty actor, bad int, inverted
}

TEST_CASE("header and empty input errors") {
  std::istringstream bad_header("device,ap,start,stop\na,ap1,0,1\n");
  CHECK_THROWS_AS((void)parse(bad_header, LogFormat::wap), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS((void)parse(empty, LogFormat::wap), Error);
  std::istringstream header_only("device_id,ap_name,connect_ts,disconnect_ts\n");
  CHECK_THROWS_AS((void)parse(header_only, LogFormat::wap), Error);
}

TEST_CASE("crlf and blank lines are tolerated") {
  EventLog log = parse_wap("a,ap1,0,100\r\n\r\nb,ap1,5,20\r\n");
  CHECK(log.sessions.size() == 2);
}

TEST_CASE("dyadic recipient lists split on semicolons") {
  EventLog log = parse_dyadic("5,x,y;z\n9,y,x\n");
  REQUIRE(log.dyads.size() == 2);
  CHECK(log.dyads[0].to.size() == 2);
  CHECK(log.span == Interval{5, 10});
}

TEST_CASE("dyadic rows need a timestamp and targets") {
  EventLog log = parse_dyadic("5,x,y\n,x,y\n7,,y\n8,x,\n9,x,;;\n");
  CHECK(log.dyads.size() == 1);
  CHECK(log.malformed_lines == 4);
}

TEST_CASE("dyadic records sort by timestamp") {
  EventLog log = parse_dyadic("9,a,b\n3,c,d\n7,e,f\n");
  REQUIRE(log.dyads.size() == 3);
  CHECK(log.dyads[0].timestamp == 3);
  CHECK(log.dyads[2].timestamp == 9);
}

TEST_CASE("clean merges boundary-touching sessions at one location") {
  EventLog log = parse_wap("a,ap1,100,200\na,ap1,200,300\n");
  EventLog cleaned = clean(log);
  REQUIRE(cleaned.sessions.size() == 1);
  CHECK(*cleaned.sessions[0].connect == 100);
  CHECK(*cleaned.sessions[0].disconnect == 300);
  CHECK(cleaned.merged_records == 1);
}

TEST_CASE("clean keeps different locations apart") {
  EventLog log = parse_wap("a,ap1,100,200\na,ap2,200,300\n");
  EventLog cleaned = clean(log);
  CHECK(cleaned.sessions.size() == 2);
}

TEST_CASE("clean merges transitively") {
  EventLog log = parse_wap("a,ap1,0,10\na,ap1,10,20\na,ap1,20,30\n");
  EventLog cleaned = clean(log);
  REQUIRE(cleaned.sessions.size() == 1);
  CHECK(*cleaned.sessions[0].connect == 0);
  CHECK(*cleaned.sessions[0].disconnect == 30);
}

TEST_CASE("clean rejects dyadic logs") {
  EventLog log = parse_dyadic("5,x,y\n");
  CHECK_THROWS_AS((void)clean(log), Error);
}

namespace {

EventLog random_session_log(std::mt19937& rng) {
  std::ostringstream body;
  std::uniform_int_distribution<int> actor(0, 3), ap(0, 2), start(0, 20),
      len(0, 10);
  const int rows = 30;
  for (int i = 0; i < rows; ++i) {
    const int s = start(rng) * 10;
    body << 'a' << actor(rng) << ",ap" << ap(rng) << ',' << s << ','
         << s + len(rng) * 10 << '\n';
  }
  return parse_wap(body.str());
}

std::map<std::pair<NodeId, std::uint32_t>, std::int64_t> covered_time(
    const EventLog& log) {
  std::map<std::pair<NodeId, std::uint32_t>, std::int64_t> total;
  for (const auto& r : log.sessions)
    total[{r.actor, r.location}] += *r.disconnect - *r.connect;
  return total;
}

}  // namespace

TEST_CASE("clean is idempotent and preserves covered time") {
  std::mt19937 rng(47);
  for (int round = 0; round < 25; ++round) {
    EventLog log = random_session_log(rng);
    EventLog once = clean(log);
    EventLog twice = clean(once);
    REQUIRE(once.sessions.size() == twice.sessions.size());
    for (std::size_t i = 0; i < once.sessions.size(); ++i) {
      CHECK(once.sessions[i].actor == twice.sessions[i].actor);
      CHECK(*once.sessions[i].connect == *twice.sessions[i].connect);
      CHECK(*once.sessions[i].disconnect == *twice.sessions[i].disconnect);
    }
    CHECK(covered_time(once) == covered_time(clean(log)));

    // covered time per (actor, location) survives merging
    std::map<std::pair<NodeId, std::uint32_t>, std::int64_t> raw;
    for (const auto& r : log.sessions)
      if (r.connect && r.disconnect)
        raw[{r.actor, r.location}] += *r.disconnect - *r.connect;
    CHECK(raw == covered_time(once));
  }
}

TEST_CASE("session windowing links co-located actors") {
  EventLog log = clean(parse_wap("a,ap1,0,100\nb,ap1,50,150\n"));
  Snapshot s = window_session(log, Interval{60, 70});
  CHECK(s.nodes().size() == 2);
  CHECK(s.links().size() == 1);
}

TEST_CASE("different locations never link") {
  EventLog log = clean(parse_wap("a,ap1,0,100\nb,ap2,0,100\n"));
  Snapshot s = window_session(log, Interval{0, 100});
  CHECK(s.nodes().size() == 2);
  CHECK(s.links().empty());
}

TEST_CASE("window outside all sessions is empty") {
  EventLog log = clean(parse_wap("a,ap1,0,10\n"));
  Snapshot s = window_session(log, Interval{20, 30});
  CHECK(s.nodes().empty());
  CHECK(s.links().empty());
}

TEST_CASE("strict colocation requires overlapping sessions") {
  // both sessions overlap the window, but never each other
  EventLog log = clean(parse_wap("a,ap1,0,10\nb,ap1,20,30\n"));
  Snapshot loose = window_session(log, Interval{0, 40});
  CHECK(loose.links().size() == 1);
  Snapshot strict = window_session(log, Interval{0, 40}, true);
  CHECK(strict.links().empty());
  CHECK(strict.nodes().size() == 2);
}

TEST_CASE("dyadic windowing expands recipient lists") {
  EventLog log = parse_dyadic("5,x,y;z\n");
  Snapshot s = window_dyadic(log, Interval{0, 10});
  CHECK(s.nodes().size() == 3);
  CHECK(s.links().size() == 2);

  Snapshot outside = window_dyadic(log, Interval{10, 20});
  CHECK(outside.nodes().empty());

  EventLog self_mail = parse_dyadic("5,x,x\n");
  Snapshot self_snap = window_dyadic(self_mail, Interval{0, 10});
  CHECK(self_snap.nodes().size() == 1);
  CHECK(self_snap.links().empty());
}

TEST_CASE("extract tiles the span") {
  EventLog log = parse_dyadic("0,a,b\n599,c,d\n");
  DynamicNetwork net = extract(log, 60, Interval{0, 600});
  CHECK(net.snapshots.size() == 10);
  CHECK_FALSE(net.ragged_tail());
  for (std::size_t k = 0; k < net.snapshots.size(); ++k)
    CHECK(net.snapshots[k].interval().start ==
          static_cast<std::int64_t>(k) * 60);

  DynamicNetwork ragged = extract(log, 60, Interval{0, 650});
  CHECK(ragged.snapshots.size() == 11);
  CHECK(ragged.ragged_tail());
  CHECK(ragged.snapshots.back().interval() == Interval{600, 650});
}

TEST_CASE("extract rejects non-positive epsilon") {
  EventLog log = parse_dyadic("0,a,b\n");
  CHECK_THROWS_AS((void)extract(log, 0, Interval{0, 600}), Error);
  CHECK_THROWS_AS((void)extract(log, -5, Interval{0, 600}), Error);
}

TEST_CASE("candidate epsilon lists are accepted verbatim") {
  // minute-scale candidates, in seconds
  const std::int64_t minutes[] = {1, 3, 5, 10, 30, 40, 60, 1440};
  EventLog log = parse_dyadic("0,a,b\n86399,c,d\n172700,e,f\n");
  int networks = 0;
  for (std::int64_t m : minutes) {
    DynamicNetwork net = extract(log, m * 60);
    CHECK(net.snapshots.size() ==
          static_cast<std::size_t>(tile_count(log.span, m * 60)));
    ++networks;
  }
  CHECK(networks == 8);
}

TEST_CASE("extract tiles agree with direct per-window queries") {
  // the bucketed extraction path must match window_session tile by tile
  std::mt19937 rng(83);
  for (int round = 0; round < 10; ++round) {
    EventLog log = clean(random_session_log(rng));
    for (bool strict : {false, true}) {
      ExtractOptions opts;
      opts.strict_colocation = strict;
      const Interval span{-15, 305};  // offset start, ragged tail
      DynamicNetwork net = extract(log, 40, span, opts);
      REQUIRE(net.snapshots.size() ==
              static_cast<std::size_t>(tile_count(span, 40)));
      for (const Snapshot& s : net.snapshots) {
        Snapshot direct = window_session(log, s.interval(), strict);
        CHECK(s.nodes() == direct.nodes());
        CHECK(s.links() == direct.links());
      }
    }
  }
}

TEST_CASE("windowing a union equals aggregating tile snapshots when no "
          "session boundary falls inside") {
  // all sessions span the whole union, so tiles see identical membership
  EventLog log = clean(parse_wap("a,ap1,0,100\nb,ap1,0,100\nc,ap2,0,100\n"));
  Snapshot whole = window_session(log, Interval{0, 100});
  Snapshot left = window_session(log, Interval{0, 50});
  Snapshot right = window_session(log, Interval{50, 100});
  const Snapshot parts[] = {left, right};
  Snapshot stitched = aggregate(parts);
  CHECK(whole.nodes() == stitched.nodes());
  CHECK(whole.links() == stitched.links());
}
