#include "dynseg/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <vector>

#include "json.hpp"

namespace dynseg::io {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot write " + tmp);
    out << content;
    if (!out.flush()) fail(Errc::io_error, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Errc::io_error, "cannot rename " + tmp + " to " + path);
}

namespace {

const char* bool01(bool v) { return v ? "1" : "0"; }

std::string opt_double(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

}  // namespace

std::string render_inventory(std::span<const DynamicNetwork> nets, Emit emit) {
  if (emit == Emit::csv) {
    std::string out = "epsilon,window_start,window_end,node_count,link_count\n";
    for (const DynamicNetwork& net : nets) {
      for (const Snapshot& s : net.snapshots) {
        out += std::to_string(net.epsilon) + ',' +
               std::to_string(s.interval().start) + ',' +
               std::to_string(s.interval().end) + ',' +
               std::to_string(s.nodes().size()) + ',' +
               std::to_string(s.links().size()) + '\n';
      }
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const DynamicNetwork& net : nets) {
    for (const Snapshot& s : net.snapshots) {
      rows.push_back({{"epsilon", net.epsilon},
                      {"window_start", s.interval().start},
                      {"window_end", s.interval().end},
                      {"node_count", s.nodes().size()},
                      {"link_count", s.links().size()}});
    }
  }
  return rows.dump(2) + '\n';
}

std::string render_similarity(std::span<const SimilarityRow> rows, Emit emit) {
  if (emit == Emit::csv) {
    std::string out =
        "epsilon,prev_start,next_start,metric,score,threshold_jaccard,significant\n";
    for (const SimilarityRow& r : rows) {
      out += std::to_string(r.epsilon) + ',' + std::to_string(r.prev_start) + ',' +
             std::to_string(r.next_start) + ',' + metric_name(r.metric) + ',' +
             format_double(r.score) + ',' + opt_double(r.threshold_jaccard) + ',' +
             (r.significant ? bool01(*r.significant) : "") + '\n';
    }
    return out;
  }
  ordered_json rows_json = ordered_json::array();
  for (const SimilarityRow& r : rows) {
    ordered_json obj{{"epsilon", r.epsilon},
                     {"prev_start", r.prev_start},
                     {"next_start", r.next_start},
                     {"metric", metric_name(r.metric)},
                     {"score", r.score}};
    obj["threshold_jaccard"] =
        r.threshold_jaccard ? ordered_json(*r.threshold_jaccard) : ordered_json();
    obj["significant"] = r.significant ? ordered_json(*r.significant) : ordered_json();
    rows_json.push_back(std::move(obj));
  }
  return rows_json.dump(2) + '\n';
}

std::string render_stats(std::span<const StatsRow> rows, Emit emit) {
  if (emit == Emit::csv) {
    std::string out =
        "epsilon,metric,length,mean,variance,normalized_std,string_diversity,"
        "non_repetition,recommended\n";
    for (const StatsRow& r : rows) {
      out += std::to_string(r.epsilon) + ',' + metric_name(r.metric) + ',' +
             std::to_string(r.stats.length) + ',' + format_double(r.stats.mean) + ',' +
             format_double(r.stats.variance) + ',' +
             opt_double(r.stats.normalized_std) + ',' +
             format_double(r.stats.string_diversity) + ',' +
             format_double(r.stats.non_repetition) + ',' + bool01(r.recommended) + '\n';
    }
    return out;
  }
  ordered_json rows_json = ordered_json::array();
  for (const StatsRow& r : rows) {
    ordered_json obj{{"epsilon", r.epsilon},
                     {"metric", metric_name(r.metric)},
                     {"length", r.stats.length},
                     {"mean", r.stats.mean},
                     {"variance", r.stats.variance}};
    obj["normalized_std"] = r.stats.normalized_std
                                ? ordered_json(*r.stats.normalized_std)
                                : ordered_json();
    obj["string_diversity"] = r.stats.string_diversity;
    obj["non_repetition"] = r.stats.non_repetition;
    obj["recommended"] = r.recommended;
    rows_json.push_back(std::move(obj));
  }
  return rows_json.dump(2) + '\n';
}

std::string render_topology(std::span<const TopologyOutRow> rows, Emit emit) {
  if (emit == Emit::csv) {
    std::string out =
        "epsilon,window_start,window_end,node_count,link_count,density,"
        "average_degree,components,transitivity,average_path_length,diameter,"
        "approx_paths\n";
    for (const TopologyOutRow& r : rows) {
      const TopologyRow& t = r.row;
      out += std::to_string(r.epsilon) + ',' + std::to_string(t.interval.start) + ',' +
             std::to_string(t.interval.end) + ',' + std::to_string(t.node_count) + ',' +
             std::to_string(t.link_count) + ',' + format_double(t.density) + ',' +
             format_double(t.average_degree) + ',' + std::to_string(t.components) +
             ',' + format_double(t.transitivity) + ',' +
             format_double(t.average_path_length) + ',' + std::to_string(t.diameter) +
             ',' + bool01(t.approx_paths) + '\n';
    }
    return out;
  }
  ordered_json rows_json = ordered_json::array();
  for (const TopologyOutRow& r : rows) {
    const TopologyRow& t = r.row;
    rows_json.push_back({{"epsilon", r.epsilon},
                         {"window_start", t.interval.start},
                         {"window_end", t.interval.end},
                         {"node_count", t.node_count},
                         {"link_count", t.link_count},
                         {"density", t.density},
                         {"average_degree", t.average_degree},
                         {"components", t.components},
                         {"transitivity", t.transitivity},
                         {"average_path_length", t.average_path_length},
                         {"diameter", t.diameter},
                         {"approx_paths", t.approx_paths}});
  }
  return rows_json.dump(2) + '\n';
}

std::string render_segmentation(std::span<const SegmentationResult> results, Emit emit) {
  if (emit == Emit::csv) {
    std::string out =
        "record,epsilon,index,start,end,duration,delta,prev_start,next_start,"
        "set_size_a,set_size_b,common,s_node,s_link,s_neighbor,gamma,p_value,"
        "critical_common,threshold_jaccard,significant,warning\n";
    constexpr std::size_t kColumns = 21;
    for (const SegmentationResult& res : results) {
      const std::string eps = std::to_string(res.epsilon);
      for (std::size_t i = 0; i < res.proper_network.snapshots.size(); ++i) {
        const Interval& iv = res.proper_network.snapshots[i].interval();
        // delta is the multiple-of-epsilon part of the segment; a segment
        // holding only the ragged tail has delta 0 and no durations entry.
        const std::int64_t tail = iv.end == res.span.end ? res.ragged_tail : 0;
        std::vector<std::string> f(kColumns);
        f[0] = "segment";
        f[1] = eps;
        f[2] = std::to_string(i);
        f[3] = std::to_string(iv.start);
        f[4] = std::to_string(iv.end);
        f[5] = std::to_string(iv.duration());
        f[6] = std::to_string(iv.duration() - tail);
        out += join_csv(f);
      }
      for (std::size_t i = 0; i < res.cut_points.size(); ++i) {
        std::vector<std::string> f(kColumns);
        f[0] = "cut";
        f[1] = eps;
        f[2] = std::to_string(i);
        f[3] = std::to_string(res.cut_points[i]);
        out += join_csv(f);
      }
      for (std::size_t i = 0; i < res.assessments.size(); ++i) {
        const PairAssessment& pa = res.assessments[i];
        const NullAssessment& na = pa.null_assessment;
        std::vector<std::string> f(kColumns);
        f[0] = "pair";
        f[1] = eps;
        f[2] = std::to_string(i);
        f[7] = std::to_string(pa.prev_interval.start);
        f[8] = std::to_string(pa.next_interval.start);
        f[9] = std::to_string(na.set_size_a);
        f[10] = std::to_string(na.set_size_b);
        f[11] = std::to_string(na.common);
        f[12] = format_double(pa.s_node);
        f[13] = format_double(pa.s_link);
        f[14] = format_double(pa.s_neighbor);
        f[15] = format_double(pa.gamma);
        f[16] = format_double(na.p_value);
        if (na.critical_common) f[17] = std::to_string(*na.critical_common);
        f[18] = opt_double(na.threshold_jaccard);
        f[19] = bool01(pa.cut);
        f[20] = pa.warning;
        out += join_csv(f);
      }
    }
    return out;
  }

  ordered_json all = ordered_json::array();
  for (const SegmentationResult& res : results) {
    ordered_json obj{{"epsilon", res.epsilon},
                     {"span", {{"start", res.span.start}, {"end", res.span.end}}},
                     {"durations", res.durations},
                     {"ragged_tail", res.ragged_tail},
                     {"cut_points", res.cut_points}};
    ordered_json segments = ordered_json::array();
    for (std::size_t i = 0; i < res.proper_network.snapshots.size(); ++i) {
      const Snapshot& s = res.proper_network.snapshots[i];
      segments.push_back({{"index", i},
                          {"start", s.interval().start},
                          {"end", s.interval().end},
                          {"duration", s.interval().duration()},
                          {"node_count", s.nodes().size()},
                          {"link_count", s.links().size()}});
    }
    obj["segments"] = std::move(segments);
    ordered_json pairs = ordered_json::array();
    for (std::size_t i = 0; i < res.assessments.size(); ++i) {
      const PairAssessment& pa = res.assessments[i];
      const NullAssessment& na = pa.null_assessment;
      ordered_json pair{{"index", i},
                        {"prev_start", pa.prev_interval.start},
                        {"next_start", pa.next_interval.start},
                        {"set_size_a", na.set_size_a},
                        {"set_size_b", na.set_size_b},
                        {"common", na.common},
                        {"s_node", pa.s_node},
                        {"s_link", pa.s_link},
                        {"s_neighbor", pa.s_neighbor},
                        {"gamma", pa.gamma},
                        {"p_value", na.p_value}};
      pair["critical_common"] =
          na.critical_common ? ordered_json(*na.critical_common) : ordered_json();
      pair["threshold_jaccard"] =
          na.threshold_jaccard ? ordered_json(*na.threshold_jaccard) : ordered_json();
      pair["significant"] = pa.cut;
      pair["warning"] = pa.warning;
      pairs.push_back(std::move(pair));
    }
    obj["pairs"] = std::move(pairs);
    all.push_back(std::move(obj));
  }
  return all.dump(2) + '\n';
}

}  // namespace dynseg::io
