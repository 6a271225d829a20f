// dynseg: turn raw interaction logs into dynamic-network snapshots, score
// consecutive-snapshot stability, and segment the time span where the null
// model says the system really changed.
//
// Subcommands: extract, similarity, stats, segment, topology.
// Data goes to --out only; diagnostics go to stderr. Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <algorithm>
#include <charconv>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynseg/io.hpp"

namespace {

using namespace dynseg;

std::int64_t parse_duration(const std::string& text) {
  if (text.empty()) throw CLI::ValidationError("--epsilon", "empty duration");
  std::int64_t scale = 1;
  std::size_t digits = text.size();
  switch (text.back()) {
    case 's': scale = 1; digits -= 1; break;
    case 'm': scale = 60; digits -= 1; break;
    case 'h': scale = 3600; digits -= 1; break;
    case 'd': scale = 86400; digits -= 1; break;
    default: break;
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + digits, value);
  if (ec != std::errc() || ptr != text.data() + digits || value <= 0)
    throw CLI::ValidationError("--epsilon", "bad duration '" + text + "'");
  return value * scale;
}

std::vector<std::int64_t> parse_epsilons(const std::string& list) {
  std::vector<std::int64_t> out;
  std::size_t begin = 0;
  while (begin <= list.size()) {
    std::size_t pos = list.find(',', begin);
    if (pos == std::string::npos) pos = list.size();
    out.push_back(parse_duration(list.substr(begin, pos - begin)));
    begin = pos + 1;
  }
  return out;
}

std::vector<Metric> parse_metrics(const std::string& list) {
  std::vector<Metric> out;
  std::size_t begin = 0;
  while (begin <= list.size()) {
    std::size_t pos = list.find(',', begin);
    if (pos == std::string::npos) pos = list.size();
    const std::string name = list.substr(begin, pos - begin);
    try {
      out.push_back(metric_from_name(name));
    } catch (const Error&) {
      throw CLI::ValidationError("--metric", "unknown metric '" + name + "'");
    }
    begin = pos + 1;
  }
  return out;
}

struct RunConfig {
  std::string input;
  std::string format = "wap";
  std::string epsilon_list;
  std::string metric_list;
  std::string mode = "consecutive";
  std::string out;
  std::string emit = "csv";
  double alpha = 0.05;
  int decimals = 2;
  bool strict_colocation = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "input CSV path")->required();
  cmd->add_option("--format", cfg.format, "log format: wap|dyadic")
      ->check(CLI::IsMember({"wap", "dyadic"}));
  cmd->add_option("--epsilon", cfg.epsilon_list,
                  "window length list, seconds or with m/h/d suffix (e.g. 60,10m,1d)")
      ->required();
  cmd->add_option("--out", cfg.out, "output file path")->required();
  cmd->add_option("--emit", cfg.emit, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--strict-colocation", cfg.strict_colocation,
                "require co-located sessions to overlap each other, not just the window");
}

EventLog load(const RunConfig& cfg) {
  const LogFormat format = cfg.format == "wap" ? LogFormat::wap : LogFormat::dyadic;
  EventLog log = parse_file(cfg.input, format);
  if (log.malformed_lines > 0)
    std::cerr << "dynseg: skipped " << log.malformed_lines << " malformed line(s) in "
              << cfg.input << "\n";
  if (format == LogFormat::wap) {
    log = clean(log);
    if (log.merged_records > 0)
      std::cerr << "dynseg: merged " << log.merged_records
                << " contiguous session record(s)\n";
  }
  return log;
}

io::Emit emit_of(const RunConfig& cfg) {
  return cfg.emit == "json" ? io::Emit::json : io::Emit::csv;
}

int cmd_extract(const RunConfig& cfg) {
  EventLog log = load(cfg);
  ExtractOptions opts{cfg.strict_colocation};
  std::vector<DynamicNetwork> nets;
  for (std::int64_t eps : parse_epsilons(cfg.epsilon_list))
    nets.push_back(extract(log, eps, opts));
  io::write_atomic(cfg.out, io::render_inventory(nets, emit_of(cfg)));
  return 0;
}

int cmd_similarity(const RunConfig& cfg) {
  EventLog log = load(cfg);
  ExtractOptions opts{cfg.strict_colocation};
  const auto metrics = parse_metrics(
      cfg.metric_list.empty() ? "node,link,neighbor,gamma" : cfg.metric_list);
  std::vector<io::SimilarityRow> rows;
  for (std::int64_t eps : parse_epsilons(cfg.epsilon_list)) {
    DynamicNetwork net = extract(log, eps, opts);
    std::int64_t largest = 0;
    for (const Snapshot& s : net.snapshots)
      largest = std::max(largest,
                         static_cast<std::int64_t>(std::max(s.nodes().size(),
                                                            s.links().size())));
    NullModel model(2 * largest);
    for (Metric m : metrics) {
      SimilaritySeries sim = series(net, m);
      for (std::size_t i = 0; i < sim.scores.size(); ++i) {
        const PairScore& p = sim.scores[i];
        io::SimilarityRow row;
        row.epsilon = eps;
        row.prev_start = p.prev_interval.start;
        row.next_start = p.next_interval.start;
        row.metric = m;
        row.score = p.score;
        if (m == Metric::node || m == Metric::link) {
          const Snapshot& prev = net.snapshots[i];
          const Snapshot& next = net.snapshots[i + 1];
          std::int64_t a, b, c;
          if (m == Metric::node) {
            a = static_cast<std::int64_t>(prev.nodes().size());
            b = static_cast<std::int64_t>(next.nodes().size());
            std::vector<NodeId> common;
            std::set_intersection(prev.nodes().begin(), prev.nodes().end(),
                                  next.nodes().begin(), next.nodes().end(),
                                  std::back_inserter(common));
            c = static_cast<std::int64_t>(common.size());
          } else {
            a = static_cast<std::int64_t>(prev.links().size());
            b = static_cast<std::int64_t>(next.links().size());
            std::vector<Link> common;
            std::set_intersection(prev.links().begin(), prev.links().end(),
                                  next.links().begin(), next.links().end(),
                                  std::back_inserter(common));
            c = static_cast<std::int64_t>(common.size());
          }
          NullAssessment na = model.assess_pair(a, b, c, cfg.alpha);
          row.threshold_jaccard = na.threshold_jaccard;
          row.significant = na.significant_change;
        }
        rows.push_back(row);
      }
    }
  }
  io::write_atomic(cfg.out, io::render_similarity(rows, emit_of(cfg)));
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  EventLog log = load(cfg);
  ExtractOptions opts{cfg.strict_colocation};
  const auto metrics = parse_metrics(
      cfg.metric_list.empty() ? "node,link,neighbor,gamma" : cfg.metric_list);
  const auto epsilons = parse_epsilons(cfg.epsilon_list);
  const auto rows = stats_for_epsilons(log, epsilons, metrics, cfg.decimals, opts);
  for (const StatsRow& r : rows)
    if (!r.stats.normalized_std)
      std::cerr << "dynseg: zero-mean series for epsilon " << r.epsilon << " metric "
                << metric_name(r.metric) << "; normalized_std left empty\n";
  io::write_atomic(cfg.out, io::render_stats(rows, emit_of(cfg)));
  return 0;
}

int cmd_segment(const RunConfig& cfg) {
  EventLog log = load(cfg);
  SegmentationConfig scfg;
  scfg.metric = cfg.metric_list.empty() ? Metric::link
                                        : metric_from_name(cfg.metric_list);
  scfg.alpha = cfg.alpha;
  scfg.mode = cfg.mode == "aggregate" ? SegmentMode::aggregate
                                      : SegmentMode::consecutive;
  scfg.strict_colocation = cfg.strict_colocation;
  std::vector<SegmentationResult> results;
  for (std::int64_t eps : parse_epsilons(cfg.epsilon_list)) {
    scfg.epsilon = eps;
    results.push_back(segment(log, scfg));
    for (const PairAssessment& pa : results.back().assessments)
      if (!pa.warning.empty())
        std::cerr << "dynseg: pair at " << pa.prev_interval.start << ": " << pa.warning
                  << "\n";
  }
  io::write_atomic(cfg.out, io::render_segmentation(results, emit_of(cfg)));
  return 0;
}

int cmd_topology(const RunConfig& cfg) {
  EventLog log = load(cfg);
  ExtractOptions opts{cfg.strict_colocation};
  std::vector<io::TopologyOutRow> rows;
  for (std::int64_t eps : parse_epsilons(cfg.epsilon_list)) {
    DynamicNetwork net = extract(log, eps, opts);
    for (TopologyRow& row : topology_series(net))
      rows.push_back(io::TopologyOutRow{eps, std::move(row)});
  }
  io::write_atomic(cfg.out, io::render_topology(rows, emit_of(cfg)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic-network snapshot extraction, stability metrics, and "
               "proper-interval segmentation"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* extract_cmd = app.add_subcommand("extract", "write the per-window snapshot inventory");
  add_common(extract_cmd, cfg);

  CLI::App* similarity_cmd =
      app.add_subcommand("similarity", "score consecutive snapshot pairs");
  add_common(similarity_cmd, cfg);
  similarity_cmd->add_option("--metric", cfg.metric_list,
                             "comma list of node,link,neighbor,gamma (default all)");
  similarity_cmd->add_option("--alpha", cfg.alpha, "null-model error rate")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));

  CLI::App* stats_cmd =
      app.add_subcommand("stats", "noise and diversity statistics per epsilon");
  add_common(stats_cmd, cfg);
  stats_cmd->add_option("--metric", cfg.metric_list,
                        "comma list of node,link,neighbor,gamma (default all)");
  stats_cmd->add_option("--decimals", cfg.decimals, "quantization decimals")
      ->check(CLI::Range(0, 12));

  CLI::App* segment_cmd =
      app.add_subcommand("segment", "cut the span into proper stable intervals");
  add_common(segment_cmd, cfg);
  segment_cmd->add_option("--metric", cfg.metric_list, "cut metric: node|link")
      ->check(CLI::IsMember({"node", "link"}));
  segment_cmd->add_option("--alpha", cfg.alpha, "null-model error rate")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  segment_cmd->add_option("--mode", cfg.mode, "comparison mode")
      ->check(CLI::IsMember({"consecutive", "aggregate"}));

  CLI::App* topology_cmd =
      app.add_subcommand("topology", "per-window topological property table");
  add_common(topology_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (extract_cmd->parsed()) return cmd_extract(cfg);
    if (similarity_cmd->parsed()) return cmd_similarity(cfg);
    if (stats_cmd->parsed()) return cmd_stats(cfg);
    if (segment_cmd->parsed()) return cmd_segment(cfg);
    if (topology_cmd->parsed()) return cmd_topology(cfg);
  } catch (const CLI::ParseError& e) {  // late flag validation (epsilon lists)
    std::cerr << "dynseg: " << e.what() << "\n";
    return 1;
  } catch (const dynseg::Error& e) {
    std::cerr << "dynseg: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dynseg: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
