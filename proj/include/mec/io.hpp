#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mec/graph.hpp"
#include "mec/sampler.hpp"

namespace mec {

/// A parsed graph file: the graph plus the vertex-name mapping.
///
///     pdag 5
///     vertices: x y z u v
///     x -- y
///     y -> v
///
/// Blank lines and lines starting with '#' are ignored. Without a
/// `vertices:` line, names get indices in order of first appearance and any
/// remaining vertices are named by their index.
struct GraphFile {
  MixedGraph graph;
  std::vector<std::string> names;
};

std::vector<std::string> default_names(int p);

/// Throws Error(Parse) with the offending line number.
GraphFile parse_graph(std::string_view text);
GraphFile read_graph_file(const std::filesystem::path& path);

/// Canonical text: header, vertices line, undirected edges sorted by
/// (min, max) index, then directed edges sorted by (tail, head).
std::string serialize_graph(const MixedGraph& g, const std::vector<std::string>& names = {});
void write_graph_file(const std::filesystem::path& path, const MixedGraph& g,
                      const std::vector<std::string>& names = {});

/// Single-line edge list, e.g. "x--y, y->v", for reports.
std::string inline_edges(const MixedGraph& g, const std::vector<std::string>& names = {});

/// First line of a trace file: generator, seed and chain parameters.
std::string trace_header_line(const ChainConfig& config);
/// One JSON object per retained step with keys step, edges, vstructs,
/// components, max_component, out_degree, weight, accepted (in that order).
std::string trace_record_line(const SampleRecord& record);
SampleRecord parse_trace_record(std::string_view line);

struct StatisticSummary {
  std::string name;
  double mean = 0.0;
  double min = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
  double max = 0.0;
};

/// Lower-median quantiles (value at index floor(q * (n - 1)) of the sorted
/// sample) of edges, vstructs, components, max_component and out_degree.
std::vector<StatisticSummary> summarize_records(const std::vector<SampleRecord>& records);
std::string summary_csv(const std::vector<StatisticSummary>& stats);

}  // namespace mec
