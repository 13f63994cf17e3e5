#include "mec/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mec {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::vector<std::string> default_names(int p) {
  std::vector<std::string> names;
  names.reserve(p);
  for (int i = 0; i < p; ++i) names.push_back(std::to_string(i));
  return names;
}

GraphFile parse_graph(std::string_view text) {
  struct PendingEdge {
    std::string a, b;
    bool directed;
    std::size_t line;
  };

  int p = -1;
  bool fixed_names = false;
  std::vector<std::string> names;
  std::map<std::string, VertexId> index;
  std::vector<PendingEdge> edges;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (p < 0) {
      const auto toks = split_ws(line);
      if (toks.size() != 2 || toks[0] != "pdag") parse_fail(lineno, "expected header 'pdag <p>'");
      try {
        std::size_t used = 0;
        p = std::stoi(toks[1], &used);
        if (used != toks[1].size() || p < 0) throw std::invalid_argument("p");
      } catch (const std::exception&) {
        parse_fail(lineno, "invalid vertex count '" + toks[1] + "'");
      }
      continue;
    }

    if (line.rfind("vertices:", 0) == 0) {
      if (fixed_names || !edges.empty()) parse_fail(lineno, "vertices line must precede edges");
      names = split_ws(line.substr(9));
      if (static_cast<int>(names.size()) != p) {
        parse_fail(lineno, "vertices line lists " + std::to_string(names.size()) +
                               " names, header says " + std::to_string(p));
      }
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (!index.emplace(names[i], static_cast<VertexId>(i)).second) {
          parse_fail(lineno, "duplicate vertex name '" + names[i] + "'");
        }
      }
      fixed_names = true;
      continue;
    }

    const auto toks = split_ws(line);
    if (toks.size() != 3 || (toks[1] != "--" && toks[1] != "->")) {
      parse_fail(lineno, "expected '<a> -- <b>' or '<a> -> <b>'");
    }
    for (const auto* name : {&toks[0], &toks[2]}) {
      if (index.count(*name)) continue;
      if (fixed_names) parse_fail(lineno, "unknown vertex '" + *name + "'");
      if (static_cast<int>(names.size()) >= p) parse_fail(lineno, "more vertex names than p");
      index.emplace(*name, static_cast<VertexId>(names.size()));
      names.push_back(*name);
    }
    edges.push_back({toks[0], toks[2], toks[1] == "->", lineno});
  }
  if (p < 0) throw Error(ErrorCode::Parse, "missing header 'pdag <p>'");

  for (int v = static_cast<int>(names.size()); v < p; ++v) {
    auto name = std::to_string(v);
    if (!index.emplace(name, v).second) {
      throw Error(ErrorCode::Parse, "implicit vertex name '" + name + "' collides; add a vertices line");
    }
    names.push_back(std::move(name));
  }

  GraphFile file{MixedGraph(p), std::move(names)};
  for (const auto& e : edges) {
    const VertexId a = index.at(e.a);
    const VertexId b = index.at(e.b);
    try {
      if (e.directed) {
        file.graph.add_directed(a, b);
      } else {
        file.graph.add_undirected(a, b);
      }
    } catch (const Error& err) {
      parse_fail(e.line, err.what());
    }
  }
  return file;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const MixedGraph& g, const std::vector<std::string>& names_in) {
  const auto names = names_in.empty() ? default_names(g.num_vertices()) : names_in;
  std::string out = "pdag " + std::to_string(g.num_vertices()) + "\nvertices:";
  for (const auto& n : names) out += " " + n;
  out += "\n";
  for (auto [a, b] : g.undirected_edges()) out += names[a] + " -- " + names[b] + "\n";
  for (auto [a, b] : g.directed_edges()) out += names[a] + " -> " + names[b] + "\n";
  return out;
}

void write_graph_file(const std::filesystem::path& path, const MixedGraph& g,
                      const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
  out << serialize_graph(g, names);
}

std::string inline_edges(const MixedGraph& g, const std::vector<std::string>& names_in) {
  const auto names = names_in.empty() ? default_names(g.num_vertices()) : names_in;
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += ", ";
  };
  for (auto [a, b] : g.undirected_edges()) {
    sep();
    out += names[a] + "--" + names[b];
  }
  for (auto [a, b] : g.directed_edges()) {
    sep();
    out += names[a] + "->" + names[b];
  }
  return out.empty() ? "(empty)" : out;
}

std::string trace_header_line(const ChainConfig& config) {
  nlohmann::ordered_json j;
  j["generator"] = Rng::kName;
  j["seed"] = config.seed;
  j["p"] = config.p;
  j["n"] = config.max_edges;
  j["mode"] = to_string(config.mode);
  j["steps"] = config.steps;
  j["burn_in"] = config.burn_in;
  j["thin"] = config.thin;
  j["laziness"] = config.laziness;
  return j.dump();
}

std::string trace_record_line(const SampleRecord& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["edges"] = r.edges;
  j["vstructs"] = r.vstructs;
  j["components"] = r.components;
  j["max_component"] = r.max_component;
  j["out_degree"] = r.out_degree;
  j["weight"] = r.weight;
  j["accepted"] = r.accepted;
  return j.dump();
}

SampleRecord parse_trace_record(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    SampleRecord r;
    r.step = j.at("step").get<std::uint64_t>();
    r.edges = j.at("edges").get<std::size_t>();
    r.vstructs = j.at("vstructs").get<std::size_t>();
    r.components = j.at("components").get<std::size_t>();
    r.max_component = j.at("max_component").get<std::size_t>();
    r.out_degree = j.at("out_degree").get<std::size_t>();
    r.weight = j.at("weight").get<double>();
    r.accepted = j.at("accepted").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad trace record: ") + e.what());
  }
}

std::vector<StatisticSummary> summarize_records(const std::vector<SampleRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyTrace, "no records to summarize");
  using Field = std::size_t SampleRecord::*;
  const std::pair<const char*, Field> fields[] = {
      {"edges", &SampleRecord::edges},
      {"vstructs", &SampleRecord::vstructs},
      {"components", &SampleRecord::components},
      {"max_component", &SampleRecord::max_component},
      {"out_degree", &SampleRecord::out_degree},
  };
  std::vector<StatisticSummary> out;
  std::vector<double> values(records.size());
  for (const auto& [name, field] : fields) {
    double sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      values[i] = static_cast<double>(records[i].*field);
      sum += values[i];
    }
    std::sort(values.begin(), values.end());
    auto q = [&](double f) {
      return values[static_cast<std::size_t>(f * static_cast<double>(values.size() - 1))];
    };
    out.push_back({name, sum / static_cast<double>(values.size()), values.front(), q(0.05),
                   q(0.25), q(0.5), q(0.75), q(0.95), values.back()});
  }
  return out;
}

std::string summary_csv(const std::vector<StatisticSummary>& stats) {
  std::ostringstream out;
  out << "statistic,mean,min,q05,q25,median,q75,q95,max\n";
  for (const auto& s : stats) {
    out << s.name << ',' << s.mean << ',' << s.min << ',' << s.q05 << ',' << s.q25 << ','
        << s.median << ',' << s.q75 << ',' << s.q95 << ',' << s.max << '\n';
  }
  return out.str();
}

}  // namespace mec
