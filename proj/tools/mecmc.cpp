// mecmc: command-line front end for the equivalence-class sampler.
//
// Exit codes: 0 success, 1 usage, 2 domain error (including a failed
// verification).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "mec/io.hpp"
#include "mec/oracle.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kDomain = 2;

const std::map<std::string, mec::SetStrategy> kStrategies = {
    {"local", mec::SetStrategy::Local},
    {"fast-checks", mec::SetStrategy::FastChecks},
    {"recompute", mec::SetStrategy::Recompute},
};

std::size_t full_bound(int p) {
  return p < 2 ? 0 : static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2;
}

struct SampleArgs {
  int p = 0;
  std::size_t n = 0;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 1;
  std::uint64_t seed = 1;
  std::string mode = "metropolis";
  double laziness = 0.0;
  std::string out;
  std::string start;
  int chains = 1;
  bool state_counts = false;
};

struct ChainOutput {
  std::vector<mec::SampleRecord> records;
  std::map<std::string, std::uint64_t> visits;
  std::string error;
  int code = 0;
};

ChainOutput run_chain(const mec::ChainConfig& config, const std::string& trace_path,
                      bool count_states) {
  ChainOutput out;
  try {
    std::ofstream trace;
    if (!trace_path.empty()) {
      trace.open(trace_path);
      if (!trace) throw mec::Error(mec::ErrorCode::Parse, "cannot write " + trace_path);
      trace << mec::trace_header_line(config) << '\n';
    }
    mec::run(config, [&](const mec::SampleRecord& r, const mec::ChainState& s) {
      out.records.push_back(r);
      if (trace.is_open()) trace << mec::trace_record_line(r) << '\n';
      if (count_states) ++out.visits[mec::inline_edges(s.current.graph())];
    });
  } catch (const mec::Error& e) {
    out.error = e.what();
    out.code = e.code() == mec::ErrorCode::InvalidConfig ? kUsage : kDomain;
  }
  return out;
}

int cmd_sample(const SampleArgs& a) {
  mec::ChainConfig base;
  base.p = a.p;
  base.max_edges = a.n;
  base.steps = a.steps;
  base.burn_in = a.burn_in;
  base.thin = a.thin;
  base.seed = a.seed;
  base.mode = mec::parse_chain_mode(a.mode);
  base.laziness = a.laziness;
  if (!a.start.empty()) base.start = mec::read_graph_file(a.start).graph;
  base.validate();

  // Chain k uses seed + k and writes <out>.k when more than one runs.
  std::vector<ChainOutput> outputs(static_cast<std::size_t>(a.chains));
  std::vector<std::thread> workers;
  for (int k = 0; k < a.chains; ++k) {
    auto config = base;
    config.seed = a.seed + static_cast<std::uint64_t>(k);
    std::string path = a.out;
    if (!path.empty() && a.chains > 1) path += "." + std::to_string(k);
    workers.emplace_back([&outputs, k, config, path, &a] {
      outputs[static_cast<std::size_t>(k)] = run_chain(config, path, a.state_counts);
    });
  }
  for (auto& w : workers) w.join();

  for (int k = 0; k < a.chains; ++k) {
    const auto& o = outputs[static_cast<std::size_t>(k)];
    if (o.code != 0) {
      std::cerr << "chain " << k << ": " << o.error << '\n';
      return o.code;
    }
    if (a.chains > 1) std::cout << "# chain " << k << " seed " << a.seed + k << '\n';
    const auto csv = mec::summary_csv(mec::summarize_records(o.records));
    std::cout << csv;
    if (!a.out.empty()) {
      const std::string path = a.out + (a.chains > 1 ? "." + std::to_string(k) : "");
      std::ofstream(path + ".summary.csv") << csv;
    }
    if (a.state_counts) {
      std::cout << "distinct states: " << o.visits.size() << '\n';
      const double total = static_cast<double>(o.records.size());
      for (const auto& [key, count] : o.visits) {
        std::printf("%.6f  %s\n", static_cast<double>(count) / total, key.c_str());
      }
    }
  }
  return 0;
}

void print_property(const char* name, const mec::PropertyResult& r) {
  std::cout << name << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.checked << " checked)\n";
  for (const auto& c : r.counterexamples) std::cout << "  " << c << '\n';
}

int cmd_verify(int p, std::optional<std::size_t> n, const std::string& strategy) {
  const auto report = mec::verify_perfectness(p, n.value_or(full_bound(p)), kStrategies.at(strategy));
  std::cout << "classes: " << report.classes << ", operators: " << report.operators << '\n';
  print_property("validity", report.validity);
  print_property("distinguishability", report.distinguishability);
  print_property("reversibility", report.reversibility);
  print_property("irreducibility", report.irreducibility);
  return report.all_pass() ? 0 : kDomain;
}

int cmd_ops(const std::string& path, std::optional<std::size_t> n, const std::string& strategy) {
  const auto file = mec::read_graph_file(path);
  const auto c = mec::certify(file.graph);
  const auto set = mec::perfect_operator_set(
      c, n.value_or(full_bound(file.graph.num_vertices())), kStrategies.at(strategy));
  std::cout << mec::to_string(set, file.names);
  return 0;
}

int cmd_convert(const std::string& path, const std::string& to, const std::string& out) {
  const auto file = mec::read_graph_file(path);
  const mec::MixedGraph result = to == "extension" ? mec::consistent_extension(file.graph)
                                                   : mec::pdag_to_cpdag(file.graph).graph();
  if (out.empty()) {
    std::cout << mec::serialize_graph(result, file.names);
  } else {
    mec::write_graph_file(out, result, file.names);
  }
  return 0;
}

int cmd_enumerate(int p, std::optional<std::size_t> n, const std::string& out) {
  const auto cat = mec::enumerate_classes(p, n.value_or(full_bound(p)));
  std::ofstream file;
  if (!out.empty()) file.open(out);
  std::ostream& os = out.empty() ? std::cout : file;
  std::size_t dags = 0;
  for (auto k : cat.dag_counts) dags += k;
  os << "# p " << cat.p << ", n " << cat.max_edges << ": " << cat.size() << " classes, " << dags
     << " DAGs\n";
  os << "# dags\tedges\n";
  for (std::size_t i = 0; i < cat.size(); ++i) {
    os << cat.dag_counts[i] << '\t' << mec::inline_edges(cat.classes[i].graph()) << '\n';
  }
  return 0;
}

int cmd_bench(const mec::BenchConfig& config) {
  const auto r = mec::bench_set_maintenance(config);
  std::cout << "states: " << r.states << ", mean out-degree: " << r.mean_out_degree << '\n';
  for (const auto& t : r.timings) {
    std::printf("%-12s %14.1f us/state  speedup %.2f\n", mec::to_string(t.strategy),
                t.micros_per_state, r.speedup(t.strategy));
  }
  std::cout << "sets agree: " << (r.sets_agree ? "yes" : "NO") << '\n';
  return r.sets_agree ? 0 : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov chains over Markov equivalence classes of DAGs"};
  app.require_subcommand(1);

  auto strategy_check = CLI::IsMember({"local", "fast-checks", "recompute"});
  std::string strategy = "local";

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "run the chain and write a trace");
  sample->add_option("--p", sa.p, "vertex count")->required();
  sample->add_option("--n", sa.n, "edge bound")->required();
  sample->add_option("--steps", sa.steps, "total steps")->required();
  sample->add_option("--burn-in", sa.burn_in, "steps discarded first");
  sample->add_option("--thin", sa.thin, "keep every k-th step");
  sample->add_option("--seed", sa.seed, "seed of the first chain");
  sample->add_option("--mode", sa.mode, "raw or metropolis")
      ->check(CLI::IsMember({"raw", "metropolis"}));
  sample->add_option("--laziness", sa.laziness, "hold probability");
  sample->add_option("--out", sa.out, "trace file (JSON lines)");
  sample->add_option("--start", sa.start, "start graph file");
  sample->add_option("--chains", sa.chains, "independent chains")->check(CLI::PositiveNumber);
  sample->add_flag("--state-counts", sa.state_counts, "print visit frequency per class");

  int vp = 0;
  std::optional<std::size_t> vn;
  auto* verify = app.add_subcommand("verify", "check perfectness against the oracle");
  verify->add_option("--p", vp, "vertex count")->required();
  verify->add_option("--n", vn, "edge bound (default: complete)");
  verify->add_option("--strategy", strategy, "set construction")->check(strategy_check);

  std::string ops_file;
  std::optional<std::size_t> on;
  auto* ops = app.add_subcommand("ops", "print the perfect operator set of a graph");
  ops->add_option("graph", ops_file, "graph file")->required();
  ops->add_option("--n", on, "edge bound (default: complete)");
  ops->add_option("--strategy", strategy, "set construction")->check(strategy_check);

  std::string conv_file, conv_to = "cpdag", conv_out;
  auto* convert = app.add_subcommand("convert", "consistent extension or completed PDAG");
  convert->add_option("graph", conv_file, "graph file")->required();
  convert->add_option("--to", conv_to, "cpdag or extension")
      ->check(CLI::IsMember({"cpdag", "extension"}));
  convert->add_option("--out", conv_out, "output file (default: stdout)");

  int ep = 0;
  std::optional<std::size_t> en;
  std::string enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "emit the class catalog");
  enumerate->add_option("--p", ep, "vertex count")->required();
  enumerate->add_option("--n", en, "edge bound (default: complete)");
  enumerate->add_option("--out", enum_out, "output file (default: stdout)");

  mec::BenchConfig bc;
  auto* bench = app.add_subcommand("bench", "time perfect-set maintenance per strategy");
  bench->add_option("--p", bc.p, "vertex count");
  bench->add_option("--n", bc.max_edges, "edge bound");
  bench->add_option("--seed", bc.seed, "chain seed");
  bench->add_option("--warmup", bc.warmup, "chain steps before the first snapshot");
  bench->add_option("--spacing", bc.spacing, "chain steps between snapshots");
  bench->add_option("--states", bc.states, "snapshots to time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*verify) return cmd_verify(vp, vn, strategy);
    if (*ops) return cmd_ops(ops_file, on, strategy);
    if (*convert) return cmd_convert(conv_file, conv_to, conv_out);
    if (*enumerate) return cmd_enumerate(ep, en, enum_out);
    if (*bench) return cmd_bench(bc);
  } catch (const mec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == mec::ErrorCode::InvalidConfig ? kUsage : kDomain;
  }
  return kUsage;
}
