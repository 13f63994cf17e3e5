#include "mec/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "local_rules.hpp"

namespace mec {

const char* to_string(ChainMode mode) {
  return mode == ChainMode::Raw ? "raw" : "metropolis";
}

ChainMode parse_chain_mode(const std::string& s) {
  if (s == "raw") return ChainMode::Raw;
  if (s == "metropolis") return ChainMode::Metropolis;
  throw Error(ErrorCode::InvalidConfig, "unknown chain mode '" + s + "'");
}

void ChainConfig::validate() const {
  if (p < 1) throw Error(ErrorCode::InvalidConfig, "p must be positive");
  if (steps <= burn_in) throw Error(ErrorCode::InvalidConfig, "steps must exceed burn_in");
  if (thin < 1) throw Error(ErrorCode::InvalidConfig, "thin must be at least 1");
  if (!(laziness >= 0.0 && laziness < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "laziness must lie in [0, 1)");
  }
  if (start) {
    if (start->num_vertices() != p) {
      throw Error(ErrorCode::InvalidConfig, "start graph has the wrong vertex count");
    }
    if (start->num_edges() > max_edges) {
      throw Error(ErrorCode::InvalidConfig, "start graph exceeds the edge bound");
    }
  }
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyOperatorSet, "uniform draw from an empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

ChainState initial_state(const ChainConfig& config) {
  config.validate();
  ChainState s;
  s.current = config.start ? certify(*config.start) : certify(MixedGraph(config.p));
  s.operators = perfect_operator_set(s.current, config.max_edges, config.strategy);
  s.rng = Rng(config.seed);
  return s;
}

void step(ChainState& state, const ChainConfig& config) {
  ++state.step;
  state.accepted = false;
  if (config.laziness > 0.0 && state.rng.uniform01() < config.laziness) return;

  const std::size_t degree = state.operators.out_degree();
  if (degree == 0) {
    throw Error(ErrorCode::EmptyOperatorSet, "current class has no perfect operators");
  }
  const Operator& op = state.operators.at(state.rng.uniform_index(degree));
  CompletedPdag next = resulting_cpdag(state.current, op);

  if (config.strategy != SetStrategy::Local) {
    OperatorSet next_ops = perfect_operator_set(next, config.max_edges, config.strategy);
    if (config.mode == ChainMode::Metropolis) {
      const double ratio =
          static_cast<double>(degree) / static_cast<double>(next_ops.out_degree());
      if (!(state.rng.uniform01() < ratio)) return;
    }
    state.current = std::move(next);
    state.operators = std::move(next_ops);
    state.accepted = true;
    return;
  }

  // Most metropolis proposals are rejected, so only count the new set first.
  const detail::LocalContext ctx(next);
  if (config.mode == ChainMode::Metropolis) {
    const double ratio =
        static_cast<double>(degree) / static_cast<double>(ctx.count(config.max_edges));
    if (!(state.rng.uniform01() < ratio)) return;
  }
  state.operators = ctx.collect(config.max_edges);
  state.current = std::move(next);
  state.accepted = true;
}

SampleRecord summarize(const ChainState& state) {
  const MixedGraph& g = state.current.graph();
  SampleRecord r;
  r.step = state.step;
  r.edges = g.num_edges();
  r.vstructs = count_v_structures(g);
  const auto labels = chain_component_labels(g);
  std::vector<std::size_t> sizes;
  for (int l : labels) {
    if (static_cast<std::size_t>(l) >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  r.components = sizes.size();
  r.max_component = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  r.out_degree = state.operators.out_degree();
  r.weight = r.out_degree ? 1.0 / static_cast<double>(r.out_degree) : 0.0;
  r.accepted = state.accepted;
  return r;
}

void run(const ChainConfig& config, const RecordSink& sink) {
  ChainState state = initial_state(config);
  for (std::uint64_t t = 1; t <= config.steps; ++t) {
    step(state, config);
    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      sink(summarize(state), state);
    }
  }
}

ChainTrace run(const ChainConfig& config) {
  ChainTrace trace;
  trace.seed = config.seed;
  trace.mode = config.mode;
  trace.records.reserve((config.steps - std::min(config.burn_in, config.steps)) / config.thin);
  run(config, [&](const SampleRecord& r, const ChainState&) { trace.records.push_back(r); });
  return trace;
}

UniformEstimate estimate_uniform(const ChainTrace& trace,
                                 const std::function<double(const SampleRecord&)>& statistic) {
  if (trace.records.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no records");
  // Centered on the first value so a constant statistic comes back exactly.
  const double f0 = statistic(trace.records.front());
  double sw = 0.0, sw2 = 0.0, swf = 0.0;
  for (const auto& r : trace.records) {
    const double w = trace.mode == ChainMode::Raw ? r.weight : 1.0;
    sw += w;
    sw2 += w * w;
    swf += w * (statistic(r) - f0);
  }
  return {f0 + swf / sw, sw * sw / sw2};
}

const char* to_string(SetStrategy strategy) {
  switch (strategy) {
    case SetStrategy::Recompute: return "recompute";
    case SetStrategy::FastChecks: return "fast-checks";
    case SetStrategy::Local: return "local";
  }
  return "unknown";
}

double BenchResult::speedup(SetStrategy fast) const {
  double base = 0.0, other = 0.0;
  for (const auto& t : timings) {
    if (t.strategy == SetStrategy::Recompute) base = t.micros_per_state;
    if (t.strategy == fast) other = t.micros_per_state;
  }
  return other > 0.0 ? base / other : 0.0;
}

BenchResult bench_set_maintenance(const BenchConfig& config) {
  if (config.states == 0) throw Error(ErrorCode::InvalidConfig, "bench needs at least one state");
  if (config.spacing == 0) throw Error(ErrorCode::InvalidConfig, "spacing must be positive");
  ChainConfig chain;
  chain.p = config.p;
  chain.max_edges = config.max_edges;
  chain.seed = config.seed;
  chain.steps = config.warmup + config.spacing * config.states;
  chain.validate();

  std::vector<CompletedPdag> states;
  ChainState state = initial_state(chain);
  for (std::uint64_t t = 1; t <= chain.steps; ++t) {
    step(state, chain);
    if (t > config.warmup && (t - config.warmup) % config.spacing == 0) {
      states.push_back(state.current);
    }
  }

  BenchResult result;
  result.states = states.size();
  std::vector<OperatorSet> reference;
  for (auto strategy : {SetStrategy::Recompute, SetStrategy::FastChecks, SetStrategy::Local}) {
    // The local rules are fast enough that one pass is below timer noise.
    const int rounds = strategy == SetStrategy::Local ? 50 : 1;
    std::vector<OperatorSet> sets(states.size());
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < rounds; ++r) {
      for (std::size_t i = 0; i < states.size(); ++i) {
        sets[i] = perfect_operator_set(states[i], config.max_edges, strategy);
      }
    }
    const std::chrono::duration<double, std::micro> spent = std::chrono::steady_clock::now() - t0;
    result.timings.push_back(
        {strategy, spent.count() / static_cast<double>(rounds * states.size())});
    if (reference.empty()) {
      reference = sets;
      double degree = 0.0;
      for (const auto& s : sets) degree += static_cast<double>(s.out_degree());
      result.mean_out_degree = degree / static_cast<double>(sets.size());
    } else if (sets != reference) {
      result.sets_agree = false;
    }
  }
  return result;
}

}  // namespace mec
