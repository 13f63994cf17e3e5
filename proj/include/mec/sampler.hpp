#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mec/operators.hpp"

namespace mec {

enum class ChainMode {
  /// Always move to the proposed class; stationary mass proportional to |O_C|.
  Raw,
  /// Accept with min(1, |O_current| / |O_proposed|); uniform stationary law.
  Metropolis,
};

const char* to_string(ChainMode mode);
ChainMode parse_chain_mode(const std::string& s);

struct ChainConfig {
  int p = 0;
  std::size_t max_edges = 0;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 1;
  ChainMode mode = ChainMode::Metropolis;
  std::uint64_t thin = 1;
  double laziness = 0.0;
  SetStrategy strategy = SetStrategy::Local;
  /// Defaults to the empty graph on p vertices.
  std::optional<MixedGraph> start;

  /// Throws InvalidConfig.
  void validate() const;
};

/// 64-bit Mersenne Twister with explicitly specified draws, so traces are
/// identical across standard libraries.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, n) by rejection from the top of the 64-bit range.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

struct SampleRecord {
  std::uint64_t step = 0;
  std::size_t edges = 0;
  std::size_t vstructs = 0;
  std::size_t components = 0;
  std::size_t max_component = 0;
  std::size_t out_degree = 0;
  double weight = 0.0;
  bool accepted = false;
};

struct ChainState {
  CompletedPdag current;
  OperatorSet operators;
  std::uint64_t step = 0;
  bool accepted = false;
  Rng rng{1};
};

struct ChainTrace {
  std::string generator = Rng::kName;
  std::uint64_t seed = 0;
  ChainMode mode = ChainMode::Metropolis;
  std::vector<SampleRecord> records;
};

ChainState initial_state(const ChainConfig& config);

/// One transition: hold with probability `laziness`, otherwise propose an
/// operator uniformly from the current perfect set and move per the mode.
/// Throws EmptyOperatorSet if the current class has no operators.
void step(ChainState& state, const ChainConfig& config);

SampleRecord summarize(const ChainState& state);

using RecordSink = std::function<void(const SampleRecord&, const ChainState&)>;

/// Runs config.steps transitions from the start state, calling `sink` for
/// every retained step (after burn_in, every thin-th).
void run(const ChainConfig& config, const RecordSink& sink);
ChainTrace run(const ChainConfig& config);

struct UniformEstimate {
  double estimate = 0.0;
  double effective_sample_size = 0.0;
};

/// Importance-weighted mean sum(w f) / sum(w) with w = 1/out_degree for raw
/// traces and w = 1 for metropolis traces. Throws EmptyTrace.
UniformEstimate estimate_uniform(const ChainTrace& trace,
                                 const std::function<double(const SampleRecord&)>& statistic);

/// Per-step cost of rebuilding O_C, measured on states drawn from a
/// metropolis chain (snapshots every `spacing` steps after `warmup`).
struct BenchConfig {
  int p = 100;
  std::size_t max_edges = 150;
  std::uint64_t seed = 1;
  std::uint64_t warmup = 2000;
  std::uint64_t spacing = 500;
  std::size_t states = 5;
};

struct BenchTiming {
  SetStrategy strategy = SetStrategy::Local;
  double micros_per_state = 0.0;
};

struct BenchResult {
  std::size_t states = 0;
  double mean_out_degree = 0.0;
  std::vector<BenchTiming> timings;  // Recompute, FastChecks, Local
  /// All strategies produced identical sets on every state.
  bool sets_agree = true;

  double speedup(SetStrategy fast) const;
};

const char* to_string(SetStrategy strategy);

BenchResult bench_set_maintenance(const BenchConfig& config);

}  // namespace mec
