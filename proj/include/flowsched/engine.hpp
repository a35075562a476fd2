#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "flowsched/csma.hpp"
#include "flowsched/network.hpp"
#include "flowsched/rng.hpp"
#include "flowsched/transport.hpp"
#include "flowsched/weights.hpp"

#include "json.hpp"

namespace flowsched {

enum class SchedulerKind { Centralized, BasicCsma, QCsma };
enum class AssertMode { Off, Record, Strict };

struct SchedulerCfg {
  SchedulerKind kind = SchedulerKind::Centralized;
  double epsilon = 0.1;                 // csma g* parameter
  std::vector<double> beta;             // per node; empty = 0.5 everywhere
  double control_overhead_ratio = 0.0;  // T_control / T_data
  int enumeration_cap = ScheduleSet::kDefaultEnumerationCap;
};

struct SimConfig {
  NetworkSpec network;
  TrafficSpec traffic;
  WindowPolicy window;
  HChoice h = HChoice::LogLog;
  double theta = 0.5;
  SchedulerCfg scheduler;
  std::uint64_t slots = 1;
  std::uint64_t seed = 1;
  std::uint64_t metrics_cadence = 1;
  AssertMode assertions = AssertMode::Record;
  std::uint64_t snapshot_every = 0;
  // Compute the exhaustive max-weight value per emitted frame. Defaults to
  // "when the schedule set fits under the enumeration cap".
  std::optional<bool> compute_oracle;
};

struct MetricsFrame {
  std::uint64_t slot = 0;
  std::uint64_t total_files = 0;
  std::uint64_t total_q = 0;
  double lyapunov = 0.0;
  double sched_weight = 0.0;
  double oracle_weight = std::numeric_limits<double>::quiet_NaN();
  bool asserts_ok = true;
  std::uint64_t delivered = 0;   // cumulative
  std::uint64_t schedule_mask = 0;
  std::uint64_t wasted = 0;      // this slot
  double b_total = 0.0;          // sum over sources of B_n this slot
};

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsFrame& f);

struct ViolationCounts {
  std::uint64_t window_bound = 0;
  std::uint64_t lemma3 = 0;
  std::uint64_t lemma4 = 0;
  std::uint64_t lemma7_upper = 0;
  std::uint64_t lemma7_lower = 0;
  std::uint64_t sandwich = 0;
  std::uint64_t independence = 0;
  std::uint64_t conservation = 0;
  std::uint64_t qbar_increment = 0;

  std::uint64_t total() const {
    return window_bound + lemma3 + lemma4 + lemma7_upper + lemma7_lower + sandwich +
           independence + conservation + qbar_increment;
  }
};

struct RunSummary {
  std::uint64_t slots = 0;
  std::uint64_t delivered = 0;
  double effective_delivered = 0.0;  // scaled by 1 / (1 + control overhead)
  std::uint64_t injected = 0;
  std::uint64_t final_total_q = 0;
  std::uint64_t final_total_files = 0;
  ViolationCounts violations;
  // Residual process statistics, aggregated per slot over all sources.
  std::uint64_t b_count = 0;
  double b_sum = 0.0;
  double b_sum_sq = 0.0;
  double b_second_moment_bound = 0.0;
  bool b_bound_ok = true;
};

// MAC-layer packet. `file_serial` ties window packets back to their file while
// they sit at the origin; relay packets keep it for tracing only.
struct Packet {
  NodeId origin = -1;
  std::uint64_t creation_slot = 0;
  std::uint64_t file_serial = kNoFile;

  static constexpr std::uint64_t kNoFile = std::numeric_limits<std::uint64_t>::max();
};

class Engine {
 public:
  explicit Engine(const SimConfig& config);

  // Advances one slot and returns the frame for it.
  const MetricsFrame& step();

  using FrameSink = std::function<void(const MetricsFrame&)>;
  // Runs the configured horizon, emitting frames at the metrics cadence.
  RunSummary run(const FrameSink& sink = {});

  nlohmann::json snapshot() const;
  void restore(const nlohmann::json& snap);

  // Warm-start hook: place a relay packet in a MAC queue.
  void inject_external_packet(NodeId node, DestId dest);

  const Network& network() const { return net_; }
  const WeightFn& weight_fn() const { return fn_; }
  const SimConfig& config() const { return cfg_; }
  std::uint64_t slot() const { return slot_; }
  const RunSummary& running_summary() const { return summary_; }
  const ActivationVector& activation() const { return x_; }
  std::uint64_t queue_size(NodeId n, DestId d) const;
  const std::vector<FileRecord>& files_at(std::size_t source_index) const {
    return files_[source_index];
  }

  // V = sum_{n,d} G(Q-bar) on the current state.
  double lyapunov_value() const;

 private:
  void check_slot_start_invariants(const LinkWeights& w, const ModifiedWeights* wm);
  void note_violation(std::uint64_t ViolationCounts::*field, const std::string& what);
  QueueView queue_view() const;
  QueueView qbar_view() const;
  double total_queue() const;
  std::uint64_t live_files() const;

  SimConfig cfg_;
  Network net_;
  WeightFn fn_;
  std::optional<ScheduleSet> schedules_;
  std::vector<double> beta_;
  Rng rng_;

  // [node][dest_index] FIFO queues.
  std::vector<std::vector<std::deque<Packet>>> q_;
  std::vector<std::vector<FileRecord>> files_;        // by source index
  std::vector<std::uint64_t> next_serial_;            // by source index
  std::vector<int> source_index_of_node_;             // -1 if not a source
  CsmaNodeState csma_;
  ActivationVector x_;
  std::uint64_t slot_ = 0;

  RunSummary summary_;
  MetricsFrame frame_;

  // Cross-slot context for the expected-backlog increment check.
  std::vector<std::vector<double>> prev_qbar_;
  std::vector<std::vector<double>> flux_;             // z_in - z_out + A-bar + B, per (n, d)
  bool have_prev_qbar_ = false;
};

}  // namespace flowsched
