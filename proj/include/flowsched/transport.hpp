#pragma once

#include <cstdint>
#include <vector>

#include "flowsched/errors.hpp"
#include "flowsched/rng.hpp"

namespace flowsched {

enum class ArrivalLaw { Poisson, Bernoulli };

struct FileTypeSpec {
  double eta = 1.0;  // per-packet termination probability; mean size 1/eta
};

struct SourceTraffic {
  int node = -1;
  int dest = -1;
  double kappa = 0.0;               // file arrivals per slot
  std::vector<double> type_probs;   // over file types, sums to 1
};

struct TrafficSpec {
  ArrivalLaw law = ArrivalLaw::Poisson;
  std::vector<FileTypeSpec> types;
  std::vector<SourceTraffic> sources;

  void validate() const;
  double eta_min() const;
  // Mean file size m_s = sum_i p_si / eta_i for the source at `index`.
  double mean_file_size(std::size_t index) const;
  // Work load rho_s = kappa_s * m_s.
  double load(std::size_t index) const;
};

enum class WindowPolicyKind { Fixed, RandomBounded, AimdClipped };

struct WindowPolicy {
  WindowPolicyKind kind = WindowPolicyKind::Fixed;
  int w_cong = 1;                 // global window bound
  int fixed_w = 1;
  int aimd_increase = 1;
  double aimd_decrease = 0.5;
  int initial_window = 1;
  // AIMD congestion signal: ingress MAC queue above this at slot start.
  int congestion_threshold = 10;

  void validate() const;
};

// One live file at a source. `serial` is stable across re-indexing; the
// 1-based index the analysis uses is just the position in the source's file
// vector plus one.
struct FileRecord {
  std::uint64_t serial = 0;
  int type = 0;
  double sigma = 1.0;       // mean size 1/eta
  int window = 1;
  int in_window = 0;        // this file's packets currently in the ingress queue
  bool xi = true;           // transport layer still holds packets
  bool injected_this_slot_terminal = false;  // I indicator, reset each slot
};

struct InjectionOutcome {
  int injected = 0;         // A-hat
  bool terminated = false;  // I
  double residual = 0.0;    // B = A-hat - sigma * I
};

// Files newly arrived at one source in one slot: count drawn from the arrival
// law, types from the source's distribution, window from the policy initial.
std::vector<FileRecord> sample_arrivals(Rng& rng, const TrafficSpec& spec,
                                        std::size_t source_index, const WindowPolicy& policy,
                                        std::uint64_t& next_serial);

// Appendix-style lazy injection: push packets one at a time while window
// space remains; after each push the file terminates with probability
// eta = 1/sigma. Updates file.in_window/xi and returns the outcome.
InjectionOutcome inject_packets(Rng& rng, FileRecord& file);

// New window size under `policy` given a congestion indicator; always clipped
// to [1, w_cong].
int update_window(Rng& rng, const WindowPolicy& policy, const FileRecord& file,
                  bool congestion);

// Order-preserving compaction dropping departed files (xi == 0 and no packets
// left in the ingress queue).
void reindex_files(std::vector<FileRecord>& files);

// Expected total backlog Q-bar = q + sum_f sigma_f * xi_f at a source's own
// destination queue, plain q everywhere else. `files` may be null for relay
// queues.
double expected_backlog(double mac_queue, const std::vector<FileRecord>* files);

}  // namespace flowsched
