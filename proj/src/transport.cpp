#include "flowsched/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flowsched {

void TrafficSpec::validate() const {
  require(!types.empty(), Err::ConfigError, "traffic needs at least one file type");
  for (const FileTypeSpec& t : types)
    require(t.eta > 0.0 && t.eta <= 1.0, Err::ConfigError, "file type eta must lie in (0,1]");
  for (const SourceTraffic& s : sources) {
    require(s.kappa >= 0.0, Err::ConfigError, "kappa must be nonnegative");
    if (law == ArrivalLaw::Bernoulli)
      require(s.kappa <= 1.0, Err::ConfigError, "bernoulli arrivals need kappa <= 1");
    require(s.type_probs.size() == types.size(), Err::ConfigError,
            "type_probs size must match the number of file types");
    double sum = 0.0;
    for (double p : s.type_probs) {
      require(p >= 0.0, Err::ConfigError, "negative type probability");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-9, Err::ConfigError, "type_probs must sum to 1");
  }
}

double TrafficSpec::eta_min() const {
  double m = 1.0;
  for (const FileTypeSpec& t : types) m = std::min(m, t.eta);
  return m;
}

double TrafficSpec::mean_file_size(std::size_t index) const {
  const SourceTraffic& s = sources[index];
  double m = 0.0;
  for (std::size_t i = 0; i < types.size(); ++i) m += s.type_probs[i] / types[i].eta;
  return m;
}

double TrafficSpec::load(std::size_t index) const {
  return sources[index].kappa * mean_file_size(index);
}

void WindowPolicy::validate() const {
  require(w_cong >= 1, Err::ConfigError, "w_cong must be >= 1");
  require(fixed_w >= 1 && fixed_w <= w_cong, Err::ConfigError,
          "fixed window must lie in [1, w_cong]");
  require(initial_window >= 1 && initial_window <= w_cong, Err::ConfigError,
          "initial window must lie in [1, w_cong]");
  require(aimd_increase >= 1, Err::ConfigError, "aimd increase must be >= 1");
  require(aimd_decrease > 0.0 && aimd_decrease < 1.0, Err::ConfigError,
          "aimd decrease factor must lie in (0,1)");
  require(congestion_threshold >= 0, Err::ConfigError, "congestion threshold must be >= 0");
}

std::vector<FileRecord> sample_arrivals(Rng& rng, const TrafficSpec& spec,
                                        std::size_t source_index, const WindowPolicy& policy,
                                        std::uint64_t& next_serial) {
  const SourceTraffic& src = spec.sources[source_index];
  std::uint64_t count = 0;
  if (src.kappa > 0.0) {
    count = spec.law == ArrivalLaw::Poisson ? rng.poisson(src.kappa)
                                            : (rng.bernoulli(src.kappa) ? 1 : 0);
  }
  std::vector<FileRecord> files;
  files.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    double u = rng.uniform01();
    int type = static_cast<int>(src.type_probs.size()) - 1;
    for (std::size_t i = 0; i < src.type_probs.size(); ++i) {
      u -= src.type_probs[i];
      if (u < 0.0) {
        type = static_cast<int>(i);
        break;
      }
    }
    FileRecord f;
    f.serial = next_serial++;
    f.type = type;
    f.sigma = 1.0 / spec.types[static_cast<std::size_t>(type)].eta;
    f.window = policy.initial_window;
    f.in_window = 0;
    f.xi = true;
    files.push_back(f);
  }
  return files;
}

InjectionOutcome inject_packets(Rng& rng, FileRecord& file) {
  InjectionOutcome out;
  file.injected_this_slot_terminal = false;
  const double eta = 1.0 / file.sigma;
  int space = file.window - file.in_window;
  while (space > 0 && file.xi) {
    ++out.injected;
    ++file.in_window;
    --space;
    if (rng.bernoulli(eta)) {
      file.xi = false;
      out.terminated = true;
      file.injected_this_slot_terminal = true;
    }
  }
  out.residual = static_cast<double>(out.injected) -
                 file.sigma * (out.terminated ? 1.0 : 0.0);
  return out;
}

int update_window(Rng& rng, const WindowPolicy& policy, const FileRecord& file,
                  bool congestion) {
  int w = file.window;
  switch (policy.kind) {
    case WindowPolicyKind::Fixed:
      w = policy.fixed_w;
      break;
    case WindowPolicyKind::RandomBounded:
      w = static_cast<int>(rng.range(1, policy.w_cong));
      break;
    case WindowPolicyKind::AimdClipped:
      if (congestion)
        w = static_cast<int>(std::floor(static_cast<double>(w) * policy.aimd_decrease));
      else
        w = w + policy.aimd_increase;
      break;
  }
  return std::clamp(w, 1, policy.w_cong);
}

void reindex_files(std::vector<FileRecord>& files) {
  std::erase_if(files, [](const FileRecord& f) { return !f.xi && f.in_window == 0; });
}

double expected_backlog(double mac_queue, const std::vector<FileRecord>* files) {
  double total = mac_queue;
  if (files != nullptr)
    for (const FileRecord& f : *files)
      if (f.xi) total += f.sigma;
  return total;
}

}  // namespace flowsched
