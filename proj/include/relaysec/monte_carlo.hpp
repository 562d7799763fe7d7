#pragma once

#include <cstdint>
#include <vector>

#include "relaysec/network_model.hpp"

namespace relaysec::mc {

// Counter-based per-trial randomness: the substream for trial t is fully
// determined by (seed, t), so any partitioning of the trial range across
// workers reproduces identical draws.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t next_u64();
  double uniform01();                // in (0, 1]
  double exponential(double mean);   // inverse-CDF draw, finite for mean >= 0

 private:
  std::uint64_t state_;
};

// One protocol trial's channel state.  psi_* are post-jamming SINRs: both
// destination legs share the destination AN denominator, the relay decode
// legs carry their own per-relay AN denominators, and the eavesdropper's
// own receive legs are jamming-free.
struct ChannelSample {
  double psi_sd = 0.0;
  double psi_se = 0.0;
  std::vector<double> psi_sm;  // decode leg per relay
  std::vector<double> psi_md;  // relay->destination per relay
  std::vector<double> psi_me;  // relay->eavesdropper per relay
  double an_to_d = 0.0;             // destination jamming aggregate
  std::vector<double> an_to_m;      // per-relay jamming aggregates
  std::uint32_t wirs = 0;           // bit m set when relay m decodes
};

struct RatePair {
  double secrecy = 0.0;       // clamped at zero
  double eavesdropper = 0.0;  // rate of the eavesdropper's combined copy
};

struct Estimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;  // effective sample size (accepted trials)
  double std_err = 0.0;
  std::uint64_t seed = 0;
};

enum class Metric { kSop, kIp };
enum class Mode { kPaperFaithful, kStrictIr };

// Draws every link of one trial in a fixed documented order (direct pair,
// destination jamming, then per relay: decode leg, destination leg,
// eavesdropper leg, relay jamming) and marks the decoding set.
ChannelSample sample_channel(const model::Model& m, TrialRng& rng);
void sample_channel(const model::Model& m, TrialRng& rng, ChannelSample* out);

// Scheme rate rules on one sample.  Relay schemes require a non-empty
// decoding set (std::invalid_argument otherwise); DT ignores it.  Implements
// the selection rule, the combiner at both receivers, the half pre-log for
// two-slot schemes, and the per-relay power split 2/(|F|+1) for the
// all-relays schemes.
RatePair secrecy_rate(model::Scheme scheme, const ChannelSample& c);

// Event count over the trial index range [begin, end); the building block
// that makes multi-worker partitioning exact.
std::uint64_t count_events(Metric metric, model::Scheme scheme, const model::Model& m,
                           Mode mode, std::uint64_t seed, std::uint64_t begin,
                           std::uint64_t end);

// kPaperFaithful dispatches to the relay phase whenever the decoding set is
// non-empty (the events every closed form models); kStrictIr additionally
// requires the direct link to fall below the target rate first.
Estimate estimate(Metric metric, model::Scheme scheme, const model::Model& m,
                  std::uint64_t trials, std::uint64_t seed,
                  Mode mode = Mode::kPaperFaithful);

// Rejection-samples trials whose decoding-set cardinality matches, then
// scores the scheme metric on the accepted ones (cardinality 0 scores the
// direct-transmission fallback).  Raises StarvationError when fewer than
// 1000 trials are accepted.
Estimate conditional_estimate(Metric metric, model::Scheme scheme,
                              const model::Model& m, int cardinality,
                              std::uint64_t trials, std::uint64_t seed);

}  // namespace relaysec::mc
