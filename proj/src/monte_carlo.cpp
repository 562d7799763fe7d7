#include "relaysec/monte_carlo.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relaysec/errors.hpp"
#include "relaysec/network_model.hpp"

namespace relaysec::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; full avalanche so nearby trial indices land on
// unrelated stream positions and substreams cannot overlap by a short shift.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(seed + kGolden * (trial + 1))) {}

std::uint64_t TrialRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::uniform01() {
  // 53-bit mantissa shifted into (0, 1]; never 0 so log stays finite.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double TrialRng::exponential(double mean) {
  return -mean * std::log(uniform01());
}

void sample_channel(const model::Model& m, TrialRng& rng, ChannelSample* out) {
  const auto& mu = m.means;
  const std::size_t relays = static_cast<std::size_t>(m.relays);
  out->psi_sm.resize(relays);
  out->psi_md.resize(relays);
  out->psi_me.resize(relays);
  out->an_to_m.resize(relays);

  const double x_sd = rng.exponential(mu.sd);
  out->psi_se = rng.exponential(mu.se);
  double an_d = 0.0;
  for (double antenna_mean : mu.id) an_d += rng.exponential(antenna_mean);
  out->an_to_d = an_d;
  out->psi_sd = x_sd / (1.0 + an_d);

  std::uint32_t wirs = 0;
  for (std::size_t r = 0; r < relays; ++r) {
    const double x_sm = rng.exponential(mu.sm);
    const double x_md = rng.exponential(mu.md);
    out->psi_me[r] = rng.exponential(mu.me);
    double an_r = 0.0;
    for (double antenna_mean : mu.lm) an_r += rng.exponential(antenna_mean);
    out->an_to_m[r] = an_r;
    out->psi_sm[r] = x_sm / (1.0 + an_r);
    out->psi_md[r] = x_md / (1.0 + an_d);
    if (out->psi_sm[r] > m.consts.varrho) wirs |= (1u << r);
  }
  out->wirs = wirs;
}

ChannelSample sample_channel(const model::Model& m, TrialRng& rng) {
  ChannelSample c;
  sample_channel(m, rng, &c);
  return c;
}

namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Two-slot rate pair from the combined SNRs at the two receivers.
RatePair half_rate_pair(double dest_snr, double eve_snr) {
  RatePair r;
  r.eavesdropper = 0.5 * std::log2(1.0 + eve_snr);
  r.secrecy = positive_part(0.5 * std::log2((1.0 + dest_snr) / (1.0 + eve_snr)));
  return r;
}

int argmax_in(const std::vector<double>& v, std::uint32_t mask) {
  int best = -1;
  double best_v = -1.0;
  for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
    const int r = std::countr_zero(bits);
    if (v[static_cast<std::size_t>(r)] > best_v) {
      best_v = v[static_cast<std::size_t>(r)];
      best = r;
    }
  }
  return best;
}

int argmin_in(const std::vector<double>& v, std::uint32_t mask) {
  int best = -1;
  double best_v = 0.0;
  for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
    const int r = std::countr_zero(bits);
    if (best < 0 || v[static_cast<std::size_t>(r)] < best_v) {
      best_v = v[static_cast<std::size_t>(r)];
      best = r;
    }
  }
  return best;
}

}  // namespace

RatePair secrecy_rate(model::Scheme scheme, const ChannelSample& c) {
  using model::Scheme;
  if (scheme == Scheme::DT) {
    RatePair r;
    r.eavesdropper = std::log2(1.0 + c.psi_se);
    r.secrecy = positive_part(std::log2((1.0 + c.psi_sd) / (1.0 + c.psi_se)));
    return r;
  }
  if (c.wirs == 0) {
    throw std::invalid_argument("relay scheme requires a non-empty decoding set");
  }
  const std::uint32_t mask = c.wirs;
  switch (scheme) {
    case Scheme::DMC: {
      const int s = argmax_in(c.psi_md, mask);
      return half_rate_pair(c.psi_md[s] + c.psi_sd, c.psi_me[s] + c.psi_se);
    }
    case Scheme::DSC: {
      const int s = argmax_in(c.psi_md, mask);
      return half_rate_pair(std::max(c.psi_md[s], c.psi_sd),
                            std::max(c.psi_me[s], c.psi_se));
    }
    case Scheme::DMM: {
      const int s = argmin_in(c.psi_me, mask);
      return half_rate_pair(c.psi_md[s] + c.psi_sd, c.psi_me[s] + c.psi_se);
    }
    case Scheme::DSM: {
      const int s = argmin_in(c.psi_me, mask);
      return half_rate_pair(std::max(c.psi_md[s], c.psi_sd),
                            std::max(c.psi_me[s], c.psi_se));
    }
    case Scheme::DMO:
    case Scheme::DSO: {
      // Selection maximises the per-relay two-hop secrecy ratio; the direct
      // pair then enters through the scheme's combiner in the ratio domain.
      int s = -1;
      double best_ratio = -1.0;
      for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
        const int r = std::countr_zero(bits);
        const double ratio = (1.0 + c.psi_md[static_cast<std::size_t>(r)]) /
                             (1.0 + c.psi_me[static_cast<std::size_t>(r)]);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          s = r;
        }
      }
      const double direct_ratio = (1.0 + c.psi_sd) / (1.0 + c.psi_se);
      RatePair r;
      if (scheme == Scheme::DMO) {
        r.secrecy = positive_part(0.5 * std::log2(direct_ratio + best_ratio));
        r.eavesdropper = 0.5 * std::log2(1.0 + c.psi_me[s] + c.psi_se);
      } else {
        r.secrecy = positive_part(0.5 * std::log2(std::max(direct_ratio, best_ratio)));
        r.eavesdropper = 0.5 * std::log2(1.0 + std::max(c.psi_me[s], c.psi_se));
      }
      return r;
    }
    case Scheme::DMA: {
      const double fold = 2.0 / (std::popcount(mask) + 1.0);
      double sum_d = 0.0;
      double sum_e = 0.0;
      for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
        const std::size_t r = static_cast<std::size_t>(std::countr_zero(bits));
        sum_d += c.psi_md[r];
        sum_e += c.psi_me[r];
      }
      return half_rate_pair(fold * sum_d + c.psi_sd, fold * sum_e + c.psi_se);
    }
    case Scheme::DSA: {
      const double fold = 2.0 / (std::popcount(mask) + 1.0);
      const int sd_idx = argmax_in(c.psi_md, mask);
      const int se_idx = argmax_in(c.psi_me, mask);
      return half_rate_pair(std::max(fold * c.psi_md[sd_idx], c.psi_sd),
                            std::max(fold * c.psi_me[se_idx], c.psi_se));
    }
    default:
      throw std::invalid_argument("unknown scheme");
  }
}

namespace {

RatePair trial_rates(model::Scheme scheme, const model::Model& m,
                     const ChannelSample& c, Mode mode) {
  if (scheme == model::Scheme::DT) return secrecy_rate(scheme, c);
  if (mode == Mode::kStrictIr) {
    // The relay phase only triggers once the direct link misses the target
    // rate; otherwise the destination keeps the one-slot transmission.
    if (std::log2(1.0 + c.psi_sd) >= m.rate) return secrecy_rate(model::Scheme::DT, c);
  }
  if (c.wirs == 0) return secrecy_rate(model::Scheme::DT, c);
  return secrecy_rate(scheme, c);
}

bool event_hit(Metric metric, double rate, const RatePair& r) {
  return metric == Metric::kSop ? (r.secrecy < rate) : (r.eavesdropper > rate);
}

}  // namespace

std::uint64_t count_events(Metric metric, model::Scheme scheme, const model::Model& m,
                           Mode mode, std::uint64_t seed, std::uint64_t begin,
                           std::uint64_t end) {
  std::uint64_t events = 0;
  ChannelSample c;
  for (std::uint64_t t = begin; t < end; ++t) {
    TrialRng rng(seed, t);
    sample_channel(m, rng, &c);
    if (event_hit(metric, m.rate, trial_rates(scheme, m, c, mode))) ++events;
  }
  return events;
}

Estimate estimate(Metric metric, model::Scheme scheme, const model::Model& m,
                  std::uint64_t trials, std::uint64_t seed, Mode mode) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const std::uint64_t events = count_events(metric, scheme, m, mode, seed, 0, trials);
  Estimate e;
  e.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  e.trials = trials;
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  e.seed = seed;
  return e;
}

Estimate conditional_estimate(Metric metric, model::Scheme scheme,
                              const model::Model& m, int cardinality,
                              std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (cardinality < 0 || cardinality > m.relays) {
    throw std::invalid_argument("decoding-set cardinality out of range");
  }
  std::uint64_t accepted = 0;
  std::uint64_t events = 0;
  ChannelSample c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRng rng(seed, t);
    sample_channel(m, rng, &c);
    if (std::popcount(c.wirs) != cardinality) continue;
    ++accepted;
    const RatePair r = (cardinality == 0 || scheme == model::Scheme::DT)
                           ? secrecy_rate(model::Scheme::DT, c)
                           : secrecy_rate(scheme, c);
    if (event_hit(metric, m.rate, r)) ++events;
  }
  if (accepted < 1000) {
    throw StarvationError("fewer than 1000 trials matched the requested cardinality");
  }
  Estimate e;
  e.p_hat = static_cast<double>(events) / static_cast<double>(accepted);
  e.trials = accepted;
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(accepted));
  e.seed = seed;
  return e;
}

}  // namespace relaysec::mc
