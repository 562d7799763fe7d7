#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaysec/errors.hpp"

namespace relaysec::model {

// Three-letter labels: decode-and-forward + combining (M = MRC, S = SC) +
// relay selection (C = conventional, M = minimum interception, O = optimal,
// A = all successful relays).  DT is direct transmission without relays.
enum class Scheme { DT, DMC, DSC, DMM, DSM, DMO, DSO, DMA, DSA };

constexpr Scheme kAllSchemes[] = {Scheme::DT,  Scheme::DMC, Scheme::DSC,
                                  Scheme::DMM, Scheme::DSM, Scheme::DMO,
                                  Scheme::DSO, Scheme::DMA, Scheme::DSA};

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

struct NetworkConfig {
  int relays = 4;         // M
  int eve_antennas = 5;   // N; 0 disables artificial noise
  double rate = 0.5;      // target secrecy rate R, bits per channel use
  double anchor_db = 10.0;  // mean SNR of the source->destination link, dB
  double eps = 1.01;        // sigma_sd / sigma_md
  double eps_hat = 1.03;    // sigma_sm / sigma_md
  double eps_tilde = 0.9;   // sigma_se / sigma_me
  double mer_db = 11.0;     // sigma_sd / sigma_se in dB (main-to-eavesdropper ratio)
  double an_base = 1.0;     // artificial-noise mean SNR of antenna 1
  double an_spread = 1.05;  // per-antenna multiplicative spread (must be != 1 for N >= 2)
  double total_power = 2.0;  // P'; the source and active relays split it
};

struct LinkMeans {
  double sd = 0.0;  // source -> destination
  double sm = 0.0;  // source -> relay (common to all relays)
  double md = 0.0;  // relay -> destination (common)
  double se = 0.0;  // source -> eavesdropper
  double me = 0.0;  // relay -> eavesdropper (common)
  std::vector<double> id;  // AN antenna i -> destination
  std::vector<double> lm;  // AN antenna l -> relay (common to all relays)
};

// Signed partial-fraction weights of a sum of independent exponentials with
// pairwise-distinct means: pdf(t) = sum_i (pi_i / mean_i) e^{-t/mean_i},
// sum_i pi_i = 1.  Empty vectors represent the degenerate "no antennas" sum.
struct AnWeights {
  std::vector<double> mean;
  std::vector<double> pi;
};

struct DerivedConstants {
  double delta = 0.0;   // 2^R - 1, full-rate threshold (single-slot links)
  double varrho = 0.0;  // 2^{2R} - 1, half-rate threshold (two-slot links)
  AnWeights dest;       // aggregate AN seen by the destination
  AnWeights relay;      // aggregate AN seen by each relay
  std::vector<double> kappa_sd;  // sigma_sd / sigma_id
  std::vector<double> kappa_s;   // sigma_sm / sigma_lm
};

struct Model {
  int relays = 0;
  double rate = 0.0;
  LinkMeans means;
  DerivedConstants consts;
};

// Expand a scenario into the full mean-SNR table.  AN antenna means take a
// geometric ladder an_base * an_spread^{i-1} so they stay pairwise distinct.
LinkMeans resolve(const NetworkConfig& config);

// Thresholds and partial-fraction weight tables.  Raises SingularityError on
// coincident AN means or sigma_me ~= sigma_se (degenerate coefficients).
DerivedConstants derive_constants(const LinkMeans& means, double rate);

Model build_model(const NetworkConfig& config);

// Same network with the legitimate links (sd, md, sm) rescaled so that the
// source->destination mean sits at `anchor_db`; eavesdropper and AN links are
// left untouched.  Used for diversity-order probes where only the legitimate
// SNR grows.
Model with_legit_anchor(const Model& base, double anchor_db);

}  // namespace relaysec::model
