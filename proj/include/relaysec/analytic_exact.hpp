#pragma once

#include <cstdint>

#include "relaysec/expmix.hpp"
#include "relaysec/network_model.hpp"
#include "relaysec/special_functions.hpp"

namespace relaysec::exact {

// Conditional single-letter distributions given the set of decoding relays
// has cardinality `L`.  The destination-side combined SNR equals W / a where
// a = 1 + (AN aggregate at the destination) is shared by both transmission
// slots; the eavesdropper-side combined SNR Z is AN-free.  The outage event
// is W < a * (threshold + slope * Z).
struct SchemeParts {
  mix::ExpPoly w_survival;  // survival function of W
  mix::ExpPoly z_pdf;       // density of Z
  double threshold = 0.0;   // rho for two-slot schemes, delta for DT
  double slope = 0.0;       // rho + 1 (two-slot) or 2^R (DT)
  int zero_order = 1;       // F_W(w) ~ const * w^zero_order near 0
};

// Distributions for one conditional scheme instance.  cardinality is ignored
// for DT; DMO/DSO have no closed-form factorisation and raise
// std::invalid_argument.
SchemeParts scheme_parts(model::Scheme scheme, const model::Model& m, int cardinality);

// Probability that one relay fails to decode the source message (the
// relay-side SNR, including its own AN aggregate, falls below rho).
double relay_decode_failure(const model::Model& m);

// Probability that exactly the relays in `mask` decode (bit m = relay m).
double wirs_subset_probability(const model::Model& m, std::uint32_t mask);

// Probability that exactly L of the M relays decode.
double wirs_cardinality_probability(const model::Model& m, int cardinality);

// Direct transmission (no relays, one slot, full rate).
double ip_direct(const model::Model& m);
double sop_direct(const model::Model& m);

// Conditional metrics given |F| = cardinality >= 1.  DT ignores cardinality.
// DMO/DSO raise std::invalid_argument (no closed form; use the simulator).
double ip_exact(model::Scheme scheme, const model::Model& m, int cardinality);
double sop_exact(model::Scheme scheme, const model::Model& m, int cardinality);

// Law-of-total-probability combination over the WIRS cardinalities; the empty
// set falls back to full-rate direct transmission.
double ip_total(model::Scheme scheme, const model::Model& m);
double sop_total(model::Scheme scheme, const model::Model& m);

// Pointwise distribution evaluations exposed for statistical certification.
enum class DistKind {
  kDestMrcBestRelayCdf,     // CDF of (max relay->dest + direct) / a
  kDestScBestRelayCdf,      // CDF of max(relay->dest max, direct) / a
  kEveMrcPairPdf,           // pdf of eavesdropper MRC pair (relay + source legs)
  kDestMrcAllRelayCdf,      // CDF of (sum of L relay legs + direct) / a
  kDirectLinkCdf,           // CDF of direct link / a
  kBestRelayGainCdf,        // CDF of the best raw relay->dest gain (no AN)
  kDestMrcSingleRelayCdf,   // CDF of (one relay->dest leg + direct) / a; the
                            // minimum-interception rule selects on the
                            // eavesdropper side, so the destination leg is a
                            // single plain draw
  kEveScAllRelayPdf,        // pdf of max(best relay->eve leg under the
                            // all-relays power split, source->eve leg)
};
double distribution_value(DistKind kind, const model::Model& m, int cardinality,
                          double point);

namespace detail {
// E[a^p e^{-s a}] for a = 1 + sum of independent exponentials with the given
// partial-fraction weights.
long double an_laplace_moment(const model::AnWeights& an, int p, long double s);
// E[a^d]
long double an_power_moment(const model::AnWeights& an, int d);
// CDF at y of W / a given the survival of W and the AN weights.
double an_mixed_cdf(const mix::ExpPoly& w_survival, const model::AnWeights& an, double y);
// Leading term of the conditional SOP as the legitimate anchor grows:
// g_D * E[a^D] * E[(threshold + slope*Z)^D] with D the vanishing order of
// F_W at the origin.  Exact power law in the anchor.  DMO/DSO unsupported.
double sop_conditional_leading(model::Scheme scheme, const model::Model& m,
                               int cardinality);
}  // namespace detail

}  // namespace relaysec::exact
