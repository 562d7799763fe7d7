#pragma once

#include "relaysec/network_model.hpp"

namespace relaysec::asymptotic {

// High-anchor behaviour of the secrecy outage probability.  Every quantity
// below treats the legitimate anchor (sd, and with it md and sm) as the
// growing variable while the wiretap links and the AN aggregates stay fixed;
// the returned values are exact power laws in the anchor, so they may exceed
// 1 at low anchors (they are approximations, not probabilities).

// Leading term of the contribution Pr(|F| = L) * SOP|L to the total SOP.
// cardinality 0 is the no-decoder fallback (full-rate direct transmission
// scaled by the probability that all M relays fail).  DT ignores cardinality.
double sop_asymptotic(model::Scheme scheme, const model::Model& m, int cardinality);

// Sum of the slowest-decaying cardinality contributions (ties share the
// minimal exponent and their coefficients add; faster-decaying terms drop).
double sop_asymptotic_total(model::Scheme scheme, const model::Model& m);

// Decay exponent of sop_asymptotic w.r.t. the legitimate anchor.
// DT -> 1.  Relay schemes: cardinality 0 -> M+1 (fallback term);
// DMM/DSM -> M - cardinality + 2; all other schemes -> M + 1.
int diversity_order(model::Scheme scheme, int cardinality, int relays);

// Decay exponent of sop_asymptotic_total: DT -> 1, DMM/DSM -> 2, else M+1.
int diversity_order_total(model::Scheme scheme, int relays);

// C such that the dominant total term equals (C * sd)^(-D); independent of
// the anchor by construction.
double coding_gain(model::Scheme scheme, const model::Model& m);

// 20*log10(C_a / C_b).  Requires equal total diversity orders (throws
// std::invalid_argument otherwise).  Note the deliberate 20x convention:
// documented in the README, some texts use 10x for outage-vs-SNR gaps.
double snr_gap_db(model::Scheme a, model::Scheme b, const model::Model& m);

// Constant the direct-transmission SOP converges to when the legitimate and
// wiretap anchors grow together at the fixed ratio the model encodes (the
// AN aggregates stay fixed).  This is the exact joint limit
// E[k/(1+k)], k = 2^R * (se/sd) * a, not its small-ratio linearisation.
double sop_floor(const model::Model& m);

}  // namespace relaysec::asymptotic
