#include "relaysec/analytic_asymptotic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "relaysec/analytic_exact.hpp"
#include "relaysec/special_functions.hpp"

namespace relaysec::asymptotic {

using model::Model;
using model::Scheme;

namespace {

long double factorial_ld(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long double binom_ld(int n, int k) {
  return factorial_ld(n) / (factorial_ld(k) * factorial_ld(n - k));
}

// Linearised probability that one relay fails to decode: the exact
// failure probability behaves like rho * (1 + sum of relay AN means) / sm
// once sm is large.  Exact power law in the anchor.
double decode_failure_linear(const Model& m) {
  double an_sum = 0.0;
  for (double s : m.means.lm) an_sum += s;
  return m.consts.varrho * (1.0 + an_sum) / m.means.sm;
}

int require_cardinality(const Model& m, int cardinality) {
  if (cardinality < 0 || cardinality > m.relays) {
    throw std::invalid_argument("cardinality must lie in [0, relays]");
  }
  return cardinality;
}

// Leading conditional term for the schemes whose destination picks the relay
// with the best secrecy ratio.  These forms additionally assume the wiretap
// means are large; trust them only when sd >> se >> 1 (documented).
double optimal_selection_conditional(Scheme scheme, const Model& m, int L) {
  const double eps = m.means.sd / m.means.md;
  const double eps_tilde = m.means.se / m.means.me;
  const double two_2r = m.consts.varrho + 1.0;  // 2^(2R)
  const double shape = std::pow(eps / eps_tilde, L) * std::pow(m.means.se, L + 1) *
                       std::pow(two_2r, L + 2) / std::pow(m.means.sd, L + 1);
  const auto& an = m.consts.dest;
  if (scheme == Scheme::DMO) {
    const double an_moment =
        static_cast<double>(exact::detail::an_power_moment(an, L + 1));
    return shape * an_moment / ((L + 1.0) * (L + 2.0));
  }
  // best-signal combining variant; vanishes when no AN is present (the
  // expansion it comes from keeps only AN-dominated terms)
  long double bracket = 0.0L;
  for (int mm = 0; mm <= L; ++mm) {
    long double inner = 0.0L;
    for (size_t i = 0; i < an.mean.size(); ++i) {
      const long double sig = an.mean[i];
      inner += (long double)an.pi[i] * std::pow(sig, (long double)(mm + 1)) *
               (factorial_ld(mm) + sig * factorial_ld(mm + 1));
    }
    bracket += binom_ld(L, mm) * inner;
  }
  return shape * static_cast<double>(bracket);
}

double conditional_leading(Scheme scheme, const Model& m, int L) {
  if (scheme == Scheme::DMO || scheme == Scheme::DSO) {
    return optimal_selection_conditional(scheme, m, L);
  }
  return exact::detail::sop_conditional_leading(scheme, m, L);
}

// Full-rate direct-transmission fallback after all relays fail, leading term
// with the threshold offset kept so the total stays asymptotically tight.
double fallback_leading(const Model& m) {
  return exact::detail::sop_conditional_leading(Scheme::DT, m, 1);
}

}  // namespace

int diversity_order(Scheme scheme, int cardinality, int relays) {
  if (scheme == Scheme::DT) return 1;
  if (cardinality < 0 || cardinality > relays) {
    throw std::invalid_argument("cardinality must lie in [0, relays]");
  }
  if (cardinality == 0) return relays + 1;
  if (scheme == Scheme::DMM || scheme == Scheme::DSM) {
    return relays - cardinality + 2;
  }
  return relays + 1;
}

int diversity_order_total(Scheme scheme, int relays) {
  return diversity_order(scheme, relays, relays);
}

double sop_asymptotic(Scheme scheme, const Model& m, int cardinality) {
  if (scheme == Scheme::DT) {
    // one-slot direct transmission with the threshold offset dropped: the
    // printed high-anchor form, tight once 2^R * se dominates the threshold
    const double an_mean = static_cast<double>(
        exact::detail::an_power_moment(m.consts.dest, 1));
    return (m.consts.delta + 1.0) * m.means.se * an_mean / m.means.sd;
  }
  const int L = require_cardinality(m, cardinality);
  const double fail = decode_failure_linear(m);
  const double set_factor =
      static_cast<double>(binom_ld(m.relays, L)) * std::pow(fail, m.relays - L);
  if (L == 0) return set_factor * fallback_leading(m);
  return set_factor * conditional_leading(scheme, m, L);
}

double sop_asymptotic_total(Scheme scheme, const Model& m) {
  if (scheme == Scheme::DT) return sop_asymptotic(scheme, m, 0);
  int d_min = diversity_order_total(scheme, m.relays);
  double sum = 0.0;
  for (int L = 0; L <= m.relays; ++L) {
    if (diversity_order(scheme, L, m.relays) != d_min) continue;
    sum += sop_asymptotic(scheme, m, L);
  }
  return sum;
}

double coding_gain(Scheme scheme, const Model& m) {
  const int d = diversity_order_total(scheme, m.relays);
  const double p = sop_asymptotic_total(scheme, m);
  return std::pow(p, -1.0 / d) / m.means.sd;
}

double snr_gap_db(Scheme a, Scheme b, const Model& m) {
  if (diversity_order_total(a, m.relays) != diversity_order_total(b, m.relays)) {
    throw std::invalid_argument("SNR gap requires equal diversity orders");
  }
  return 20.0 * std::log10(coding_gain(a, m) / coding_gain(b, m));
}

double sop_floor(const Model& m) {
  const double g = (m.consts.delta + 1.0) * m.means.se / m.means.sd;
  const auto& an = m.consts.dest;
  if (an.mean.empty()) return g / (1.0 + g);
  // E[1/(1+k)] over the AN mixture; exp(x) E1(x) evaluated in one call
  double acc = 0.0;
  for (size_t i = 0; i < an.mean.size(); ++i) {
    const double x = (1.0 + g) / (g * an.mean[i]);
    acc += an.pi[i] * sf::tricomi_u(1, 1, x) / (g * an.mean[i]);
  }
  return 1.0 - acc;
}

}  // namespace relaysec::asymptotic
