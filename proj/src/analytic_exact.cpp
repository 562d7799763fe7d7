#include "relaysec/analytic_exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaysec::exact {

using mix::ExpPoly;
using mix::Term;
using model::AnWeights;
using model::Model;
using model::Scheme;

namespace {

long double factorial_ld(int n) {
  static const auto table = [] {
    std::array<long double, 180> t{};
    t[0] = 1.0L;
    for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table.at(static_cast<size_t>(n));
}

long double binom_ld(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  return factorial_ld(n) / (factorial_ld(k) * factorial_ld(n - k));
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

int require_cardinality(const Model& m, int cardinality) {
  if (cardinality < 1 || cardinality > m.relays) {
    throw std::invalid_argument("conditional metric needs 1 <= cardinality <= relays");
  }
  return cardinality;
}

// E[Z^u] in extended precision for a density given as an exp-poly.
std::vector<long double> z_moments(const ExpPoly& z_pdf, int up_to) {
  std::vector<long double> m(static_cast<size_t>(up_to) + 1, 0.0L);
  for (int u = 0; u <= up_to; ++u) {
    long double sum = 0.0L;
    for (const Term& t : z_pdf.terms()) {
      sum += (long double)t.coef * factorial_ld(t.power + u) *
             std::pow((long double)t.rate, -(t.power + u + 1));
    }
    m[static_cast<size_t>(u)] = sum;
  }
  return m;
}

// Exact small-outage path: F_W(w) = sum_{d >= D} g_d w^d with
// g_d = -sum_k beta_k (-r_k)^{d-p_k} / (d-p_k)!, so
// SOP = sum_d g_d E[a^d] E[(th + kappa Z)^d].  Converges whenever the W decay
// rates are small against the eavesdropper/AN scales (high legitimate SNR);
// the caller falls back to the closed form when certification fails.
bool sop_series_path(const SchemeParts& parts, const AnWeights& an, double* out) {
  constexpr int kMaxD = 72;
  const auto& wt = parts.w_survival.terms();
  const long double th = parts.threshold, kp = parts.slope;

  auto zm = z_moments(parts.z_pdf, kMaxD);
  long double sum = 0.0L, max_term = 0.0L, prev_mag = 0.0L;
  int small_streak = 0, grow_streak = 0;
  for (int d = parts.zero_order; d <= kMaxD; ++d) {
    long double g = 0.0L;
    for (const Term& t : wt) {
      if (t.power > d) continue;
      int e = d - t.power;
      long double rp = std::pow((long double)t.rate, e);
      long double sign = (e % 2 == 0) ? 1.0L : -1.0L;
      g -= (long double)t.coef * sign * rp / factorial_ld(e);
    }
    long double ez = 0.0L;  // E[(th + kappa Z)^d]
    for (int u = 0; u <= d; ++u) {
      ez += binom_ld(d, u) * std::pow(th, (long double)(d - u)) * std::pow(kp, (long double)u) *
            zm[static_cast<size_t>(u)];
    }
    long double term = g * detail::an_power_moment(an, d) * ez;
    if (!std::isfinite((double)term)) return false;
    sum += term;
    long double mag = std::fabs(term);
    max_term = std::max(max_term, mag);
    if (d > parts.zero_order) {
      if (mag > prev_mag) {
        if (++grow_streak >= 4) return false;  // not in the convergent regime
      } else {
        grow_streak = 0;
      }
    }
    prev_mag = mag;
    if (sum > 0.0L && mag < 1e-15L * sum) {
      if (++small_streak >= 2) {
        // certified: geometric tail negligible and cancellation bounded
        if (max_term / sum > 1e6L) return false;
        *out = clamp01(static_cast<double>(sum));
        return true;
      }
    } else {
      small_streak = 0;
    }
  }
  return false;
}

// Closed-form path built on the confluent hypergeometric function of the
// second kind:
//   int_0^inf z^P e^{-sz} (A + Bz)^{-Q} dz
//     = Gamma(P+1) (A/B)^{P+1} A^{-Q} U(P+1, P+2-Q, sA/B).
long double u_integral(int P, int Q, long double s, long double A, long double B) {
  double x = static_cast<double>(s * A / B);
  double lg = static_cast<double>(std::lgamma((long double)(P + 1)) +
                                  (P + 1) * (std::log(A) - std::log(B)) - Q * std::log(A));
  return std::exp((long double)lg) *
         (long double)sf::tricomi_u(P + 1, P + 2 - Q, x, sf::EvalPolicy{});
}

double sop_engine(const SchemeParts& parts, const AnWeights& an) {
  double series = 0.0;
  if (sop_series_path(parts, an, &series)) return series;

  const long double th = parts.threshold, kp = parts.slope;
  const size_t n_an = an.mean.size();
  long double survive = 0.0L;  // E[S_W(a (th + kappa Z))]
  for (const Term& w : parts.w_survival.terms()) {
    const long double r = w.rate;
    const int p = w.power;
    for (int u = 0; u <= p; ++u) {
      const long double geom = binom_ld(p, u) * std::pow(th, (long double)(p - u)) *
                               std::pow(kp, (long double)u);
      for (const Term& z : parts.z_pdf.terms()) {
        const int P = u + z.power;
        const long double s = (long double)z.rate + r * kp;
        long double inner = 0.0L;
        if (n_an == 0) {
          inner = factorial_ld(P) * std::pow(s, (long double)-(P + 1));
        } else {
          for (int t = 0; t <= p; ++t) {
            long double bt = binom_ld(p, t) * factorial_ld(t);
            for (size_t i = 0; i < n_an; ++i) {
              const long double sig = an.mean[i];
              const long double A = 1.0L + r * th * sig;
              const long double B = r * kp * sig;
              inner += bt * (long double)an.pi[i] * std::pow(sig, (long double)t) *
                       u_integral(P, t + 1, s, A, B);
            }
          }
        }
        survive += (long double)w.coef * std::exp(-r * th) * geom * (long double)z.coef * inner;
      }
    }
  }
  return clamp01(static_cast<double>(1.0L - survive));
}

}  // namespace

namespace detail {

long double an_laplace_moment(const AnWeights& an, int p, long double s) {
  const long double damp = std::exp(-s);
  if (an.mean.empty()) return damp;
  if (p == 0) {
    long double prod = 1.0L;
    for (double sig : an.mean) prod /= (1.0L + s * (long double)sig);
    return damp * prod;
  }
  long double sum = 0.0L;
  for (int t = 0; t <= p; ++t) {
    long double inner = 0.0L;
    for (size_t i = 0; i < an.mean.size(); ++i) {
      long double sig = an.mean[i];
      inner += (long double)an.pi[i] * std::pow(sig, (long double)t) /
               std::pow(1.0L + s * sig, (long double)(t + 1));
    }
    sum += binom_ld(p, t) * factorial_ld(t) * inner;
  }
  return damp * sum;
}

long double an_power_moment(const AnWeights& an, int d) {
  // complete homogeneous symmetric polynomials via Newton's identities:
  // E[gamma^t] = t! h_t(sigma_1..sigma_N)
  const size_t n = an.mean.size();
  std::vector<long double> h(static_cast<size_t>(d) + 1, 0.0L);
  h[0] = 1.0L;
  if (n > 0) {
    std::vector<long double> psum(static_cast<size_t>(d) + 1, 0.0L);
    for (int j = 1; j <= d; ++j) {
      long double pj = 0.0L;
      for (double sig : an.mean) pj += std::pow((long double)sig, (long double)j);
      psum[static_cast<size_t>(j)] = pj;
    }
    for (int t = 1; t <= d; ++t) {
      long double acc = 0.0L;
      for (int j = 1; j <= t; ++j) acc += psum[static_cast<size_t>(j)] * h[static_cast<size_t>(t - j)];
      h[static_cast<size_t>(t)] = acc / t;
    }
  }
  long double sum = 0.0L;
  for (int t = 0; t <= d; ++t) {
    sum += binom_ld(d, t) * factorial_ld(t) * h[static_cast<size_t>(t)];
  }
  return sum;
}

double an_mixed_cdf(const ExpPoly& w_survival, const AnWeights& an, double y) {
  if (y <= 0.0) return 0.0;
  long double surv = 0.0L;
  for (const Term& t : w_survival.terms()) {
    surv += (long double)t.coef * std::pow((long double)y, (long double)t.power) *
            an_laplace_moment(an, t.power, (long double)t.rate * y);
  }
  return clamp01(static_cast<double>(1.0L - surv));
}

double sop_conditional_leading(Scheme scheme, const Model& m, int cardinality) {
  const SchemeParts parts = scheme_parts(scheme, m, cardinality);
  const int D = parts.zero_order;
  long double g = 0.0L;
  for (const Term& t : parts.w_survival.terms()) {
    const int e = D - t.power;
    if (e < 0) continue;
    const long double sign = (e % 2 == 0) ? 1.0L : -1.0L;
    g -= (long double)t.coef * sign * std::pow((long double)t.rate, (long double)e) /
         factorial_ld(e);
  }
  const auto zm = z_moments(parts.z_pdf, D);
  const long double th = parts.threshold, kp = parts.slope;
  long double ez = 0.0L;
  for (int u = 0; u <= D; ++u) {
    ez += binom_ld(D, u) * std::pow(th, (long double)(D - u)) *
          std::pow(kp, (long double)u) * zm[static_cast<size_t>(u)];
  }
  return static_cast<double>(g * an_power_moment(m.consts.dest, D) * ez);
}

}  // namespace detail

SchemeParts scheme_parts(Scheme scheme, const Model& m, int cardinality) {
  SchemeParts parts;
  parts.threshold = m.consts.varrho;
  parts.slope = m.consts.varrho + 1.0;

  if (scheme == Scheme::DT) {
    parts.w_survival = ExpPoly::exponential_survival(m.means.sd);
    parts.z_pdf = ExpPoly::exponential_pdf(m.means.se);
    parts.threshold = m.consts.delta;
    parts.slope = m.consts.delta + 1.0;
    parts.zero_order = 1;
    return parts;
  }

  const int L = require_cardinality(m, cardinality);
  const double md = m.means.md, sd = m.means.sd, me = m.means.me, se = m.means.se;
  // all-relays schemes split the relay power budget across the L transmitters
  const double fold = 2.0 / (L + 1.0);

  switch (scheme) {
    case Scheme::DMC:
      parts.w_survival =
          convolve(ExpPoly::iid_max_survival(L, md).pdf_from_survival(),
                   ExpPoly::exponential_pdf(sd))
              .survival_from_pdf();
      parts.z_pdf = convolve(ExpPoly::exponential_pdf(me), ExpPoly::exponential_pdf(se));
      parts.zero_order = L + 1;
      break;
    case Scheme::DSC:
      parts.w_survival = mix::max_survival(
          {ExpPoly::iid_max_survival(L, md), ExpPoly::exponential_survival(sd)});
      parts.z_pdf = mix::max_survival({ExpPoly::exponential_survival(me),
                                       ExpPoly::exponential_survival(se)})
                        .pdf_from_survival();
      parts.zero_order = L + 1;
      break;
    case Scheme::DMM:
      parts.w_survival =
          convolve(ExpPoly::exponential_pdf(md), ExpPoly::exponential_pdf(sd))
              .survival_from_pdf();
      parts.z_pdf = convolve(ExpPoly::exponential_pdf(me / L), ExpPoly::exponential_pdf(se));
      parts.zero_order = 2;
      break;
    case Scheme::DSM:
      parts.w_survival = mix::max_survival(
          {ExpPoly::exponential_survival(md), ExpPoly::exponential_survival(sd)});
      parts.z_pdf = mix::max_survival({ExpPoly::exponential_survival(me / L),
                                       ExpPoly::exponential_survival(se)})
                        .pdf_from_survival();
      parts.zero_order = 2;
      break;
    case Scheme::DMA:
      parts.w_survival = convolve(ExpPoly::erlang_pdf(L, fold * md),
                                  ExpPoly::exponential_pdf(sd))
                             .survival_from_pdf();
      parts.z_pdf =
          convolve(ExpPoly::erlang_pdf(L, fold * me), ExpPoly::exponential_pdf(se));
      parts.zero_order = L + 1;
      break;
    case Scheme::DSA:
      parts.w_survival = mix::max_survival(
          {ExpPoly::iid_max_survival(L, fold * md), ExpPoly::exponential_survival(sd)});
      parts.z_pdf = mix::max_survival({ExpPoly::iid_max_survival(L, fold * me),
                                       ExpPoly::exponential_survival(se)})
                        .pdf_from_survival();
      parts.zero_order = L + 1;
      break;
    case Scheme::DMO:
    case Scheme::DSO:
      throw std::invalid_argument(
          std::string(model::scheme_name(scheme)) +
          ": no closed-form factorisation exists; use the simulator");
    case Scheme::DT:
      break;  // handled above
  }
  return parts;
}

double relay_decode_failure(const Model& m) {
  double expo = m.consts.varrho / m.means.sm;
  for (double sig : m.means.lm) expo += std::log1p(m.consts.varrho * sig / m.means.sm);
  return -std::expm1(-expo);
}

double wirs_subset_probability(const Model& m, std::uint32_t mask) {
  if (m.relays > 30) throw std::invalid_argument("subset masks supported for relays <= 30");
  if (mask >> m.relays) throw std::invalid_argument("subset mask has bits beyond the relay count");
  const double fail = relay_decode_failure(m);
  const int in = __builtin_popcount(mask);
  return std::pow(1.0 - fail, in) * std::pow(fail, m.relays - in);
}

double wirs_cardinality_probability(const Model& m, int cardinality) {
  if (cardinality < 0 || cardinality > m.relays) return 0.0;
  const double fail = relay_decode_failure(m);
  return static_cast<double>(binom_ld(m.relays, cardinality)) *
         std::pow(1.0 - fail, cardinality) * std::pow(fail, m.relays - cardinality);
}

double ip_direct(const Model& m) { return std::exp(-m.consts.delta / m.means.se); }

double sop_direct(const Model& m) {
  return sop_engine(scheme_parts(Scheme::DT, m, 0), m.consts.dest);
}

double ip_exact(Scheme scheme, const Model& m, int cardinality) {
  if (scheme == Scheme::DT) return ip_direct(m);
  SchemeParts parts = scheme_parts(scheme, m, cardinality);
  return clamp01(parts.z_pdf.survival_from_pdf().eval(m.consts.varrho));
}

double sop_exact(Scheme scheme, const Model& m, int cardinality) {
  if (scheme == Scheme::DT) return sop_direct(m);
  return sop_engine(scheme_parts(scheme, m, cardinality), m.consts.dest);
}

namespace {

double total_over_cardinalities(Scheme scheme, const Model& m,
                                double (*conditional)(Scheme, const Model&, int),
                                double direct_value) {
  double total = wirs_cardinality_probability(m, 0) * direct_value;
  for (int L = 1; L <= m.relays; ++L) {
    total += wirs_cardinality_probability(m, L) * conditional(scheme, m, L);
  }
  return clamp01(total);
}

}  // namespace

double ip_total(Scheme scheme, const Model& m) {
  if (scheme == Scheme::DT) return ip_direct(m);
  return total_over_cardinalities(scheme, m, &ip_exact, ip_direct(m));
}

double sop_total(Scheme scheme, const Model& m) {
  if (scheme == Scheme::DT) return sop_direct(m);
  return total_over_cardinalities(scheme, m, &sop_exact, sop_direct(m));
}

double distribution_value(DistKind kind, const Model& m, int cardinality, double point) {
  switch (kind) {
    case DistKind::kDestMrcBestRelayCdf:
      return detail::an_mixed_cdf(scheme_parts(Scheme::DMC, m, cardinality).w_survival,
                                  m.consts.dest, point);
    case DistKind::kDestScBestRelayCdf:
      return detail::an_mixed_cdf(scheme_parts(Scheme::DSC, m, cardinality).w_survival,
                                  m.consts.dest, point);
    case DistKind::kEveMrcPairPdf:
      return scheme_parts(Scheme::DMC, m, cardinality).z_pdf.eval(point);
    case DistKind::kDestMrcAllRelayCdf:
      return detail::an_mixed_cdf(scheme_parts(Scheme::DMA, m, cardinality).w_survival,
                                  m.consts.dest, point);
    case DistKind::kDirectLinkCdf:
      return detail::an_mixed_cdf(ExpPoly::exponential_survival(m.means.sd), m.consts.dest,
                                  point);
    case DistKind::kBestRelayGainCdf: {
      require_cardinality(m, cardinality);
      if (point <= 0.0) return 0.0;
      return std::pow(-std::expm1(-point / m.means.md), cardinality);
    }
    case DistKind::kDestMrcSingleRelayCdf:
      return detail::an_mixed_cdf(scheme_parts(Scheme::DMM, m, cardinality).w_survival,
                                  m.consts.dest, point);
    case DistKind::kEveScAllRelayPdf:
      return scheme_parts(Scheme::DSA, m, cardinality).z_pdf.eval(point);
  }
  throw std::invalid_argument("unknown distribution kind");
}

}  // namespace relaysec::exact
