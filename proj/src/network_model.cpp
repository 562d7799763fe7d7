#include "relaysec/network_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace relaysec::model {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("network config: ") + name + " must be > 0");
  }
}

std::vector<double> an_ladder(int n, double base, double spread) {
  std::vector<double> out(static_cast<size_t>(n));
  double v = base;
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = v;
    v *= spread;
  }
  return out;
}

AnWeights pf_weights(const std::vector<double>& means) {
  AnWeights w;
  w.mean = means;
  w.pi.resize(means.size());
  for (size_t i = 0; i < means.size(); ++i) {
    long double prod = 1.0L;
    for (size_t j = 0; j < means.size(); ++j) {
      if (j == i) continue;
      long double den = (long double)means[i] - (long double)means[j];
      if (std::fabs((double)den) < 1e-9 * std::max(means[i], means[j])) {
        throw SingularityError(
            "derive_constants: AN antenna means are too close (" +
            std::to_string(means[i]) + " vs " + std::to_string(means[j]) +
            "); adjust an_spread");
      }
      prod *= means[i] / den;
    }
    w.pi[i] = static_cast<double>(prod);
  }
  return w;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::DT: return "DT";
    case Scheme::DMC: return "DMC";
    case Scheme::DSC: return "DSC";
    case Scheme::DMM: return "DMM";
    case Scheme::DSM: return "DSM";
    case Scheme::DMO: return "DMO";
    case Scheme::DSO: return "DSO";
    case Scheme::DMA: return "DMA";
    case Scheme::DSA: return "DSA";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  std::string up;
  up.reserve(name.size());
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (Scheme s : kAllSchemes) {
    if (up == scheme_name(s)) return s;
  }
  return std::nullopt;
}

LinkMeans resolve(const NetworkConfig& config) {
  if (config.relays < 0) throw std::domain_error("network config: relays must be >= 0");
  if (config.eve_antennas < 0) {
    throw std::domain_error("network config: eve_antennas must be >= 0");
  }
  check_positive(config.rate, "rate");
  check_positive(config.eps, "eps");
  check_positive(config.eps_hat, "eps_hat");
  check_positive(config.eps_tilde, "eps_tilde");
  check_positive(config.an_base, "an_base");
  check_positive(config.an_spread, "an_spread");
  check_positive(config.total_power, "total_power");
  if (config.eve_antennas >= 2 && config.an_spread == 1.0) {
    throw std::domain_error(
        "network config: an_spread must differ from 1 when eve_antennas >= 2 "
        "(AN means must be pairwise distinct)");
  }

  LinkMeans m;
  m.sd = db_to_linear(config.anchor_db);
  m.md = m.sd / config.eps;
  m.sm = config.eps_hat * m.md;
  m.se = m.sd / db_to_linear(config.mer_db);
  m.me = m.se / config.eps_tilde;
  m.id = an_ladder(config.eve_antennas, config.an_base, config.an_spread);
  m.lm = an_ladder(config.eve_antennas, config.an_base, config.an_spread);
  return m;
}

DerivedConstants derive_constants(const LinkMeans& means, double rate) {
  check_positive(rate, "rate");
  check_positive(means.sd, "sigma_sd");
  check_positive(means.se, "sigma_se");
  if (std::fabs(means.me - means.se) < 1e-9 * std::max(means.me, means.se)) {
    throw SingularityError(
        "derive_constants: sigma_me ~= sigma_se degenerates the eavesdropper "
        "combining coefficients; perturb eps_tilde");
  }

  DerivedConstants c;
  c.delta = std::exp2(rate) - 1.0;
  c.varrho = std::exp2(2.0 * rate) - 1.0;
  c.dest = pf_weights(means.id);
  c.relay = pf_weights(means.lm);
  c.kappa_sd.reserve(means.id.size());
  for (double s : means.id) c.kappa_sd.push_back(means.sd / s);
  c.kappa_s.reserve(means.lm.size());
  for (double s : means.lm) c.kappa_s.push_back(means.sm / s);
  return c;
}

Model build_model(const NetworkConfig& config) {
  Model m;
  m.relays = config.relays;
  m.rate = config.rate;
  m.means = resolve(config);
  m.consts = derive_constants(m.means, config.rate);
  return m;
}

Model with_legit_anchor(const Model& base, double anchor_db) {
  Model m = base;
  double factor = db_to_linear(anchor_db) / base.means.sd;
  m.means.sd *= factor;
  m.means.md *= factor;
  m.means.sm *= factor;
  m.consts = derive_constants(m.means, base.rate);
  return m;
}

}  // namespace relaysec::model
