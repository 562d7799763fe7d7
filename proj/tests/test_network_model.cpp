#include <cmath>
#include <numeric>

#include "doctest.h"
#include "relaysec/network_model.hpp"

using namespace relaysec;
using namespace relaysec::model;

namespace {
double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}
}  // namespace

TEST_CASE("resolve produces the documented ratio structure") {
  NetworkConfig cfg;  // defaults: M=4, N=5, R=0.5, eps=1.01, eps_hat=1.03, eps_tilde=0.9
  cfg.anchor_db = 20.0;
  cfg.mer_db = 11.0;
  LinkMeans m = resolve(cfg);
  CHECK(rel_err(m.sd, 100.0) < 1e-12);
  CHECK(rel_err(m.sd / m.md, 1.01) < 1e-12);
  CHECK(rel_err(m.sm / m.md, 1.03) < 1e-12);
  CHECK(rel_err(m.se, m.sd / std::pow(10.0, 1.1)) < 1e-12);
  CHECK(rel_err(m.se / m.me, 0.9) < 1e-12);
  REQUIRE(m.id.size() == 5);
  CHECK(rel_err(m.id[0], 1.0) < 1e-12);
  CHECK(rel_err(m.id[4], std::pow(1.05, 4)) < 1e-12);
  CHECK(m.lm == m.id);
}

TEST_CASE("no-AN case gives empty ladders") {
  NetworkConfig cfg;
  cfg.eve_antennas = 0;
  LinkMeans m = resolve(cfg);
  CHECK(m.id.empty());
  CHECK(m.lm.empty());
  auto c = derive_constants(m, cfg.rate);
  CHECK(c.dest.pi.empty());
}

TEST_CASE("derived thresholds") {
  NetworkConfig cfg;
  cfg.rate = 1.0;
  Model m = build_model(cfg);
  CHECK(rel_err(m.consts.delta, 1.0) < 1e-14);
  CHECK(rel_err(m.consts.varrho, 3.0) < 1e-14);
  CHECK(m.consts.varrho >= m.consts.delta);

  cfg.rate = 0.5;
  m = build_model(cfg);
  CHECK(rel_err(m.consts.delta, std::sqrt(2.0) - 1.0) < 1e-14);
  CHECK(rel_err(m.consts.varrho, 1.0) < 1e-14);
}

TEST_CASE("partial-fraction weights sum to one") {
  for (int n : {1, 2, 3, 5, 8}) {
    NetworkConfig cfg;
    cfg.eve_antennas = n;
    Model m = build_model(cfg);
    double sum = std::accumulate(m.consts.dest.pi.begin(), m.consts.dest.pi.end(), 0.0);
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("validation and singularities") {
  NetworkConfig cfg;
  cfg.an_spread = 1.0;
  cfg.eve_antennas = 2;
  CHECK_THROWS_AS(resolve(cfg), std::domain_error);
  cfg.eve_antennas = 1;
  CHECK_NOTHROW(resolve(cfg));  // single antenna needs no spread

  NetworkConfig bad;
  bad.rate = -0.5;
  CHECK_THROWS_AS(resolve(bad), std::domain_error);

  NetworkConfig sing;
  sing.eps_tilde = 1.0 + 1e-12;  // sigma_se ~= sigma_me
  CHECK_THROWS_AS(build_model(sing), SingularityError);

  NetworkConfig close_an;
  close_an.an_spread = 1.0 + 1e-12;
  close_an.eve_antennas = 3;
  CHECK_THROWS_AS(build_model(close_an), SingularityError);
}

TEST_CASE("anchor scaling moves every legitimate mean by 10x per 10 dB") {
  NetworkConfig cfg;
  cfg.anchor_db = 10.0;
  LinkMeans lo = resolve(cfg);
  cfg.anchor_db = 20.0;
  LinkMeans hi = resolve(cfg);
  CHECK(rel_err(hi.sd / lo.sd, 10.0) < 1e-12);
  CHECK(rel_err(hi.md / lo.md, 10.0) < 1e-12);
  CHECK(rel_err(hi.sm / lo.sm, 10.0) < 1e-12);
  CHECK(rel_err(hi.sd / hi.md, lo.sd / lo.md) < 1e-12);
  // the AN ladder stays pinned
  CHECK(hi.id == lo.id);
}

TEST_CASE("with_legit_anchor pins the eavesdropper side") {
  NetworkConfig cfg;
  cfg.anchor_db = 10.0;
  Model base = build_model(cfg);
  Model up = with_legit_anchor(base, 30.0);
  CHECK(rel_err(up.means.sd, 1000.0) < 1e-12);
  CHECK(rel_err(up.means.sd / up.means.md, base.means.sd / base.means.md) < 1e-12);
  CHECK(up.means.se == base.means.se);
  CHECK(up.means.me == base.means.me);
  CHECK(up.means.id == base.means.id);
}

TEST_CASE("scheme names round trip") {
  for (Scheme s : kAllSchemes) {
    auto back = scheme_from_name(scheme_name(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK(scheme_from_name("dmc") == Scheme::DMC);
  CHECK(!scheme_from_name("XYZ").has_value());
}
