#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "relaysec/analytic_exact.hpp"
#include "relaysec/errors.hpp"
#include "relaysec/experiments.hpp"
#include "relaysec/network_model.hpp"

using namespace relaysec;
using namespace relaysec::exp;
using model::NetworkConfig;
using model::Scheme;

namespace {

NetworkConfig parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::vector<const SweepRow*> rows_for(const std::vector<SweepRow>& rows,
                                      const std::string& scheme,
                                      const std::string& metric) {
  std::vector<const SweepRow*> out;
  for (const SweepRow& r : rows) {
    if (r.scheme == scheme && r.metric == metric) out.push_back(&r);
  }
  return out;
}

}  // namespace

TEST_CASE("config files parse with comments and units") {
  const NetworkConfig cfg = parse_str(
      "# scenario\n"
      "relays = 3\n"
      "eve_antennas = 2   # jamming antennas\n"
      "rate = 0.75\n"
      "anchor_snr_db = 14.5\n"
      "mer_db = -3\n"
      "eps = 1.02\n");
  CHECK(cfg.relays == 3);
  CHECK(cfg.eve_antennas == 2);
  CHECK(cfg.rate == 0.75);
  CHECK(cfg.anchor_db == 14.5);
  CHECK(cfg.mer_db == -3.0);
  CHECK(cfg.eps == 1.02);
  CHECK(cfg.eps_hat == 1.03);  // untouched keys keep their defaults
}

TEST_CASE("config rejection is loud") {
  CHECK_THROWS_AS(parse_str("anchor_db = 10\n"), ConfigError);       // unknown key
  CHECK_THROWS_AS(parse_str("relays = 2\nrelays = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("relays = two\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("relays = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("rate = 0.5 bits\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("rate = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("relays\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("sweep validation") {
  NetworkConfig cfg;
  SweepSpec spec;
  spec.schemes = {Scheme::DT};
  spec.trials = 10;

  spec.grid = {};
  CHECK_THROWS_AS(run_sweep(spec, cfg), ConfigError);
  spec.grid = {0.0, 10.0, 5.0};
  CHECK_THROWS_AS(run_sweep(spec, cfg), ConfigError);
  spec.grid = {0.0, 0.0};
  CHECK_THROWS_AS(run_sweep(spec, cfg), ConfigError);
  spec.grid = {0.0, 10.0};
  spec.schemes = {};
  CHECK_THROWS_AS(run_sweep(spec, cfg), ConfigError);
  spec.schemes = {Scheme::DMC};
  spec.variable = SweepVariable::kRelays;
  spec.grid = {1.0, 2.5};
  CHECK_THROWS_AS(run_sweep(spec, cfg), ConfigError);
}

TEST_CASE("sweep rows come in grid order with both metrics") {
  NetworkConfig cfg;
  cfg.eve_antennas = 2;
  SweepSpec spec;
  spec.variable = SweepVariable::kAnchorSnrDb;
  spec.grid = {5.0, 15.0};
  spec.schemes = {Scheme::DT, Scheme::DMC, Scheme::DMO};
  spec.metric = MetricChoice::kBoth;
  spec.trials = 4000;
  spec.seed = 11;

  const auto rows = run_sweep(spec, cfg);
  REQUIRE(rows.size() == 12);  // 2 points x 3 schemes x 2 metrics
  CHECK(rows[0].x_value == 5.0);
  CHECK(rows[0].metric == "sop");
  CHECK(rows[1].metric == "ip");
  CHECK(rows[6].x_value == 15.0);
  for (const SweepRow& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.x_name == "anchor_snr_db");
    CHECK(r.trials == 4000);
    CHECK(r.seed == 11);
    REQUIRE(r.mc_estimate.has_value());
    CHECK(*r.mc_estimate >= 0.0);
    CHECK(*r.mc_estimate <= 1.0);
    if (r.scheme == "DMO") {
      CHECK_FALSE(r.analytic.has_value());  // simulator-only scheme
    } else {
      REQUIRE(r.analytic.has_value());
      CHECK(std::fabs(*r.mc_estimate - *r.analytic) < 5.0 * (*r.std_err + 1e-9));
    }
    if (r.metric == "sop") {
      CHECK(r.asymptotic.has_value());
    } else {
      CHECK_FALSE(r.asymptotic.has_value());
    }
  }
}

TEST_CASE("worker count never changes the bytes") {
  NetworkConfig cfg;
  cfg.eve_antennas = 2;
  SweepSpec spec;
  spec.grid = {8.0, 12.0};
  spec.schemes = {Scheme::DMC, Scheme::DSA};
  spec.metric = MetricChoice::kSop;
  spec.trials = 30000;
  spec.seed = 99;

  spec.workers = 1;
  const std::string one = csv_string(run_sweep(spec, cfg));
  spec.workers = 4;
  const std::string four = csv_string(run_sweep(spec, cfg));
  CHECK(one == four);
  CHECK(one == csv_string(run_sweep(spec, cfg)));  // plain rerun too

  const mc::Estimate a = estimate_with_workers(mc::Metric::kSop, Scheme::DMC,
                                               model::build_model(cfg),
                                               mc::Mode::kPaperFaithful, 12345, 5, 1);
  const mc::Estimate b = estimate_with_workers(mc::Metric::kSop, Scheme::DMC,
                                               model::build_model(cfg),
                                               mc::Mode::kPaperFaithful, 12345, 5, 7);
  CHECK(a.p_hat == b.p_hat);
}

TEST_CASE("csv layout is the documented contract") {
  NetworkConfig cfg;
  const auto rows = point_report(cfg, {Scheme::DT}, MetricChoice::kBoth, 0, 1,
                                 mc::Mode::kPaperFaithful, 1);
  const std::string csv = csv_string(rows);
  const std::string header =
      "scheme,metric,x_name,x_value,analytic,asymptotic,mc_estimate,std_err,trials,"
      "seed,status";
  CHECK(csv.substr(0, header.size()) == header);
  // trials = 0: simulation cells stay empty but the row keeps all 11 fields
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  int commas = 0;
  for (char ch : line) commas += (ch == ',');
  CHECK(commas == 10);
  CHECK(line.find(",,") != std::string::npos);
}

TEST_CASE("rate inversion reproduces the direct-link closed form") {
  NetworkConfig cfg;  // sigma_se = 10^{-0.1}
  const double sigma_se = std::pow(10.0, -0.1);
  // delta = 1 at R = 1, so this target is attained exactly at rate 1
  const double target = std::exp(-1.0 / sigma_se);
  const auto curve = sop_vs_ip_curve(Scheme::DT, cfg, {target});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].rate == doctest::Approx(1.0).epsilon(1e-9));
  NetworkConfig at1 = cfg;
  at1.rate = 1.0;
  CHECK(curve[0].sop ==
        doctest::Approx(exact::sop_direct(model::build_model(at1))).epsilon(1e-9));
}

TEST_CASE("rate inversion rejects bad targets") {
  NetworkConfig cfg;
  CHECK_THROWS_AS(sop_vs_ip_curve(Scheme::DT, cfg, {0.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(sop_vs_ip_curve(Scheme::DT, cfg, {1.5}), ConfigError);
  // above the intercept probability at the smallest admissible rate
  CHECK_THROWS_AS(sop_vs_ip_curve(Scheme::DT, cfg, {0.9995}), std::domain_error);
}

TEST_CASE("single-relay selection beats direct transmission at matched interception risk") {
  // The advantage lives where the relays can actually decode: a low anchor
  // and moderate-to-high interception targets.  Tight targets force rates so
  // high that the decoding set empties and every scheme collapses onto the
  // direct link; the all-relays schemes stay above the direct link here
  // because the eavesdropper collects one copy per transmitting relay.
  NetworkConfig cfg;
  cfg.anchor_db = 0.0;
  for (double target : {0.3, 0.5, 0.7, 0.9}) {
    const double dt_sop = sop_vs_ip_curve(Scheme::DT, cfg, {target})[0].sop;
    for (Scheme s : {Scheme::DMC, Scheme::DSC, Scheme::DMM, Scheme::DSM}) {
      CHECK(sop_vs_ip_curve(s, cfg, {target})[0].sop < dt_sop);
    }
  }
}

TEST_CASE("analytic diversity slopes match the known orders") {
  NetworkConfig cfg;
  CHECK(measure_diversity_slope(Scheme::DT, cfg, {45.0, 65.0}) ==
        doctest::Approx(1.0).epsilon(0.05));
  NetworkConfig two = cfg;
  two.relays = 2;
  CHECK(measure_diversity_slope(Scheme::DMC, two, {45.0, 65.0}) ==
        doctest::Approx(3.0).epsilon(0.1));
  CHECK(measure_diversity_slope(Scheme::DSA, two, {45.0, 65.0}) ==
        doctest::Approx(3.0).epsilon(0.1));

  CHECK_THROWS_AS(measure_diversity_slope(Scheme::DT, cfg, {30.0, 65.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_diversity_slope(Scheme::DT, cfg, {45.0, 65.0}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_diversity_slope(Scheme::DMO, cfg, {45.0, 65.0}),
                  std::invalid_argument);
}

TEST_CASE("simulated diversity slope agrees on the direct link") {
  NetworkConfig cfg;
  const double slope =
      measure_diversity_slope_mc(Scheme::DT, cfg, {20.0, 35.0}, 3, 200000, 21);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
  // far above the window where any of 100 trials can fail
  CHECK_THROWS_AS(measure_diversity_slope_mc(Scheme::DMC, cfg, {60.0, 70.0}, 2, 100, 1),
                  std::domain_error);
}

TEST_CASE("figure grids have the documented shape") {
  SUBCASE("anchor grid with a jammer-off baseline") {
    const auto rows = figure_rows(3, 1000, 5);
    CHECK(rows.size() == 90);  // 9 schemes x 9 anchors + 9 baseline points
    const auto base = rows_for(rows, "DT-noAN", "sop");
    REQUIRE(base.size() == 9);
    for (const SweepRow* r : base) REQUIRE(r->analytic.has_value());
    // outage never worsens as every signal link strengthens
    for (const char* label : {"DT", "DMC", "DSA"}) {
      const auto curve = rows_for(rows, label, "sop");
      REQUIRE(curve.size() == 9);
      for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(*curve[i]->analytic <= *curve[i - 1]->analytic);
      }
    }
  }
  SUBCASE("interception-target grid") {
    const auto rows = figure_rows(4, 1000, 5);
    CHECK(rows.size() == 70);  // 7 closed-form schemes x 10 targets
    for (const SweepRow& r : rows) {
      CHECK(r.status == "ok");
      CHECK(r.x_name == "ip_target");
      REQUIRE(r.analytic.has_value());
    }
  }
  SUBCASE("relay-count grid evaluates the simulator-only schemes") {
    const auto rows = figure_rows(5, 1000, 5);
    CHECK(rows.size() == 64);  // 8 relay schemes x M = 1..8
    const auto dmo = rows_for(rows, "DMO", "sop");
    REQUIRE(dmo.size() == 8);
    for (const SweepRow* r : dmo) {
      CHECK_FALSE(r->analytic.has_value());
      REQUIRE(r->mc_estimate.has_value());
    }
  }
  SUBCASE("antenna grid starts at the jammer-off point") {
    const auto rows = figure_rows(6, 1000, 5);
    CHECK(rows.size() == 81);  // 9 schemes x N = 0..8
    CHECK(rows[0].x_name == "eve_antennas");
    CHECK(rows[0].x_value == 0.0);
  }
  CHECK_THROWS_AS(figure_rows(7, 10, 1), ConfigError);
}

TEST_CASE("conditional report keeps the effective sample size") {
  NetworkConfig cfg;
  cfg.eve_antennas = 2;
  const auto rows =
      conditional_report(cfg, {Scheme::DMC, Scheme::DSO}, MetricChoice::kSop, 2, 60000, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].x_name == "cardinality");
  CHECK(rows[0].trials < 60000);
  CHECK(rows[0].trials > 1000);
  REQUIRE(rows[0].analytic.has_value());
  REQUIRE(rows[0].mc_estimate.has_value());
  CHECK(std::fabs(*rows[0].mc_estimate - *rows[0].analytic) < 5.0 * *rows[0].std_err);
  CHECK_FALSE(rows[1].analytic.has_value());  // optimal selection: simulator only
  REQUIRE(rows[1].mc_estimate.has_value());
}

TEST_CASE("svg plotting is deterministic and labels every curve") {
  NetworkConfig cfg;
  SweepSpec spec;
  spec.grid = {0.0, 10.0, 20.0};
  spec.schemes = {Scheme::DT, Scheme::DMC};
  spec.metric = MetricChoice::kSop;
  spec.trials = 2000;
  const auto rows = run_sweep(spec, cfg);
  std::ostringstream a, b;
  write_svg(rows, "demo", a);
  write_svg(rows, "demo", b);
  const std::string svg = a.str();
  CHECK(svg == b.str());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("DT/sop") != std::string::npos);
  CHECK(svg.find("DMC/sop") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
}
