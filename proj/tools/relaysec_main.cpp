#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaysec/analytic_exact.hpp"
#include "relaysec/errors.hpp"
#include "relaysec/experiments.hpp"
#include "relaysec/monte_carlo.hpp"
#include "relaysec/network_model.hpp"
#include "relaysec/special_functions.hpp"

namespace {

using namespace relaysec;

struct CommonOpts {
  std::string config_path;
  std::string schemes = "all";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string mode = "paper";
  std::string out_path;
  bool plot = false;
  int workers = 1;
};

void add_common(CLI::App* sub, CommonOpts* o) {
  sub->add_option("--config", o->config_path, "key = value config file");
  sub->add_option("--scheme", o->schemes, "comma-separated scheme ids, or 'all'");
  sub->add_option("--trials", o->trials, "Monte Carlo trials")->capture_default_str();
  sub->add_option("--seed", o->seed, "base RNG seed")->capture_default_str();
  sub->add_option("--mode", o->mode, "paper | strict-ir")->capture_default_str();
  sub->add_option("--out", o->out_path, "CSV output path (default: stdout)");
  sub->add_flag("--plot", o->plot, "also write an SVG next to --out");
  sub->add_option("--workers", o->workers, "trial-range partitions")->capture_default_str();
}

model::NetworkConfig config_from(const CommonOpts& o) {
  if (o.config_path.empty()) return model::NetworkConfig{};
  return exp::load_config(o.config_path);
}

std::vector<model::Scheme> schemes_from(const std::string& csv) {
  std::vector<model::Scheme> out;
  if (csv == "all") {
    out.assign(std::begin(model::kAllSchemes), std::end(model::kAllSchemes));
    return out;
  }
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto s = model::scheme_from_name(tok);
    if (!s.has_value()) throw exp::ConfigError("unknown scheme '" + tok + "'");
    out.push_back(*s);
  }
  if (out.empty()) throw exp::ConfigError("empty scheme list");
  return out;
}

mc::Mode mode_from(const std::string& s) {
  if (s == "paper") return mc::Mode::kPaperFaithful;
  if (s == "strict-ir") return mc::Mode::kStrictIr;
  throw exp::ConfigError("unknown mode '" + s + "' (use paper or strict-ir)");
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw exp::ConfigError("bad grid value '" + tok + "'");
    }
    if (pos != tok.size()) throw exp::ConfigError("bad grid value '" + tok + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw exp::ConfigError("empty grid");
  return grid;
}

void emit(const std::vector<exp::SweepRow>& rows, const CommonOpts& o,
          const std::string& title) {
  if (o.out_path.empty()) {
    exp::write_csv(rows, std::cout);
  } else {
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw exp::ConfigError("cannot open output file: " + o.out_path);
    exp::write_csv(rows, out);
  }
  if (o.plot) {
    if (o.out_path.empty()) throw exp::ConfigError("--plot needs --out");
    std::string svg_path = o.out_path;
    const auto dot = svg_path.rfind('.');
    if (dot != std::string::npos && svg_path.substr(dot) == ".csv") {
      svg_path.erase(dot);
    }
    svg_path += ".svg";
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw exp::ConfigError("cannot open plot file: " + svg_path);
    exp::write_svg(rows, title, svg);
  }
}

int run_selfcheck() {
  int failures = 0;
  auto report = [&failures](const char* name, bool ok) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
  };

  // scaled-E1 identity of the confluent kernel
  bool u_ok = true;
  for (double x : {0.01, 0.5, 5.0, 40.0}) {
    const double u = sf::tricomi_u(1, 1, x);
    const double ref = sf::exp_scaled_en(1, x);
    if (std::fabs(u - ref) > 1e-10 * std::fabs(ref)) u_ok = false;
  }
  report("confluent-kernel identity", u_ok);

  const model::NetworkConfig cfg;
  const model::Model m = model::build_model(cfg);

  double pi_sum = 0.0;
  for (double p : m.consts.dest.pi) pi_sum += p;
  report("jamming weight normalisation", std::fabs(pi_sum - 1.0) < 1e-9);

  double card_sum = 0.0;
  for (int L = 0; L <= m.relays; ++L) card_sum += exact::wirs_cardinality_probability(m, L);
  report("decoding-set law normalisation", std::fabs(card_sum - 1.0) < 1e-9);

  const mc::Estimate dt = mc::estimate(mc::Metric::kSop, model::Scheme::DT, m, 20000, 7);
  report("simulator matches direct-link outage",
         std::fabs(dt.p_hat - exact::sop_direct(m)) < 5.0 * dt.std_err);

  const auto rows1 = exp::point_report(cfg, {model::Scheme::DT, model::Scheme::DMC},
                                       exp::MetricChoice::kBoth, 5000, 3,
                                       mc::Mode::kPaperFaithful, 1);
  const auto rows3 = exp::point_report(cfg, {model::Scheme::DT, model::Scheme::DMC},
                                       exp::MetricChoice::kBoth, 5000, 3,
                                       mc::Mode::kPaperFaithful, 3);
  report("worker-count invariance", exp::csv_string(rows1) == exp::csv_string(rows3));

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secrecy outage and intercept metrics for an incremental-relay "
               "network facing a jamming eavesdropper"};
  app.require_subcommand(1);

  CommonOpts opts;

  CLI::App* cmd_analytic =
      app.add_subcommand("analytic", "closed forms and asymptotes at one configuration");
  add_common(cmd_analytic, &opts);

  CLI::App* cmd_simulate =
      app.add_subcommand("simulate", "Monte Carlo estimates beside the closed forms");
  add_common(cmd_simulate, &opts);
  int cardinality = -1;
  cmd_simulate->add_option("--cardinality", cardinality,
                           "condition on this decoding-set size (rejection sampling)");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "grid sweep over one variable");
  add_common(cmd_sweep, &opts);
  std::string variable = "anchor_snr_db";
  std::string grid_csv;
  std::string metric_str = "both";
  cmd_sweep->add_option("--variable", variable,
                        "anchor_snr_db | relays | eve_antennas | ip_target")
      ->capture_default_str();
  cmd_sweep->add_option("--grid", grid_csv, "comma-separated grid values")->required();
  cmd_sweep->add_option("--metric", metric_str, "sop | ip | both")->capture_default_str();

  CLI::App* cmd_figure = app.add_subcommand("figure", "canned experiment grids");
  add_common(cmd_figure, &opts);
  int figure = 0;
  cmd_figure->add_option("number", figure, "3, 4, 5, or 6")->required();

  CLI::App* cmd_diversity =
      app.add_subcommand("diversity", "log-log outage slope over an anchor window");
  add_common(cmd_diversity, &opts);
  std::string window_csv = "45,65";
  int points = 5;
  bool use_mc = false;
  cmd_diversity->add_option("--window", window_csv, "lo_db,hi_db")->capture_default_str();
  cmd_diversity->add_option("--points", points, "anchors in the fit")->capture_default_str();
  cmd_diversity->add_flag("--mc", use_mc, "slope from simulation instead of closed forms");

  CLI::App* cmd_selfcheck =
      app.add_subcommand("selfcheck", "fast internal consistency battery");
  (void)cmd_selfcheck;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_selfcheck->parsed()) return run_selfcheck();

    const model::NetworkConfig cfg = config_from(opts);
    const std::vector<model::Scheme> schemes = schemes_from(opts.schemes);
    const mc::Mode mode = mode_from(opts.mode);

    if (cmd_analytic->parsed()) {
      const auto rows = exp::point_report(cfg, schemes, exp::MetricChoice::kBoth, 0,
                                          opts.seed, mode, opts.workers);
      emit(rows, opts, "closed forms");
      return 0;
    }

    if (cmd_simulate->parsed()) {
      std::vector<exp::SweepRow> rows;
      if (cmd_simulate->count("--cardinality") > 0) {
        rows = exp::conditional_report(cfg, schemes, exp::MetricChoice::kBoth, cardinality,
                                       opts.trials, opts.seed);
      } else {
        rows = exp::point_report(cfg, schemes, exp::MetricChoice::kBoth, opts.trials,
                                 opts.seed, mode, opts.workers);
      }
      emit(rows, opts, "simulation vs closed forms");
      return 0;
    }

    if (cmd_sweep->parsed()) {
      exp::SweepSpec spec;
      if (variable == "anchor_snr_db") {
        spec.variable = exp::SweepVariable::kAnchorSnrDb;
      } else if (variable == "relays") {
        spec.variable = exp::SweepVariable::kRelays;
      } else if (variable == "eve_antennas") {
        spec.variable = exp::SweepVariable::kEveAntennas;
      } else if (variable == "ip_target") {
        spec.variable = exp::SweepVariable::kIpTarget;
      } else {
        throw exp::ConfigError("unknown sweep variable '" + variable + "'");
      }
      spec.grid = parse_grid(grid_csv);
      spec.schemes = schemes;
      if (metric_str == "sop") {
        spec.metric = exp::MetricChoice::kSop;
      } else if (metric_str == "ip") {
        spec.metric = exp::MetricChoice::kIp;
      } else if (metric_str == "both") {
        spec.metric = exp::MetricChoice::kBoth;
      } else {
        throw exp::ConfigError("unknown metric '" + metric_str + "'");
      }
      spec.trials = opts.trials;
      spec.seed = opts.seed;
      spec.mode = mode;
      spec.workers = opts.workers;
      emit(exp::run_sweep(spec, cfg), opts, "sweep over " + variable);
      return 0;
    }

    if (cmd_figure->parsed()) {
      emit(exp::figure_rows(figure, opts.trials, opts.seed, opts.workers), opts,
           "figure " + std::to_string(figure) + " grid");
      return 0;
    }

    if (cmd_diversity->parsed()) {
      const std::vector<double> w = parse_grid(window_csv);
      if (w.size() != 2) throw exp::ConfigError("--window needs exactly lo_db,hi_db");
      std::ostringstream text;
      for (model::Scheme s : schemes) {
        const double slope =
            use_mc ? exp::measure_diversity_slope_mc(s, cfg, {w[0], w[1]}, points,
                                                     opts.trials, opts.seed, opts.workers)
                   : exp::measure_diversity_slope(s, cfg, {w[0], w[1]}, points);
        char line[64];
        std::snprintf(line, sizeof(line), "%s %.6f\n", model::scheme_name(s), slope);
        text << line;
      }
      if (opts.out_path.empty()) {
        std::cout << text.str();
      } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw exp::ConfigError("cannot open output file: " + opts.out_path);
        out << text.str();
      }
      return 0;
    }
  } catch (const exp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SingularityError& e) {
    std::fprintf(stderr, "singularity: %s\n", e.what());
    return 3;
  } catch (const StarvationError& e) {
    std::fprintf(stderr, "starvation: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid request: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid request: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
