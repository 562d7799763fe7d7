#include "relaysec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "relaysec/analytic_asymptotic.hpp"
#include "relaysec/analytic_exact.hpp"
#include "relaysec/errors.hpp"

namespace relaysec::exp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("config key '" + key + "': trailing characters in '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value, int lo, int hi) {
  const double v = parse_number(key, value);
  if (v != std::floor(v) || v < lo || v > hi) {
    throw ConfigError("config key '" + key + "': expected integer in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v.has_value() ? fmt(*v) : std::string();
}

const char* metric_name(mc::Metric metric) {
  return metric == mc::Metric::kSop ? "sop" : "ip";
}

std::vector<mc::Metric> expand_metric(MetricChoice choice) {
  switch (choice) {
    case MetricChoice::kSop:
      return {mc::Metric::kSop};
    case MetricChoice::kIp:
      return {mc::Metric::kIp};
    default:
      return {mc::Metric::kSop, mc::Metric::kIp};
  }
}

void require_monotone_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("sweep grid must be non-empty");
  if (grid.size() == 1) return;
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool step_up = grid[i] > grid[i - 1];
    if (step_up != increasing || grid[i] == grid[i - 1]) {
      throw ConfigError("sweep grid must be strictly monotone");
    }
  }
}

// Closed-form value for the scheme; empty when only the simulator evaluates
// it (optimal selection), letting the caller leave the cell blank.
std::optional<double> analytic_value(mc::Metric metric, model::Scheme scheme,
                                     const model::Model& m) {
  try {
    if (scheme == model::Scheme::DT) {
      return metric == mc::Metric::kSop ? exact::sop_direct(m) : exact::ip_direct(m);
    }
    return metric == mc::Metric::kSop ? exact::sop_total(scheme, m)
                                      : exact::ip_total(scheme, m);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

SweepRow make_row(const std::string& label, model::Scheme scheme, mc::Metric metric,
                  const model::Model& m, const std::string& x_name, double x_value,
                  std::uint64_t trials, std::uint64_t seed, mc::Mode mode, int workers) {
  SweepRow row;
  row.scheme = label;
  row.metric = metric_name(metric);
  row.x_name = x_name;
  row.x_value = x_value;
  row.trials = trials;
  row.seed = seed;
  row.analytic = analytic_value(metric, scheme, m);
  if (metric == mc::Metric::kSop) {
    row.asymptotic = asymptotic::sop_asymptotic_total(scheme, m);
  }
  if (trials > 0) {
    const mc::Estimate est = estimate_with_workers(metric, scheme, m, mode, trials, seed, workers);
    row.mc_estimate = est.p_hat;
    row.std_err = est.std_err;
  }
  return row;
}

SweepRow failed_row(const std::string& label, mc::Metric metric, const std::string& x_name,
                    double x_value, std::uint64_t trials, std::uint64_t seed,
                    const std::string& status) {
  SweepRow row;
  row.scheme = label;
  row.metric = metric_name(metric);
  row.x_name = x_name;
  row.x_value = x_value;
  row.trials = trials;
  row.seed = seed;
  row.status = status;
  return row;
}

struct IpSolver {
  model::Scheme scheme;
  model::NetworkConfig cfg;

  double ip_at_rate(double rate) const {
    model::NetworkConfig c = cfg;
    c.rate = rate;
    const model::Model m = model::build_model(c);
    return scheme == model::Scheme::DT ? exact::ip_direct(m) : exact::ip_total(scheme, m);
  }
};

constexpr double kRateLo = 1e-3;
constexpr double kRateHi = 20.0;

// The intercept probability is strictly decreasing in the target rate, so a
// plain bisection pins the rate that attains the requested level.
double solve_rate_for_ip(const IpSolver& solver, double target) {
  double lo = kRateLo;
  double hi = kRateHi;
  if (solver.ip_at_rate(lo) < target || solver.ip_at_rate(hi) > target) {
    throw std::domain_error("intercept target unreachable within the rate bracket");
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (solver.ip_at_rate(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> window_anchors(std::pair<double, double> window_db, int points) {
  const auto [lo, hi] = window_db;
  std::vector<double> anchors(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    anchors[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return anchors;
}

}  // namespace

model::NetworkConfig parse_config(std::istream& in) {
  model::NetworkConfig cfg;
  std::map<std::string, bool> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (seen[key]) {
      throw ConfigError("config key '" + key + "' given twice");
    }
    seen[key] = true;
    if (key == "relays") {
      cfg.relays = parse_int(key, value, 1, 30);
    } else if (key == "eve_antennas") {
      cfg.eve_antennas = parse_int(key, value, 0, 64);
    } else if (key == "rate") {
      cfg.rate = parse_number(key, value);
      if (cfg.rate <= 0.0) throw ConfigError("config key 'rate': must be positive");
    } else if (key == "anchor_snr_db") {
      cfg.anchor_db = parse_number(key, value);
    } else if (key == "eps") {
      cfg.eps = parse_number(key, value);
    } else if (key == "eps_hat") {
      cfg.eps_hat = parse_number(key, value);
    } else if (key == "eps_tilde") {
      cfg.eps_tilde = parse_number(key, value);
    } else if (key == "mer_db") {
      cfg.mer_db = parse_number(key, value);
    } else if (key == "an_base") {
      cfg.an_base = parse_number(key, value);
      if (cfg.an_base <= 0.0) throw ConfigError("config key 'an_base': must be positive");
    } else if (key == "an_spread") {
      cfg.an_spread = parse_number(key, value);
      if (cfg.an_spread <= 0.0) throw ConfigError("config key 'an_spread': must be positive");
    } else if (key == "total_power") {
      cfg.total_power = parse_number(key, value);
      if (cfg.total_power <= 0.0) throw ConfigError("config key 'total_power': must be positive");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (cfg.eps <= 0.0 || cfg.eps_hat <= 0.0 || cfg.eps_tilde <= 0.0) {
    throw ConfigError("link ratio parameters must be positive");
  }
  return cfg;
}

model::NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

mc::Estimate estimate_with_workers(mc::Metric metric, model::Scheme scheme,
                                   const model::Model& m, mc::Mode mode,
                                   std::uint64_t trials, std::uint64_t seed,
                                   int workers) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (workers < 1) workers = 1;
  const std::size_t w = static_cast<std::size_t>(workers);
  std::vector<std::uint64_t> counts(w, 0);
  auto chunk = [trials, w](std::size_t i) { return trials * i / w; };
  if (w == 1) {
    counts[0] = mc::count_events(metric, scheme, m, mode, seed, 0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
      pool.emplace_back([&, i] {
        counts[i] = mc::count_events(metric, scheme, m, mode, seed, chunk(i), chunk(i + 1));
      });
    }
    for (auto& t : pool) t.join();
  }
  std::uint64_t events = 0;
  for (std::uint64_t c : counts) events += c;
  mc::Estimate e;
  e.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  e.trials = trials;
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  e.seed = seed;
  return e;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const model::NetworkConfig& base) {
  require_monotone_grid(spec.grid);
  if (spec.schemes.empty()) throw ConfigError("sweep needs at least one scheme");
  if (spec.trials == 0) throw ConfigError("sweep needs trials >= 1");
  if (spec.workers < 1) throw ConfigError("sweep needs workers >= 1");

  const std::vector<mc::Metric> metrics = expand_metric(spec.metric);
  std::vector<SweepRow> rows;

  if (spec.variable == SweepVariable::kIpTarget) {
    // Parametric security-reliability rows: pick the rate hitting the target
    // intercept probability, then report the outage level at that rate.
    for (double target : spec.grid) {
      if (target <= 0.0 || target >= 1.0) {
        throw ConfigError("intercept targets must lie strictly inside (0, 1)");
      }
      for (model::Scheme scheme : spec.schemes) {
        const std::string label = model::scheme_name(scheme);
        try {
          const IpSolver solver{scheme, base};
          const double rate = solve_rate_for_ip(solver, target);
          model::NetworkConfig at_rate = base;
          at_rate.rate = rate;
          const model::Model m = model::build_model(at_rate);
          SweepRow row = make_row(label, scheme, mc::Metric::kSop, m, "ip_target", target,
                                  spec.trials, spec.seed, spec.mode, spec.workers);
          rows.push_back(std::move(row));
        } catch (const std::invalid_argument&) {
          rows.push_back(failed_row(label, mc::Metric::kSop, "ip_target", target,
                                    spec.trials, spec.seed, "no-closed-form"));
        } catch (const std::domain_error&) {
          rows.push_back(failed_row(label, mc::Metric::kSop, "ip_target", target,
                                    spec.trials, spec.seed, "no-solution"));
        } catch (const SingularityError&) {
          rows.push_back(failed_row(label, mc::Metric::kSop, "ip_target", target,
                                    spec.trials, spec.seed, "singularity"));
        }
      }
    }
    return rows;
  }

  std::string x_name;
  switch (spec.variable) {
    case SweepVariable::kAnchorSnrDb:
      x_name = "anchor_snr_db";
      break;
    case SweepVariable::kRelays:
      x_name = "relays";
      break;
    default:
      x_name = "eve_antennas";
      break;
  }

  for (double x : spec.grid) {
    model::NetworkConfig cfg = base;
    switch (spec.variable) {
      case SweepVariable::kAnchorSnrDb:
        cfg.anchor_db = x;
        break;
      case SweepVariable::kRelays:
        if (x != std::floor(x) || x < 1 || x > 30) {
          throw ConfigError("relay counts must be integers in [1, 30]");
        }
        cfg.relays = static_cast<int>(x);
        break;
      default:
        if (x != std::floor(x) || x < 0 || x > 64) {
          throw ConfigError("antenna counts must be integers in [0, 64]");
        }
        cfg.eve_antennas = static_cast<int>(x);
        break;
    }
    bool built = false;
    model::Model m;
    std::string build_status;
    try {
      m = model::build_model(cfg);
      built = true;
    } catch (const SingularityError&) {
      build_status = "singularity";
    }
    for (model::Scheme scheme : spec.schemes) {
      for (mc::Metric metric : metrics) {
        const std::string label = model::scheme_name(scheme);
        if (!built) {
          rows.push_back(failed_row(label, metric, x_name, x, spec.trials, spec.seed,
                                    build_status));
          continue;
        }
        try {
          rows.push_back(make_row(label, scheme, metric, m, x_name, x, spec.trials,
                                  spec.seed, spec.mode, spec.workers));
        } catch (const SingularityError&) {
          rows.push_back(failed_row(label, metric, x_name, x, spec.trials, spec.seed,
                                    "singularity"));
        } catch (const StarvationError&) {
          rows.push_back(failed_row(label, metric, x_name, x, spec.trials, spec.seed,
                                    "starvation"));
        }
      }
    }
  }
  return rows;
}

std::vector<SweepRow> point_report(const model::NetworkConfig& cfg,
                                   const std::vector<model::Scheme>& schemes,
                                   MetricChoice metric, std::uint64_t trials,
                                   std::uint64_t seed, mc::Mode mode, int workers) {
  if (schemes.empty()) throw ConfigError("need at least one scheme");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  const model::Model m = model::build_model(cfg);
  std::vector<SweepRow> rows;
  for (model::Scheme scheme : schemes) {
    for (mc::Metric mm : expand_metric(metric)) {
      rows.push_back(make_row(model::scheme_name(scheme), scheme, mm, m,
                              "anchor_snr_db", cfg.anchor_db, trials, seed, mode,
                              workers));
    }
  }
  return rows;
}

std::vector<SweepRow> conditional_report(const model::NetworkConfig& cfg,
                                         const std::vector<model::Scheme>& schemes,
                                         MetricChoice metric, int cardinality,
                                         std::uint64_t trials, std::uint64_t seed) {
  if (schemes.empty()) throw ConfigError("need at least one scheme");
  const model::Model m = model::build_model(cfg);
  std::vector<SweepRow> rows;
  for (model::Scheme scheme : schemes) {
    for (mc::Metric mm : expand_metric(metric)) {
      SweepRow row;
      row.scheme = model::scheme_name(scheme);
      row.metric = metric_name(mm);
      row.x_name = "cardinality";
      row.x_value = cardinality;
      row.trials = trials;
      row.seed = seed;
      try {
        if (scheme == model::Scheme::DT || cardinality == 0) {
          row.analytic = mm == mc::Metric::kSop ? exact::sop_direct(m) : exact::ip_direct(m);
        } else {
          row.analytic = mm == mc::Metric::kSop ? exact::sop_exact(scheme, m, cardinality)
                                                : exact::ip_exact(scheme, m, cardinality);
        }
      } catch (const std::invalid_argument&) {
        // no closed form; the simulation column still fills in
      }
      const mc::Estimate est =
          mc::conditional_estimate(mm, scheme, m, cardinality, trials, seed);
      row.mc_estimate = est.p_hat;
      row.std_err = est.std_err;
      row.trials = est.trials;  // effective (accepted) sample size
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<RateSolution> sop_vs_ip_curve(model::Scheme scheme,
                                          const model::NetworkConfig& cfg,
                                          const std::vector<double>& ip_grid) {
  require_monotone_grid(ip_grid);
  for (double t : ip_grid) {
    if (t <= 0.0 || t >= 1.0) {
      throw ConfigError("intercept targets must lie strictly inside (0, 1)");
    }
  }
  const IpSolver solver{scheme, cfg};
  std::vector<RateSolution> out;
  out.reserve(ip_grid.size());
  for (double target : ip_grid) {
    RateSolution sol;
    sol.ip_target = target;
    sol.rate = solve_rate_for_ip(solver, target);
    model::NetworkConfig at_rate = cfg;
    at_rate.rate = sol.rate;
    const model::Model m = model::build_model(at_rate);
    sol.sop = scheme == model::Scheme::DT ? exact::sop_direct(m)
                                          : exact::sop_total(scheme, m);
    out.push_back(sol);
  }
  return out;
}

double measure_diversity_slope(model::Scheme scheme, const model::NetworkConfig& cfg,
                               std::pair<double, double> window_db, int points) {
  if (!(window_db.first >= 40.0 && window_db.second <= 70.0 &&
        window_db.first < window_db.second)) {
    throw std::invalid_argument("analytic slope window must sit inside [40, 70] dB");
  }
  if (points < 5) throw std::invalid_argument("slope fit needs at least 5 points");
  const model::Model base = model::build_model(cfg);
  std::vector<double> t, y;
  for (double db : window_anchors(window_db, points)) {
    const model::Model m = model::with_legit_anchor(base, db);
    const double sop = scheme == model::Scheme::DT ? exact::sop_direct(m)
                                                   : exact::sop_total(scheme, m);
    if (!(sop >= 1e-300)) {
      throw std::domain_error("outage underflows in the window; shrink the window");
    }
    t.push_back(db / 10.0);  // log10 of the linear anchor
    y.push_back(std::log10(sop));
  }
  return -least_squares_slope(t, y);
}

double measure_diversity_slope_mc(model::Scheme scheme, const model::NetworkConfig& cfg,
                                  std::pair<double, double> window_db, int points,
                                  std::uint64_t trials, std::uint64_t seed,
                                  int workers) {
  if (!(window_db.first < window_db.second)) {
    throw std::invalid_argument("slope window must have positive width");
  }
  if (points < 2) throw std::invalid_argument("slope fit needs at least 2 points");
  const model::Model base = model::build_model(cfg);
  std::vector<double> t, y;
  for (double db : window_anchors(window_db, points)) {
    const model::Model m = model::with_legit_anchor(base, db);
    const mc::Estimate est = estimate_with_workers(mc::Metric::kSop, scheme, m,
                                                   mc::Mode::kPaperFaithful, trials, seed,
                                                   workers);
    if (est.p_hat <= 0.0) {
      throw std::domain_error("no outage events at an anchor; shrink the window");
    }
    t.push_back(db / 10.0);
    y.push_back(std::log10(est.p_hat));
  }
  return -least_squares_slope(t, y);
}

std::vector<SweepRow> figure_rows(int figure, std::uint64_t trials, std::uint64_t seed,
                                  int workers) {
  model::NetworkConfig cfg;  // reference defaults: M=4, N=5, R=0.5, MER 11 dB
  SweepSpec spec;
  spec.trials = trials;
  spec.seed = seed;
  spec.workers = workers;
  spec.metric = MetricChoice::kSop;

  switch (figure) {
    case 3: {
      spec.variable = SweepVariable::kAnchorSnrDb;
      spec.grid = {0, 5, 10, 15, 20, 25, 30, 35, 40};
      spec.schemes.assign(std::begin(model::kAllSchemes), std::end(model::kAllSchemes));
      std::vector<SweepRow> rows = run_sweep(spec, cfg);
      // jammer-off baseline curve showing the outage floor
      model::NetworkConfig off = cfg;
      off.eve_antennas = 0;
      SweepSpec dt = spec;
      dt.schemes = {model::Scheme::DT};
      for (SweepRow& row : run_sweep(dt, off)) {
        row.scheme += "-noAN";
        rows.push_back(std::move(row));
      }
      return rows;
    }
    case 4: {
      spec.variable = SweepVariable::kIpTarget;
      spec.grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
      spec.schemes = {model::Scheme::DT, model::Scheme::DMC, model::Scheme::DSC,
                      model::Scheme::DMM, model::Scheme::DSM, model::Scheme::DMA,
                      model::Scheme::DSA};
      return run_sweep(spec, cfg);
    }
    case 5: {
      spec.variable = SweepVariable::kRelays;
      spec.grid = {1, 2, 3, 4, 5, 6, 7, 8};
      spec.schemes = {model::Scheme::DMC, model::Scheme::DSC, model::Scheme::DMM,
                      model::Scheme::DSM, model::Scheme::DMO, model::Scheme::DSO,
                      model::Scheme::DMA, model::Scheme::DSA};
      return run_sweep(spec, cfg);
    }
    case 6: {
      // this preset's own gain ratio: eavesdropper links 3 dB stronger
      cfg.anchor_db = 30.0;
      cfg.mer_db = -3.0;
      spec.variable = SweepVariable::kEveAntennas;
      spec.grid = {0, 1, 2, 3, 4, 5, 6, 7, 8};
      spec.schemes.assign(std::begin(model::kAllSchemes), std::end(model::kAllSchemes));
      return run_sweep(spec, cfg);
    }
    default:
      throw ConfigError("figure must be one of 3, 4, 5, 6");
  }
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "scheme,metric,x_name,x_value,analytic,asymptotic,mc_estimate,std_err,trials,"
        "seed,status\n";
  for (const SweepRow& r : rows) {
    os << r.scheme << ',' << r.metric << ',' << r.x_name << ',' << fmt(r.x_value) << ','
       << fmt_opt(r.analytic) << ',' << fmt_opt(r.asymptotic) << ','
       << fmt_opt(r.mc_estimate) << ',' << fmt_opt(r.std_err) << ',' << r.trials << ','
       << r.seed << ',' << r.status << '\n';
  }
}

std::string csv_string(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

void write_svg(const std::vector<SweepRow>& rows, const std::string& title,
               std::ostream& os) {
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (x, log10 y)
  };
  std::vector<Series> series;
  for (const SweepRow& r : rows) {
    if (r.status != "ok") continue;
    const std::optional<double>& y = r.analytic.has_value() ? r.analytic : r.mc_estimate;
    if (!y.has_value() || !(*y > 0.0)) continue;
    const std::string label = r.scheme + "/" + r.metric;
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.label == label; });
    if (it == series.end()) {
      series.push_back({label, {}});
      it = series.end() - 1;
    }
    it->pts.emplace_back(r.x_value, std::log10(*y));
  }

  double x_lo = 0.0, x_hi = 1.0, y_lo = -1.0, y_hi = 0.0;
  bool first = true;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.pts) {
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      } else {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (x_hi - x_lo < 1e-9) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  y_lo = std::floor(y_lo);
  y_hi = std::ceil(y_hi);
  if (y_hi - y_lo < 1.0) y_lo = y_hi - 1.0;

  const double px0 = 70, px1 = 640, py0 = 500, py1 = 40;
  auto sx = [&](double x) { return px0 + (x - x_lo) / (x_hi - x_lo) * (px1 - px0); };
  auto sy = [&](double y) { return py0 + (y - y_lo) / (y_hi - y_lo) * (py1 - py0); };
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf"};
  const std::size_t n_colors = sizeof(kPalette) / sizeof(kPalette[0]);

  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"540\" "
        "viewBox=\"0 0 860 540\">\n";
  os << "<rect width=\"860\" height=\"540\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
                "%s</text>\n",
                px0, title.c_str());
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                px0, py1, px1 - px0, py0 - py1);
  os << buf;

  const int decade_step = std::max(1, static_cast<int>((y_hi - y_lo) / 10.0 + 0.999));
  for (int d = static_cast<int>(y_lo); d <= static_cast<int>(y_hi); d += decade_step) {
    const double yy = sy(d);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%g\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"end\">1e%d</text>\n",
                  px0, yy, px1, yy, px0 - 6, yy + 4, d);
    os << buf;
  }
  for (int i = 0; i <= 6; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / 6.0;
    const double xx = sx(x);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"middle\">%.4g</text>\n",
                  xx, py1, xx, py0, xx, py0 + 16, x);
    os << buf;
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    if (s.pts.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[i % n_colors]
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.pts) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(x), sy(y));
      os << buf;
    }
    os << "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"652\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" "
                  "fill=\"%s\">%s</text>\n",
                  52.0 + 16.0 * static_cast<double>(i), kPalette[i % n_colors],
                  s.label.c_str());
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace relaysec::exp
