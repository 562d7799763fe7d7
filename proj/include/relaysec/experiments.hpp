#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relaysec/monte_carlo.hpp"
#include "relaysec/network_model.hpp"

namespace relaysec::exp {

// Bad config file, bad grid, or bad flag combination; the CLI maps this to
// exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepVariable { kAnchorSnrDb, kRelays, kEveAntennas, kIpTarget };
enum class MetricChoice { kSop, kIp, kBoth };

struct SweepSpec {
  SweepVariable variable = SweepVariable::kAnchorSnrDb;
  std::vector<double> grid;            // non-empty, strictly monotone
  std::vector<model::Scheme> schemes;  // non-empty
  MetricChoice metric = MetricChoice::kBoth;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  mc::Mode mode = mc::Mode::kPaperFaithful;
  int workers = 1;
};

// One CSV row.  Missing cells (no closed form, MC disabled, row-level
// failure) are empty optionals and serialise as empty fields.
struct SweepRow {
  std::string scheme;  // curve label; figure presets may append a variant tag
  std::string metric;  // "sop" or "ip"
  std::string x_name;
  double x_value = 0.0;
  std::optional<double> analytic;
  std::optional<double> asymptotic;
  std::optional<double> mc_estimate;
  std::optional<double> std_err;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

// Flat key = value text; '#' comments.  Unknown keys raise ConfigError so a
// typo cannot silently run the wrong experiment.
model::NetworkConfig parse_config(std::istream& in);
model::NetworkConfig load_config(const std::string& path);

// Monte Carlo estimate with the trial range split across `workers` chunks;
// the reduction is an integer event count, so any worker count returns the
// identical Estimate.
mc::Estimate estimate_with_workers(mc::Metric metric, model::Scheme scheme,
                                   const model::Model& m, mc::Mode mode,
                                   std::uint64_t trials, std::uint64_t seed,
                                   int workers);

// One row per (scheme, metric, grid point), in grid order.  Anchor sweeps
// rescale every signal link together (the eavesdropper keeps its configured
// ratio to the legitimate links); per-row singularity or starvation is
// reported in the status field instead of aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const model::NetworkConfig& base);

// Rows for a single configuration point.  trials = 0 skips the simulation
// columns (closed forms and asymptotes only).
std::vector<SweepRow> point_report(const model::NetworkConfig& cfg,
                                   const std::vector<model::Scheme>& schemes,
                                   MetricChoice metric, std::uint64_t trials,
                                   std::uint64_t seed, mc::Mode mode, int workers);

// Rows conditioned on the decoding-set cardinality: rejection-sampled
// estimates beside the per-cardinality closed forms.  Starvation propagates.
std::vector<SweepRow> conditional_report(const model::NetworkConfig& cfg,
                                         const std::vector<model::Scheme>& schemes,
                                         MetricChoice metric, int cardinality,
                                         std::uint64_t trials, std::uint64_t seed);

// For each target intercept probability, bisect the target rate R that
// attains it (the intercept probability is strictly decreasing in R), then
// report the outage probability at that rate.  Closed-form schemes only.
struct RateSolution {
  double ip_target = 0.0;
  double rate = 0.0;
  double sop = 0.0;
};
std::vector<RateSolution> sop_vs_ip_curve(model::Scheme scheme,
                                          const model::NetworkConfig& cfg,
                                          const std::vector<double>& ip_grid);

// Least-squares slope of log10(SOP) against log10(legitimate anchor) over
// `points` anchors spanning the dB window, negated so the value estimates
// the diversity order.  Only the legitimate links grow along this probe; the
// eavesdropper and jamming links stay pinned.  The analytic variant needs a
// closed form; the simulation variant works for every scheme.
double measure_diversity_slope(model::Scheme scheme, const model::NetworkConfig& cfg,
                               std::pair<double, double> window_db, int points = 5);
double measure_diversity_slope_mc(model::Scheme scheme, const model::NetworkConfig& cfg,
                                  std::pair<double, double> window_db, int points,
                                  std::uint64_t trials, std::uint64_t seed,
                                  int workers = 1);

// Canned experiment grids reproducing the reference plots:
//   3: outage vs anchor SNR, all schemes plus a jammer-off baseline
//   4: outage vs intercept-probability target (rate inversion)
//   5: outage vs number of relays
//   6: outage vs number of eavesdropper antennas (its own gain ratio)
std::vector<SweepRow> figure_rows(int figure, std::uint64_t trials, std::uint64_t seed,
                                  int workers = 1);

// scheme,metric,x_name,x_value,analytic,asymptotic,mc_estimate,std_err,
// trials,seed,status -- fixed order, %.12g floats, byte-stable.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);
std::string csv_string(const std::vector<SweepRow>& rows);

// Minimal SVG line chart of the rows (log10 y, one polyline per curve);
// convenience only, the CSV is the contract.
void write_svg(const std::vector<SweepRow>& rows, const std::string& title,
               std::ostream& os);

}  // namespace relaysec::exp
