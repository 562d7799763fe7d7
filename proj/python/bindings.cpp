#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysec/analytic_asymptotic.hpp"
#include "relaysec/analytic_exact.hpp"
#include "relaysec/errors.hpp"
#include "relaysec/experiments.hpp"
#include "relaysec/monte_carlo.hpp"
#include "relaysec/network_model.hpp"
#include "relaysec/special_functions.hpp"

namespace py = pybind11;
using namespace relaysec;

namespace {

model::Scheme to_scheme(const std::string& name) {
  auto s = model::scheme_from_name(name);
  if (!s) throw std::invalid_argument("unknown scheme: " + name);
  return *s;
}

mc::Metric to_metric(const std::string& name) {
  if (name == "sop") return mc::Metric::kSop;
  if (name == "ip") return mc::Metric::kIp;
  throw std::invalid_argument("metric must be 'sop' or 'ip', got: " + name);
}

exp::MetricChoice to_choice(const std::string& name) {
  if (name == "sop") return exp::MetricChoice::kSop;
  if (name == "ip") return exp::MetricChoice::kIp;
  if (name == "both") return exp::MetricChoice::kBoth;
  throw std::invalid_argument("metric must be 'sop', 'ip' or 'both', got: " + name);
}

mc::Mode to_mode(const std::string& name) {
  if (name == "paper") return mc::Mode::kPaperFaithful;
  if (name == "strict") return mc::Mode::kStrictIr;
  throw std::invalid_argument("mode must be 'paper' or 'strict', got: " + name);
}

exp::SweepVariable to_variable(const std::string& name) {
  if (name == "anchor_snr_db") return exp::SweepVariable::kAnchorSnrDb;
  if (name == "relays") return exp::SweepVariable::kRelays;
  if (name == "eve_antennas") return exp::SweepVariable::kEveAntennas;
  if (name == "ip_target") return exp::SweepVariable::kIpTarget;
  throw std::invalid_argument(
      "variable must be one of anchor_snr_db, relays, eve_antennas, ip_target; got: " +
      name);
}

std::vector<model::Scheme> to_schemes(const std::vector<std::string>& names) {
  std::vector<model::Scheme> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(to_scheme(n));
  return out;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_relaysec, m) {
  m.doc() =
      "Secrecy metrics of a decode-and-forward incremental relay network with a "
      "multi-antenna interceptor under cooperative jamming: closed forms, "
      "high-SNR asymptotes and a trial-level simulator.";

  py::register_exception<SingularityError>(m, "SingularityError");
  py::register_exception<StarvationError>(m, "StarvationError");
  py::register_exception<exp::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<model::NetworkConfig>(m, "NetworkConfig")
      .def(py::init([](int relays, int eve_antennas, double rate, double anchor_db,
                       double eps, double eps_hat, double eps_tilde, double mer_db,
                       double an_base, double an_spread, double total_power) {
             return model::NetworkConfig{relays,    eve_antennas, rate,
                                         anchor_db, eps,          eps_hat,
                                         eps_tilde, mer_db,       an_base,
                                         an_spread, total_power};
           }),
           py::arg("relays") = 4, py::arg("eve_antennas") = 5, py::arg("rate") = 0.5,
           py::arg("anchor_db") = 10.0, py::arg("eps") = 1.01,
           py::arg("eps_hat") = 1.03, py::arg("eps_tilde") = 0.9,
           py::arg("mer_db") = 11.0, py::arg("an_base") = 1.0,
           py::arg("an_spread") = 1.05, py::arg("total_power") = 2.0)
      .def_readwrite("relays", &model::NetworkConfig::relays)
      .def_readwrite("eve_antennas", &model::NetworkConfig::eve_antennas)
      .def_readwrite("rate", &model::NetworkConfig::rate)
      .def_readwrite("anchor_db", &model::NetworkConfig::anchor_db)
      .def_readwrite("eps", &model::NetworkConfig::eps)
      .def_readwrite("eps_hat", &model::NetworkConfig::eps_hat)
      .def_readwrite("eps_tilde", &model::NetworkConfig::eps_tilde)
      .def_readwrite("mer_db", &model::NetworkConfig::mer_db)
      .def_readwrite("an_base", &model::NetworkConfig::an_base)
      .def_readwrite("an_spread", &model::NetworkConfig::an_spread)
      .def_readwrite("total_power", &model::NetworkConfig::total_power)
      .def("__repr__", [](const model::NetworkConfig& c) {
        std::ostringstream os;
        os << "NetworkConfig(relays=" << c.relays << ", eve_antennas=" << c.eve_antennas
           << ", rate=" << c.rate << ", anchor_db=" << c.anchor_db << ", mer_db="
           << c.mer_db << ", ...)";
        return os.str();
      });

  py::class_<model::Model>(m, "Model")
      .def_readonly("relays", &model::Model::relays)
      .def_readonly("rate", &model::Model::rate)
      .def("__repr__", [](const model::Model& mm) {
        return "Model(relays=" + std::to_string(mm.relays) +
               ", rate=" + fmt_double(mm.rate) + ")";
      });

  m.def("build_model", &model::build_model, py::arg("config"),
        "Expand a scenario into the resolved mean-SNR table plus derived constants.");
  m.def("with_legit_anchor", &model::with_legit_anchor, py::arg("model"),
        py::arg("anchor_db"),
        "Same network with only the legitimate links rescaled to the new anchor; "
        "interceptor and jamming links stay pinned (diversity probes).");
  m.def("scheme_names", []() {
    std::vector<std::string> out;
    for (auto s : model::kAllSchemes) out.emplace_back(model::scheme_name(s));
    return out;
  });

  // Exact metrics.  `scheme` is a case-insensitive label: DT, DMC, DSC, DMM,
  // DSM, DMO, DSO, DMA, DSA.
  m.def(
      "sop_direct", [](const model::Model& mm) { return exact::sop_direct(mm); },
      py::arg("model"), "Secrecy outage probability of direct transmission.");
  m.def(
      "ip_direct", [](const model::Model& mm) { return exact::ip_direct(mm); },
      py::arg("model"), "Intercept probability of direct transmission.");
  m.def(
      "sop_exact",
      [](const std::string& scheme, const model::Model& mm, int cardinality) {
        return exact::sop_exact(to_scheme(scheme), mm, cardinality);
      },
      py::arg("scheme"), py::arg("model"), py::arg("cardinality"),
      "Conditional secrecy outage probability given the decoding-set size.");
  m.def(
      "ip_exact",
      [](const std::string& scheme, const model::Model& mm, int cardinality) {
        return exact::ip_exact(to_scheme(scheme), mm, cardinality);
      },
      py::arg("scheme"), py::arg("model"), py::arg("cardinality"),
      "Conditional intercept probability given the decoding-set size.");
  m.def(
      "sop_total",
      [](const std::string& scheme, const model::Model& mm) {
        return exact::sop_total(to_scheme(scheme), mm);
      },
      py::arg("scheme"), py::arg("model"),
      "Total secrecy outage probability over all decoding-set sizes.");
  m.def(
      "ip_total",
      [](const std::string& scheme, const model::Model& mm) {
        return exact::ip_total(to_scheme(scheme), mm);
      },
      py::arg("scheme"), py::arg("model"),
      "Total intercept probability over all decoding-set sizes.");
  m.def(
      "wirs_cardinality_probability",
      [](const model::Model& mm, int cardinality) {
        return exact::wirs_cardinality_probability(mm, cardinality);
      },
      py::arg("model"), py::arg("cardinality"),
      "Probability that exactly `cardinality` relays decode the message.");
  m.def(
      "relay_decode_failure",
      [](const model::Model& mm) { return exact::relay_decode_failure(mm); },
      py::arg("model"), "Per-relay decode failure probability.");

  // High-anchor asymptotes.
  m.def(
      "sop_asymptotic",
      [](const std::string& scheme, const model::Model& mm, int cardinality) {
        return asymptotic::sop_asymptotic(to_scheme(scheme), mm, cardinality);
      },
      py::arg("scheme"), py::arg("model"), py::arg("cardinality"),
      "Leading term of Pr(|F| = L) * SOP|L as the legitimate anchor grows.");
  m.def(
      "sop_asymptotic_total",
      [](const std::string& scheme, const model::Model& mm) {
        return asymptotic::sop_asymptotic_total(to_scheme(scheme), mm);
      },
      py::arg("scheme"), py::arg("model"),
      "Slowest-decaying contributions to the total outage, summed.");
  m.def(
      "diversity_order",
      [](const std::string& scheme, int cardinality, int relays) {
        return asymptotic::diversity_order(to_scheme(scheme), cardinality, relays);
      },
      py::arg("scheme"), py::arg("cardinality"), py::arg("relays"));
  m.def(
      "diversity_order_total",
      [](const std::string& scheme, int relays) {
        return asymptotic::diversity_order_total(to_scheme(scheme), relays);
      },
      py::arg("scheme"), py::arg("relays"));
  m.def(
      "coding_gain",
      [](const std::string& scheme, const model::Model& mm) {
        return asymptotic::coding_gain(to_scheme(scheme), mm);
      },
      py::arg("scheme"), py::arg("model"),
      "C such that the dominant outage term equals (C * anchor)^-D.");
  m.def(
      "snr_gap_db",
      [](const std::string& a, const std::string& b, const model::Model& mm) {
        return asymptotic::snr_gap_db(to_scheme(a), to_scheme(b), mm);
      },
      py::arg("scheme_a"), py::arg("scheme_b"), py::arg("model"),
      "20*log10 of the coding-gain ratio; schemes must share a diversity order.");
  m.def(
      "sop_floor", [](const model::Model& mm) { return asymptotic::sop_floor(mm); },
      py::arg("model"),
      "Joint-limit outage floor of direct transmission at a fixed main-to-"
      "interceptor ratio.");

  // Simulator.
  py::class_<mc::Estimate>(m, "Estimate")
      .def_readonly("p_hat", &mc::Estimate::p_hat)
      .def_readonly("trials", &mc::Estimate::trials)
      .def_readonly("std_err", &mc::Estimate::std_err)
      .def_readonly("seed", &mc::Estimate::seed)
      .def("__repr__", [](const mc::Estimate& e) {
        std::ostringstream os;
        os << "Estimate(p_hat=" << e.p_hat << ", trials=" << e.trials
           << ", std_err=" << e.std_err << ", seed=" << e.seed << ")";
        return os.str();
      });

  m.def(
      "estimate",
      [](const std::string& metric, const std::string& scheme, const model::Model& mm,
         std::uint64_t trials, std::uint64_t seed, const std::string& mode) {
        return mc::estimate(to_metric(metric), to_scheme(scheme), mm, trials, seed,
                            to_mode(mode));
      },
      py::arg("metric"), py::arg("scheme"), py::arg("model"),
      py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("mode") = "paper",
      "Monte Carlo estimate of 'sop' or 'ip' over full protocol trials.");
  m.def(
      "conditional_estimate",
      [](const std::string& metric, const std::string& scheme, const model::Model& mm,
         int cardinality, std::uint64_t trials, std::uint64_t seed) {
        return mc::conditional_estimate(to_metric(metric), to_scheme(scheme), mm,
                                        cardinality, trials, seed);
      },
      py::arg("metric"), py::arg("scheme"), py::arg("model"), py::arg("cardinality"),
      py::arg("trials") = 100000, py::arg("seed") = 1,
      "Estimate conditioned on the decoding-set size via rejection sampling.");

  // Experiment helpers.
  py::class_<exp::SweepRow>(m, "SweepRow")
      .def_readonly("scheme", &exp::SweepRow::scheme)
      .def_readonly("metric", &exp::SweepRow::metric)
      .def_readonly("x_name", &exp::SweepRow::x_name)
      .def_readonly("x_value", &exp::SweepRow::x_value)
      .def_readonly("analytic", &exp::SweepRow::analytic)
      .def_readonly("asymptotic", &exp::SweepRow::asymptotic)
      .def_readonly("mc_estimate", &exp::SweepRow::mc_estimate)
      .def_readonly("std_err", &exp::SweepRow::std_err)
      .def_readonly("trials", &exp::SweepRow::trials)
      .def_readonly("seed", &exp::SweepRow::seed)
      .def_readonly("status", &exp::SweepRow::status)
      .def("__repr__", [](const exp::SweepRow& r) {
        std::ostringstream os;
        os << "SweepRow(" << r.scheme << "/" << r.metric << " @ " << r.x_name << "="
           << r.x_value << ", status=" << r.status << ")";
        return os.str();
      });

  py::class_<exp::RateSolution>(m, "RateSolution")
      .def_readonly("ip_target", &exp::RateSolution::ip_target)
      .def_readonly("rate", &exp::RateSolution::rate)
      .def_readonly("sop", &exp::RateSolution::sop)
      .def("__repr__", [](const exp::RateSolution& r) {
        std::ostringstream os;
        os << "RateSolution(ip_target=" << r.ip_target << ", rate=" << r.rate
           << ", sop=" << r.sop << ")";
        return os.str();
      });

  m.def(
      "load_config", [](const std::string& path) { return exp::load_config(path); },
      py::arg("path"), "Read a flat key = value scenario file.");
  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream in(text);
        return exp::parse_config(in);
      },
      py::arg("text"), "Parse scenario text in the key = value format.");
  m.def(
      "point_report",
      [](const model::NetworkConfig& cfg, const std::vector<std::string>& schemes,
         const std::string& metric, std::uint64_t trials, std::uint64_t seed,
         const std::string& mode, int workers) {
        return exp::point_report(cfg, to_schemes(schemes), to_choice(metric), trials,
                                 seed, to_mode(mode), workers);
      },
      py::arg("config"), py::arg("schemes"), py::arg("metric") = "both",
      py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("mode") = "paper",
      py::arg("workers") = 1,
      "Closed forms, asymptotes and simulation for one scenario point; "
      "trials = 0 skips the simulation columns.");
  m.def(
      "conditional_report",
      [](const model::NetworkConfig& cfg, const std::vector<std::string>& schemes,
         const std::string& metric, int cardinality, std::uint64_t trials,
         std::uint64_t seed) {
        return exp::conditional_report(cfg, to_schemes(schemes), to_choice(metric),
                                       cardinality, trials, seed);
      },
      py::arg("config"), py::arg("schemes"), py::arg("metric"), py::arg("cardinality"),
      py::arg("trials") = 100000, py::arg("seed") = 1);
  m.def(
      "sweep",
      [](const model::NetworkConfig& cfg, const std::string& variable,
         const std::vector<double>& grid, const std::vector<std::string>& schemes,
         const std::string& metric, std::uint64_t trials, std::uint64_t seed,
         const std::string& mode, int workers) {
        exp::SweepSpec spec;
        spec.variable = to_variable(variable);
        spec.grid = grid;
        spec.schemes = to_schemes(schemes);
        spec.metric = to_choice(metric);
        spec.trials = trials;
        spec.seed = seed;
        spec.mode = to_mode(mode);
        spec.workers = workers;
        return exp::run_sweep(spec, cfg);
      },
      py::arg("config"), py::arg("variable"), py::arg("grid"), py::arg("schemes"),
      py::arg("metric") = "both", py::arg("trials") = 100000, py::arg("seed") = 1,
      py::arg("mode") = "paper", py::arg("workers") = 1,
      "Sweep one variable over a strictly monotone grid.");
  m.def(
      "sop_vs_ip_curve",
      [](const std::string& scheme, const model::NetworkConfig& cfg,
         const std::vector<double>& ip_grid) {
        return exp::sop_vs_ip_curve(to_scheme(scheme), cfg, ip_grid);
      },
      py::arg("scheme"), py::arg("config"), py::arg("ip_grid"),
      "Security/reliability trade-off: solve the rate hitting each intercept "
      "target, report the outage there.");
  m.def(
      "measure_diversity_slope",
      [](const std::string& scheme, const model::NetworkConfig& cfg, double lo_db,
         double hi_db, int points) {
        return exp::measure_diversity_slope(to_scheme(scheme), cfg, {lo_db, hi_db},
                                            points);
      },
      py::arg("scheme"), py::arg("config"), py::arg("lo_db") = 45.0,
      py::arg("hi_db") = 65.0, py::arg("points") = 5,
      "Least-squares decay exponent of the closed-form outage along the pinned-"
      "interceptor probe.");
  m.def(
      "measure_diversity_slope_mc",
      [](const std::string& scheme, const model::NetworkConfig& cfg, double lo_db,
         double hi_db, int points, std::uint64_t trials, std::uint64_t seed,
         int workers) {
        return exp::measure_diversity_slope_mc(to_scheme(scheme), cfg, {lo_db, hi_db},
                                               points, trials, seed, workers);
      },
      py::arg("scheme"), py::arg("config"), py::arg("lo_db"), py::arg("hi_db"),
      py::arg("points") = 3, py::arg("trials") = 1000000, py::arg("seed") = 1,
      py::arg("workers") = 1,
      "Simulated decay exponent; works for schemes without a closed form.");
  m.def("figure_rows", &exp::figure_rows, py::arg("figure"),
        py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("workers") = 1,
        "Preset sweeps 3-6 (anchor, trade-off, relay count, antenna count).");
  m.def("csv_string", &exp::csv_string, py::arg("rows"),
        "Serialise rows in the canonical CSV column order.");
  m.def(
      "svg_string",
      [](const std::vector<exp::SweepRow>& rows, const std::string& title) {
        std::ostringstream os;
        exp::write_svg(rows, title, os);
        return os.str();
      },
      py::arg("rows"), py::arg("title") = "relaysec sweep");

  // Special-function kernels, exposed for cross-checks against other stacks.
  m.def(
      "tricomi_u", [](int a, int b, double x) { return sf::tricomi_u(a, b, x); },
      py::arg("a"), py::arg("b"), py::arg("x"),
      "Confluent hypergeometric U(a, b, x) for integer a >= 1, integer b, x > 0.");
  m.def(
      "exp_scaled_en", [](int n, double x) { return sf::exp_scaled_en(n, x); },
      py::arg("n"), py::arg("x"), "e^x * E_n(x), the scaled exponential integral.");
}
