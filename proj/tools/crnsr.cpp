#include "crnsr/graph.hpp"
#include "crnsr/network.hpp"
#include "crnsr/numerics.hpp"
#include "crnsr/report_io.hpp"
#include "crnsr/verdicts.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace crnsr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDefect = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ReactionNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path + ": file not found or unreadable");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const NetworkError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Eigen::VectorXd parse_vector(const std::string& text, std::size_t n, const char* what) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  std::stringstream ss(text);
  std::string item;
  Eigen::Index k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= v.size()) throw UsageError(std::string(what) + ": too many components");
    try {
      v(k++) = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (k == 1 && n > 1) v.setConstant(v(0));
  else if (k != v.size()) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " components");
  return v;
}

struct Tolerances {
  double integration = 1e-8;
  double order = 1e-6;
  double sign = 1e-12;
  double conservation = 1e-6;
};

struct VerifySettings {
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t pairs = 50;
  std::size_t starts = 100;
  double horizon = 10.0;
  std::size_t cycle_cap = kDefaultCycleCap;
  Tolerances tol;
};

struct VerifyResult {
  Json json;
  bool defect = false;
  bool inconclusive = false;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << std::scientific << v;
  return s.str();
}

// Runs the numeric batteries a network's verdicts call for. Checks backed by
// an applicable verdict count as defects when they fail.
VerifyResult verify_network(const ReactionNetwork& net, const std::string& label, const VerifySettings& cfg,
                            std::ostream& text) {
  VerifyResult out;
  const AnalysisReport report = analyze(net, {cfg.cycle_cap});
  const KineticsInstance kin = sample_kinetics(net, cfg.seed);
  out.inconclusive = report.inconclusive();
  Json batteries = Json::array();
  text << label << '\n';

  auto line = [&](const std::string& name, const std::string& status, const std::string& detail) {
    text << "  " << std::left << std::setw(20) << name << std::setw(10) << status << detail << '\n';
  };
  auto failure = [&](const std::string& name, const std::exception& e) {
    out.defect = true;
    batteries.push_back({{"battery", name}, {"passed", false}, {"error", e.what()}});
    line(name, "FAIL", e.what());
  };

  if (const auto& cone = report.monotonicity.cone) {
    try {
      const auto r = cooperativity_check(net, kin, *cone, cfg.samples, cfg.seed + 1, cfg.tol.sign);
      batteries.push_back(battery_json(r));
      out.defect |= !r.passed;
      line("cooperativity", r.passed ? "pass" : "FAIL",
           std::to_string(r.samples) + " samples, min off-diagonal " + fmt(r.min_off_diagonal));
    } catch (const std::exception& e) {
      failure("cooperativity", e);
    }
    try {
      OrderPreservationOptions opts;
      opts.relative_tolerance = cfg.tol.order;
      opts.integration_tol = cfg.tol.integration;
      const auto r = order_preservation_test(net, kin, *cone, FlowConfig::closed(), cfg.pairs, cfg.horizon,
                                             cfg.seed + 2, opts);
      batteries.push_back(battery_json(r));
      out.defect |= !r.passed;
      line("order-preservation", r.passed ? "pass" : "FAIL",
           std::to_string(r.pairs) + " pairs, " + std::to_string(r.violations) + " violations, worst " +
               fmt(r.worst_normalized));
    } catch (const std::exception& e) {
      failure("order-preservation", e);
    }
  } else {
    line("cooperativity", "skipped", "no cone-monotonicity verdict");
    line("order-preservation", "skipped", "no cone-monotonicity verdict");
  }

  try {
    std::mt19937_64 rng(cfg.seed + 3);
    const Eigen::VectorXd x0 = random_positive_state(net.species_count(), rng);
    const auto r = conservation_check(net, kin, FlowConfig::closed(), x0, cfg.horizon, cfg.tol.conservation);
    batteries.push_back(battery_json(r));
    out.defect |= r.status == ConservationReport::Status::Violated;
    line("conservation", to_string(r.status),
         std::to_string(r.vectors) + " vectors, max deviation " + fmt(r.max_relative_deviation));
  } catch (const std::exception& e) {
    failure("conservation", e);
  }

  const bool injective =
      report.injectivity.sr_verdict.applies() || report.injectivity.dsr_verdict.applies();
  if (injective) {
    try {
      const FlowConfig flow = sample_outflow(net.species_count(), cfg.seed + 4);
      const auto r = equilibria_search(net, kin, flow, cfg.starts, cfg.seed + 5);
      Json j = battery_json(r);
      const bool ok = r.roots.size() <= 1;
      j["passed"] = ok;
      batteries.push_back(std::move(j));
      out.defect |= !ok;
      line("equilibria", ok ? "pass" : "FAIL",
           std::to_string(r.roots.size()) + " distinct of " + std::to_string(r.converged) + " converged, " +
               std::to_string(r.failed) + " failed");
    } catch (const std::exception& e) {
      failure("equilibria", e);
    }
  } else {
    line("equilibria", "skipped", "no injectivity verdict");
  }
  if (out.inconclusive) line("structure", "inconc.", "cycle cap reached");

  out.json = {{"network", label},
              {"verdicts",
               {{"sr-injectivity", to_string(report.injectivity.sr_verdict.status)},
                {"dsr-injectivity", to_string(report.injectivity.dsr_verdict.status)},
                {"cone-monotonicity", to_string(report.monotonicity.verdict.status)}}},
              {"batteries", std::move(batteries)},
              {"defect", out.defect}};
  return out;
}

std::vector<std::string> fixture_files(const std::string& dir) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".rxn") files.push_back(entry.path().string());
  }
  if (ec) throw UsageError(dir + ": " + ec.message());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError(dir + ": no .rxn fixtures");
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural and numerical analysis of reaction networks via species-reaction graphs"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::size_t cycle_cap = kDefaultCycleCap;
  std::string format;
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write to this file instead of stdout");
  };

  std::string path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Structural report for a network");
  analyze_cmd->add_option("file", path, "Reaction file")->required();
  analyze_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  analyze_cmd->add_option("--cycle-cap", cycle_cap, "Maximum number of cycles enumerated")
      ->check(CLI::PositiveNumber);
  add_common(analyze_cmd);

  bool dsr = false;
  auto* graph_cmd = app.add_subcommand("graph", "Export the SR or DSR graph");
  graph_cmd->add_option("file", path, "Reaction file")->required();
  graph_cmd->add_flag("--dsr", dsr, "Directed graph with rate influences");
  graph_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  add_common(graph_cmd);

  std::string flow_name = "closed";
  double q = 0.0;
  std::string feed_text;
  std::string outflow_text;
  std::string x0_text;
  double horizon = 10.0;
  std::size_t points = 101;
  Tolerances tol;
  auto* sim_cmd = app.add_subcommand("simulate", "Integrate sampled mass-action kinetics; CSV output");
  sim_cmd->add_option("file", path, "Reaction file")->required();
  sim_cmd->add_option("--flow", flow_name, "closed, cfstr or outflow")
      ->check(CLI::IsMember({"closed", "cfstr", "outflow"}));
  sim_cmd->add_option("--q", q, "CFSTR flow rate")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--feed", feed_text, "Feed concentrations, comma separated (one value broadcasts)");
  sim_cmd->add_option("--outflow", outflow_text, "Outflow coefficients c_i, comma separated");
  sim_cmd->add_option("--x0", x0_text, "Initial state, comma separated (default: seeded random)");
  sim_cmd->add_option("--horizon", horizon, "Final time")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1'000'000));
  sim_cmd->add_option("--tol", tol.integration, "Integration tolerance")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "Random seed")->envname("CRNSR_SEED");
  add_common(sim_cmd);

  VerifySettings cfg;
  bool all_fixtures = false;
  std::string fixtures_dir = CRNSR_FIXTURES_DIR;
  auto* verify_cmd = app.add_subcommand("verify", "Numeric batteries backing the structural verdicts");
  verify_cmd->add_option("file", path, "Reaction file");
  verify_cmd->add_flag("--all-fixtures", all_fixtures, "Run every fixture network");
  verify_cmd->add_option("--fixtures-dir", fixtures_dir, "Fixture directory")->capture_default_str();
  verify_cmd->add_option("--seed", seed, "Random seed")->envname("CRNSR_SEED");
  verify_cmd->add_option("--samples", cfg.samples, "Cooperativity samples")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--pairs", cfg.pairs, "Order-preservation pairs")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--starts", cfg.starts, "Newton starts")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--horizon", cfg.horizon, "Integration horizon")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--cycle-cap", cycle_cap, "Maximum number of cycles enumerated")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-integration", tol.integration)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-order", tol.order)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-sign", tol.sign)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--tol-conservation", tol.conservation)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file_out;
  if (!output.empty()) {
    file_out.open(output);
    if (!file_out) {
      std::cerr << "error: cannot write " << output << '\n';
      return kExitUsage;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file_out;

  try {
    if (*analyze_cmd) {
      const AnalysisReport report = analyze(load_network(path), {cycle_cap});
      if (format == "json") {
        out << report_json(report).dump(2) << '\n';
      } else {
        out << render_text(report);
      }
      return report.inconclusive() ? kExitInconclusive : kExitOk;
    }

    if (*graph_cmd) {
      const ReactionNetwork net = load_network(path);
      const SRGraph g = dsr ? build_dsr(net) : build_sr(net);
      if (format == "json") {
        out << graph_json(g).dump(2) << '\n';
      } else {
        out << export_dot(g);
      }
      return kExitOk;
    }

    if (*sim_cmd) {
      const ReactionNetwork net = load_network(path);
      const std::size_t n = net.species_count();
      FlowConfig flow;
      try {
        if (flow_name == "cfstr") {
          flow = FlowConfig::cfstr(q, feed_text.empty() ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))
                                                        : parse_vector(feed_text, n, "--feed"));
        } else if (flow_name == "outflow") {
          flow = outflow_text.empty() && feed_text.empty()
                     ? sample_outflow(n, seed)
                     : FlowConfig::outflow_rates(parse_vector(feed_text.empty() ? "0" : feed_text, n, "--feed"),
                                                 parse_vector(outflow_text.empty() ? "1" : outflow_text, n,
                                                              "--outflow"));
        }
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Eigen::VectorXd x0;
      if (x0_text.empty()) {
        std::mt19937_64 rng(seed + 3);
        x0 = random_positive_state(n, rng);
      } else {
        x0 = parse_vector(x0_text, n, "--x0");
        if (x0.minCoeff() < 0.0) throw UsageError("--x0: components must be nonnegative");
      }
      try {
        const Trajectory traj = integrate(net, sample_kinetics(net, seed), flow, x0, horizon, tol.integration, points);
        write_trajectory_csv(out, traj, net.species_names());
      } catch (const IntegrationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDefect;
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      cfg.seed = seed;
      cfg.cycle_cap = cycle_cap;
      cfg.tol = tol;
      std::vector<std::string> files;
      if (all_fixtures) {
        if (!path.empty()) throw UsageError("give either a file or --all-fixtures");
        files = fixture_files(fixtures_dir);
      } else if (path.empty()) {
        throw UsageError("verify needs a file or --all-fixtures");
      } else {
        files.push_back(path);
      }
      std::ostringstream text;
      Json networks = Json::array();
      bool defect = false;
      bool inconclusive = false;
      for (const auto& f : files) {
        const ReactionNetwork net = load_network(f);
        const auto r = verify_network(net, fs::path(f).filename().string(), cfg, text);
        networks.push_back(r.json);
        defect |= r.defect;
        inconclusive |= r.inconclusive;
      }
      if (format == "json") {
        out << Json{{"schema_version", kSchemaVersion},
                    {"seed", cfg.seed},
                    {"networks", std::move(networks)},
                    {"defect", defect}}
                   .dump(2)
            << '\n';
      } else {
        out << text.str() << (defect ? "DEFECT: a theorem-backed numeric check failed\n" : "all checks passed\n");
      }
      if (defect) return kExitDefect;
      return inconclusive ? kExitInconclusive : kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
