#include "rbda/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbda/error.hpp"
#include "rbda/inference.hpp"
#include "rbda/json_util.hpp"
#include "rbda/report.hpp"
#include "rbda/server.hpp"
#include "rbda/simulator.hpp"

namespace rbda {

using json_util::canonical_number;
using nlohmann::json;

namespace {

void write_output(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  json_util::write_file_atomic((std::filesystem::path(dir) / name).string(), content);
}

json interval_json(const ProbabilityInterval& p) {
  return json::array({canonical_number(p.lower), canonical_number(p.upper)});
}

json infer_json(const ProblemDefinition& problem) {
  const auto corners = box_corners(problem.hyper);
  json decisions = json::array();
  for (const auto& d : problem.decisions) {
    const BoxPosterior box = posterior_box(problem.hyper, problem.evidence, d);
    json per_corner = json::array();
    for (std::size_t i = 0; i < corners.size(); ++i) {
      const PosteriorSummary& p = box.corners[i];
      per_corner.push_back({{"t", canonical_number(corners[i].t)},
                            {"alpha", canonical_number(corners[i].alpha)},
                            {"presence_before", canonical_number(p.presence_before)},
                            {"presence_after", interval_json(p.presence_after)},
                            {"theta_mean", canonical_number(p.theta_mean)},
                            {"theta_var", canonical_number(p.theta_var)}});
    }
    decisions.push_back({{"id", d.id},
                         {"presence_before", interval_json(box.presence_before)},
                         {"presence_after", interval_json(box.presence_after)},
                         {"corners", per_corner}});
  }
  return {{"evidence", {{"observed", problem.evidence.observed}}},
          {"s", canonical_number(problem.hyper.s)},
          {"decisions", decisions}};
}

struct Options {
  std::string problem;
  std::string session;
  std::string out_dir;
  std::string format = "json";
  bool hrep = false;
  std::string problem_for_weights;

  std::uint64_t seed = 20130601;
  std::uint64_t samples = 1'000'000;
  std::optional<double> t, alpha, s;
  std::string decision;
  std::string endpoint = "lower";

  ServerOptions server;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const ProblemDefinition p = load_problem(o.problem);
  out << json_util::canonical_dump({{"valid", true},
                                    {"attributes", p.attributes.size()},
                                    {"decisions", p.decisions.size()}});
  return 0;
}

int cmd_infer(const Options& o, std::ostream& out) {
  const ProblemDefinition p = load_problem(o.problem);
  const std::string text = json_util::canonical_dump(infer_json(p));
  if (o.out_dir.empty()) {
    out << text;
  } else {
    write_output(o.out_dir, "posterior.json", text);
  }
  return 0;
}

int cmd_weights(const Options& o, std::ostream& out) {
  const ElicitationSession session = load_session(o.session);
  if (!session.worst_choice) throw Error(ErrorKind::invariant, "/worst_choice", "session has no worst choice");
  SwingRewardSet rewards;
  if (o.problem_for_weights.empty()) {
    rewards = build_rewards(session.pairs, *session.worst_choice);
  } else {
    rewards = build_rewards(load_problem(o.problem_for_weights), session.pairs, *session.worst_choice);
  }
  const ConstraintSystem cs = build_constraints(rewards, session.statements);
  std::string text;
  if (o.hrep) {
    json doc = cs.to_json();
    doc["attributes"] = rewards.attribute_ids;
    doc["ordering_premise"] = rewards.ordering_premise();
    text = json_util::canonical_dump(doc);
  } else {
    text = json_util::canonical_dump(vertices_json(enumerate_vertices(cs)));
  }
  if (o.out_dir.empty()) {
    out << text;
  } else {
    write_output(o.out_dir, o.hrep ? "hrep.json" : "vertices.json", text);
  }
  return 0;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const ProblemDefinition problem = load_problem(o.problem);
  const ElicitationSession session = load_session(o.session);
  const Analysis a = run_analysis(problem, session);
  if (!a.report) {
    err << json({{"error", "empty_polytope"}, {"message", a.inconsistency}}).dump() << '\n';
    return 1;
  }
  const std::string report = report_text(problem, *a.report, a.digest);
  if (o.out_dir.empty()) {
    out << report;
    return 0;
  }
  write_output(o.out_dir, "report.json", report);
  if (o.format == "csv") {
    write_output(o.out_dir, "plot-data.csv", plot_data_csv(problem, *a.report));
  } else {
    write_output(o.out_dir, "plot-data.json", json_util::canonical_dump(plot_data_json(problem, *a.report)));
  }
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ProblemDefinition problem = load_problem(o.problem);
  SimulationConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.t = o.t.value_or(problem.hyper.t_range.upper);
  cfg.alpha = o.alpha.value_or(problem.hyper.alpha_range.lower);
  cfg.s = o.s.value_or(problem.hyper.s);
  cfg.decision = o.decision.empty() ? problem.decisions.front().id : o.decision;
  cfg.endpoint = o.endpoint == "upper" ? EfficacyEndpoint::upper : EfficacyEndpoint::lower;
  const SimulationResult r = simulate(cfg, problem);
  const DecisionAlternative& d = problem.decision(cfg.decision);
  const double beta = cfg.endpoint == EfficacyEndpoint::lower ? d.efficacy.lower : d.efficacy.upper;
  const double exact_before = presence_posterior(cfg.t, cfg.alpha, problem.evidence);
  json doc = {{"decision", cfg.decision},
              {"beta", beta},
              {"t", cfg.t},
              {"alpha", cfg.alpha},
              {"s", cfg.s},
              {"seed", cfg.seed},
              {"samples", r.total_samples},
              {"accepted_samples", r.accepted_samples},
              {"presence_before_rate", r.presence_before_rate},
              {"presence_before_se", r.presence_before_se},
              {"presence_after_rate", r.presence_after_rate},
              {"presence_after_se", r.presence_after_se},
              {"exact_presence_before", exact_before},
              {"exact_presence_after", exact_before * (1.0 - beta)}};
  const std::string text = json_util::canonical_dump(doc);
  if (o.out_dir.empty()) {
    out << text;
  } else {
    write_output(o.out_dir, "simulation.json", text);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust Bayesian decision analysis with imprecise priors and elicited weight sets", "rbda"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a problem file");
  validate_cmd->add_option("problem", o.problem, "Problem JSON file")->required();

  auto* infer_cmd = app.add_subcommand("infer", "Posterior presence bounds per decision");
  infer_cmd->add_option("problem", o.problem, "Problem JSON file")->required();
  infer_cmd->add_option("--out", o.out_dir, "Write posterior.json into this directory");

  auto* weights_cmd = app.add_subcommand("weights", "Extreme weight vectors from an elicitation session");
  weights_cmd->add_option("session", o.session, "Session JSON file")->required();
  weights_cmd->add_flag("--hrep", o.hrep, "Print the constraint rows instead of the vertices");
  weights_cmd->add_option("--problem", o.problem_for_weights, "Validate pairs against this problem file");
  weights_cmd->add_option("--out", o.out_dir, "Write output into this directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline: report JSON and plot data");
  analyze_cmd->add_option("problem", o.problem, "Problem JSON file")->required();
  analyze_cmd->add_option("session", o.session, "Session JSON file")->required();
  analyze_cmd->add_option("--out", o.out_dir, "Write report.json and plot data into this directory");
  analyze_cmd->add_option("--format", o.format, "Plot data format")->check(CLI::IsMember({"json", "csv"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo check of the posterior");
  simulate_cmd->add_option("problem", o.problem, "Problem JSON file")->required();
  simulate_cmd->add_option("--seed", o.seed, "Random seed");
  simulate_cmd->add_option("--samples", o.samples, "Number of forward samples")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--t", o.t, "Prior mean (default: upper end of the box)");
  simulate_cmd->add_option("--alpha", o.alpha, "Detection probability (default: lower end of the box)");
  simulate_cmd->add_option("--s", o.s, "Prior strength (default: problem value)");
  simulate_cmd->add_option("--decision", o.decision, "Decision id (default: first)");
  simulate_cmd->add_option("--endpoint", o.endpoint, "Efficacy endpoint")->check(CLI::IsMember({"lower", "upper"}));
  simulate_cmd->add_option("--out", o.out_dir, "Write simulation.json into this directory");

  auto* serve_cmd = app.add_subcommand("serve", "Run the elicitation session API");
  serve_cmd->add_option("--port", o.server.port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", o.server.host, "Bind address");
  serve_cmd->add_option("--sessions", o.server.sessions_dir, "Session directory");
  serve_cmd->add_option("--static", o.server.static_dir, "UI bundle directory to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << app.help();
    err << json({{"error", "usage"}, {"message", e.what()}}).dump() << '\n';
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*infer_cmd) return cmd_infer(o, out);
    if (*weights_cmd) return cmd_weights(o, out);
    if (*analyze_cmd) return cmd_analyze(o, out, err);
    if (*simulate_cmd) return cmd_simulate(o, out);
    if (*serve_cmd) {
      if (!run_server(o.server)) {
        err << json({{"error", "io"}, {"message", "cannot bind port " + std::to_string(o.server.port)}}).dump()
            << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << json({{"error", to_string(e.kind())}, {"where", e.where()}, {"message", e.what()}}).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json({{"error", "internal"}, {"message", e.what()}}).dump() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rbda
