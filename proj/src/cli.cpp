#include "credit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "credit/contraction.hpp"
#include "credit/errors.hpp"
#include "credit/experiments.hpp"
#include "credit/horizon.hpp"
#include "credit/inspection.hpp"
#include "credit/markov.hpp"
#include "credit/objectives.hpp"
#include "credit/table.hpp"
#include "credit/width.hpp"

namespace credit {

using nlohmann::json;

namespace {

/// Thrown for unreadable or unwritable files; maps to exit 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

Kernel kernel_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("rows") : j;
  detail::require(rows.is_array() && !rows.empty(), "kernel file needs a non-empty \"rows\" array");
  const auto k = static_cast<Eigen::Index>(rows.size());
  Kernel::Matrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto row = rows.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    detail::require(static_cast<Eigen::Index>(row.size()) == k, "kernel must be square");
    for (Eigen::Index c = 0; c < k; ++c) {
      m(i, c) = row[static_cast<std::size_t>(c)];
    }
  }
  return Kernel(m);
}

std::vector<double> etas_from_json(const json& j) {
  return (j.is_object() ? j.at("etas") : j).get<std::vector<double>>();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json segments_json(const std::vector<Segment>& segments) {
  json out = json::array();
  for (const auto& s : segments) {
    out.push_back({{"start", s.start},
                   {"end", s.end},
                   {"length", s.length()},
                   {"info_distance", s.info_distance},
                   {"attenuation", s.attenuation},
                   {"sample_lb", s.worst_step_sample_lb}});
  }
  return out;
}

json plan_json(const DesignPlan& plan) {
  json j = {{"homogeneous", plan.homogeneous},
            {"gamma", plan.gamma},
            {"effective_gamma", plan.effective_gamma},
            {"h_crit", optional_json(plan.h_crit)},
            {"m_necessary", plan.m_necessary},
            {"m", plan.m_sufficient},
            {"times", plan.schedule.times()},
            {"max_gap", maximal_gap(plan.schedule)},
            {"segments", segments_json(plan.segments)},
            {"worst_step", plan.worst_case.step},
            {"worst_sample_lb", plan.worst_case.bound},
            {"feasible", plan.feasible},
            {"budget_lb", optional_json(plan.budget_lb)},
            {"study_cost", optional_json(plan.study_cost)}};
  return j;
}

DesignInputs design_inputs_from_json(const json& j) {
  DesignInputs in;
  try {
    in.horizon = j.at("H").get<int>();
    if (j.contains("eta")) {
      in.eta = j.at("eta").get<double>();
    }
    if (j.contains("etas")) {
      in.etas = j.at("etas").get<std::vector<double>>();
    }
    in.n = j.at("n").get<double>();
    in.delta2 = j.at("delta2").get<double>();
    in.epsilon = j.value("epsilon", 0.1);
    if (j.contains("budget")) {
      in.budget = BudgetParams{j.at("budget").at("c_out").get<double>(), j.at("budget").value("c_insp", 0.0)};
    }
    if (j.contains("eta_g")) {
      in.eta_g = j.at("eta_g").get<double>();
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed plan config: ") + e.what());
  }
  return in;
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Credit-assignment horizon calculators, schedulers and experiments", "credit"};
  app.require_subcommand(1);
  std::function<void()> action;

  // calc -------------------------------------------------------------------------------------------
  auto* calc = app.add_subcommand("calc", "Closed-form calculators");
  calc->require_subcommand(1);

  double eta = 0.0;
  double delta2 = 0.0;
  double n = 0.0;
  double epsilon = 0.1;
  std::optional<double> eta_g;
  std::optional<int> gap;
  std::optional<int> horizon_opt;

  auto* horizon_cmd = calc->add_subcommand("horizon", "Critical horizon and sample-complexity bounds");
  horizon_cmd->add_option("--eta", eta, "contraction coefficient")->required();
  horizon_cmd->add_option("--delta2", delta2, "initial chi-square divergence")->required();
  horizon_cmd->add_option("--n", n, "sample size")->required();
  horizon_cmd->add_option("--epsilon", epsilon, "target error")->required();
  horizon_cmd->add_option("--eta-g", eta_g, "terminal observation fidelity");
  horizon_cmd->add_option("--gap", gap, "distance to the outcome for the per-step bounds");
  horizon_cmd->add_option("--H", horizon_opt, "horizon, for the minimum inspection count");
  horizon_cmd->callback([&] {
    action = [&] {
      const HorizonParams params{n, delta2, epsilon, eta};
      params.validate();
      if (gap) {
        detail::require(*gap >= 0, "gap must be non-negative");
      }
      if (horizon_opt) {
        detail::require(*horizon_opt >= 1, "H must be positive");
      }
      if (eta_g) {
        detail::require(*eta_g > 0.0 && *eta_g <= 1.0, "eta_g must lie in (0,1]");
      }
      const double h_crit = critical_horizon(params);
      json j = {{"gamma", feasibility_threshold(n, delta2, epsilon)},
                {"h_crit", h_crit},
                {"h_crit_simplified", critical_horizon_simplified(n, delta2, eta)}};
      if (eta_g) {
        j["h_crit_noisy"] = noisy_outcome_adjust(params, *eta_g);
      }
      if (gap) {
        const SampleBound b = sample_lb(params, *gap);
        j["gap"] = *gap;
        j["sample_lb"] = b.value;
        j["log_sample_lb"] = b.log_value;
        j["regime"] = to_string(b.regime);
        j["overflow"] = b.overflow;
        j["minimax_error_lb"] = minimax_error_lb(params, *gap);
        j["sample_cap"] = sample_cap_for_error(params, *gap);
      }
      if (horizon_opt) {
        j["H"] = *horizon_opt;
        j["min_inspections"] = min_inspections(*horizon_opt, eta_g ? noisy_outcome_adjust(params, *eta_g) : h_crit);
      }
      print(out, j);
    };
  });

  int width = 1;
  double rho = 0.0;
  double value = 0.5;
  std::optional<double> width_n;
  std::optional<double> width_delta2;
  std::optional<double> width_eta;
  auto* width_cmd = calc->add_subcommand("width", "Effective width under equicorrelation");
  width_cmd->add_option("--W", width, "rollouts per prefix")->required();
  width_cmd->add_option("--rho", rho, "pairwise correlation")->required();
  width_cmd->add_option("--value", value, "per-rollout success probability");
  width_cmd->add_option("--n", width_n, "prefixes, for the width-extended horizon");
  width_cmd->add_option("--delta2", width_delta2, "initial chi-square divergence");
  width_cmd->add_option("--eta", width_eta, "contraction coefficient");
  width_cmd->callback([&] {
    action = [&] {
      const double weff = effective_width(width, rho);
      json j = {{"W", width},
                {"rho", rho},
                {"effective_width", weff},
                {"cap", rho > 0.0 ? json(1.0 / rho) : json(nullptr)},
                {"variance_iid", estimator_variance_iid(value, width)},
                {"variance_correlated", correlated_variance(value, width, rho)}};
      if (width_n || width_delta2 || width_eta) {
        detail::require(width_n && width_delta2 && width_eta, "--n, --delta2 and --eta go together");
        j["h_crit_width"] = width_horizon(*width_n, width, rho, *width_delta2, *width_eta);
        if (rho > 0.0) {
          j["insufficiency_threshold"] = width_insufficiency_threshold(*width_n, *width_delta2, rho, *width_eta);
        }
      }
      print(out, j);
    };
  });

  std::string kernel_file;
  int trials = 1000;
  std::uint64_t seed = 0;
  auto* contraction_cmd = calc->add_subcommand("contraction", "Contraction bounds for a kernel");
  contraction_cmd->add_option("--kernel-file", kernel_file, "JSON {\"rows\": [[...], ...]}")->required();
  contraction_cmd->add_option("--trials", trials, "random reference distributions");
  contraction_cmd->add_option("--seed", seed, "seed for the random references");
  contraction_cmd->callback([&] {
    action = [&] {
      detail::require(trials >= 0, "trials must be non-negative");
      const Kernel kernel = kernel_from_json(read_json_file(kernel_file));
      const ContractionReport r = contraction_report(kernel, trials, seed);
      print(out, {{"dobrushin_alpha", r.dobrushin_alpha},
                  {"dobrushin_bound", r.dobrushin_bound},
                  {"diversity_bound", optional_json(r.diversity_bound)},
                  {"empirical_lower", r.empirical_lower},
                  {"exact", optional_json(r.exact)},
                  {"gap", r.gap()},
                  {"smoothing", r.smoothing},
                  {"trials", r.trials}});
    };
  });

  double p = 0.0;
  int obj_horizon = 1;
  std::optional<double> lambda;
  std::optional<double> threshold;
  auto* objectives_cmd = calc->add_subcommand("objectives", "Step-quality and validity objectives");
  objectives_cmd->add_option("--p", p, "per-step success probability")->required();
  objectives_cmd->add_option("--H", obj_horizon, "horizon")->required();
  objectives_cmd->add_option("--lambda", lambda, "interpolation weight");
  objectives_cmd->add_option("--threshold", threshold, "fraction of correct steps");
  objectives_cmd->callback([&] {
    action = [&] {
      json j = {{"j_add", j_add(p, obj_horizon)},
                {"j_mult", j_mult(p, obj_horizon)},
                {"grad_attenuation", grad_attenuation(p, obj_horizon)},
                {"dj_add_dp", dj_add_dp(p, obj_horizon)},
                {"dj_mult_dp", dj_mult_dp(p, obj_horizon)}};
      if (lambda) {
        const InterpolatedObjective io = j_interp(p, obj_horizon, *lambda);
        j["j_interp"] = io.value;
        j["dj_interp_dp"] = io.gradient;
      }
      if (threshold) {
        j["mostly_correct_but_wrong"] = mostly_correct_but_wrong_prob(p, obj_horizon, *threshold);
        j["below_threshold"] = below_threshold_prob(p, obj_horizon, *threshold);
      }
      print(out, j);
    };
  });

  double gamma_n = 0.0;
  double gamma_delta2 = 0.0;
  double gamma_epsilon = 0.1;
  std::optional<double> gamma_eta;
  auto* gamma_cmd = calc->add_subcommand("gamma", "Per-segment information budget");
  gamma_cmd->add_option("--n", gamma_n, "sample size")->required();
  gamma_cmd->add_option("--delta2", gamma_delta2, "initial chi-square divergence")->required();
  gamma_cmd->add_option("--epsilon", gamma_epsilon, "target error")->required();
  gamma_cmd->add_option("--eta", gamma_eta, "homogeneous contraction, for the segment length");
  gamma_cmd->callback([&] {
    action = [&] {
      if (gamma_eta) {
        detail::require(*gamma_eta > 0.0 && *gamma_eta < 1.0, "eta must lie in (0,1)");
      }
      const double g = feasibility_threshold(gamma_n, gamma_delta2, gamma_epsilon);
      json j = {{"gamma", g}};
      if (gamma_eta) {
        j["h_crit"] = std::max(0.0, g / -std::log(*gamma_eta));
      }
      print(out, j);
    };
  });

  // schedule ---------------------------------------------------------------------------------------
  auto* schedule = app.add_subcommand("schedule", "Inspection schedulers");
  schedule->require_subcommand(1);

  int sched_horizon = 1;
  int m = 0;
  std::optional<double> sched_eta;
  std::optional<double> sched_delta2;
  std::optional<double> sched_n;
  double sched_epsilon = 0.1;
  auto* uniform_cmd = schedule->add_subcommand("uniform", "Minimax-optimal uniform placement");
  uniform_cmd->add_option("--H", sched_horizon, "horizon")->required();
  uniform_cmd->add_option("--m", m, "number of inspections")->required();
  uniform_cmd->add_option("--eta", sched_eta, "homogeneous contraction, for segment bounds");
  uniform_cmd->add_option("--delta2", sched_delta2, "initial chi-square divergence");
  uniform_cmd->add_option("--n", sched_n, "sample size, for feasibility");
  uniform_cmd->add_option("--epsilon", sched_epsilon, "target error");
  uniform_cmd->callback([&] {
    action = [&] {
      detail::require(sched_horizon >= 1, "H must be positive");
      detail::require(m >= 0 && m <= sched_horizon - 1, "m must lie in [0, H-1]");
      const Schedule s = uniform_schedule(sched_horizon, m);
      json j = {{"times", s.times()}, {"max_gap", maximal_gap(s)}};
      if (sched_eta || sched_delta2) {
        detail::require(sched_eta && sched_delta2, "--eta and --delta2 go together");
        detail::require(*sched_eta > 0.0 && *sched_eta <= 1.0, "eta must lie in (0,1]");
        const std::vector<double> etas(static_cast<std::size_t>(sched_horizon), *sched_eta);
        j["segments"] = segments_json(segment_report(s, etas, *sched_delta2, sched_epsilon));
        const WorstCase worst = worst_case_sample_lb(s, *sched_eta, *sched_delta2, sched_epsilon);
        j["worst_step"] = worst.step;
        j["worst_sample_lb"] = worst.bound;
        if (sched_n) {
          detail::require(*sched_n > 0.0, "n must be positive");
          j["feasible"] = worst.bound <= *sched_n;
        }
      } else {
        json segments = json::array();
        const auto edges = s.augmented();
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
          segments.push_back({{"start", edges[i]}, {"end", edges[i + 1]}, {"length", edges[i + 1] - edges[i]}});
        }
        j["segments"] = segments;
      }
      print(out, j);
    };
  });

  std::string etas_file;
  std::optional<double> greedy_gamma;
  std::optional<double> greedy_n;
  std::optional<double> greedy_delta2;
  double greedy_epsilon = 0.1;
  std::optional<double> greedy_eta_g;
  auto* greedy_cmd = schedule->add_subcommand("greedy", "Minimum-cardinality schedule for heterogeneous contraction");
  greedy_cmd->add_option("--etas-file", etas_file, "JSON array of per-step eta, or {\"etas\": [...]}")->required();
  greedy_cmd->add_option("--gamma", greedy_gamma, "per-segment budget (else from n, delta2, epsilon)");
  greedy_cmd->add_option("--n", greedy_n, "sample size");
  greedy_cmd->add_option("--delta2", greedy_delta2, "initial chi-square divergence");
  greedy_cmd->add_option("--epsilon", greedy_epsilon, "target error");
  greedy_cmd->add_option("--eta-g", greedy_eta_g, "inspection fidelity");
  greedy_cmd->callback([&] {
    action = [&] {
      detail::require(greedy_gamma.has_value() != (greedy_n.has_value() && greedy_delta2.has_value()),
                      "give either --gamma or both --n and --delta2");
      std::vector<double> etas;
      try {
        etas = etas_from_json(read_json_file(etas_file));
      } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed etas file: ") + e.what());
      }
      const double g = greedy_gamma ? *greedy_gamma : feasibility_threshold(*greedy_n, *greedy_delta2, greedy_epsilon);
      const Schedule s = greedy_schedule(etas, g, greedy_eta_g);
      const double d2 = greedy_delta2.value_or(1.0);
      json j = {{"gamma", g},
                {"effective_gamma", greedy_eta_g ? g + std::log(*greedy_eta_g) : g},
                {"times", s.times()},
                {"m", s.size()},
                {"max_gap", maximal_gap(s)}};
      json segments = segments_json(segment_report(s, etas, d2, greedy_epsilon));
      if (!greedy_delta2) {
        for (auto& seg : segments) {
          seg.erase("sample_lb");
        }
      }
      j["segments"] = segments;
      print(out, j);
    };
  });

  std::string plan_config;
  auto* plan_cmd = schedule->add_subcommand("plan", "Five-step inspection design procedure");
  plan_cmd->add_option("--config", plan_config, "JSON design inputs")->required();
  plan_cmd->callback([&] {
    action = [&] { print(out, plan_json(design_procedure(design_inputs_from_json(read_json_file(plan_config))))); };
  });

  // experiment -------------------------------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo experiments");
  experiment->require_subcommand(1);
  std::string exp_config;
  std::string exp_out;
  std::optional<std::uint64_t> exp_seed;
  int exp_threads = 0;
  auto* run_cmd = experiment->add_subcommand("run", "Run one experiment to CSV plus a .meta.json sidecar");
  run_cmd->add_option("--config", exp_config, "JSON experiment config")->required();
  run_cmd->add_option("--out", exp_out, "CSV output path")->required();
  run_cmd->add_option("--seed", exp_seed, "master seed (overrides the config)");
  run_cmd->add_option("--threads", exp_threads, "worker threads (default CH_THREADS or hardware)");
  run_cmd->callback([&] {
    action = [&] {
      detail::require(exp_threads >= 0, "threads must be non-negative");
      ExperimentConfig config = experiment_config_from_json(read_json_file(exp_config));
      if (exp_seed) {
        config.master_seed = *exp_seed;
      }
      const ResultTable table = run_experiment(config, RunOptions{exp_threads});
      try {
        emit_csv(table, std::filesystem::path(exp_out));
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
      const auto meta_path = meta_sidecar_path(exp_out);
      std::ofstream meta(meta_path, std::ios::binary);
      if (!meta) {
        throw IoError("cannot write '" + meta_path.string() + "'");
      }
      meta << table.metadata.dump(2) << '\n';
      print(out, {{"csv", exp_out}, {"meta", meta_path.string()}, {"rows", table.rows.size()}, {"seed", config.master_seed}});
    };
  });

  std::vector<std::string> argv_storage{"credit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    action();
    return 0;
  } catch (const Infeasible& e) {
    json j = {{"status", "infeasible"}, {"reason", e.what()}};
    if (e.step()) {
      j["step"] = *e.step();
    }
    print(out, j);
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const AbsoluteContinuityViolated& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace credit
