// unicrit command-line driver: criterion checks, boundary diagnostics and
// coefficient-space searches, with deterministic JSON/CSV reports.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unicrit/unicrit.hpp"

namespace {

using namespace unicrit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct GridFlags {
  int levels = 12;
  int angles = 4096;
  int order = 64;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--radii-levels", g.levels, "radius levels j=1..J (r_j = 1 - 2^-j)")
      ->check(CLI::Range(1, 40));
  cmd->add_option("--angles", g.angles, "angular samples per circle")->check(CLI::Range(16, 1 << 20));
  cmd->add_option("--order", g.order, "series order for named families")->check(CLI::Range(1, 1 << 16));
}

nlohmann::json complex_json(Complex z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json search_json(const std::string& criterion, const SearchResult& r,
                           const GridFlags& g) {
  nlohmann::json j;
  j["outcome"] = outcome_name(r.outcome);
  j["criterion"] = criterion;
  j["evaluations"] = r.evaluations;
  j["seed"] = r.seed;
  j["objective"] = r.objective;
  j["constraint_residual"] = r.constraint_residual;
  if (std::isfinite(r.min_feasible_objective))
    j["min_feasible_objective"] = r.min_feasible_objective;
  else
    j["min_feasible_objective"] = nullptr;
  j["theorem_consistency_violated"] = r.theorem_consistency_violated;
  nlohmann::json params = nlohmann::json::array();
  for (Complex c : r.params) params.push_back(complex_json(c));
  j["params"] = params;
  if (!r.params.empty()) j["witness_function"] = print_function(PowerSeries::poly_p(r.params));
  if (r.report) {
    RunReport rr;
    rr.criterion = r.report->spec.name();
    rr.function_echo = print_function(PowerSeries::poly_p(r.params));
    rr.levels = g.levels;
    rr.angles = g.angles;
    rr.order = g.order;
    rr.check = *r.report;
    j["report"] = report_json(rr);
  } else {
    j["report"] = nullptr;
  }
  return j;
}

int run_check(const std::string& criterion_name, const std::string& function_text,
              std::optional<double> alpha, const GridFlags& g, bool as_json, bool as_csv,
              bool no_timing) {
  auto spec = criterion_from_string(criterion_name, alpha);
  if (!spec) {
    std::cerr << "error: unknown criterion '" << criterion_name
              << "' (T3 additionally needs --alpha)\n";
    return kExitUsage;
  }
  if (alpha && spec->id != CriterionId::T3) {
    std::cerr << "error: --alpha applies only to criterion T3\n";
    return kExitUsage;
  }
  const PowerSeries input = parse_function(function_text, g.order);
  const DiskGrid grid = DiskGrid::standard(g.levels, g.angles);

  const auto t0 = std::chrono::steady_clock::now();
  RunReport rr;
  rr.criterion = spec->name();
  rr.function_echo = function_text;
  if (spec->id == CriterionId::T3) rr.alpha = spec->alpha;
  rr.levels = g.levels;
  rr.angles = g.angles;
  rr.order = g.order;
  try {
    rr.check = check(*spec, input, grid);
  } catch (const CertifiedViolationError& e) {
    rr.check = e.report;
    rr.timing = std::nullopt;
    RunReport dump = rr;
    std::cerr << "certified violation: implication contradicted by a certified hypothesis\n"
              << report_json(dump).dump(2) << '\n';
    return kExitViolation;
  }
  const auto t1 = std::chrono::steady_clock::now();
  if (!no_timing) rr.timing = std::chrono::duration<double>(t1 - t0).count();

  if (as_json) {
    std::cout << report_json(rr).dump(2) << '\n';
  } else if (as_csv) {
    std::cout << report_csv(rr);
  } else {
    std::cout << "criterion   " << rr.criterion << '\n'
              << "function    " << rr.function_echo << '\n'
              << "hypothesis  " << verdict_name(rr.check.hypothesis.verdict) << "  sup "
              << format_double(rr.check.hypothesis.sup) << (rr.check.spec.strict ? " < " : " <= ")
              << format_double(rr.check.bound);
    if (rr.check.hypothesis.certificate)
      std::cout << "  certificate " << format_double(*rr.check.hypothesis.certificate);
    std::cout << '\n'
              << "oracle      " << oracle_id_string(rr.check.oracle.id) << "  "
              << oracle_result_name(rr.check.oracle.result) << "  inf Re "
              << format_double(rr.check.oracle.inf_re) << '\n'
              << "consistency " << consistency_name(rr.check.consistency) << '\n';
  }
  return rr.check.consistency == Consistency::Violation ? kExitViolation : kExitOk;
}

SearchConfig make_search_config(CriterionId id, double alpha, int degree, long budget,
                                int restarts, std::uint64_t seed, double step, double decay,
                                int workers, const GridFlags& g) {
  SearchConfig cfg;
  cfg.criterion = id;
  cfg.alpha = alpha;
  cfg.degree = degree;
  cfg.budget = budget;
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.step_init = step;
  cfg.step_decay = decay;
  cfg.workers = workers;
  cfg.grid = DiskGrid::standard(g.levels, g.angles);
  return cfg;
}

void print_search_text(const std::string& criterion, const SearchResult& r) {
  std::cout << "outcome      " << outcome_name(r.outcome) << '\n'
            << "criterion    " << criterion << '\n'
            << "evaluations  " << r.evaluations << '\n'
            << "objective    " << format_double(r.objective) << '\n';
  if (!r.params.empty())
    std::cout << "witness      " << print_function(PowerSeries::poly_p(r.params)) << '\n';
  if (std::isfinite(r.min_feasible_objective))
    std::cout << "min feasible " << format_double(r.min_feasible_objective) << '\n';
  if (r.report)
    std::cout << "replay       hypothesis " << verdict_name(r.report->hypothesis.verdict)
              << ", oracle " << oracle_result_name(r.report->oracle.result) << ", "
              << consistency_name(r.report->consistency) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unicrit: executable univalence criteria on the unit disk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(unicrit::kVersion));

  // check
  std::string criterion, function_text;
  double check_alpha = 0.0;
  CLI::Option* check_alpha_opt = nullptr;
  GridFlags check_grid;
  bool as_json = false, as_csv = false, no_timing = false;
  {
    auto* cmd = app.add_subcommand("check", "run one criterion against one function");
    cmd->add_option("--criterion", criterion, "criterion id (T1, C2.iii, TZF, ...)")->required();
    cmd->add_option("--function", function_text, "function spec")->required();
    check_alpha_opt =
        cmd->add_option("--alpha", check_alpha, "order parameter for T3")->check(CLI::Range(0.0, 1.0));
    add_grid_flags(cmd, check_grid);
    cmd->add_flag("--json", as_json, "emit the JSON report");
    cmd->add_flag("--csv", as_csv, "emit the CSV report");
    cmd->add_flag("--no-timing", no_timing, "omit the timing field (deterministic output)");
  }

  // phi
  double phi_t = 0.0, phi_k = 1.0;
  bool phi_json = false;
  {
    auto* cmd = app.add_subcommand("phi", "boundary lower-bound function and its k-derivative");
    cmd->add_option("--t", phi_t, "cos of the boundary angle, in [-1,1)")->required();
    cmd->add_option("--k", phi_k, "boundary expansion factor, >= 1")->required();
    cmd->add_flag("--json", phi_json, "emit JSON");
  }

  // jack
  std::string jack_omega;
  double jack_r = 0.9;
  int jack_angles = 4096;
  bool jack_json = false;
  {
    auto* cmd = app.add_subcommand("jack", "boundary-maximum check for a Schwarz-type function");
    cmd->add_option("--omega", jack_omega, "omega spec (omega:<c1>,...)")->required();
    cmd->add_option("--r", jack_r, "circle radius in (0,1)")->required();
    cmd->add_option("--angles", jack_angles, "dense angular samples")->check(CLI::Range(16, 1 << 20));
    cmd->add_flag("--json", jack_json, "emit JSON");
  }

  // shared search flags
  struct SearchFlags {
    std::string criterion = "T2";
    double alpha = 0.0;
    int degree = 3;
    long budget = 5000;
    int restarts = 8;
    std::uint64_t seed = 0;
    double step = 0.25;
    double decay = 0.5;
    int workers = 1;
    GridFlags grid{8, 512, 64};
    bool json = false;
  };
  auto add_search_flags = [](CLI::App* cmd, SearchFlags& f, bool with_criterion) {
    if (with_criterion)
      cmd->add_option("--criterion", f.criterion, "target criterion (T1, T2, T3)");
    cmd->add_option("--alpha", f.alpha, "order parameter for T3")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--degree", f.degree, "candidate polynomial degree")->check(CLI::Range(1, 64));
    cmd->add_option("--budget", f.budget, "max objective evaluations")
        ->check(CLI::Range(0L, 100000000L));
    cmd->add_option("--restarts", f.restarts, "independent restarts")->check(CLI::Range(1, 4096));
    cmd->add_option("--seed", f.seed, "PRNG seed")->required();
    cmd->add_option("--step", f.step, "initial coordinate step");
    cmd->add_option("--decay", f.decay, "step decay factor in (0,1)");
    cmd->add_option("--workers", f.workers, "parallel restart workers")->check(CLI::Range(1, 256));
    cmd->add_option("--radii-levels", f.grid.levels, "radius levels")->check(CLI::Range(1, 40));
    cmd->add_option("--angles", f.grid.angles, "angular samples per circle")
        ->check(CLI::Range(16, 1 << 20));
    cmd->add_flag("--json", f.json, "emit JSON");
  };

  SearchFlags falsify_flags;
  double falsify_override_value = 0.0;
  CLI::Option* falsify_override_opt = nullptr;
  {
    auto* cmd = app.add_subcommand(
        "falsify", "search for a certified-hypothesis / failed-conclusion witness");
    add_search_flags(cmd, falsify_flags, true);
    falsify_override_opt =
        cmd->add_option("--bound-override", falsify_override_value,
                        "diagnostic bound replacing the criterion's (harness validation)");
  }

  SearchFlags sharp_flags;
  {
    auto* cmd =
        app.add_subcommand("sharpness", "minimize the hypothesis sup subject to conclusion failure");
    add_search_flags(cmd, sharp_flags, true);
  }

  SearchFlags conv_flags;
  std::vector<std::string> conv_candidates;
  {
    auto* cmd = app.add_subcommand("converse",
                                   "search for a conclusion-holds / hypothesis-fails witness");
    add_search_flags(cmd, conv_flags, false);
    cmd->add_option("--candidate", conv_candidates, "explicit candidate specs probed first");
  }

  // identity
  std::string id_which = "zf", id_function;
  GridFlags id_grid{8, 512, 64};
  bool id_json = false;
  {
    auto* cmd = app.add_subcommand("identity", "pointwise agreement of an algebraic identity pair");
    cmd->add_option("--which", id_which, "zf | remark")
        ->check(CLI::IsMember({"zf", "remark"}))
        ->required();
    cmd->add_option("--function", id_function, "class-A function spec")->required();
    add_grid_flags(cmd, id_grid);
    cmd->add_flag("--json", id_json, "emit JSON");
  }

  // boundary-csv
  std::string bc_criterion, bc_function;
  double bc_alpha = 0.0;
  CLI::Option* bc_alpha_opt = nullptr;
  double bc_r = 0.875;
  int bc_angles = 4096, bc_order = 64;
  {
    auto* cmd = app.add_subcommand("boundary-csv",
                                   "per-angle hypothesis values on one circle, as CSV");
    cmd->add_option("--criterion", bc_criterion, "criterion id")->required();
    cmd->add_option("--function", bc_function, "function spec")->required();
    bc_alpha_opt =
        cmd->add_option("--alpha", bc_alpha, "order parameter for T3")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--r", bc_r, "circle radius in (0,1)")->required();
    cmd->add_option("--angles", bc_angles, "rows to emit")->check(CLI::Range(16, 1 << 20));
    cmd->add_option("--order", bc_order, "series order for named families")
        ->check(CLI::Range(1, 1 << 16));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("check")) {
      std::optional<double> alpha_flag;
      if (check_alpha_opt->count() > 0) alpha_flag = check_alpha;
      return run_check(criterion, function_text, alpha_flag, check_grid, as_json, as_csv,
                       no_timing);
    }

    if (app.got_subcommand("phi")) {
      const double v = phi(PhiArgs{phi_t, phi_k});
      const double vk = phi_partial_k(PhiArgs{phi_t, phi_k});
      if (phi_json) {
        nlohmann::json j{{"t", phi_t}, {"k", phi_k}, {"phi", v}, {"phi_k", vk}};
        std::cout << j.dump(2) << '\n';
      } else {
        std::printf("phi %.15g\nphi_k %.15g\n", v, vk);
      }
      return kExitOk;
    }

    if (app.got_subcommand("jack")) {
      const PowerSeries omega = parse_function(jack_omega, 64);
      if (omega.coeff(0) != Complex(0.0, 0.0)) {
        std::cerr << "error: --omega must be a spec with c0 = 0 (omega:...)\n";
        return kExitUsage;
      }
      const JackResult jr = jack_check(omega, jack_r, jack_angles);
      if (jack_json) {
        nlohmann::json j;
        j["r"] = jr.radius;
        j["z0"] = complex_json(jr.z0);
        j["k_est"] = complex_json(jr.k_est);
        j["multiplicity"] = jr.multiplicity;
        nlohmann::json peaks = nlohmann::json::array();
        for (const auto& [z, k] : jr.peaks)
          peaks.push_back({{"z", complex_json(z)}, {"k", complex_json(k)}});
        j["peaks"] = peaks;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "z0    " << format_complex(jr.z0) << '\n'
                  << "k_est " << format_complex(jr.k_est) << '\n'
                  << "multiplicity " << jr.multiplicity << '\n';
      }
      return kExitOk;
    }

    if (app.got_subcommand("falsify") || app.got_subcommand("sharpness")) {
      const bool is_falsify = app.got_subcommand("falsify");
      SearchFlags& f = is_falsify ? falsify_flags : sharp_flags;
      auto spec = criterion_from_string(f.criterion, f.alpha);
      if (!spec || spec->input != InputKind::PFunction) {
        std::cerr << "error: search targets must be T1, T2 or T3\n";
        return kExitUsage;
      }
      SearchConfig cfg = make_search_config(spec->id, spec->alpha, f.degree, f.budget, f.restarts,
                                            f.seed, f.step, f.decay, f.workers, f.grid);
      if (is_falsify && falsify_override_opt->count() > 0)
        cfg.bound_override = falsify_override_value;
      const SearchResult res = is_falsify ? falsify(cfg) : sharpness(cfg);
      if (f.json)
        std::cout << search_json(spec->name(), res, f.grid).dump(2) << '\n';
      else
        print_search_text(spec->name(), res);
      const bool inconsistent =
          res.theorem_consistency_violated ||
          (is_falsify && !cfg.bound_override && res.outcome == SearchOutcome::Counterexample);
      return inconsistent ? kExitViolation : kExitOk;
    }

    if (app.got_subcommand("converse")) {
      SearchConfig cfg =
          make_search_config(CriterionId::T3, conv_flags.alpha, conv_flags.degree,
                             conv_flags.budget, conv_flags.restarts, conv_flags.seed,
                             conv_flags.step, conv_flags.decay, conv_flags.workers,
                             conv_flags.grid);
      for (const std::string& text : conv_candidates)
        cfg.initial_candidates.push_back(parse_function(text, 64));
      const SearchResult res = converse_probe(conv_flags.alpha, cfg);
      const std::string name = make_t3(conv_flags.alpha).name();
      if (conv_flags.json)
        std::cout << search_json(name, res, conv_flags.grid).dump(2) << '\n';
      else
        print_search_text(name, res);
      return kExitOk;
    }

    if (app.got_subcommand("identity")) {
      const PowerSeries f = parse_function(id_function, id_grid.order);
      if (f.normalization() != Normalization::ClassA) {
        std::cerr << "error: identity checks take a class-A function\n";
        return kExitUsage;
      }
      const DiskGrid grid = DiskGrid::standard(id_grid.levels, id_grid.angles);
      const double cap = std::max(kDefaultEvalRadiusCap, grid.max_radius());
      const PointwisePair pair =
          id_which == "zf" ? identity_zf(f, cap) : remark_identity(f, cap);
      double max_gap = 0.0;
      long singular = 0, compared = 0;
      for (int ri = 0; ri < static_cast<int>(grid.radii.size()); ++ri) {
        for (int ai = 0; ai < grid.angles_per_circle; ++ai) {
          const Complex z = grid.point(ri, ai);
          const EvalSample a = pair.a(z);
          const EvalSample b = pair.b(z);
          if (a.singular || b.singular) {
            ++singular;
            continue;
          }
          max_gap = std::max(max_gap, std::abs(a.value - b.value));
          ++compared;
        }
      }
      if (id_json) {
        nlohmann::json j{{"which", id_which},
                         {"function", id_function},
                         {"max_gap", max_gap},
                         {"samples", compared},
                         {"singular_samples", singular}};
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "max_gap " << format_double(max_gap) << " over " << compared
                  << " samples (" << singular << " singular)\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand("boundary-csv")) {
      std::optional<double> alpha_flag;
      if (bc_alpha_opt->count() > 0) alpha_flag = bc_alpha;
      auto spec = criterion_from_string(bc_criterion, alpha_flag);
      if (!spec) {
        std::cerr << "error: unknown criterion '" << bc_criterion << "'\n";
        return kExitUsage;
      }
      if (!(bc_r > 0.0 && bc_r < 1.0)) {
        std::cerr << "error: --r must lie in (0,1)\n";
        return kExitUsage;
      }
      const PowerSeries input = parse_function(bc_function, bc_order);
      const double cap = std::max(kDefaultEvalRadiusCap, bc_r);
      ExprHandle expr(input, spec->expr, spec->alpha, cap);
      std::string out = "theta,re,im,abs\n";
      for (int i = 0; i < bc_angles; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / bc_angles;
        const Complex z(bc_r * std::cos(theta), bc_r * std::sin(theta));
        const EvalSample s = expr(z);
        out += format_double(theta);
        out += ',';
        if (s.singular) {
          out += "nan,nan,nan";
        } else {
          out += format_double(s.value.real()) + ',' + format_double(s.value.imag()) + ',' +
                 format_double(std::abs(s.value));
        }
        out += '\n';
      }
      std::cout << out;
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: function spec " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
