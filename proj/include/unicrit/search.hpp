#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "unicrit/criteria.hpp"
#include "unicrit/disk_analysis.hpp"
#include "unicrit/power_series.hpp"
#include "unicrit/transforms.hpp"

namespace unicrit {

// splitmix64: state advances by the constant 0x9E3779B97F4A7C15 and the
// output is the finalizer z ^= z>>30, *= 0xBF58476D1CE4E5B9, ^= z>>27,
// *= 0x94D049BB133111EB, ^= z>>31. Every stochastic choice in this module
// flows from it, so a (seed, restart index) pair fully determines a run.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform over the closed complex disk of the given radius
  Complex disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double phi = 2.0 * std::numbers::pi * uniform();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }

 private:
  std::uint64_t state_;
};

struct SearchConfig {
  CriterionId criterion = CriterionId::T2;  // must take class-P input
  double alpha = 0.0;                       // T3 only
  int degree = 3;                           // polynomial degree of candidate p
  long budget = 5000;                       // max objective evaluations
  int restarts = 8;
  std::uint64_t seed = 0;
  double step_init = 0.25;
  double step_decay = 0.5;  // in (0,1)
  int workers = 1;          // restarts may run in parallel
  std::optional<double> bound_override;      // falsify diagnostics only
  DiskGrid grid = DiskGrid::standard(8, 512);
  std::vector<PowerSeries> initial_candidates;  // probed before the restarts
};

enum class SearchOutcome { NoCounterexample, Counterexample, BestValue };

inline const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::NoCounterexample: return "NO_COUNTEREXAMPLE";
    case SearchOutcome::Counterexample: return "COUNTEREXAMPLE";
    case SearchOutcome::BestValue: return "BEST_VALUE";
  }
  return "?";
}

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NoCounterexample;
  std::vector<Complex> params;  // c_1..c_degree of the reported p
  double objective = std::numeric_limits<double>::quiet_NaN();
  double constraint_residual = 0.0;
  // smallest hypothesis sup seen at a feasible point, and where
  double min_feasible_objective = std::numeric_limits<double>::infinity();
  std::vector<Complex> best_feasible_params;
  bool theorem_consistency_violated = false;
  std::optional<CheckReport> report;  // embedded for counterexamples
  long evaluations = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline CriterionSpec search_spec(const SearchConfig& cfg) {
  switch (cfg.criterion) {
    case CriterionId::T1:
      return list_criteria()[0];
    case CriterionId::T2:
      return list_criteria()[1];
    case CriterionId::T3:
      return make_t3(cfg.alpha);
    default:
      throw Error(Errc::BadConfig, "search targets must take class-P input (T1, T2, T3)");
  }
}

inline void validate_search_config(const SearchConfig& cfg) {
  if (cfg.degree < 1) throw Error(Errc::BadConfig, "degree must be >= 1");
  if (cfg.budget < 0) throw Error(Errc::BadConfig, "budget must be >= 0");
  if (cfg.restarts < 1) throw Error(Errc::BadConfig, "restarts must be >= 1");
  if (!(cfg.step_decay > 0.0 && cfg.step_decay < 1.0))
    throw Error(Errc::BadConfig, "step decay must lie in (0,1)");
  if (!(cfg.step_init > 0.0)) throw Error(Errc::BadConfig, "initial step must be positive");
  if (cfg.workers < 1) throw Error(Errc::BadConfig, "workers must be >= 1");
  search_spec(cfg);  // validates the target
}

inline PowerSeries series_from_params(const std::vector<double>& x) {
  std::vector<Complex> tail(x.size() / 2);
  for (std::size_t k = 0; k < tail.size(); ++k) tail[k] = Complex(x[2 * k], x[2 * k + 1]);
  return PowerSeries::poly_p(tail);
}

struct CandidateMetrics {
  double objective = std::numeric_limits<double>::infinity();
  bool qualifies = false;
  double feasible_sup = std::numeric_limits<double>::infinity();  // +inf if infeasible
};

struct SlotResult {
  double best_objective = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  bool found = false;  // a qualifying candidate stopped this slot
  std::vector<double> found_x;
  double min_feasible = std::numeric_limits<double>::infinity();
  std::vector<double> min_feasible_x;
  long evaluations = 0;
};

// Adaptive coordinate descent over the 2*degree real parameters: each
// coordinate keeps its own step, multiplied by `decay` after a failed pair of
// probes and expanded after a success. Purely sequential per restart, so the
// outcome is a function of (seed, budget share) alone.
template <class Eval>
inline SlotResult run_restart(const SearchConfig& cfg, std::uint64_t restart_seed, long share,
                              Eval&& metrics_of) {
  SlotResult slot;
  if (share <= 0) return slot;
  SplitMix64 rng(restart_seed);
  const std::size_t dim = static_cast<std::size_t>(2 * cfg.degree);
  std::vector<double> x(dim);
  for (double& xi : x) xi = rng.uniform(-1.5, 1.5);
  std::vector<double> step(dim, cfg.step_init);

  auto eval_x = [&](const std::vector<double>& v) {
    CandidateMetrics m = metrics_of(v);
    ++slot.evaluations;
    if (m.feasible_sup < slot.min_feasible) {
      slot.min_feasible = m.feasible_sup;
      slot.min_feasible_x = v;
    }
    if (m.objective < slot.best_objective) {
      slot.best_objective = m.objective;
      slot.best_x = v;
    }
    if (m.qualifies && !slot.found) {
      slot.found = true;
      slot.found_x = v;
    }
    return m.objective;
  };

  double cur = eval_x(x);
  while (slot.evaluations < share && !slot.found) {
    bool improved = false;
    for (std::size_t c = 0; c < dim && slot.evaluations < share && !slot.found; ++c) {
      bool accepted = false;
      for (double delta : {step[c], -step[c]}) {
        if (slot.evaluations >= share || slot.found) break;
        std::vector<double> probe = x;
        probe[c] += delta;
        const double obj = eval_x(probe);
        if (obj < cur) {
          x = std::move(probe);
          cur = obj;
          step[c] *= 1.6;
          accepted = true;
          improved = true;
          break;
        }
      }
      if (!accepted) step[c] *= cfg.step_decay;
    }
    if (!improved) {
      double max_step = 0.0;
      for (double s : step) max_step = std::max(max_step, s);
      if (max_step < 1e-12) break;
    }
  }
  return slot;
}

// Candidates first (sequential), then the restarts; restart slots merge in
// index order regardless of how many workers executed them.
template <class Eval>
inline SearchResult run_search(const SearchConfig& cfg, Eval&& metrics_of) {
  validate_search_config(cfg);
  SearchResult out;
  out.seed = cfg.seed;

  std::vector<std::vector<double>> found_params;  // merge-ordered qualifying points
  long used = 0;

  auto params_of = [](const std::vector<double>& v) {
    std::vector<Complex> out;
    for (std::size_t k = 0; k + 1 < v.size(); k += 2) out.emplace_back(v[k], v[k + 1]);
    return out;
  };

  for (const PowerSeries& cand : cfg.initial_candidates) {
    if (used >= cfg.budget) break;
    if (cand.normalization() != Normalization::ClassP)
      throw Error(Errc::BadConfig, "initial candidates must be class-P series");
    std::vector<double> v(static_cast<std::size_t>(2 * cfg.degree), 0.0);
    for (int k = 1; k <= cfg.degree && k <= cand.order(); ++k) {
      v[static_cast<std::size_t>(2 * (k - 1))] = cand.coeff(k).real();
      v[static_cast<std::size_t>(2 * (k - 1) + 1)] = cand.coeff(k).imag();
    }
    CandidateMetrics m = metrics_of(v);
    ++used;
    if (m.feasible_sup < out.min_feasible_objective) {
      out.min_feasible_objective = m.feasible_sup;
      out.best_feasible_params = params_of(v);
    }
    if (m.objective < out.objective || std::isnan(out.objective)) {
      out.objective = m.objective;
      out.params = params_of(v);
    }
    if (m.qualifies && found_params.empty()) found_params.push_back(v);
  }

  const long remaining = cfg.budget - used;
  std::vector<std::uint64_t> restart_seeds(static_cast<std::size_t>(cfg.restarts));
  {
    SplitMix64 master(cfg.seed);
    for (auto& s : restart_seeds) s = master.next();
  }
  std::vector<long> shares(static_cast<std::size_t>(cfg.restarts), remaining / cfg.restarts);
  for (long i = 0; i < remaining % cfg.restarts; ++i) ++shares[static_cast<std::size_t>(i)];

  std::vector<SlotResult> slots(static_cast<std::size_t>(cfg.restarts));
  if (found_params.empty() && remaining > 0) {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= cfg.restarts) return;
        slots[static_cast<std::size_t>(i)] =
            run_restart(cfg, restart_seeds[static_cast<std::size_t>(i)],
                        shares[static_cast<std::size_t>(i)], metrics_of);
      }
    };
    const int nthreads = std::min(cfg.workers, cfg.restarts);
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(nthreads - 1));
      for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
    }
  }

  bool have_best = !std::isnan(out.objective);
  for (const SlotResult& s : slots) {
    used += s.evaluations;
    if (s.min_feasible < out.min_feasible_objective) {
      out.min_feasible_objective = s.min_feasible;
      out.best_feasible_params = params_of(s.min_feasible_x);
    }
    if (s.evaluations > 0 && (!have_best || s.best_objective < out.objective)) {
      out.objective = s.best_objective;
      out.params = params_of(s.best_x);
      have_best = true;
    }
    if (s.found && found_params.empty()) found_params.push_back(s.found_x);
  }
  out.evaluations = used;
  if (!found_params.empty()) {
    out.outcome = SearchOutcome::Counterexample;
    out.params = params_of(found_params[0]);
  }
  return out;
}

}  // namespace detail

// Searches class-P polynomial coefficients for a p whose hypothesis holds by
// coefficient certificate while the conclusion oracle fails on the grid. For
// the true criterion bounds no such p exists; a diagnostic bound override
// exists to validate that the harness can find violations of a wrong bound.
inline SearchResult falsify(const SearchConfig& cfg) {
  const CriterionSpec spec = detail::search_spec(cfg);
  const double bound = cfg.bound_override.value_or(spec.bound);
  const double threshold = spec.conclusion.alpha;

  auto metrics = [&](const std::vector<double>& x) {
    const PowerSeries p = detail::series_from_params(x);
    const double cert = coefficient_sup_bound(*hypothesis_polynomial(p, spec.expr, spec.alpha));
    const InfEstimate inf = inf_real(
        [&](Complex z) { return eval(p, z, cfg.grid.max_radius()); }, cfg.grid);
    detail::CandidateMetrics m;
    const double excess = std::max(0.0, cert - bound);
    m.objective = (inf.value - threshold) + 100.0 * excess * excess;
    m.qualifies = (spec.strict ? cert < bound : cert <= bound) && inf.value <= threshold;
    return m;
  };

  SearchResult res = detail::run_search(cfg, metrics);
  if (res.outcome == SearchOutcome::Counterexample) {
    const PowerSeries witness = PowerSeries::poly_p(res.params);
    VerdictOptions opts;
    opts.bound_override = cfg.bound_override;
    res.report = check(spec, witness, cfg.grid, opts);
  } else {
    res.outcome = SearchOutcome::NoCounterexample;
  }
  return res;
}

// Minimizes the hypothesis sup estimate subject to conclusion failure
// (inf Re p <= threshold on the grid), via the penalty objective
// sup + 100 max(0, inf - threshold)^2. Feasible objectives never legitimately
// drop below the criterion bound; a dip past bound - 1e-9 is flagged.
inline SearchResult sharpness(const SearchConfig& cfg) {
  const CriterionSpec spec = detail::search_spec(cfg);
  const double bound = cfg.bound_override.value_or(spec.bound);
  const double threshold = spec.conclusion.alpha;
  const double cap = std::max(kDefaultEvalRadiusCap, cfg.grid.max_radius());

  auto metrics = [&](const std::vector<double>& x) {
    const PowerSeries p = detail::series_from_params(x);
    ExprHandle expr(p, spec.expr, spec.alpha, cap);
    const SupEstimate sup = sup_modulus(expr, cfg.grid);
    const InfEstimate inf = inf_real(
        [&](Complex z) { return eval(p, z, cfg.grid.max_radius()); }, cfg.grid);
    detail::CandidateMetrics m;
    const double infeas = std::max(0.0, inf.value - threshold);
    m.objective = sup.value + 100.0 * infeas * infeas;
    if (inf.value <= threshold) m.feasible_sup = sup.value;
    return m;
  };

  SearchResult res = detail::run_search(cfg, metrics);
  res.outcome = SearchOutcome::BestValue;
  res.theorem_consistency_violated = res.min_feasible_objective < bound - 1e-9;
  // report the best feasible point when one was seen; the raw penalized
  // minimum usually sits just inside the infeasible region
  if (!res.best_feasible_params.empty()) {
    res.params = res.best_feasible_params;
    res.objective = res.min_feasible_objective;
    res.constraint_residual = 0.0;
  } else if (!res.params.empty()) {
    const PowerSeries p = PowerSeries::poly_p(res.params);
    const InfEstimate inf = inf_real(
        [&](Complex z) { return eval(p, z, cfg.grid.max_radius()); }, cfg.grid);
    res.constraint_residual = std::max(0.0, inf.value - threshold);
  }
  return res;
}

// Hunts for a p whose conclusion holds with margin >= 0.05 while the T3(alpha)
// hypothesis certifiably fails: a counterexample to reading the implication
// as an equivalence.
inline SearchResult converse_probe(double alpha, const SearchConfig& cfg_in) {
  SearchConfig cfg = cfg_in;
  cfg.criterion = CriterionId::T3;
  cfg.alpha = alpha;
  const CriterionSpec spec = detail::search_spec(cfg);
  const double bound = spec.bound;
  const double threshold = alpha;
  const double cap = std::max(kDefaultEvalRadiusCap, cfg.grid.max_radius());

  auto metrics = [&](const std::vector<double>& x) {
    const PowerSeries p = detail::series_from_params(x);
    ExprHandle expr(p, spec.expr, spec.alpha, cap);
    const SupEstimate sup = sup_modulus(expr, cfg.grid);
    const InfEstimate inf = inf_real(
        [&](Complex z) { return eval(p, z, cfg.grid.max_radius()); }, cfg.grid);
    detail::CandidateMetrics m;
    const double margin_shortfall = std::max(0.0, (threshold + 0.05) - inf.value);
    const double fail_shortfall = std::max(0.0, bound - sup.value);
    m.objective = margin_shortfall + fail_shortfall;
    m.qualifies = margin_shortfall == 0.0 && sup.value >= bound;
    return m;
  };

  SearchResult res = detail::run_search(cfg, metrics);
  if (res.outcome == SearchOutcome::Counterexample) {
    const PowerSeries witness = PowerSeries::poly_p(res.params);
    res.report = check(spec, witness, cfg.grid);
  } else {
    res.outcome = SearchOutcome::NoCounterexample;
  }
  return res;
}

}  // namespace unicrit
