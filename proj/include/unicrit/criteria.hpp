#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unicrit/disk_analysis.hpp"
#include "unicrit/numfmt.hpp"
#include "unicrit/power_series.hpp"
#include "unicrit/transforms.hpp"

namespace unicrit {

enum class CriterionId { T1, T2, T3, C1i, C1ii, C1iii, C1iv, C2i, C2ii, C2iii, C2iv, Tzf, R1, R2 };

enum class InputKind { PFunction, AFunction };

enum class OracleKind { RePGreater, Starlike, Convex, BoundedTurning, ReFOverZ };

struct OracleId {
  OracleKind kind = OracleKind::RePGreater;
  double alpha = 0.0;  // order for RePGreater / Starlike / Convex
};

inline std::string oracle_id_string(const OracleId& o) {
  switch (o.kind) {
    case OracleKind::RePGreater: return "RE_P_GT:alpha=" + format_double(o.alpha);
    case OracleKind::Starlike: return "STARLIKE:alpha=" + format_double(o.alpha);
    case OracleKind::Convex: return "CONVEX:alpha=" + format_double(o.alpha);
    case OracleKind::BoundedTurning: return "BOUNDED_TURNING";
    case OracleKind::ReFOverZ: return "RE_F_OVER_Z";
  }
  return "?";
}

// One registry entry: a hypothesis expression with its bound and strictness,
// plus the conclusion oracle the implication promises.
struct CriterionSpec {
  CriterionId id = CriterionId::T1;
  double alpha = 0.0;  // T3 family parameter
  InputKind input = InputKind::PFunction;
  ExprId expr = ExprId::T1;
  double bound = 2.5;
  bool strict = true;
  OracleId conclusion;

  std::string name() const {
    switch (id) {
      case CriterionId::T1: return "T1";
      case CriterionId::T2: return "T2";
      case CriterionId::T3: return "T3:alpha=" + format_double(alpha);
      case CriterionId::C1i: return "C1.i";
      case CriterionId::C1ii: return "C1.ii";
      case CriterionId::C1iii: return "C1.iii";
      case CriterionId::C1iv: return "C1.iv";
      case CriterionId::C2i: return "C2.i";
      case CriterionId::C2ii: return "C2.ii";
      case CriterionId::C2iii: return "C2.iii";
      case CriterionId::C2iv: return "C2.iv";
      case CriterionId::Tzf: return "TZF";
      case CriterionId::R1: return "R1";
      case CriterionId::R2: return "R2";
    }
    return "?";
  }
};

// T3 instance: bound (1-alpha)/2, conclusion Re p > alpha. At alpha = 0 it
// behaves exactly like T2.
inline CriterionSpec make_t3(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::BadAlpha, "alpha must lie in [0,1)");
  return CriterionSpec{CriterionId::T3, alpha, InputKind::PFunction, ExprId::T3,
                       (1.0 - alpha) / 2.0, true, OracleId{OracleKind::RePGreater, alpha}};
}

// The thirteen fixed criteria, in stable order. T3 instances come from
// make_t3.
inline std::vector<CriterionSpec> list_criteria() {
  using C = CriterionId;
  using E = ExprId;
  using O = OracleKind;
  std::vector<CriterionSpec> v;
  auto push = [&](C id, InputKind in, E e, double bound, bool strict, O ok, double oa) {
    v.push_back(CriterionSpec{id, 0.0, in, e, bound, strict, OracleId{ok, oa}});
  };
  push(C::T1, InputKind::PFunction, E::T1, 2.5, true, O::RePGreater, 0.0);
  push(C::T2, InputKind::PFunction, E::T2, 0.5, true, O::RePGreater, 0.0);
  push(C::C1i, InputKind::AFunction, E::C1i, 2.5, true, O::Starlike, 0.0);
  push(C::C1ii, InputKind::AFunction, E::C1ii, 2.5, true, O::Convex, 0.0);
  push(C::C1iii, InputKind::AFunction, E::C1iii, 2.5, true, O::BoundedTurning, 0.0);
  push(C::C1iv, InputKind::AFunction, E::C1iv, 2.5, true, O::ReFOverZ, 0.0);
  push(C::C2i, InputKind::AFunction, E::C2i, 0.5, true, O::Starlike, 0.0);
  push(C::C2ii, InputKind::AFunction, E::C2ii, 0.5, true, O::Convex, 0.0);
  push(C::C2iii, InputKind::AFunction, E::C2iii, 0.5, true, O::BoundedTurning, 0.0);
  push(C::C2iv, InputKind::AFunction, E::C2iv, 0.5, true, O::ReFOverZ, 0.0);
  push(C::Tzf, InputKind::AFunction, E::Zf, 0.5, false, O::Starlike, 0.0);
  push(C::R1, InputKind::AFunction, E::R1, 1.0, true, O::Starlike, 0.0);
  push(C::R2, InputKind::AFunction, E::R2, 0.25, true, O::Starlike, 0.5);
  return v;
}

// Resolves "T1", "C2.iii", "TZF", "T3:alpha=0.25", ... (T3 needs an alpha,
// inline or supplied separately).
inline std::optional<CriterionSpec> criterion_from_string(std::string_view name,
                                                          std::optional<double> alpha = {}) {
  constexpr std::string_view t3_prefix = "T3:alpha=";
  if (name.rfind(t3_prefix, 0) == 0) {
    const std::string tail(name.substr(t3_prefix.size()));
    char* end = nullptr;
    const double a = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str() || *end != '\0') return std::nullopt;
    return make_t3(a);
  }
  if (name == "T3") {
    if (!alpha) return std::nullopt;
    return make_t3(*alpha);
  }
  for (const CriterionSpec& c : list_criteria())
    if (c.name() == name) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Conclusion oracles
// ---------------------------------------------------------------------------

namespace detail {

struct OracleExpr {
  SourceFunction src;
  OracleKind kind;

  EvalSample operator()(Complex z) const {
    if (src.pole_near(z)) return {{}, true};
    switch (kind) {
      case OracleKind::RePGreater:
        return {src.v(z), false};
      case OracleKind::Starlike: {
        if (z == Complex(0.0, 0.0)) return {Complex(1.0, 0.0), false};
        const Complex f = src.v(z);
        if (std::abs(f) < kSingularThreshold) return {{}, true};
        return {z * src.d1(z) / f, false};
      }
      case OracleKind::Convex: {
        const Complex f1 = src.d1(z);
        if (std::abs(f1) < kSingularThreshold) return {{}, true};
        return {1.0 + z * src.d2(z) / f1, false};
      }
      case OracleKind::BoundedTurning:
        return {src.d1(z), false};
      default:  // ReFOverZ
        if (z == Complex(0.0, 0.0)) return {src.series().coeff(1), false};
        return {src.v(z) / z, false};
    }
  }
};

}  // namespace detail

enum class OracleResult { HoldsNumerically, CertifiedFail };

struct OracleReport {
  OracleId id;
  OracleResult result = OracleResult::HoldsNumerically;
  double inf_re = 0.0;
  Complex witness{0.0, 0.0};
  long singular_samples = 0;
};

// Samples the oracle's defining expression; any sample at or below the
// order threshold certifies refutation of the strict inequality.
inline OracleReport run_oracle(const OracleId& o, const PowerSeries& input, const DiskGrid& grid) {
  const bool wants_p = o.kind == OracleKind::RePGreater;
  if (wants_p && input.normalization() != Normalization::ClassP)
    throw Error(Errc::InputKindMismatch, "oracle expects a class-P series");
  if (!wants_p && input.normalization() != Normalization::ClassA)
    throw Error(Errc::InputKindMismatch, "oracle expects a class-A series");

  const double cap = std::max(kDefaultEvalRadiusCap, grid.max_radius());
  detail::OracleExpr expr{SourceFunction(input, cap), o.kind};
  const InfEstimate inf = inf_real(expr, grid);

  const double threshold = (o.kind == OracleKind::RePGreater || o.kind == OracleKind::Starlike ||
                            o.kind == OracleKind::Convex)
                               ? o.alpha
                               : 0.0;
  OracleReport rep;
  rep.id = o;
  rep.inf_re = inf.value;
  rep.witness = inf.witness;
  rep.singular_samples = inf.singular_samples;
  rep.result = inf.value <= threshold ? OracleResult::CertifiedFail : OracleResult::HoldsNumerically;
  return rep;
}

// ---------------------------------------------------------------------------
// Criterion check
// ---------------------------------------------------------------------------

enum class HypothesisVerdict { CertifiedHold, NumericallyHolds, Inconclusive, CertifiedFail };
enum class Consistency { Consistent, Violation, Vacuous };

struct HypothesisReport {
  HypothesisVerdict verdict = HypothesisVerdict::Inconclusive;
  double sup = 0.0;
  Complex witness{0.0, 0.0};
  long singular_samples = 0;
  std::optional<double> certificate;  // coefficient-sum bound, when computable
  std::vector<std::pair<double, double>> per_radius_max;
};

struct CheckReport {
  CriterionSpec spec;
  double bound = 0.0;  // the bound the verdict used (override-aware)
  HypothesisReport hypothesis;
  OracleReport oracle;
  Consistency consistency = Consistency::Consistent;
};

struct VerdictOptions {
  // NUMERICALLY_HOLDS needs sup <= bound * (1 - margin_fraction) and a
  // stabilized per-radius trend (last two maxima within a quarter margin).
  double margin_fraction = 0.02;
  // Diagnostic bound replacement for harness validation; also disables the
  // certified-violation abort, since the bound is no longer the criterion's.
  std::optional<double> bound_override;
};

// A certified hypothesis together with a certified conclusion failure would
// contradict the implication itself; check() aborts by throwing this.
class CertifiedViolationError : public Error {
 public:
  explicit CertifiedViolationError(CheckReport rep)
      : Error(Errc::BadDomain,
              "certified hypothesis with refuted conclusion for " + rep.spec.name()),
        report(std::move(rep)) {}
  CheckReport report;
};

inline CheckReport check(const CriterionSpec& c, const PowerSeries& input, const DiskGrid& grid,
                         const VerdictOptions& opts = {}) {
  if (c.input == InputKind::PFunction && input.normalization() != Normalization::ClassP)
    throw Error(Errc::InputKindMismatch, c.name() + " expects a class-P series");
  if (c.input == InputKind::AFunction && input.normalization() != Normalization::ClassA)
    throw Error(Errc::InputKindMismatch, c.name() + " expects a class-A series");

  CheckReport rep;
  rep.spec = c;
  rep.bound = opts.bound_override.value_or(c.bound);

  const double cap = std::max(kDefaultEvalRadiusCap, grid.max_radius());
  ExprHandle expr(input, c.expr, c.alpha, cap);

  bool all_singular = false;
  SupEstimate se;
  try {
    se = sup_modulus(expr, grid);
  } catch (const Error& e) {
    if (e.code() != Errc::AllSingular) throw;
    all_singular = true;
    se.value = std::numeric_limits<double>::quiet_NaN();
    se.singular_samples = grid.total_samples();
  }
  rep.hypothesis.sup = se.value;
  rep.hypothesis.witness = se.witness;
  rep.hypothesis.singular_samples = se.singular_samples;
  rep.hypothesis.per_radius_max = se.per_radius_max;
  if (expr.polynomial_form())
    rep.hypothesis.certificate = coefficient_sup_bound(*expr.polynomial_form());

  const double bound = rep.bound;
  if (all_singular) {
    rep.hypothesis.verdict = HypothesisVerdict::Inconclusive;
  } else if (c.strict ? se.value >= bound : se.value > bound) {
    rep.hypothesis.verdict = HypothesisVerdict::CertifiedFail;
  } else if (rep.hypothesis.certificate &&
             (c.strict ? *rep.hypothesis.certificate < bound
                       : *rep.hypothesis.certificate <= bound)) {
    rep.hypothesis.verdict = HypothesisVerdict::CertifiedHold;
  } else {
    const double margin = opts.margin_fraction * bound;
    const auto& prm = se.per_radius_max;
    const bool stable =
        prm.size() >= 2 && std::abs(prm.back().second - prm[prm.size() - 2].second) < margin / 4.0;
    if (se.singular_samples == 0 && se.value <= bound - margin && stable)
      rep.hypothesis.verdict = HypothesisVerdict::NumericallyHolds;
    else
      rep.hypothesis.verdict = HypothesisVerdict::Inconclusive;
  }

  rep.oracle = run_oracle(c.conclusion, input, grid);

  const bool hyp_holds = rep.hypothesis.verdict == HypothesisVerdict::CertifiedHold ||
                         rep.hypothesis.verdict == HypothesisVerdict::NumericallyHolds;
  if (hyp_holds && rep.oracle.result == OracleResult::CertifiedFail)
    rep.consistency = Consistency::Violation;
  else if (rep.hypothesis.verdict == HypothesisVerdict::CertifiedFail)
    rep.consistency = Consistency::Vacuous;
  else
    rep.consistency = Consistency::Consistent;

  if (rep.consistency == Consistency::Violation &&
      rep.hypothesis.verdict == HypothesisVerdict::CertifiedHold && !opts.bound_override)
    throw CertifiedViolationError(rep);
  return rep;
}

inline const char* verdict_name(HypothesisVerdict v) {
  switch (v) {
    case HypothesisVerdict::CertifiedHold: return "CERTIFIED_HOLD";
    case HypothesisVerdict::NumericallyHolds: return "NUMERICALLY_HOLDS";
    case HypothesisVerdict::Inconclusive: return "INCONCLUSIVE";
    case HypothesisVerdict::CertifiedFail: return "CERTIFIED_FAIL";
  }
  return "?";
}

inline const char* oracle_result_name(OracleResult r) {
  return r == OracleResult::HoldsNumerically ? "HOLDS_NUMERICALLY" : "CERTIFIED_FAIL";
}

inline const char* consistency_name(Consistency c) {
  switch (c) {
    case Consistency::Consistent: return "CONSISTENT";
    case Consistency::Violation: return "VIOLATION";
    case Consistency::Vacuous: return "VACUOUS";
  }
  return "?";
}

}  // namespace unicrit
