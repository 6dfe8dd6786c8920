#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <variant>

#include "unicrit/disk_analysis.hpp"
#include "unicrit/power_series.hpp"

namespace unicrit {

// The four origin-normalized functions a class-A source can stand in for:
// p = zf'/f, p = 1 + zf''/f', p = f', p = f/z. Each maps 0 to 1.
enum class Substitution { Ratio, Convexity, Deriv, Ratio0 };

// Hypothesis expressions of the criterion registry. T-expressions act on a
// class-P source directly; the rest act on a class-A source through its
// derivatives.
enum class ExprId {
  T1,     // zp' + p + p^2 - 2
  T2,     // zp' + p - p^2
  T3,     // zp' + ((1+a)p - p^2 - a)/(1-a)
  C1i,    // zf'/f [2 + zf''/f'] - 2
  C1ii,   // z^2 f'''/f' + 4 zf''/f'
  C1iii,  // zf'' + f' + f'^2 - 2
  C1iv,   // f' + (f/z)^2 - 2
  C2i,    // zf'/f [2 - 2 zf'/f + zf''/f']
  C2ii,   // z^2 f'''/f' - 2 [zf''/f']^2
  C2iii,  // zf'' + f' - f'^2
  C2iv,   // f' - (f/z)^2
  Zf,     // -z f(z) (z/f)'' (equals the T2 expression at p = zf'/f)
  R1,     // 1 - zf'/f
  R2,     // zf'/f [4 - 3 zf'/f + zf''/f'] - 1
};

inline bool expr_takes_p(ExprId id) {
  return id == ExprId::T1 || id == ExprId::T2 || id == ExprId::T3;
}

inline bool expr_has_alpha(ExprId id) { return id == ExprId::T3; }

// Expressions that are exact polynomials in z whenever the source is one;
// only these can carry a coefficient-sum certificate.
inline bool expr_polynomial_capable(ExprId id) {
  switch (id) {
    case ExprId::T1:
    case ExprId::T2:
    case ExprId::T3:
    case ExprId::C1iii:
    case ExprId::C1iv:
    case ExprId::C2iii:
    case ExprId::C2iv:
      return true;
    default:
      return false;
  }
}

inline Substitution corollary_substitution(ExprId id) {
  switch (id) {
    case ExprId::C1i:
    case ExprId::C2i:
    case ExprId::Zf:
    case ExprId::R1:
    case ExprId::R2:
      return Substitution::Ratio;
    case ExprId::C1ii:
    case ExprId::C2ii:
      return Substitution::Convexity;
    case ExprId::C1iii:
    case ExprId::C2iii:
      return Substitution::Deriv;
    case ExprId::C1iv:
    case ExprId::C2iv:
      return Substitution::Ratio0;
    default:
      throw std::invalid_argument("corollary_substitution: not a class-A expression");
  }
}

// ---------------------------------------------------------------------------
// Pointwise evaluation of a source series and its derivatives
// ---------------------------------------------------------------------------

// Evaluates a source and up to three derivatives. The named closed-form
// families bypass the truncated coefficients: their rational forms stay
// accurate at the outermost sampling radii where the truncation tail blows up.
class SourceFunction {
 public:
  explicit SourceFunction(PowerSeries s, double radius_cap = kDefaultEvalRadiusCap)
      : s_(std::move(s)),
        d1_(detail::derivative_or_zero(s_)),
        d2_(detail::derivative_or_zero(d1_)),
        d3_(detail::derivative_or_zero(d2_)),
        cap_(radius_cap) {}

  const PowerSeries& series() const { return s_; }
  double radius_cap() const { return cap_; }

  Complex v(Complex z) const {
    switch (s_.family()) {
      case FamilyKind::Koebe: {
        const Complex w = 1.0 - z;
        return z / (w * w);
      }
      case FamilyKind::HalfplaneP:
        return (1.0 + z) / (1.0 - z);
      default:
        return eval(s_, z, cap_);
    }
  }

  Complex d1(Complex z) const {
    switch (s_.family()) {
      case FamilyKind::Koebe: {
        const Complex w = 1.0 - z;
        return (1.0 + z) / (w * w * w);
      }
      case FamilyKind::HalfplaneP: {
        const Complex w = 1.0 - z;
        return 2.0 / (w * w);
      }
      default:
        return eval(d1_, z, cap_);
    }
  }

  Complex d2(Complex z) const {
    switch (s_.family()) {
      case FamilyKind::Koebe: {
        const Complex w = 1.0 - z;
        const Complex w2 = w * w;
        return (4.0 + 2.0 * z) / (w2 * w2);
      }
      case FamilyKind::HalfplaneP: {
        const Complex w = 1.0 - z;
        return 4.0 / (w * w * w);
      }
      default:
        return eval(d2_, z, cap_);
    }
  }

  Complex d3(Complex z) const {
    switch (s_.family()) {
      case FamilyKind::Koebe: {
        const Complex w = 1.0 - z;
        const Complex w2 = w * w;
        return (18.0 + 6.0 * z) / (w2 * w2 * w);
      }
      case FamilyKind::HalfplaneP: {
        const Complex w = 1.0 - z;
        const Complex w2 = w * w;
        return 12.0 / (w2 * w2);
      }
      default:
        return eval(d3_, z, cap_);
    }
  }

  // true when the family's own closed form has a pole within threshold of z
  bool pole_near(Complex z) const {
    if (s_.family() == FamilyKind::Koebe || s_.family() == FamilyKind::HalfplaneP)
      return std::abs(1.0 - z) < kSingularThreshold;
    return false;
  }

 private:
  PowerSeries s_, d1_, d2_, d3_;
  double cap_;
};

// ---------------------------------------------------------------------------
// p and z p' as pointwise functions
// ---------------------------------------------------------------------------

// A pointwise p with p(0) = 1, either a class-P series directly or one of the
// four substitutions of a class-A series. z p' comes from exact quotient-rule
// formulas on the evaluated derivatives, never from numerical differentiation.
class CaratheodoryFn {
 public:
  static CaratheodoryFn from_p(PowerSeries p, double radius_cap = kDefaultEvalRadiusCap) {
    if (p.normalization() != Normalization::ClassP)
      throw Error(Errc::InputKindMismatch, "expected a class-P series");
    return CaratheodoryFn(SourceFunction(std::move(p), radius_cap), false, Substitution::Ratio);
  }

  static CaratheodoryFn from_f(PowerSeries f, Substitution sub,
                               double radius_cap = kDefaultEvalRadiusCap) {
    if (f.normalization() != Normalization::ClassA)
      throw Error(Errc::InputKindMismatch, "expected a class-A series");
    return CaratheodoryFn(SourceFunction(std::move(f), radius_cap), true, sub);
  }

  bool from_class_a() const { return from_a_; }
  Substitution substitution() const { return sub_; }
  const SourceFunction& source() const { return src_; }

  // exact polynomial p, usable for coefficient arithmetic
  bool polynomial() const { return !from_a_ && src_.series().exact_polynomial(); }

  EvalSample value(Complex z) const {
    if (!from_a_) {
      if (src_.pole_near(z)) return {{}, true};
      return {src_.v(z), false};
    }
    switch (sub_) {
      case Substitution::Ratio: {
        if (z == Complex(0.0, 0.0)) return {Complex(1.0, 0.0), false};
        const Complex f = src_.v(z);
        if (std::abs(f) < kSingularThreshold || src_.pole_near(z)) return {{}, true};
        return {z * src_.d1(z) / f, false};
      }
      case Substitution::Convexity: {
        const Complex f1 = src_.d1(z);
        if (std::abs(f1) < kSingularThreshold || src_.pole_near(z)) return {{}, true};
        return {1.0 + z * src_.d2(z) / f1, false};
      }
      case Substitution::Deriv:
        if (src_.pole_near(z)) return {{}, true};
        return {src_.d1(z), false};
      default: {  // Ratio0
        if (src_.pole_near(z)) return {{}, true};
        if (z == Complex(0.0, 0.0)) return {src_.series().coeff(1), false};
        return {src_.v(z) / z, false};
      }
    }
  }

  EvalSample z_deriv(Complex z) const {
    if (!from_a_) {
      if (src_.pole_near(z)) return {{}, true};
      return {z * src_.d1(z), false};
    }
    switch (sub_) {
      case Substitution::Ratio: {
        // zp' = p (1 + zf''/f' - p)
        const EvalSample p = value(z);
        if (p.singular) return p;
        const Complex f1 = src_.d1(z);
        if (std::abs(f1) < kSingularThreshold) return {{}, true};
        const Complex b = z * src_.d2(z) / f1;
        return {p.value * (1.0 + b - p.value), false};
      }
      case Substitution::Convexity: {
        // zp' = q + z^2 f'''/f' - q^2 with q = zf''/f'
        const Complex f1 = src_.d1(z);
        if (std::abs(f1) < kSingularThreshold || src_.pole_near(z)) return {{}, true};
        const Complex q = z * src_.d2(z) / f1;
        return {q + z * z * src_.d3(z) / f1 - q * q, false};
      }
      case Substitution::Deriv:
        if (src_.pole_near(z)) return {{}, true};
        return {z * src_.d2(z), false};
      default: {  // Ratio0: zp' = f' - f/z
        const EvalSample p = value(z);
        if (p.singular) return p;
        return {src_.d1(z) - p.value, false};
      }
    }
  }

 private:
  CaratheodoryFn(SourceFunction src, bool from_a, Substitution sub)
      : src_(std::move(src)), from_a_(from_a), sub_(sub) {}

  SourceFunction src_;
  bool from_a_;
  Substitution sub_;
};

inline CaratheodoryFn build_p(PowerSeries f, Substitution sub,
                              double radius_cap = kDefaultEvalRadiusCap) {
  return CaratheodoryFn::from_f(std::move(f), sub, radius_cap);
}

// ---------------------------------------------------------------------------
// Criterion hypothesis expressions, pointwise
// ---------------------------------------------------------------------------

// zp' + p + p^2 - 2 (family 1), zp' + p - p^2 (family 2), or the order-alpha
// functional (family 3). Family 3 at alpha = 0 reproduces family 2 bit for
// bit: multiplying by 1+alpha, subtracting alpha and dividing by 1-alpha are
// all exact when alpha is 0.
class TheoremExpr {
 public:
  TheoremExpr(CaratheodoryFn p, int family, double alpha)
      : p_(std::move(p)), family_(family), alpha_(alpha) {}

  const CaratheodoryFn& p() const { return p_; }
  int family() const { return family_; }
  double alpha() const { return alpha_; }

  EvalSample operator()(Complex z) const {
    const EvalSample sp = p_.value(z);
    const EvalSample sd = p_.z_deriv(z);
    if (sp.singular || sd.singular) return {{}, true};
    const Complex p = sp.value;
    const Complex zd = sd.value;
    switch (family_) {
      case 1:
        return {zd + p + p * p - 2.0, false};
      case 2:
        return {zd + (p - p * p), false};
      default:
        return {zd + (((1.0 + alpha_) * p - p * p) - alpha_) / (1.0 - alpha_), false};
    }
  }

 private:
  CaratheodoryFn p_;
  int family_;
  double alpha_;
};

inline TheoremExpr lhs_t1(CaratheodoryFn p) { return TheoremExpr(std::move(p), 1, 0.0); }
inline TheoremExpr lhs_t2(CaratheodoryFn p) { return TheoremExpr(std::move(p), 2, 0.0); }
inline TheoremExpr lhs_t3(CaratheodoryFn p, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::BadAlpha, "alpha must lie in [0,1)");
  return TheoremExpr(std::move(p), 3, alpha);
}

// Direct evaluation of a class-A hypothesis expression from f and its
// derivatives, without routing through a substitution. This is the
// cross-check counterpart of build_p composed with a TheoremExpr.
class CorollaryExpr {
 public:
  CorollaryExpr(PowerSeries f, ExprId which, double radius_cap = kDefaultEvalRadiusCap)
      : f_(std::move(f), radius_cap), id_(which) {
    if (expr_takes_p(which))
      throw std::invalid_argument("CorollaryExpr: expression takes a class-P source");
    if (f_.series().normalization() != Normalization::ClassA)
      throw Error(Errc::InputKindMismatch, "expected a class-A series");
  }

  ExprId id() const { return id_; }
  const SourceFunction& source() const { return f_; }

  EvalSample operator()(Complex z) const {
    if (f_.pole_near(z)) return {{}, true};
    const bool origin = z == Complex(0.0, 0.0);
    switch (id_) {
      case ExprId::C1i: {
        if (origin) return {Complex(0.0, 0.0), false};
        const Complex f = f_.v(z), f1 = f_.d1(z);
        if (std::abs(f) < kSingularThreshold || std::abs(f1) < kSingularThreshold)
          return {{}, true};
        const Complex a = z * f1 / f;
        const Complex b = z * f_.d2(z) / f1;
        return {a * (2.0 + b) - 2.0, false};
      }
      case ExprId::C1ii: {
        const Complex f1 = f_.d1(z);
        if (std::abs(f1) < kSingularThreshold) return {{}, true};
        return {z * z * f_.d3(z) / f1 + 4.0 * (z * f_.d2(z) / f1), false};
      }
      case ExprId::C1iii: {
        const Complex f1 = f_.d1(z);
        return {z * f_.d2(z) + f1 + f1 * f1 - 2.0, false};
      }
      case ExprId::C1iv: {
        const Complex q = origin ? f_.series().coeff(1) : f_.v(z) / z;
        return {f_.d1(z) + q * q - 2.0, false};
      }
      case ExprId::C2i: {
        if (origin) return {Complex(0.0, 0.0), false};
        const Complex f = f_.v(z), f1 = f_.d1(z);
        if (std::abs(f) < kSingularThreshold || std::abs(f1) < kSingularThreshold)
          return {{}, true};
        const Complex a = z * f1 / f;
        const Complex b = z * f_.d2(z) / f1;
        return {a * (2.0 - 2.0 * a + b), false};
      }
      case ExprId::C2ii: {
        const Complex f1 = f_.d1(z);
        if (std::abs(f1) < kSingularThreshold) return {{}, true};
        const Complex b = z * f_.d2(z) / f1;
        return {z * z * f_.d3(z) / f1 - 2.0 * b * b, false};
      }
      case ExprId::C2iii: {
        const Complex f1 = f_.d1(z);
        return {z * f_.d2(z) + f1 - f1 * f1, false};
      }
      case ExprId::C2iv: {
        const Complex q = origin ? f_.series().coeff(1) : f_.v(z) / z;
        return {f_.d1(z) - q * q, false};
      }
      case ExprId::Zf: {
        // -z f (z/f)'' by the quotient rule:
        // (z/f)'' = [-z f'' f - 2 f'(f - z f')] / f^3
        if (origin) return {Complex(0.0, 0.0), false};
        const Complex f = f_.v(z);
        if (std::abs(f) < kSingularThreshold) return {{}, true};
        const Complex f1 = f_.d1(z);
        return {(z * z * f_.d2(z) * f + 2.0 * z * f1 * (f - z * f1)) / (f * f), false};
      }
      case ExprId::R1: {
        if (origin) return {Complex(0.0, 0.0), false};
        const Complex f = f_.v(z);
        if (std::abs(f) < kSingularThreshold) return {{}, true};
        return {1.0 - z * f_.d1(z) / f, false};
      }
      case ExprId::R2: {
        if (origin) return {Complex(0.0, 0.0), false};
        const Complex f = f_.v(z), f1 = f_.d1(z);
        if (std::abs(f) < kSingularThreshold || std::abs(f1) < kSingularThreshold)
          return {{}, true};
        const Complex a = z * f1 / f;
        const Complex b = z * f_.d2(z) / f1;
        return {a * (4.0 + b - 3.0 * a) - 1.0, false};
      }
      default:
        throw std::invalid_argument("CorollaryExpr: unsupported expression");
    }
  }

 private:
  SourceFunction f_;
  ExprId id_;
};

inline CorollaryExpr lhs_corollary(PowerSeries f, ExprId which,
                                   double radius_cap = kDefaultEvalRadiusCap) {
  return CorollaryExpr(std::move(f), which, radius_cap);
}

// ---------------------------------------------------------------------------
// The two identities of the registry, as independently evaluated pairs
// ---------------------------------------------------------------------------

using PointFn = std::function<EvalSample(Complex)>;

struct PointwisePair {
  PointFn a;
  PointFn b;
};

// zp' + p - p^2 at p = zf'/f (route a) against -z f (z/f)'' (route b).
inline PointwisePair identity_zf(const PowerSeries& f,
                                 double radius_cap = kDefaultEvalRadiusCap) {
  TheoremExpr a = lhs_t2(build_p(f, Substitution::Ratio, radius_cap));
  CorollaryExpr b(f, ExprId::Zf, radius_cap);
  return {PointFn(std::move(a)), PointFn(std::move(b))};
}

// f (z/f)' (route a) against 1 - zf'/f (route b); equal wherever f != 0.
inline PointwisePair remark_identity(const PowerSeries& f,
                                     double radius_cap = kDefaultEvalRadiusCap) {
  SourceFunction src(f, radius_cap);
  PointFn a = [src](Complex z) -> EvalSample {
    if (z == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), false};
    if (src.pole_near(z)) return {{}, true};
    const Complex fv = src.v(z);
    if (std::abs(fv) < kSingularThreshold) return {{}, true};
    return {fv * ((fv - z * src.d1(z)) / (fv * fv)), false};
  };
  CorollaryExpr b(f, ExprId::R1, radius_cap);
  return {std::move(a), PointFn(std::move(b))};
}

// ---------------------------------------------------------------------------
// Exact coefficient forms for certificates
// ---------------------------------------------------------------------------

// Coefficients of the hypothesis expression as an exact polynomial, when the
// source is an exact polynomial and the expression stays polynomial in z.
inline std::optional<PowerSeries> hypothesis_polynomial(const PowerSeries& src, ExprId id,
                                                        double alpha = 0.0) {
  if (!src.exact_polynomial() || !expr_polynomial_capable(id)) return std::nullopt;
  if (expr_takes_p(id)) {
    if (src.normalization() != Normalization::ClassP) return std::nullopt;
    const int d = src.order();
    if (d == 0) return PowerSeries({Complex(0.0, 0.0)});  // p = 1: every T-expression is 0
    const PowerSeries zd = mul_by_z(derivative(src));
    const PowerSeries p2 = multiply(src, src, 2 * d);
    switch (id) {
      case ExprId::T1:
        return add_constant(add(add(zd, src), p2), Complex(-2.0, 0.0));
      case ExprId::T2:
        return add(zd, subtract(src, p2));
      default: {  // T3
        if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::BadAlpha, "alpha must lie in [0,1)");
        std::vector<Complex> c(static_cast<std::size_t>(2 * d) + 1);
        for (int k = 0; k <= 2 * d; ++k) {
          const Complex num =
              ((1.0 + alpha) * src.coeff(k) - p2.coeff(k)) - (k == 0 ? alpha : 0.0);
          c[static_cast<std::size_t>(k)] = zd.coeff(k) + num / (1.0 - alpha);
        }
        return PowerSeries(std::move(c));
      }
    }
  }
  if (src.normalization() != Normalization::ClassA) return std::nullopt;
  const int d = src.order();
  const PowerSeries f1 = derivative(src);
  const PowerSeries f1sq = multiply(f1, f1, 2 * std::max(d - 1, 0));
  switch (id) {
    case ExprId::C1iii:
      return add_constant(add(add(mul_by_z(detail::derivative_or_zero(f1)), f1), f1sq),
                          Complex(-2.0, 0.0));
    case ExprId::C2iii:
      return add(mul_by_z(detail::derivative_or_zero(f1)), subtract(f1, f1sq));
    case ExprId::C1iv: {
      const PowerSeries q = divide_by_z(src);
      return add_constant(add(f1, multiply(q, q, 2 * std::max(d - 1, 0))), Complex(-2.0, 0.0));
    }
    default: {  // C2iv
      const PowerSeries q = divide_by_z(src);
      return subtract(f1, multiply(q, q, 2 * std::max(d - 1, 0)));
    }
  }
}

// ---------------------------------------------------------------------------
// Unified handle used by the criterion runner
// ---------------------------------------------------------------------------

class ExprHandle {
 public:
  ExprHandle(PowerSeries source, ExprId id, double alpha = 0.0,
             double radius_cap = kDefaultEvalRadiusCap)
      : impl_(make_impl(std::move(source), id, alpha, radius_cap)),
        id_(id),
        alpha_(alpha) {
    const PowerSeries& s = expr_takes_p(id)
                               ? std::get<TheoremExpr>(impl_).p().source().series()
                               : std::get<CorollaryExpr>(impl_).source().series();
    poly_ = hypothesis_polynomial(s, id, alpha);
  }

  EvalSample operator()(Complex z) const {
    if (const auto* t = std::get_if<TheoremExpr>(&impl_)) return (*t)(z);
    return std::get<CorollaryExpr>(impl_)(z);
  }

  ExprId id() const { return id_; }
  double alpha() const { return alpha_; }
  const std::optional<PowerSeries>& polynomial_form() const { return poly_; }

 private:
  static std::variant<TheoremExpr, CorollaryExpr> make_impl(PowerSeries source, ExprId id,
                                                            double alpha, double cap) {
    if (expr_takes_p(id)) {
      CaratheodoryFn p = CaratheodoryFn::from_p(std::move(source), cap);
      switch (id) {
        case ExprId::T1: return lhs_t1(std::move(p));
        case ExprId::T2: return lhs_t2(std::move(p));
        default: return lhs_t3(std::move(p), alpha);
      }
    }
    if (alpha != 0.0) throw Error(Errc::BadAlpha, "alpha applies only to the T3 expression");
    return CorollaryExpr(std::move(source), id, cap);
  }

  std::variant<TheoremExpr, CorollaryExpr> impl_;
  ExprId id_;
  double alpha_;
  std::optional<PowerSeries> poly_;
};

}  // namespace unicrit
