#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unicrit/error.hpp"

namespace unicrit {

using Complex = std::complex<double>;

// Evaluation is restricted to |z| <= cap < 1; the open unit disk is only ever
// probed through radii at or below this cap.
inline constexpr double kDefaultEvalRadiusCap = 1.0 - 0x1p-12;

// A denominator below this modulus marks the sample as singular.
inline constexpr double kSingularThreshold = 1e-14;

enum class Normalization { Raw, ClassA, ClassP };

// Named closed-form families keep their identity so expression evaluators can
// use exact formulas instead of the truncated coefficients.
enum class FamilyKind { Generic, Identity, Koebe, HalfplaneP };

// Truncated complex Taylor series c_0 + c_1 z + ... + c_N z^N.
//
// `exact_polynomial` distinguishes series that ARE the function they stand
// for (polynomials) from truncations of non-polynomial families; only exact
// series are eligible for coefficient-sum certificates.
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<Complex> coeffs,
                       Normalization norm = Normalization::Raw,
                       bool exact = true,
                       FamilyKind family = FamilyKind::Generic)
      : coeffs_(std::move(coeffs)), norm_(norm), exact_(exact), family_(family) {
    if (coeffs_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
    for (const Complex& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("PowerSeries: non-finite coefficient");
    }
    if (norm_ == Normalization::ClassA) {
      if (coeffs_.size() < 2 || coeffs_[0] != Complex(0.0, 0.0) || coeffs_[1] != Complex(1.0, 0.0))
        throw std::invalid_argument("PowerSeries: class-A series needs c0 = 0, c1 = 1");
    }
    if (norm_ == Normalization::ClassP && coeffs_[0] != Complex(1.0, 0.0))
      throw std::invalid_argument("PowerSeries: class-P series needs c0 = 1");
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return (k >= 0 && k <= order()) ? coeffs_[static_cast<std::size_t>(k)] : Complex(0.0, 0.0);
  }
  Normalization normalization() const { return norm_; }
  bool exact_polynomial() const { return exact_; }
  FamilyKind family() const { return family_; }

  // f(z) = z
  static PowerSeries identity(int order = 1) {
    std::vector<Complex> c(static_cast<std::size_t>(std::max(order, 1)) + 1, Complex(0.0, 0.0));
    c[1] = 1.0;
    return PowerSeries(std::move(c), Normalization::ClassA, true, FamilyKind::Identity);
  }

  // z/(1-z)^2 = sum n z^n, truncated
  static PowerSeries koebe(int order) {
    if (order < 1) throw std::invalid_argument("koebe: order must be >= 1");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) c[static_cast<std::size_t>(n)] = static_cast<double>(n);
    return PowerSeries(std::move(c), Normalization::ClassA, false, FamilyKind::Koebe);
  }

  // (1+z)/(1-z) = 1 + 2 sum z^n, truncated
  static PowerSeries halfplane_p(int order) {
    if (order < 0) throw std::invalid_argument("halfplane_p: order must be >= 0");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(2.0, 0.0));
    c[0] = 1.0;
    return PowerSeries(std::move(c), Normalization::ClassP, false, FamilyKind::HalfplaneP);
  }

  // p = 1 + c1 z + c2 z^2 + ...
  static PowerSeries poly_p(std::span<const Complex> tail) {
    std::vector<Complex> c;
    c.reserve(tail.size() + 1);
    c.emplace_back(1.0, 0.0);
    c.insert(c.end(), tail.begin(), tail.end());
    return PowerSeries(std::move(c), Normalization::ClassP, true);
  }

  // f = z + a2 z^2 + ...
  static PowerSeries poly_f(std::span<const Complex> tail) {
    std::vector<Complex> c;
    c.reserve(tail.size() + 2);
    c.emplace_back(0.0, 0.0);
    c.emplace_back(1.0, 0.0);
    c.insert(c.end(), tail.begin(), tail.end());
    return PowerSeries(std::move(c), Normalization::ClassA, true);
  }

  // omega = c1 z + c2 z^2 + ..., omega(0) = 0
  static PowerSeries schwarz_poly(std::span<const Complex> tail) {
    std::vector<Complex> c;
    c.reserve(tail.size() + 1);
    c.emplace_back(0.0, 0.0);
    c.insert(c.end(), tail.begin(), tail.end());
    return PowerSeries(std::move(c), Normalization::Raw, true);
  }

 private:
  std::vector<Complex> coeffs_;
  Normalization norm_;
  bool exact_;
  FamilyKind family_;
};

// Horner evaluation of the truncated polynomial.
inline Complex eval(const PowerSeries& s, Complex z, double radius_cap = kDefaultEvalRadiusCap) {
  if (std::abs(z) > radius_cap * (1.0 + 1e-12))
    throw Error(Errc::EvalOutOfDisk, "|z| exceeds the evaluation cap");
  const auto& c = s.coeffs();
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

inline PowerSeries derivative(const PowerSeries& s) {
  if (s.order() < 1) throw std::invalid_argument("derivative: series order must be >= 1");
  std::vector<Complex> c(static_cast<std::size_t>(s.order()));
  for (int k = 1; k <= s.order(); ++k)
    c[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * s.coeff(k);
  return PowerSeries(std::move(c), Normalization::Raw, s.exact_polynomial());
}

namespace detail {
// Derivative that maps a constant to the zero constant instead of failing;
// internal shim for evaluators that take up to three derivatives.
inline PowerSeries derivative_or_zero(const PowerSeries& s) {
  if (s.order() < 1)
    return PowerSeries({Complex(0.0, 0.0)}, Normalization::Raw, s.exact_polynomial());
  return derivative(s);
}
}  // namespace detail

// Cauchy product truncated at `order`. The constant term of `a` enters each
// convolution sum last so that multiply(s, reciprocal(s, N), N) cancels
// exactly when s has unit constant term.
inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int order) {
  if (order < 0) throw std::invalid_argument("multiply: negative order");
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
  for (int k = 0; k <= order; ++k) {
    Complex acc(0.0, 0.0);
    const int jmax = std::min(k, a.order());
    for (int j = 1; j <= jmax; ++j) {
      if (k - j > b.order()) continue;
      acc += a.coeff(j) * b.coeff(k - j);
    }
    if (k <= b.order()) acc += a.coeff(0) * b.coeff(k);
    c[static_cast<std::size_t>(k)] = acc;
  }
  return PowerSeries(std::move(c), Normalization::Raw, a.exact_polynomial() && b.exact_polynomial());
}

// Series r with multiply(s, r, order) = 1 + O(z^{order+1}).
inline PowerSeries reciprocal(const PowerSeries& s, int order) {
  if (order < 0) throw std::invalid_argument("reciprocal: negative order");
  if (std::abs(s.coeff(0)) < 1e-300)
    throw Error(Errc::ZeroConstantTerm, "reciprocal of a series with vanishing constant term");
  std::vector<Complex> r(static_cast<std::size_t>(order) + 1);
  r[0] = Complex(1.0, 0.0) / s.coeff(0);
  for (int k = 1; k <= order; ++k) {
    Complex acc(0.0, 0.0);
    const int jmax = std::min(k, s.order());
    for (int j = 1; j <= jmax; ++j) acc += s.coeff(j) * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -acc / s.coeff(0);
  }
  return PowerSeries(std::move(r), Normalization::Raw, s.order() == 0 && s.exact_polynomial());
}

inline PowerSeries divide_by_z(const PowerSeries& s) {
  if (s.coeff(0) != Complex(0.0, 0.0))
    throw Error(Errc::NonzeroConstantTerm, "divide_by_z needs c0 = 0");
  if (s.order() == 0)
    return PowerSeries({Complex(0.0, 0.0)}, Normalization::Raw, s.exact_polynomial());
  std::vector<Complex> c(s.coeffs().begin() + 1, s.coeffs().end());
  Normalization norm =
      s.normalization() == Normalization::ClassA ? Normalization::ClassP : Normalization::Raw;
  return PowerSeries(std::move(c), norm, s.exact_polynomial());
}

inline PowerSeries mul_by_z(const PowerSeries& s) {
  std::vector<Complex> c;
  c.reserve(s.coeffs().size() + 1);
  c.emplace_back(0.0, 0.0);
  c.insert(c.end(), s.coeffs().begin(), s.coeffs().end());
  return PowerSeries(std::move(c), Normalization::Raw, s.exact_polynomial());
}

inline PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
  return PowerSeries(std::move(c), Normalization::Raw, a.exact_polynomial() && b.exact_polynomial());
}

inline PowerSeries subtract(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) - b.coeff(k);
  return PowerSeries(std::move(c), Normalization::Raw, a.exact_polynomial() && b.exact_polynomial());
}

inline PowerSeries scale(const PowerSeries& s, Complex factor) {
  std::vector<Complex> c(s.coeffs());
  for (Complex& x : c) x *= factor;
  return PowerSeries(std::move(c), Normalization::Raw, s.exact_polynomial());
}

inline PowerSeries add_constant(const PowerSeries& s, Complex value) {
  std::vector<Complex> c(s.coeffs());
  c[0] += value;
  return PowerSeries(std::move(c), Normalization::Raw, s.exact_polynomial());
}

}  // namespace unicrit
