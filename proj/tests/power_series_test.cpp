#include "unicrit/power_series.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "unicrit/search.hpp"

namespace {

using unicrit::Complex;
using unicrit::PowerSeries;

TEST(PowerSeries, InvariantsEnforced) {
  EXPECT_THROW(PowerSeries({}, unicrit::Normalization::Raw), std::invalid_argument);
  EXPECT_THROW(PowerSeries({Complex(0.5, 0)}, unicrit::Normalization::ClassP),
               std::invalid_argument);
  EXPECT_THROW(PowerSeries({Complex(0, 0), Complex(2, 0)}, unicrit::Normalization::ClassA),
               std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(PowerSeries({Complex(inf, 0)}), std::invalid_argument);
}

TEST(Eval, IdentityAtHalf) {
  const PowerSeries f = PowerSeries::identity(64);
  EXPECT_EQ(unicrit::eval(f, Complex(0.5, 0)), Complex(0.5, 0));
}

TEST(Eval, KoebeAtHalfMatchesClosedForm) {
  // z/(1-z)^2 at z = 0.5 is 2; the N = 64 truncation tail is far below 1e-15
  const PowerSeries k = PowerSeries::koebe(64);
  EXPECT_NEAR(std::abs(unicrit::eval(k, Complex(0.5, 0)) - Complex(2.0, 0)), 0.0, 1e-15);
}

TEST(Eval, HalfplaneAtHalfI) {
  // (1+z)/(1-z) at z = i/2 is 0.6 + 0.8i
  const PowerSeries p = PowerSeries::halfplane_p(64);
  const Complex v = unicrit::eval(p, Complex(0, 0.5));
  EXPECT_NEAR(std::abs(v - Complex(0.6, 0.8)), 0.0, 1e-15);
}

TEST(Eval, RejectsPointsBeyondCap) {
  const PowerSeries f = PowerSeries::identity(4);
  EXPECT_THROW(unicrit::eval(f, Complex(0.9999, 0)), unicrit::Error);
  try {
    unicrit::eval(f, Complex(1.5, 0));
    FAIL();
  } catch (const unicrit::Error& e) {
    EXPECT_EQ(e.code(), unicrit::Errc::EvalOutOfDisk);
  }
}

TEST(Derivative, SimpleCases) {
  const PowerSeries f = PowerSeries::identity(1);
  const PowerSeries df = unicrit::derivative(f);
  EXPECT_EQ(df.order(), 0);
  EXPECT_EQ(df.coeff(0), Complex(1, 0));

  const PowerSeries p = PowerSeries::poly_p(std::vector<Complex>{Complex(0.5, 0)});
  const PowerSeries dp = unicrit::derivative(p);
  EXPECT_EQ(dp.coeff(0), Complex(0.5, 0));
}

TEST(Derivative, KoebeTermByTerm) {
  const PowerSeries k = PowerSeries::koebe(8);
  const PowerSeries dk = unicrit::derivative(k);
  for (int n = 1; n <= 8; ++n)
    EXPECT_EQ(dk.coeff(n - 1), Complex(static_cast<double>(n) * n, 0));
}

TEST(Derivative, RequiresOrderAtLeastOne) {
  const PowerSeries c({Complex(1, 0)});
  EXPECT_THROW(unicrit::derivative(c), std::invalid_argument);
}

TEST(Multiply, UnitAndBinomials) {
  const PowerSeries one({Complex(1, 0)});
  const PowerSeries onez({Complex(1, 0), Complex(1, 0)});
  const PowerSeries prod = unicrit::multiply(one, onez, 4);
  EXPECT_EQ(prod.coeff(0), Complex(1, 0));
  EXPECT_EQ(prod.coeff(1), Complex(1, 0));
  EXPECT_EQ(prod.coeff(2), Complex(0, 0));

  const PowerSeries minusz({Complex(1, 0), Complex(-1, 0)});
  const PowerSeries q = unicrit::multiply(onez, minusz, 4);
  EXPECT_EQ(q.coeff(0), Complex(1, 0));
  EXPECT_EQ(q.coeff(1), Complex(0, 0));
  EXPECT_EQ(q.coeff(2), Complex(-1, 0));
}

TEST(Multiply, HalfplaneSquared) {
  const PowerSeries h = PowerSeries::halfplane_p(8);
  const PowerSeries sq = unicrit::multiply(h, h, 4);
  const double expected[] = {1, 4, 8, 12, 16};
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(sq.coeff(k), Complex(expected[k], 0));
}

TEST(Reciprocal, GeometricSeries) {
  const PowerSeries s({Complex(1, 0), Complex(-1, 0)});
  const PowerSeries r = unicrit::reciprocal(s, 4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(r.coeff(k), Complex(1, 0));
}

TEST(Reciprocal, KoebeOverZ) {
  // z/k(z) = (1-z)^2
  const PowerSeries q = unicrit::divide_by_z(PowerSeries::koebe(8));
  const PowerSeries r = unicrit::reciprocal(q, 4);
  EXPECT_NEAR(std::abs(r.coeff(0) - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.coeff(1) - Complex(-2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.coeff(2) - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.coeff(3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.coeff(4)), 0.0, 1e-15);
}

TEST(Reciprocal, RejectsZeroConstantTerm) {
  const PowerSeries s({Complex(0, 0), Complex(1, 0)});
  try {
    unicrit::reciprocal(s, 4);
    FAIL();
  } catch (const unicrit::Error& e) {
    EXPECT_EQ(e.code(), unicrit::Errc::ZeroConstantTerm);
  }
}

TEST(DivideByZ, ShiftAndErrors) {
  const PowerSeries f = PowerSeries::poly_f(std::vector<Complex>{Complex(1, 0)});  // z + z^2
  const PowerSeries q = unicrit::divide_by_z(f);
  EXPECT_EQ(q.coeff(0), Complex(1, 0));
  EXPECT_EQ(q.coeff(1), Complex(1, 0));
  EXPECT_EQ(q.normalization(), unicrit::Normalization::ClassP);

  const PowerSeries koebe_shift = unicrit::divide_by_z(PowerSeries::koebe(8));
  for (int n = 0; n <= 7; ++n) EXPECT_EQ(koebe_shift.coeff(n), Complex(n + 1.0, 0));

  try {
    unicrit::divide_by_z(PowerSeries::halfplane_p(4));
    FAIL();
  } catch (const unicrit::Error& e) {
    EXPECT_EQ(e.code(), unicrit::Errc::NonzeroConstantTerm);
  }
}

// divide_by_z then multiply by z reproduces the coefficients exactly
TEST(Property, MonomialRoundTrip) {
  unicrit::SplitMix64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> tail(6);
    for (auto& c : tail) c = rng.disk(1.0);
    const PowerSeries f = PowerSeries::poly_f(tail);
    const PowerSeries back = unicrit::mul_by_z(unicrit::divide_by_z(f));
    for (int k = 0; k <= f.order(); ++k) EXPECT_EQ(back.coeff(k), f.coeff(k));
  }
}

// multiply(s, reciprocal(s, N), N) stays within 1e-12 of the unit series per
// coefficient, even for adversarial coefficient growth in the reciprocal
TEST(Property, ReciprocalProductIsUnit) {
  unicrit::SplitMix64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 1 + static_cast<int>(rng.next() % 8);
    std::vector<Complex> tail(static_cast<std::size_t>(deg));
    for (auto& c : tail) c = rng.disk(1.0);
    const PowerSeries p = PowerSeries::poly_p(tail);
    const int n = 64;
    const PowerSeries r = unicrit::reciprocal(p, n);
    const PowerSeries prod = unicrit::multiply(p, r, n);
    EXPECT_LE(std::abs(prod.coeff(0) - Complex(1, 0)), 1e-12);
    for (int k = 1; k <= n; ++k) EXPECT_LE(std::abs(prod.coeff(k)), 1e-12) << "k=" << k;
  }
}

// derivative(a s + t) = a derivative(s) + derivative(t), exactly, for dyadic
// coefficients and a power-of-two scale
TEST(Property, DerivativeLinearity) {
  unicrit::SplitMix64 rng(303);
  auto dyadic = [&] {
    return Complex(static_cast<double>(static_cast<int>(rng.next() % 2048) - 1024) / 1024.0,
                   static_cast<double>(static_cast<int>(rng.next() % 2048) - 1024) / 1024.0);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 63);
    std::vector<Complex> sc(static_cast<std::size_t>(n) + 1), tc(sc.size());
    for (auto& c : sc) c = dyadic();
    for (auto& c : tc) c = dyadic();
    const PowerSeries s(sc), t(tc);
    const double a = std::ldexp(1.0, static_cast<int>(rng.next() % 7) - 3);  // 2^-3 .. 2^3

    const PowerSeries combo = unicrit::add(unicrit::scale(s, a), t);
    const PowerSeries lhs = unicrit::derivative(combo);
    const PowerSeries rhs = unicrit::add(unicrit::scale(unicrit::derivative(s), a),
                                         unicrit::derivative(t));
    for (int k = 0; k <= lhs.order(); ++k) EXPECT_EQ(lhs.coeff(k), rhs.coeff(k));
  }
}

// eval(multiply(a,b)) tracks eval(a)*eval(b) for |z| <= 0.5 at N = 64
TEST(Property, MultiplyEvalConsistency) {
  unicrit::SplitMix64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> ac(33), bc(33);
    for (auto& c : ac) c = rng.disk(1.0);
    for (auto& c : bc) c = rng.disk(1.0);
    const PowerSeries a(ac), b(bc);
    const PowerSeries prod = unicrit::multiply(a, b, 64);
    for (int i = 0; i < 8; ++i) {
      const Complex z = rng.disk(0.5);
      const Complex lhs = unicrit::eval(prod, z);
      const Complex rhs = unicrit::eval(a, z) * unicrit::eval(b, z);
      EXPECT_LE(std::abs(lhs - rhs), 1e-9);
    }
  }
}

TEST(CoefficientSupBound, Examples) {
  EXPECT_EQ(unicrit::coefficient_sup_bound(PowerSeries({Complex(0, 0), Complex(1, 0)})), 1.0);
  EXPECT_EQ(unicrit::coefficient_sup_bound(PowerSeries::halfplane_p(64)), 129.0);
}

}  // namespace
