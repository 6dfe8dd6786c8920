#include "unicrit/transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "unicrit/search.hpp"

namespace {

using unicrit::CaratheodoryFn;
using unicrit::Complex;
using unicrit::ExprId;
using unicrit::PowerSeries;
using unicrit::Substitution;

std::vector<Complex> sample_points(double rmax, int n) {
  std::vector<Complex> pts;
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n;
    for (double r : {0.3 * rmax, 0.7 * rmax, rmax})
      pts.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return pts;
}

// class-A polynomial with small random coefficients; rejects draws whose |f|
// or |f'| dips below the floor on the sampled circles, so quotient routes
// stay well-conditioned
PowerSeries random_class_a(unicrit::SplitMix64& rng, int max_degree, double coeff_cap,
                           double rmax, double floor_min) {
  for (;;) {
    const int deg = 2 + static_cast<int>(rng.next() % static_cast<unsigned>(max_degree - 1));
    std::vector<Complex> tail(static_cast<std::size_t>(deg - 1));
    for (auto& c : tail) c = rng.disk(coeff_cap);
    PowerSeries f = PowerSeries::poly_f(tail);
    const PowerSeries df = unicrit::derivative(f);
    bool ok = true;
    for (const Complex& z : sample_points(rmax, 64)) {
      if (std::abs(unicrit::eval(f, z, rmax)) < floor_min ||
          std::abs(unicrit::eval(df, z, rmax)) < floor_min) {
        ok = false;
        break;
      }
    }
    if (ok) return f;
  }
}

TEST(BuildP, IdentityRatioIsOne) {
  const CaratheodoryFn p = unicrit::build_p(PowerSeries::identity(8), Substitution::Ratio);
  for (const Complex& z : sample_points(0.9, 16)) {
    const auto s = p.value(z);
    ASSERT_FALSE(s.singular);
    EXPECT_NEAR(std::abs(s.value - Complex(1, 0)), 0.0, 1e-13);
  }
  EXPECT_EQ(p.value(Complex(0, 0)).value, Complex(1, 0));
}

TEST(BuildP, KoebeRatioClosedForm) {
  // z k'/k = (1+z)/(1-z); 3 at z = 0.5
  const CaratheodoryFn p = unicrit::build_p(PowerSeries::koebe(64), Substitution::Ratio);
  const auto s = p.value(Complex(0.5, 0));
  ASSERT_FALSE(s.singular);
  EXPECT_NEAR(std::abs(s.value - Complex(3, 0)), 0.0, 1e-12);
}

TEST(BuildP, DerivSubstitution) {
  const PowerSeries f = PowerSeries::poly_f(std::vector<Complex>{Complex(0.5, 0)});  // z + z^2/2
  const CaratheodoryFn p = unicrit::build_p(f, Substitution::Deriv);
  for (const Complex& z : sample_points(0.9, 8)) {
    EXPECT_NEAR(std::abs(p.value(z).value - (1.0 + z)), 0.0, 1e-14);
  }
}

TEST(BuildP, RequiresClassA) {
  EXPECT_THROW(unicrit::build_p(PowerSeries::halfplane_p(8), Substitution::Ratio),
               unicrit::Error);
}

TEST(LhsT1, ConstantAndLinear) {
  const CaratheodoryFn one = CaratheodoryFn::from_p(PowerSeries({Complex(1, 0)},
                                                                unicrit::Normalization::ClassP));
  const auto t1_const = unicrit::lhs_t1(one);
  EXPECT_EQ(t1_const(Complex(0.3, 0.2)).value, Complex(0, 0));

  // p = 1 + z/2: zp' + p + p^2 - 2 = 2z + z^2/4
  const PowerSeries p = PowerSeries::poly_p(std::vector<Complex>{Complex(0.5, 0)});
  const auto t1 = unicrit::lhs_t1(CaratheodoryFn::from_p(p));
  for (const Complex& z : sample_points(0.99, 12)) {
    const Complex expected = 2.0 * z + z * z / 4.0;
    EXPECT_NEAR(std::abs(t1(z).value - expected), 0.0, 1e-14);
  }
}

TEST(LhsT1, HalfplaneClosedForm) {
  // (8z - 2z^2)/(1-z)^2, which vanishes at the origin
  const auto t1 = unicrit::lhs_t1(CaratheodoryFn::from_p(PowerSeries::halfplane_p(64)));
  EXPECT_EQ(t1(Complex(0, 0)).value, Complex(0, 0));
  for (const Complex& z : sample_points(0.5, 8)) {
    const Complex expected = (8.0 * z - 2.0 * z * z) / ((1.0 - z) * (1.0 - z));
    EXPECT_NEAR(std::abs(t1(z).value - expected), 0.0, 1e-12);
  }
}

TEST(LhsT2, LinearAndMoebius) {
  const PowerSeries p1 = PowerSeries::poly_p(std::vector<Complex>{Complex(1, 0)});
  const auto t2 = unicrit::lhs_t2(CaratheodoryFn::from_p(p1));
  for (const Complex& z : sample_points(0.99, 12))
    EXPECT_NEAR(std::abs(t2(z).value - (-z * z)), 0.0, 1e-14);

  // p = (1-z)/(1+z) = 1 - 2z + 2z^2 - ... : expression is -2z^2/(1+z)^2
  std::vector<Complex> tail(64);
  double sign = -1.0;
  for (auto& c : tail) {
    c = Complex(2.0 * sign, 0.0);
    sign = -sign;
  }
  const auto t2m = unicrit::lhs_t2(CaratheodoryFn::from_p(PowerSeries::poly_p(tail)));
  for (const Complex& z : sample_points(0.5, 8)) {
    const Complex expected = -2.0 * z * z / ((1.0 + z) * (1.0 + z));
    EXPECT_NEAR(std::abs(t2m(z).value - expected), 0.0, 1e-12);
  }
}

TEST(LhsT3, AlphaZeroMatchesT2Bitwise) {
  unicrit::SplitMix64 rng(7);
  std::vector<Complex> tail(5);
  for (auto& c : tail) c = rng.disk(0.5);
  const PowerSeries p = PowerSeries::poly_p(tail);
  const auto t2 = unicrit::lhs_t2(CaratheodoryFn::from_p(p));
  const auto t3 = unicrit::lhs_t3(CaratheodoryFn::from_p(p), 0.0);
  for (const Complex& z : sample_points(0.99, 32)) {
    EXPECT_EQ(t2(z).value, t3(z).value);
  }
}

TEST(LhsT3, HalfAlphaExamples) {
  const PowerSeries one({Complex(1, 0)}, unicrit::Normalization::ClassP);
  const auto t3c = unicrit::lhs_t3(CaratheodoryFn::from_p(one), 0.5);
  EXPECT_NEAR(std::abs(t3c(Complex(0.4, 0.1)).value), 0.0, 1e-15);

  // p = 1 + z/4 at alpha 1/2: zp' + 3p - 2p^2 - 1 = -z^2/8
  const PowerSeries p = PowerSeries::poly_p(std::vector<Complex>{Complex(0.25, 0)});
  const auto t3 = unicrit::lhs_t3(CaratheodoryFn::from_p(p), 0.5);
  for (const Complex& z : sample_points(0.99, 12))
    EXPECT_NEAR(std::abs(t3(z).value - (-z * z / 8.0)), 0.0, 1e-14);
  const auto sup = unicrit::sup_modulus(t3, unicrit::DiskGrid::standard(12, 512));
  EXPECT_NEAR(sup.value, 0.125 * (1.0 - 0x1p-12) * (1.0 - 0x1p-12), 1e-12);
  EXPECT_LT(sup.value, 0.25);
}

TEST(LhsT3, RejectsBadAlpha) {
  const PowerSeries one({Complex(1, 0)}, unicrit::Normalization::ClassP);
  EXPECT_THROW(unicrit::lhs_t3(CaratheodoryFn::from_p(one), 1.0), unicrit::Error);
  EXPECT_THROW(unicrit::lhs_t3(CaratheodoryFn::from_p(one), -0.1), unicrit::Error);
}

TEST(Corollary, HandExamples) {
  // C1.iii on f = z: z*0 + 1 + 1 - 2 = 0
  const auto c1iii = unicrit::lhs_corollary(PowerSeries::identity(4), ExprId::C1iii);
  EXPECT_NEAR(std::abs(c1iii(Complex(0.7, 0.1)).value), 0.0, 1e-15);

  // C1.i vanishes at the origin for every class-A f
  const auto c1i = unicrit::lhs_corollary(PowerSeries::koebe(64), ExprId::C1i);
  EXPECT_EQ(c1i(Complex(0, 0)).value, Complex(0, 0));

  // C2.iv on f = z + z^2: (1 + 2z) - (1 + z)^2 = -z^2
  const PowerSeries f = PowerSeries::poly_f(std::vector<Complex>{Complex(1, 0)});
  const auto c2iv = unicrit::lhs_corollary(f, ExprId::C2iv);
  for (const Complex& z : sample_points(0.9, 8))
    EXPECT_NEAR(std::abs(c2iv(z).value - (-z * z)), 0.0, 1e-14);
}

TEST(Corollary, OriginAnnihilationAll) {
  unicrit::SplitMix64 rng(23);
  std::vector<Complex> tail(4);
  for (auto& c : tail) c = rng.disk(0.1);
  const PowerSeries f = PowerSeries::poly_f(tail);
  for (ExprId id : {ExprId::C1i, ExprId::C1ii, ExprId::C1iii, ExprId::C1iv, ExprId::C2i,
                    ExprId::C2ii, ExprId::C2iii, ExprId::C2iv, ExprId::Zf, ExprId::R1,
                    ExprId::R2}) {
    const auto expr = unicrit::lhs_corollary(f, id);
    EXPECT_NEAR(std::abs(expr(Complex(0, 0)).value), 0.0, 1e-15) << static_cast<int>(id);
  }
}

// T-expressions annihilate the origin for every class-P source
TEST(TheoremExprs, OriginAnnihilation) {
  unicrit::SplitMix64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> tail(5);
    for (auto& c : tail) c = rng.disk(0.8);
    const PowerSeries p = PowerSeries::poly_p(tail);
    const Complex origin(0, 0);
    EXPECT_EQ(unicrit::lhs_t1(CaratheodoryFn::from_p(p))(origin).value, Complex(0, 0));
    EXPECT_EQ(unicrit::lhs_t2(CaratheodoryFn::from_p(p))(origin).value, Complex(0, 0));
    EXPECT_LE(std::abs(unicrit::lhs_t3(CaratheodoryFn::from_p(p), 0.3)(origin).value), 5e-16);
  }
}

// direct corollary route against the build_p-composed theorem route
TEST(Property, CorollaryTheoremConsistency) {
  unicrit::SplitMix64 rng(31);
  const auto pts = sample_points(0.9, 24);
  struct Pair {
    ExprId direct;
    Substitution sub;
    int family;
  };
  const Pair pairs[] = {
      {ExprId::C1i, Substitution::Ratio, 1},     {ExprId::C1ii, Substitution::Convexity, 1},
      {ExprId::C1iii, Substitution::Deriv, 1},   {ExprId::C1iv, Substitution::Ratio0, 1},
      {ExprId::C2i, Substitution::Ratio, 2},     {ExprId::C2ii, Substitution::Convexity, 2},
      {ExprId::C2iii, Substitution::Deriv, 2},   {ExprId::C2iv, Substitution::Ratio0, 2},
  };
  for (int trial = 0; trial < 20; ++trial) {
    const PowerSeries f = random_class_a(rng, 6, 0.1, 0.9, 1e-2);
    for (const Pair& pr : pairs) {
      const auto direct = unicrit::lhs_corollary(f, pr.direct);
      const CaratheodoryFn p = unicrit::build_p(f, pr.sub);
      const unicrit::TheoremExpr composed =
          pr.family == 1 ? unicrit::lhs_t1(p) : unicrit::lhs_t2(p);
      for (const Complex& z : pts) {
        const auto a = direct(z);
        const auto b = composed(z);
        ASSERT_FALSE(a.singular || b.singular);
        EXPECT_LE(std::abs(a.value - b.value), 1e-9)
            << "expr=" << static_cast<int>(pr.direct) << " z=" << z;
      }
    }
  }
}

// z p' inside each substitution against a central finite difference
TEST(Property, DerivativeFiniteDifferenceCrossCheck) {
  unicrit::SplitMix64 rng(37);
  const double h = 1e-5;
  for (int trial = 0; trial < 10; ++trial) {
    const PowerSeries f = random_class_a(rng, 6, 0.1, 0.91, 1e-2);
    for (Substitution sub : {Substitution::Ratio, Substitution::Convexity, Substitution::Deriv,
                             Substitution::Ratio0}) {
      const CaratheodoryFn p = unicrit::build_p(f, sub);
      for (const Complex& z : sample_points(0.9, 12)) {
        const auto plus = p.value(z + h);
        const auto minus = p.value(z - h);
        const auto zd = p.z_deriv(z);
        ASSERT_FALSE(plus.singular || minus.singular || zd.singular);
        const Complex fd = (plus.value - minus.value) / (2.0 * h);
        const Complex exact = zd.value / z;
        EXPECT_LE(std::abs(fd - exact), 1e-6 * (1.0 + std::abs(exact)));
      }
    }
  }
}

TEST(IdentityZf, IdentityFunctionIsZero) {
  const auto pair = unicrit::identity_zf(PowerSeries::identity(8));
  for (const Complex& z : sample_points(0.9, 8)) {
    EXPECT_NEAR(std::abs(pair.a(z).value), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(pair.b(z).value), 0.0, 1e-13);
  }
}

TEST(IdentityZf, KoebeClosedForm) {
  // both routes equal -2z^2/(1-z)^2
  const auto pair = unicrit::identity_zf(PowerSeries::koebe(64));
  for (const Complex& z : sample_points(0.9, 24)) {
    const Complex expected = -2.0 * z * z / ((1.0 - z) * (1.0 - z));
    EXPECT_LE(std::abs(pair.a(z).value - expected), 1e-10);
    EXPECT_LE(std::abs(pair.b(z).value - expected), 1e-10);
  }
}

TEST(IdentityZf, SmallQuadratic) {
  const PowerSeries f = PowerSeries::poly_f(std::vector<Complex>{Complex(0.3, 0)});
  const auto pair = unicrit::identity_zf(f);
  const auto grid = unicrit::DiskGrid::standard(8, 256);
  for (int ri = 0; ri < static_cast<int>(grid.radii.size()); ++ri)
    for (int ai = 0; ai < grid.angles_per_circle; ++ai) {
      const Complex z = grid.point(ri, ai);
      const auto a = pair.a(z);
      const auto b = pair.b(z);
      ASSERT_FALSE(a.singular || b.singular);
      EXPECT_LE(std::abs(a.value - b.value), 1e-10);
    }
}

TEST(RemarkIdentity, ClosedForms) {
  const auto id_pair = unicrit::remark_identity(PowerSeries::identity(8));
  for (const Complex& z : sample_points(0.9, 8)) {
    EXPECT_NEAR(std::abs(id_pair.a(z).value), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(id_pair.b(z).value), 0.0, 1e-13);
  }
  // koebe: both routes equal -2z/(1-z)
  const auto k_pair = unicrit::remark_identity(PowerSeries::koebe(64));
  for (const Complex& z : sample_points(0.9, 24)) {
    const Complex expected = -2.0 * z / (1.0 - z);
    EXPECT_LE(std::abs(k_pair.a(z).value - expected), 1e-10);
    EXPECT_LE(std::abs(k_pair.b(z).value - expected), 1e-10);
  }
}

// both identity pairs agree at every non-singular sample, |z| <= 1 - 2^-8
TEST(Property, IdentityPairsAgree) {
  unicrit::SplitMix64 rng(41);
  const auto grid = unicrit::DiskGrid::standard(8, 128);
  for (int trial = 0; trial < 25; ++trial) {
    const PowerSeries f = random_class_a(rng, 6, 0.1, grid.max_radius(), 1e-8);
    for (const auto& pair : {unicrit::identity_zf(f), unicrit::remark_identity(f)}) {
      for (int ri = 0; ri < static_cast<int>(grid.radii.size()); ++ri)
        for (int ai = 0; ai < grid.angles_per_circle; ++ai) {
          const Complex z = grid.point(ri, ai);
          const auto a = pair.a(z);
          const auto b = pair.b(z);
          if (a.singular || b.singular) continue;
          EXPECT_LE(std::abs(a.value - b.value), 1e-10);
        }
    }
  }
}

TEST(HypothesisPolynomial, CapabilityMatrix) {
  const PowerSeries p = PowerSeries::poly_p(std::vector<Complex>{Complex(0.5, 0)});
  EXPECT_TRUE(unicrit::hypothesis_polynomial(p, ExprId::T1).has_value());
  EXPECT_TRUE(unicrit::hypothesis_polynomial(p, ExprId::T2).has_value());
  EXPECT_TRUE(unicrit::hypothesis_polynomial(p, ExprId::T3, 0.5).has_value());

  const PowerSeries f = PowerSeries::poly_f(std::vector<Complex>{Complex(0.1, 0)});
  EXPECT_TRUE(unicrit::hypothesis_polynomial(f, ExprId::C1iii).has_value());
  EXPECT_TRUE(unicrit::hypothesis_polynomial(f, ExprId::C1iv).has_value());
  EXPECT_TRUE(unicrit::hypothesis_polynomial(f, ExprId::C2iii).has_value());
  EXPECT_TRUE(unicrit::hypothesis_polynomial(f, ExprId::C2iv).has_value());
  EXPECT_FALSE(unicrit::hypothesis_polynomial(f, ExprId::C1i).has_value());
  EXPECT_FALSE(unicrit::hypothesis_polynomial(f, ExprId::Zf).has_value());
  // truncations of non-polynomial families never certify
  EXPECT_FALSE(unicrit::hypothesis_polynomial(PowerSeries::halfplane_p(16), ExprId::T1).has_value());
}

TEST(HypothesisPolynomial, MatchesPointwiseExpression) {
  unicrit::SplitMix64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> tail(4);
    for (auto& c : tail) c = rng.disk(0.5);
    const PowerSeries p = PowerSeries::poly_p(tail);
    for (double alpha : {0.0, 0.25, 0.5}) {
      const auto poly = unicrit::hypothesis_polynomial(p, ExprId::T3, alpha);
      ASSERT_TRUE(poly.has_value());
      const auto expr = unicrit::lhs_t3(CaratheodoryFn::from_p(p), alpha);
      for (const Complex& z : sample_points(0.9, 8))
        EXPECT_LE(std::abs(unicrit::eval(*poly, z) - expr(z).value), 1e-12);
    }
  }
}

}  // namespace
