#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include "unicrit/power_series.hpp"

namespace unicrit {

// One pointwise expression evaluation. `singular` marks samples where a
// denominator fell below kSingularThreshold; such samples are counted but
// never enter a max/min reduction.
struct EvalSample {
  Complex value{0.0, 0.0};
  bool singular = false;
};

namespace detail {

template <class G>
inline EvalSample sample_at(G& g, Complex z) {
  using R = std::remove_cvref_t<std::invoke_result_t<G&, Complex>>;
  if constexpr (std::is_same_v<R, EvalSample>) {
    return g(z);
  } else {
    return EvalSample{Complex(g(z)), false};
  }
}

}  // namespace detail

// Concentric sampling grid for the open unit disk: circles at the given
// radii, each sampled at `angles_per_circle` equispaced angles starting at 0.
struct DiskGrid {
  std::vector<double> radii;
  int angles_per_circle = 4096;

  DiskGrid(std::vector<double> r, int angles) : radii(std::move(r)), angles_per_circle(angles) {
    if (radii.empty()) throw std::invalid_argument("DiskGrid: no radii");
    double prev = 0.0;
    for (double x : radii) {
      if (!(x > prev && x < 1.0))
        throw std::invalid_argument("DiskGrid: radii must be strictly increasing and < 1");
      prev = x;
    }
    if (angles_per_circle < 16) throw std::invalid_argument("DiskGrid: need at least 16 angles");
  }

  // r_j = 1 - 2^-j for j = 1..levels
  static DiskGrid standard(int levels = 12, int angles = 4096) {
    if (levels < 1) throw std::invalid_argument("DiskGrid: need at least one level");
    std::vector<double> r(static_cast<std::size_t>(levels));
    for (int j = 1; j <= levels; ++j)
      r[static_cast<std::size_t>(j - 1)] = 1.0 - std::ldexp(1.0, -j);
    return DiskGrid(std::move(r), angles);
  }

  Complex point(int radius_index, int angle_index) const {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(angle_index) / angles_per_circle;
    const double r = radii[static_cast<std::size_t>(radius_index)];
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

  double max_radius() const { return radii.back(); }
  long total_samples() const {
    return static_cast<long>(radii.size()) * static_cast<long>(angles_per_circle);
  }
};

struct SupEstimate {
  double value = 0.0;
  Complex witness{0.0, 0.0};
  int witness_radius = -1;
  int witness_angle = -1;
  std::vector<std::pair<double, double>> per_radius_max;  // (r, circle max)
  long singular_samples = 0;
};

struct InfEstimate {
  double value = 0.0;  // min Re g over samples
  Complex witness{0.0, 0.0};
  int witness_radius = -1;
  int witness_angle = -1;
  long singular_samples = 0;
};

// Max of |g| over all grid samples. The reduction key is the tuple
// (value, radius index, angle index): ties resolve to the smallest radius,
// then the smallest angle, so the result does not depend on evaluation order.
template <class G>
inline SupEstimate sup_modulus(G&& g, const DiskGrid& grid) {
  SupEstimate out;
  bool any = false;
  for (int ri = 0; ri < static_cast<int>(grid.radii.size()); ++ri) {
    double row_max = -1.0;
    bool row_any = false;
    for (int ai = 0; ai < grid.angles_per_circle; ++ai) {
      const Complex z = grid.point(ri, ai);
      const EvalSample s = detail::sample_at(g, z);
      if (s.singular) {
        ++out.singular_samples;
        continue;
      }
      const double m = std::abs(s.value);
      if (!row_any || m > row_max) row_max = m;
      row_any = true;
      if (!any || m > out.value) {
        out.value = m;
        out.witness = z;
        out.witness_radius = ri;
        out.witness_angle = ai;
        any = true;
      }
    }
    if (row_any)
      out.per_radius_max.emplace_back(grid.radii[static_cast<std::size_t>(ri)], row_max);
  }
  if (!any) throw Error(Errc::AllSingular, "every grid sample was singular");
  return out;
}

// Min of Re g over all grid samples, same tie-break contract as sup_modulus.
// A witness with Re g <= threshold refutes "Re g > threshold on the disk"
// outright, since every sample is a genuine point of the open disk.
template <class G>
inline InfEstimate inf_real(G&& g, const DiskGrid& grid) {
  InfEstimate out;
  bool any = false;
  for (int ri = 0; ri < static_cast<int>(grid.radii.size()); ++ri) {
    for (int ai = 0; ai < grid.angles_per_circle; ++ai) {
      const Complex z = grid.point(ri, ai);
      const EvalSample s = detail::sample_at(g, z);
      if (s.singular) {
        ++out.singular_samples;
        continue;
      }
      const double re = s.value.real();
      if (!any || re < out.value) {
        out.value = re;
        out.witness = z;
        out.witness_radius = ri;
        out.witness_angle = ai;
        any = true;
      }
    }
  }
  if (!any) throw Error(Errc::AllSingular, "every grid sample was singular");
  return out;
}

// Sum of coefficient moduli: an upper bound for sup |s| over the closed unit
// disk, valid only when the series is an exact polynomial. When this sum is
// below a criterion bound the strict inequality is certified on the disk.
inline double coefficient_sup_bound(const PowerSeries& s) {
  double acc = 0.0;
  for (const Complex& c : s.coeffs()) acc += std::abs(c);
  return acc;
}

// ---------------------------------------------------------------------------
// Boundary-maximum checks for Schwarz-type functions
// ---------------------------------------------------------------------------

struct JackResult {
  double radius = 0.0;
  Complex z0{0.0, 0.0};   // refined argmax of |omega| on the circle
  Complex k_est{0.0, 0.0};  // z0 * omega'(z0) / omega(z0)
  int multiplicity = 0;   // dense samples within 1e-9 of the circle max
  // (z, k) at each refined near-tied peak, ascending in angle
  std::vector<std::pair<Complex, Complex>> peaks;
};

namespace detail {

template <class F>
inline std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

}  // namespace detail

// Locates the maximum of |omega| on the circle |z| = r by dense angular
// sampling plus golden-section refinement (angular tolerance 1e-10) and
// returns k = z0 omega'(z0) / omega(z0) there. At a true modulus argmax k is
// real with k >= 1; every refined peak within 1e-9 of the maximum is reported.
inline JackResult jack_check(const PowerSeries& omega, double r, int angles = 4096) {
  if (omega.coeff(0) != Complex(0.0, 0.0))
    throw std::invalid_argument("jack_check: omega must vanish at 0");
  bool nonconstant = false;
  for (int k = 1; k <= omega.order(); ++k)
    if (omega.coeff(k) != Complex(0.0, 0.0)) nonconstant = true;
  if (!nonconstant) throw std::invalid_argument("jack_check: omega must be nonconstant");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("jack_check: r must lie in (0,1)");
  if (angles < 16) throw std::invalid_argument("jack_check: need at least 16 angles");

  const PowerSeries domega = derivative(omega);
  auto modulus = [&](double theta) {
    return std::abs(eval(omega, Complex(r * std::cos(theta), r * std::sin(theta)), r));
  };

  const double dtheta = 2.0 * std::numbers::pi / angles;
  std::vector<double> m(static_cast<std::size_t>(angles));
  double dense_max = 0.0;
  for (int i = 0; i < angles; ++i) {
    m[static_cast<std::size_t>(i)] = modulus(i * dtheta);
    dense_max = std::max(dense_max, m[static_cast<std::size_t>(i)]);
  }

  JackResult out;
  out.radius = r;
  const double tie_tol = 1e-9 * (1.0 + dense_max);
  for (double mi : m)
    if (mi >= dense_max - tie_tol) ++out.multiplicity;

  // Candidate peaks: cyclic local maxima close enough to the dense max that
  // refinement could still win. Capped; degree-d polynomials have at most d
  // circle maxima outside of flat (monomial-like) cases.
  const double cand_tol = 1e-6 * (1.0 + dense_max);
  std::vector<int> cand;
  for (int i = 0; i < angles; ++i) {
    const double left = m[static_cast<std::size_t>((i + angles - 1) % angles)];
    const double right = m[static_cast<std::size_t>((i + 1) % angles)];
    const double mi = m[static_cast<std::size_t>(i)];
    if (mi >= left && mi >= right && mi >= dense_max - cand_tol) cand.push_back(i);
  }
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
    return m[static_cast<std::size_t>(a)] > m[static_cast<std::size_t>(b)];
  });
  if (cand.size() > 32) cand.resize(32);
  std::sort(cand.begin(), cand.end());

  struct Peak {
    double theta;
    double value;
  };
  std::vector<Peak> refined;
  refined.reserve(cand.size());
  double best = -1.0;
  for (int i : cand) {
    auto [theta, value] = detail::golden_max(modulus, (i - 1) * dtheta, (i + 1) * dtheta, 1e-10);
    refined.push_back({theta, value});
    best = std::max(best, value);
  }

  // Keep every refined peak within 1e-9 of the best; the primary witness is
  // the first peak (ascending angle) attaining the refined maximum.
  const double peak_tol = 1e-9 * (1.0 + best);
  double best_seen = -1.0;
  std::size_t primary = 0;
  for (const Peak& pk : refined) {
    if (pk.value < best - peak_tol) continue;
    const Complex z(r * std::cos(pk.theta), r * std::sin(pk.theta));
    const Complex w = eval(omega, z, r);
    if (std::abs(w) < kSingularThreshold)
      throw Error(Errc::OmegaVanishes, "omega vanishes at its modulus argmax");
    const Complex k = z * eval(domega, z, r) / w;
    out.peaks.emplace_back(z, k);
    if (pk.value > best_seen) {
      best_seen = pk.value;
      primary = out.peaks.size() - 1;
    }
  }
  out.z0 = out.peaks[primary].first;
  out.k_est = out.peaks[primary].second;
  return out;
}

// ---------------------------------------------------------------------------
// Boundary lower-bound functions behind the criterion constants
// ---------------------------------------------------------------------------

struct PhiArgs {
  double t;  // cos of the boundary angle, in [-1, 1)
  double k;  // boundary expansion factor, >= 1
};

// phi(t,k) = sqrt((k+3)^2 - 2(k+3)t + 1) / (1 - t); its minimum over the
// admissible domain is phi(-1,1) = 5/2, which is the T1 criterion constant.
inline double phi(PhiArgs a) {
  if (!(a.t >= -1.0 && a.t < 1.0) || !(a.k >= 1.0))
    throw Error(Errc::BadDomain, "phi needs t in [-1,1) and k >= 1");
  const double m = a.k + 3.0;
  return std::sqrt(m * m - 2.0 * m * a.t + 1.0) / (1.0 - a.t);
}

// Closed-form partial derivative of phi in k; strictly positive on the domain.
inline double phi_partial_k(PhiArgs a) {
  if (!(a.t >= -1.0 && a.t < 1.0) || !(a.k >= 1.0))
    throw Error(Errc::BadDomain, "phi_partial_k needs t in [-1,1) and k >= 1");
  const double m = a.k + 3.0;
  return (3.0 + a.k - a.t) / ((1.0 - a.t) * std::sqrt(m * m - 2.0 * m * a.t + 1.0));
}

// Boundary value 2|k - 1 - e^{i theta}| / |1 - e^{i theta}|^2 governing the
// T2 constant: its minimum over k >= 1, theta != 0 is 1/2, attained at k = 1,
// e^{i theta} = -1.
inline double t2_extremal(double k, double theta) {
  if (!(k >= 1.0)) throw Error(Errc::BadDomain, "t2_extremal needs k >= 1");
  const double den = 2.0 - 2.0 * std::cos(theta);
  if (den <= 0.0) throw Error(Errc::BadDomain, "t2_extremal undefined at theta = 0 mod 2pi");
  const Complex num(k - 1.0 - std::cos(theta), -std::sin(theta));
  return 2.0 * std::abs(num) / den;
}

}  // namespace unicrit
