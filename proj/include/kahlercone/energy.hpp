#pragma once

#include <functional>
#include <vector>

#include "kahlercone/admissible.hpp"
#include "kahlercone/quadrature.hpp"

namespace kc {

/// Symplectic potential u = u_{c,kappa} + v with v'' = w polynomial and
/// v(0) = v'(0) = 0, so u'' = 1/(kappa (1 - z^2)) + w.
struct SymplecticPotential {
  Rat kappa{1};
  RatPoly w;

  /// Exact check that u'' > 0 on (-1, 1), i.e. that 1 + kappa (1 - z^2) w is
  /// positive there.
  [[nodiscard]] bool is_valid() const;
  /// 1 + kappa (1 - z^2) w = u'' / u_c''.
  [[nodiscard]] RatPoly ratio_to_canonical() const;
  /// v with v'' = w, v(0) = v'(0) = 0.
  [[nodiscard]] RatPoly smooth_part() const;

  [[nodiscard]] double value(double z) const;        // u(z), |z| <= 1
  [[nodiscard]] double derivative(double z) const;   // u'(z), |z| < 1
  [[nodiscard]] double second(double z) const;       // u''(z), |z| < 1
};

/// u''_{c,kappa}(z) = 1 / (kappa (1 - z^2)). Throws std::domain_error for |z| >= 1.
double canonical_u_second(const Rat& kappa, double z);
/// u_{c,kappa}(z) = ((1-z) log(1-z) + (1+z) log(1+z)) / (2 kappa), |z| <= 1.
double canonical_u(const Rat& kappa, double z);
/// u'_{c,kappa}(z) = log((1+z)/(1-z)) / (2 kappa).
double canonical_u_prime(const Rat& kappa, double z);

/// L(u) = integral of F u'' over (-1, 1), exact: the w part is a polynomial
/// moment and F/(1 - z^2) is a polynomial.
Rat l_functional(const ExtremalProfile& prof, const SymplecticPotential& u);
/// The same integral by quadrature, for cross-checks.
double l_functional_numeric(const ExtremalProfile& prof, const SymplecticPotential& u, const QuadratureSpec& q = {});

/// Modified K-energy F(u) = -int p_c log(u''/u_c'') + int F_omega (u'' - u_c'').
/// The log term is integrated numerically, the linear term exactly.
double k_energy(const ExtremalProfile& prof, const SymplecticPotential& u, const QuadratureSpec& q = {});

/// Split form of the K-energy for u'' = u_c'' + (density), where the density
/// has support inside [a, b] and need not be polynomial.
struct EnergyParts {
  double log_term = 0.0;     // -int p_c log(1 + kappa (1 - z^2) density)
  double linear_term = 0.0;  // int F density
  [[nodiscard]] double total() const { return log_term + linear_term; }
};
EnergyParts k_energy_density(const ExtremalProfile& prof, const std::function<double(double)>& density, double a,
                             double b, const QuadratureSpec& q = {});

/// Integral of u over [-1, 1]: closed form (2 log 2 - 1)/kappa for the
/// canonical part plus the exact integral of v.
double j_proxy(const SymplecticPotential& u);

/// Modified Calabi energy int (F'' - F_omega'')^2 / p_c of a polynomial
/// profile F. F must share F_omega's boundary data; std::invalid_argument
/// otherwise. Returns exactly 0 when F == F_omega.
double calabi_energy(const ExtremalProfile& prof, const RatPoly& F, const QuadratureSpec& q = {});
/// int_a^b q2(z)^2 / p_c(z) dz for an arbitrary second-derivative density.
double calabi_integral(const RatPoly& p_c, const std::function<double(double)>& q2, double a, double b,
                       const QuadratureSpec& q = {});

/// Certified lower bound 3 eps^2 / (lambda (1 - a)^3) of Ca on any positive
/// profile, where eps is a rational lower bound of -F_omega on [a, b] and
/// lambda a rational upper bound of max p_c on [-1, 1]. Requires F_omega < 0
/// on [a, b] (InvariantViolation otherwise).
Rat calabi_lower_bound(const ExtremalProfile& prof, const Rat& a, const Rat& b);

struct LegendreSample {
  double z;
  double y;       // u'(z)
  double phi;     // -u(z) + y z
  double dphi_dy; // = z
};

/// Legendre transform samples on a grid of z in (-1, 1); throws
/// std::domain_error for grid points outside.
std::vector<LegendreSample> legendre_transform(const SymplecticPotential& u, const std::vector<double>& zs);
/// Solves u'(z) = y for z in (-1, 1) by safeguarded Newton iteration.
double legendre_inverse_slope(const SymplecticPotential& u, double y);
/// phi(y) evaluated directly at y.
double legendre_phi(const SymplecticPotential& u, double y);

/// Smooth cutoff e^{1/(s^2-1)} on |s| < 1, zero elsewhere.
double bump_eta(double s);
/// eta''(s) = 2 (3 s^4 - 1) eta(s) / (s^2 - 1)^4.
double bump_eta_second(double s);

/// f_k(z) = int_0^z (z - s) h_k(s) ds with h_k(s) = k eta(k (s - z0)).
class BumpPotential {
 public:
  /// Throws std::invalid_argument unless the support [z0 - 1/k, z0 + 1/k]
  /// lies inside (-1, 1) and |z0| < 1.
  BumpPotential(double z0, double k);

  [[nodiscard]] double center() const { return z0_; }
  [[nodiscard]] double k() const { return k_; }
  [[nodiscard]] double support_lo() const { return z0_ - 1.0 / k_; }
  [[nodiscard]] double support_hi() const { return z0_ + 1.0 / k_; }
  [[nodiscard]] double h(double z) const { return k_ * bump_eta(k_ * (z - z0_)); }  // f''
  [[nodiscard]] double value(double z, const QuadratureSpec& q = {}) const;        // f_k(z)
  /// int_{-1}^{1} f_k = int h_k(s) (1 - |s|)^2 / 2 ds.
  [[nodiscard]] double integral(const QuadratureSpec& q = {}) const;

 private:
  double z0_;
  double k_;
};

/// int eta over [-1, 1].
double bump_eta_mass(const QuadratureSpec& q = {});

struct BreakerPoint {
  double k;
  double l_value;  // L(k f_k) = int F k h_k
  double j_value;  // int k f_k
};

/// Bounded-not-proper demonstration at a repeated root z0: requires the
/// profile to be BoundedNotProper (RegimeMismatch otherwise).
BreakerPoint properness_breaker(const ExtremalProfile& prof, double z0, double k, const QuadratureSpec& q = {});
/// Picks z0 as the midpoint of the leftmost even-multiplicity root enclosure.
double repeated_root_center(const ExtremalProfile& prof);

struct CalabiPoint {
  double n;
  double calabi;        // Ca(F_n)
  bool positive_profile;  // F_n > 0 at every quadrature node in (-1, 1)
};

/// F_n = F_omega + eta(n (z - z0)) / n^2 at a BoundedNotProper profile.
CalabiPoint calabi_minimizing_sequence(const ExtremalProfile& prof, double z0, double n, const QuadratureSpec& q = {});
/// int_{-1}^{1} 4 (3t^4 - 1)^2 / (t^2 - 1)^8 e^{2/(t^2 - 1)} dt = int eta''^2.
double calabi_limit_integral(const QuadratureSpec& q = {});
/// Same integral by tanh-sinh quadrature (independent route).
double calabi_limit_integral_tanh_sinh();

/// Bump direction r = amplitude * eta((z - center)/half_width) supported inside
/// a region where F_omega < 0, with the support certified root-free exactly.
struct UnboundedDirection {
  Rat center;
  Rat half_width;
  double amplitude = 1.0;
  double linear = 0.0;  // int F_omega r, negative
  [[nodiscard]] double r(double z) const;
  [[nodiscard]] double lo() const { return (center - half_width).to_double(); }
  [[nodiscard]] double hi() const { return (center + half_width).to_double(); }
};

/// Requires regime Unbounded. The amplitude normalizes int F_omega r to -1.
UnboundedDirection unbounded_direction(const ExtremalProfile& prof, const QuadratureSpec& q = {});

struct DirectionPoint {
  double k;
  double energy;  // F(u_k) with u_k'' = u_c'' + k r
  double slope;   // dF(u_k)/dk
};

DirectionPoint energy_along(const ExtremalProfile& prof, const UnboundedDirection& dir, double k,
                            const QuadratureSpec& q = {});

}  // namespace kc
