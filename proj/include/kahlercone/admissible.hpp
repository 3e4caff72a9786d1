#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "kahlercone/poly.hpp"
#include "kahlercone/roots.hpp"

namespace kc {

/// Raised when an identity that holds by construction fails; indicates a bug
/// rather than bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for inputs outside the admissible parameter domain. `field` names
/// the offending input.
class InvalidClass : public std::invalid_argument {
 public:
  InvalidClass(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// One base factor S_i: complex dimension d, scalar-curvature parameter s
/// (scalar curvature 2ds), and class parameter x in (0, 1).
struct BaseFactor {
  unsigned d = 1;
  Rat s;
  Rat x;
  friend bool operator==(const BaseFactor&, const BaseFactor&) = default;
};

/// Conical admissible Kähler class: base factors plus the cone angle
/// parameter kappa (angle 2*pi*kappa at both ends of the fibre).
///
/// An empty factor list is accepted here and gives p_c == 1, which the test
/// fixtures use; public parsers reject it.
struct AdmissibleClass {
  std::vector<BaseFactor> factors;
  Rat kappa{1};

  /// Throws InvalidClass unless kappa > 0, d >= 1 and 0 < x < 1.
  void validate() const;
  [[nodiscard]] AdmissibleClass with_kappa(const Rat& k) const { return {factors, k}; }
  friend bool operator==(const AdmissibleClass&, const AdmissibleClass&) = default;
};

struct Moments {
  Rat alpha0, alpha1, alpha2;
  Rat beta0, beta1;
  /// alpha0*alpha2 - alpha1^2, positive for every valid class.
  [[nodiscard]] Rat gram() const { return alpha0 * alpha2 - alpha1 * alpha1; }
};

struct ExtremalData {
  Rat A;
  Rat B;
  RatPoly p_c;
  RatPoly F_omega;
  RatPoly F_zero;  // kappa-independent part
  RatPoly F_lin;   // coefficient of kappa
  Moments moments;
  Rat kappa;
};

/// p_c(z) = prod (1 + x_i z)^{d_i}.
RatPoly characteristic_polynomial(const std::vector<BaseFactor>& factors);
inline RatPoly characteristic_polynomial(const AdmissibleClass& c) { return characteristic_polynomial(c.factors); }

/// sum_i 2 d_i s_i x_i * p_c / (1 + x_i z), expanded exactly.
RatPoly curvature_term(const std::vector<BaseFactor>& factors);

Moments moments(const AdmissibleClass& c);

struct Coefficients {
  Rat A;
  Rat B;
};

/// Solves A*alpha1 + B*alpha0 = -2 beta0, A*alpha2 + B*alpha1 = -2 beta1.
Coefficients solve_AB(const Moments& m);
Coefficients solve_AB(const AdmissibleClass& c);

/// F_omega'' = (A z + B) p_c + curvature term, integrated from z = -1 with
/// F(-1) = 0 and F'(-1) = 2 kappa p_c(-1). The remaining boundary data at
/// z = 1 is checked and InvariantViolation raised if it does not hold.
/// Also fills the kappa decomposition.
ExtremalData extremal_polynomial(const AdmissibleClass& c);

struct KappaDecomposition {
  RatPoly F_zero;
  RatPoly F_lin;
  /// ((alpha0 alpha2 - alpha1^2) / 2) * F_lin; depends only on p_c.
  RatPoly G_x;
};

/// Splits F_omega = F_zero + kappa*F_lin by building it at kappa = 1, 2, 3 and
/// checking collinearity exactly.
KappaDecomposition kappa_decomposition(const std::vector<BaseFactor>& factors);

/// Enclosure of the minimal kappa* >= 0 beyond which F_zero + kappa*F_lin is
/// positive on (-1, 1). Empty (no threshold) when G_x itself is not positive.
std::optional<RatInterval> min_positive_angle(const std::vector<BaseFactor>& factors, const Rat& width);

/// The data every downstream analysis works from: the weight p_c, a profile
/// F (normally F_omega) and the cone angle parameter. Test fixtures build
/// these directly with synthetic F.
struct ExtremalProfile {
  RatPoly p_c;
  RatPoly F;
  Rat kappa;
};

ExtremalProfile profile_of(const AdmissibleClass& c);

/// Boundary behaviour of Theta = F/p_c near the ends of the fibre.
struct ThetaReport {
  bool vanishes_at_ends = false;  // Theta(+-1) == 0
  Rat slope_minus;                // Theta'(-1), exact
  Rat slope_plus;                 // Theta'(1), exact
  bool slopes_ok = false;         // slope_minus == 2 kappa and slope_plus == -2 kappa
  Rat theta2_minus;               // Theta''(-1), exact
  double d2_numeric = 0.0;        // d^2 Theta / ds^2 at s = 0
  double d2_expected = 0.0;       // 2 kappa^2
  double d4_numeric = 0.0;        // d^4 Theta / ds^4 at s = 0
  double d4_expected = 0.0;       // 4 kappa^2 Theta''(-1)
  double d2_rel_error = 0.0;
  double d4_rel_error = 0.0;
  bool passed = false;            // exact checks plus both expansions within tolerance
};

/// Checks the cone-angle boundary data of a profile F with weight p_c. The
/// arclength expansion at z = -1 is evaluated numerically: s(z) is computed by
/// quadrature after the substitution z = -1 + t^2 (which removes the
/// 1/sqrt(Theta) singularity), inverted by Newton's method, and the
/// s-derivatives of Theta are taken by Richardson-extrapolated central
/// differences of its even extension. Throws InvalidClass if F(+-1) != 0.
ThetaReport theta_profile_checks(const RatPoly& p_c, const Rat& kappa, const RatPoly& F, double tolerance = 1e-4);
ThetaReport theta_profile_checks(const AdmissibleClass& c, const RatPoly& F, double tolerance = 1e-4);

}  // namespace kc
