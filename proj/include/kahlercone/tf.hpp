#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kahlercone/admissible.hpp"
#include "kahlercone/classifier.hpp"

namespace kc {

/// Single-factor family with N = 1, d = 1: one Riemann surface base with
/// normalized scalar curvature s and class parameter x.
struct TFParams {
  Rat x;
  Rat s;
  Rat kappa{1};

  /// Throws InvalidClass unless 0 < x < 1 and kappa > 0.
  void validate() const;
  [[nodiscard]] AdmissibleClass to_class() const;
};

/// Q(z) = (2k x^2 - s x^3) z^2 + (6k x - 2k x^3) z + 6k + s x^3 - 4k x^2.
RatPoly tf_Q(const TFParams& p);
/// F_omega = (1 - z^2) Q(z) / (2 (3 - x^2)).
RatPoly tf_closed_form_F(const TFParams& p);
/// A = 6x(sx - 2k)/(3 - x^2), B = 6(k x^2 - s x - k)/(3 - x^2).
Coefficients tf_AB(const TFParams& p);
/// max(0, -s x^2 / ((1 - x)(3 + x))).
Rat tf_kappa_bound(const Rat& x, const Rat& s);

/// Discriminant of Q at kappa = 1:
/// (6x - 2x^3)^2 - 4 (2x^2 - s x^3)(6 + s x^3 - 4x^2).
Rat tf_discriminant(const Rat& x, const Rat& s);
/// The same discriminant as a polynomial in x for fixed s.
RatPoly tf_delta_poly(const Rat& s);
/// Discriminant recomputed from the general pipeline: Q is recovered from
/// extremal_polynomial by dividing out (1 - z^2) / (2 (3 - x^2)).
Rat tf_discriminant_from_pipeline(const Rat& x, const Rat& s);

/// Polynomial in x whose coefficients are polynomials in s.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<RatPoly> coeffs_in_s);

  [[nodiscard]] int degree_x() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] RatPoly coeff(std::size_t i) const { return i < c_.size() ? c_[i] : RatPoly(); }
  [[nodiscard]] BiPoly derivative_x(unsigned order = 1) const;
  /// Substitutes a value for x, leaving a polynomial in s.
  [[nodiscard]] RatPoly at_x(const Rat& x) const;
  /// Substitutes a value for s, leaving a polynomial in x.
  [[nodiscard]] RatPoly at_s(const Rat& s) const;
  [[nodiscard]] std::string to_string() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) = default;

 private:
  void trim();
  std::vector<RatPoly> c_;
};

/// Delta(x, s) with s kept symbolic.
BiPoly tf_delta_symbolic();

struct LadderCheck {
  std::string name;      // e.g. "D''(1)"
  std::string computed;  // polynomial in s (or in x and s) from Delta
  std::string stated;    // the closed form being checked
  bool holds = false;    // exact polynomial equality
};

/// The nine derivative-ladder identities of Delta, each checked as an exact
/// polynomial identity in s.
std::vector<LadderCheck> tf_delta_ladder();

struct XsEnclosure {
  RatInterval enclosure;  // contains the unique sign change of Delta on (0, 1)
  Rat delta_lo;           // Delta(enclosure.lo) < 0
  Rat delta_hi;           // Delta(enclosure.hi) > 0
};

/// Encloses x_s for s < 0 to the requested width by exact Sturm bisection.
/// Throws InvalidClass for s >= 0 or width <= 0.
XsEnclosure tf_find_xs(const Rat& s, const Rat& width = default_root_width());

struct TFCaseReport {
  int case_number = 1;        // 1: x < x_s, 2: x within the x_s enclosure, 3: x > x_s
  bool near_critical = false; // case 2, decided only up to the enclosure width
  Rat delta;                  // Delta(x)
  XsEnclosure xs;
  Regime regime = Regime::ExistsExtremal;  // exact classification of F_omega at kappa = 1
  std::optional<SplitReport> split;        // case 3
  std::optional<Rat> vertex;               // case 3: minimum point -b/(2a) of Q
  bool vertex_inside = false;              // case 3: -1 < vertex < 1, exact
};

/// Case report at kappa = 1 for s < 0.
TFCaseReport tf_regime(const Rat& x, const Rat& s, const Rat& width = default_root_width());

struct SweepRow {
  Rat x;
  Rat delta;
  Regime regime;
  std::vector<RootRecord> roots;  // interior roots of F_omega
};

/// n grid points x_i = lo + (hi - lo)(i + 1)/(n + 1), kappa = 1.
std::vector<SweepRow> tf_sweep(const Rat& s, const Rat& lo, const Rat& hi, unsigned n,
                               const Rat& width = default_root_width());

}  // namespace kc
