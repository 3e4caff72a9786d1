#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kahlercone/rat.hpp"

namespace kc {

/// Thrown when an exact algorithm is handed input it cannot work with
/// (zero polynomial in a gcd, inexact division that must be exact, ...).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense univariate polynomial over Q. Coefficient i multiplies z^i. The
/// coefficient vector is trimmed so the leading coefficient is nonzero; the
/// zero polynomial has no coefficients and degree -1.
class RatPoly {
 public:
  RatPoly() = default;
  RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static RatPoly constant(const Rat& c) { return RatPoly({c}); }
  /// z - root
  static RatPoly linear_root(const Rat& root) { return RatPoly({-root, Rat(1)}); }
  static RatPoly monomial(const Rat& c, unsigned degree);

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] std::span<const Rat> coeffs() const { return c_; }
  /// Coefficient of z^i, zero past the degree.
  [[nodiscard]] Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  [[nodiscard]] Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  [[nodiscard]] Rat operator()(const Rat& z) const { return eval(z); }
  [[nodiscard]] Rat eval(const Rat& z) const;
  [[nodiscard]] double eval(double z) const;
  /// Sign of p(z) computed exactly.
  [[nodiscard]] int sign_at(const Rat& z) const { return eval(z).sign(); }

  [[nodiscard]] RatPoly derivative() const;
  [[nodiscard]] RatPoly derivative(unsigned order) const;
  /// Antiderivative with zero constant term.
  [[nodiscard]] RatPoly antiderivative() const;
  /// p(a*z + b).
  [[nodiscard]] RatPoly compose_affine(const Rat& a, const Rat& b) const;
  /// p(q(z)).
  [[nodiscard]] RatPoly compose(const RatPoly& q) const;
  [[nodiscard]] RatPoly monic() const;
  /// Exact definite integral over [a, b].
  [[nodiscard]] Rat integrate(const Rat& a, const Rat& b) const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const Rat& s);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
  friend RatPoly operator*(RatPoly a, const Rat& s) { return a *= s; }
  friend RatPoly operator*(const Rat& s, RatPoly a) { return a *= s; }
  friend RatPoly operator-(RatPoly a) { return a *= Rat(-1); }
  friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

  /// Human-readable form, e.g. "3/4*z^2 + 11/4*z + 19/4".
  [[nodiscard]] std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

RatPoly pow(const RatPoly& p, unsigned e);

/// Euclidean division: a = q*b + r with deg r < deg b. Throws DegenerateInput
/// when b is zero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
/// a / b, throwing DegenerateInput unless b divides a exactly.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);
/// Monic gcd. gcd(0, 0) throws DegenerateInput.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// Integral of p(t) * t^r over [-1, 1], exact.
Rat moment_integral(const RatPoly& p, unsigned r);

/// Yun's square-free decomposition: returns (factor, multiplicity) pairs with
/// monic, square-free, pairwise coprime factors of positive degree whose
/// product (with multiplicities) equals p up to a nonzero constant. Throws
/// DegenerateInput for the zero polynomial.
std::vector<std::pair<RatPoly, unsigned>> square_free_decompose(const RatPoly& p);
/// Monic square-free part p / gcd(p, p').
RatPoly square_free_part(const RatPoly& p);

}  // namespace kc
