#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "kahlercone/admissible.hpp"
#include "kahlercone/poly.hpp"

namespace kc::testing {

class RandomRat {
 public:
  explicit RandomRat(std::uint64_t seed) : gen_(seed) {}

  Rat any(long max_num = 20, long max_den = 12) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rat(num(gen_), den(gen_));
  }
  Rat positive(long max_num = 20, long max_den = 12) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rat(num(gen_), den(gen_));
  }
  Rat negative(long max_num = 20, long max_den = 12) { return -positive(max_num, max_den); }
  /// Uniform-ish rational in the open unit interval.
  Rat unit(long max_den = 40) {
    std::uniform_int_distribution<long> den(2, max_den);
    const long d = den(gen_);
    std::uniform_int_distribution<long> num(1, d - 1);
    return Rat(num(gen_), d);
  }
  /// Rational in (lo, hi).
  Rat between(const Rat& lo, const Rat& hi, long max_den = 64) { return lo + (hi - lo) * unit(max_den); }
  unsigned uint(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  RatPoly poly(int degree) {
    std::vector<Rat> c;
    for (int i = 0; i <= degree; ++i) c.push_back(any());
    if (c.back().is_zero()) c.back() = Rat(1);
    return RatPoly(std::move(c));
  }

  AdmissibleClass admissible(unsigned max_factors = 3, unsigned max_d = 3) {
    AdmissibleClass c;
    const unsigned n = uint(1, max_factors);
    for (unsigned i = 0; i < n; ++i) c.factors.push_back({uint(1, max_d), any(6, 4), unit()});
    c.kappa = positive(6, 4);
    return c;
  }

 private:
  std::mt19937_64 gen_;
};

/// Exact integral of t^k over [-1, 1], computed from its closed form.
inline Rat power_integral(unsigned k) { return k % 2 == 1 ? Rat(0) : Rat(2, static_cast<long>(k) + 1); }

/// Moment integral term by term: sum_i c_i * integral of t^(i + r).
inline Rat moment_oracle(const RatPoly& p, unsigned r) {
  Rat out(0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out += p.coeffs()[i] * power_integral(static_cast<unsigned>(i) + r);
  return out;
}

/// int_{-1}^z (z - t) g(t) dt as a polynomial in z, via z * G1 - G2 with
/// G1' = g and G2' = t g.
inline RatPoly kernel_integral(const RatPoly& g) {
  const Rat minus_one(-1);
  RatPoly g1 = g.antiderivative();
  g1 -= RatPoly::constant(g1.eval(minus_one));
  RatPoly g2 = (RatPoly({Rat(0), Rat(1)}) * g).antiderivative();
  g2 -= RatPoly::constant(g2.eval(minus_one));
  return RatPoly({Rat(0), Rat(1)}) * g1 - g2;
}

/// Single-curve family closed form (1 - z^2) Q(z) / (2 (3 - x^2)), written out
/// from the coefficient formula independently of the library.
inline RatPoly tf_oracle_F(const Rat& x, const Rat& s, const Rat& k) {
  const Rat x2 = x * x;
  const Rat x3 = x2 * x;
  const RatPoly Q({Rat(6) * k + s * x3 - Rat(4) * k * x2, Rat(6) * k * x - Rat(2) * k * x3, Rat(2) * k * x2 - s * x3});
  return RatPoly({Rat(1), Rat(0), Rat(-1)}) * Q * (Rat(1) / (Rat(2) * (Rat(3) - x2)));
}

/// Least-squares slope of log y against log x.
inline double loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace kc::testing
