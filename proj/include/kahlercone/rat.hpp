#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace kc {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class so that expression
/// templates never leak into user code.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "n/d" or "-n/d" (whitespace not allowed). Throws
  /// std::invalid_argument on malformed input or zero denominator.
  static Rat parse(std::string_view text);
  /// Exact value of a finite double.
  static Rat from_double(double v);

  [[nodiscard]] std::string str() const;  // "num/den"; integers as "n/1"
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rat abs(const Rat& r);
Rat pow(const Rat& r, unsigned e);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);
/// 2^e for signed e.
Rat pow2(int e);

}  // namespace kc

template <>
struct std::hash<kc::Rat> {
  std::size_t operator()(const kc::Rat& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
