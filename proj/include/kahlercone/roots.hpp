#pragma once

#include <vector>

#include "kahlercone/poly.hpp"

namespace kc {

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rat lo;
  Rat hi;

  [[nodiscard]] Rat width() const { return hi - lo; }
  [[nodiscard]] Rat midpoint() const { return (lo + hi) / Rat(2); }
  [[nodiscard]] bool contains(const Rat& r) const { return lo <= r && r <= hi; }
  [[nodiscard]] bool positive() const { return lo.sign() > 0; }
  [[nodiscard]] bool negative() const { return hi.sign() < 0; }
  friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
/// Throws std::domain_error when the divisor contains zero.
RatInterval operator/(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rat& s, const RatInterval& a);

/// Interval Horner evaluation: an enclosure of { p(t) : t in x }.
/// Inclusion-monotone in x.
RatInterval eval_interval(const RatPoly& p, const RatInterval& x);

/// One distinct real root: it is the only root of the polynomial in the open
/// interval (lo, hi), and neither endpoint is a root.
struct RootRecord {
  RatInterval enclosure;
  unsigned multiplicity = 1;
};

/// Sturm chain of a polynomial. Built from the square-free part, so counts are
/// of distinct roots.
class SturmChain {
 public:
  explicit SturmChain(const RatPoly& p);

  /// Sign variations of the chain at z (zeros skipped).
  [[nodiscard]] int variations(const Rat& z) const;
  /// Distinct roots in the open interval (a, b). Requires a < b.
  [[nodiscard]] int count_open(const Rat& a, const Rat& b) const;
  [[nodiscard]] const RatPoly& square_free() const { return chain_.front(); }

 private:
  std::vector<RatPoly> chain_;
};

/// Distinct real roots of p in (a, b) when open is set, in [a, b] otherwise.
/// Throws DegenerateInput for p == 0 or a >= b.
int count_roots_in(const RatPoly& p, const Rat& a, const Rat& b, bool open = true);

/// Default refinement width for isolating intervals, 2^-40.
Rat default_root_width();

/// Isolates every distinct root of p in the open interval (a, b), sorted
/// ascending, each with its multiplicity in p. Intervals are pairwise disjoint
/// and no wider than `width`.
std::vector<RootRecord> isolate_roots(const RatPoly& p, const Rat& a, const Rat& b,
                                      const Rat& width = default_root_width());

/// Shrinks an isolating interval of a root of the square-free polynomial `sf`
/// by exact bisection until its width is at most `width`.
RatInterval refine_root(const RatPoly& sf, RatInterval enclosure, const Rat& width);

enum class Positivity { Positive, NonnegWithInteriorZeros, SomewhereNegative };

const char* to_string(Positivity p);

/// Exact sign classification of p on the open interval (a, b).
Positivity is_nonneg_on(const RatPoly& p, const Rat& a, const Rat& b);

/// Certified enclosure of min_{[a,b]} p: lower is a guaranteed lower bound and
/// upper is attained (value of p at an exact rational point). The critical
/// points are isolated exactly and refined to `width`.
RatInterval min_on_interval(const RatPoly& p, const Rat& a, const Rat& b,
                            const Rat& width = default_root_width());

}  // namespace kc
