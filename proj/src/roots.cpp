#include "kahlercone/roots.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace kc {

RatInterval operator+(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RatInterval operator-(const RatInterval& a, const RatInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  const std::array<Rat, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return {*mn, *mx};
}

RatInterval operator/(const RatInterval& a, const RatInterval& b) {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0) throw std::domain_error("interval division by an interval containing 0");
  return a * RatInterval{Rat(1) / b.hi, Rat(1) / b.lo};
}

RatInterval operator*(const Rat& s, const RatInterval& a) {
  return s.sign() >= 0 ? RatInterval{s * a.lo, s * a.hi} : RatInterval{s * a.hi, s * a.lo};
}

RatInterval eval_interval(const RatPoly& p, const RatInterval& x) {
  RatInterval acc{Rat(0), Rat(0)};
  const auto cs = p.coeffs();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    acc = acc * x;
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

Rat default_root_width() { return pow2(-40); }

SturmChain::SturmChain(const RatPoly& p) {
  if (p.is_zero()) throw DegenerateInput("Sturm chain of the zero polynomial");
  chain_.push_back(square_free_part(p));
  if (chain_.back().degree() == 0) return;
  chain_.push_back(chain_.back().derivative());
  while (chain_.back().degree() > 0) {
    RatPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmChain::variations(const Rat& z) const {
  int count = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = q.sign_at(z);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmChain::count_open(const Rat& a, const Rat& b) const {
  if (!(a < b)) throw DegenerateInput("degenerate interval: need a < b");
  const RatPoly& sf = square_free();
  if (sf.sign_at(a) != 0 && sf.sign_at(b) != 0) return variations(a) - variations(b);
  // Deflate roots sitting exactly on the endpoints; interior roots are unchanged.
  RatPoly q = sf;
  if (q.sign_at(a) == 0) q = exact_div(q, RatPoly::linear_root(a));
  if (q.sign_at(b) == 0) q = exact_div(q, RatPoly::linear_root(b));
  const SturmChain deflated(q);
  return deflated.variations(a) - deflated.variations(b);
}

int count_roots_in(const RatPoly& p, const Rat& a, const Rat& b, bool open) {
  if (p.is_zero()) throw DegenerateInput("root count of the zero polynomial");
  if (!(a < b)) throw DegenerateInput("degenerate interval: need a < b");
  const SturmChain chain(p);
  int n = chain.count_open(a, b);
  if (!open) {
    if (p.sign_at(a) == 0) ++n;
    if (p.sign_at(b) == 0) ++n;
  }
  return n;
}

namespace {

// A point strictly inside (lo, hi) where sf does not vanish.
Rat split_point(const RatPoly& sf, const Rat& lo, const Rat& hi) {
  static const std::array<Rat, 8> fractions{Rat(1, 2), Rat(3, 7),  Rat(4, 7),  Rat(2, 5),
                                            Rat(3, 5), Rat(5, 11), Rat(6, 11), Rat(7, 17)};
  const Rat w = hi - lo;
  for (const auto& f : fractions) {
    Rat m = lo + f * w;
    if (sf.sign_at(m) != 0) return m;
  }
  // sf has finitely many roots, so a dyadic perturbation eventually succeeds.
  for (int k = 3;; ++k) {
    Rat m = lo + w * (Rat(1, 2) + pow2(-k));
    if (sf.sign_at(m) != 0) return m;
  }
}

struct Pending {
  Rat lo;
  Rat hi;
};

// Roots of the square-free polynomial sf in (a, b), each in an open interval
// whose endpoints are not roots of sf.
std::vector<RatInterval> isolate_square_free(const RatPoly& sf, const Rat& a, const Rat& b) {
  std::vector<RatInterval> out;
  if (sf.degree() <= 0) return out;
  const SturmChain chain(sf);
  std::vector<Pending> stack{{a, b}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    const int n = chain.count_open(cur.lo, cur.hi);
    if (n == 0) continue;
    if (n == 1 && sf.sign_at(cur.lo) != 0 && sf.sign_at(cur.hi) != 0) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    const Rat m = split_point(sf, cur.lo, cur.hi);
    stack.push_back({m, cur.hi});
    stack.push_back({cur.lo, m});
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
  return out;
}

struct Tagged {
  RatInterval iv;
  unsigned multiplicity;
  const RatPoly* factor;
};

}  // namespace

RatInterval refine_root(const RatPoly& sf, RatInterval enclosure, const Rat& width) {
  if (width.sign() <= 0) throw DegenerateInput("refinement width must be positive");
  int s_lo = sf.sign_at(enclosure.lo);
  while (enclosure.width() > width) {
    const Rat m = enclosure.midpoint();
    const int s_m = sf.sign_at(m);
    if (s_m == 0) {
      // Exact rational root: any symmetric interval inside the old one isolates it.
      Rat eps = width / Rat(4);
      eps = min(eps, min(m - enclosure.lo, enclosure.hi - m) / Rat(2));
      return {m - eps, m + eps};
    }
    if (s_m == s_lo) {
      enclosure.lo = m;
      s_lo = s_m;
    } else {
      enclosure.hi = m;
    }
  }
  return enclosure;
}

std::vector<RootRecord> isolate_roots(const RatPoly& p, const Rat& a, const Rat& b, const Rat& width) {
  if (p.is_zero()) throw DegenerateInput("root isolation of the zero polynomial");
  if (!(a < b)) throw DegenerateInput("degenerate interval: need a < b");
  const auto factors = square_free_decompose(p);
  std::vector<Tagged> all;
  for (const auto& [f, mult] : factors) {
    for (const auto& iv : isolate_square_free(f, a, b)) all.push_back({refine_root(f, iv, width), mult, &f});
  }
  std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.iv.lo < y.iv.lo; });
  // Roots of different factors are distinct; shrink until the enclosures separate.
  bool overlapping = true;
  while (overlapping) {
    overlapping = false;
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
      if (all[i].iv.hi >= all[i + 1].iv.lo) {
        overlapping = true;
        auto& wider = all[i].iv.width() >= all[i + 1].iv.width() ? all[i] : all[i + 1];
        wider.iv = refine_root(*wider.factor, wider.iv, wider.iv.width() / Rat(2));
      }
    }
    if (overlapping) {
      std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.iv.lo < y.iv.lo; });
    }
  }
  std::vector<RootRecord> out;
  out.reserve(all.size());
  for (const auto& t : all) out.push_back({t.iv, t.multiplicity});
  return out;
}

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::Positive: return "Positive";
    case Positivity::NonnegWithInteriorZeros: return "NonnegWithInteriorZeros";
    case Positivity::SomewhereNegative: return "SomewhereNegative";
  }
  return "?";
}

Positivity is_nonneg_on(const RatPoly& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw DegenerateInput("sign classification of the zero polynomial");
  if (!(a < b)) throw DegenerateInput("degenerate interval: need a < b");
  const SturmChain chain(p);
  if (chain.count_open(a, b) == 0) {
    return p.sign_at((a + b) / Rat(2)) > 0 ? Positivity::Positive : Positivity::SomewhereNegative;
  }
  // Only a coarse isolation is needed for the decision.
  const auto roots = isolate_roots(p, a, b, b - a);
  for (const auto& r : roots) {
    if (r.multiplicity % 2 == 1) return Positivity::SomewhereNegative;
  }
  // One sample per gap: enclosure endpoints are never roots.
  if (p.sign_at(roots.front().enclosure.lo) < 0) return Positivity::SomewhereNegative;
  for (const auto& r : roots) {
    if (p.sign_at(r.enclosure.hi) < 0) return Positivity::SomewhereNegative;
  }
  return Positivity::NonnegWithInteriorZeros;
}

RatInterval min_on_interval(const RatPoly& p, const Rat& a, const Rat& b, const Rat& width) {
  if (b < a) throw DegenerateInput("degenerate interval: need a <= b");
  Rat lower = min(p.eval(a), p.eval(b));
  Rat upper = lower;
  if (a == b) return {lower, upper};
  const RatPoly dp = p.derivative();
  if (dp.is_zero()) return {lower, upper};
  for (const auto& r : isolate_roots(dp, a, b, width)) {
    const RatInterval v = eval_interval(p, r.enclosure);
    lower = min(lower, v.lo);
    upper = min(upper, p.eval(r.enclosure.midpoint()));
  }
  return {lower, upper};
}

}  // namespace kc
