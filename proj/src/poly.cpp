#include "kahlercone/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kc {

RatPoly RatPoly::monomial(const Rat& c, unsigned degree) {
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat RatPoly::eval(const Rat& z) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

double RatPoly::eval(double z) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_double();
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::derivative(unsigned order) const {
  RatPoly p = *this;
  for (unsigned i = 0; i < order; ++i) p = p.derivative();
  return p;
}

RatPoly RatPoly::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<Rat> a(c_.size() + 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
  return RatPoly(std::move(a));
}

RatPoly RatPoly::compose_affine(const Rat& a, const Rat& b) const {
  return compose(RatPoly({b, a}));
}

RatPoly RatPoly::compose(const RatPoly& q) const {
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q;
    acc += RatPoly::constant(*it);
  }
  return acc;
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return {};
  RatPoly out = *this;
  out *= Rat(1) / leading();
  return out;
}

Rat RatPoly::integrate(const Rat& a, const Rat& b) const {
  const RatPoly anti = antiderivative();
  return anti.eval(b) - anti.eval(a);
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rat& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

std::string RatPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Rat mag = abs(c);
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    const std::string m = mag.is_integer() ? mag.num().get_str() : mag.str();
    if (i == 0) {
      os << m;
    } else {
      if (mag != Rat(1)) os << m << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RatPoly pow(const RatPoly& p, unsigned e) {
  RatPoly out = RatPoly::constant(Rat(1));
  RatPoly base = p;
  while (e != 0) {
    if (e & 1U) out *= base;
    base *= base;
    e >>= 1U;
  }
  return out;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DegenerateInput("polynomial division by zero polynomial");
  std::vector<Rat> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RatPoly(), a};
  std::vector<Rat> quo(static_cast<std::size_t>(da - db + 1), Rat(0));
  const Rat lead_inv = Rat(1) / b.leading();
  for (int i = da; i >= db; --i) {
    const Rat& top = rem[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    const Rat f = top * lead_inv;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DegenerateInput("polynomial division is not exact");
  return q;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() && b.is_zero()) throw DegenerateInput("gcd of two zero polynomials");
  RatPoly x = a.monic();
  RatPoly y = b.monic();
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Rat moment_integral(const RatPoly& p, unsigned r) {
  // t^k integrates to 2/(k+1) over [-1,1] for even k and to 0 for odd k.
  Rat acc(0);
  const auto cs = p.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::size_t k = i + r;
    if (k % 2 == 1 || cs[i].is_zero()) continue;
    acc += cs[i] * Rat(2, static_cast<long>(k + 1));
  }
  return acc;
}

std::vector<std::pair<RatPoly, unsigned>> square_free_decompose(const RatPoly& p) {
  if (p.is_zero()) throw DegenerateInput("square-free decomposition of the zero polynomial");
  std::vector<std::pair<RatPoly, unsigned>> out;
  if (p.degree() == 0) return out;
  const RatPoly dp = p.derivative();
  RatPoly a = gcd(p, dp);
  RatPoly b = exact_div(p.monic(), a);
  RatPoly c = exact_div(dp * (Rat(1) / p.leading()), a);
  RatPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    RatPoly g = gcd(b, d);
    b = exact_div(b, g);
    c = exact_div(d, g);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

RatPoly square_free_part(const RatPoly& p) {
  if (p.is_zero()) throw DegenerateInput("square-free part of the zero polynomial");
  if (p.degree() <= 0) return RatPoly::constant(Rat(1));
  return exact_div(p.monic(), gcd(p, p.derivative()));
}

}  // namespace kc
