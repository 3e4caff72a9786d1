#include "kahlercone/tf.hpp"

#include <algorithm>
#include <sstream>

namespace kc {

void TFParams::validate() const {
  if (x.sign() <= 0 || x >= Rat(1)) throw InvalidClass("x", "must lie in (0,1), got " + x.str());
  if (kappa.sign() <= 0) throw InvalidClass("kappa", "cone angle parameter must be > 0, got " + kappa.str());
}

AdmissibleClass TFParams::to_class() const { return {{BaseFactor{1, s, x}}, kappa}; }

RatPoly tf_Q(const TFParams& p) {
  p.validate();
  const Rat& x = p.x;
  const Rat& s = p.s;
  const Rat& k = p.kappa;
  const Rat x2 = x * x;
  const Rat x3 = x2 * x;
  return RatPoly({Rat(6) * k + s * x3 - Rat(4) * k * x2, Rat(6) * k * x - Rat(2) * k * x3, Rat(2) * k * x2 - s * x3});
}

RatPoly tf_closed_form_F(const TFParams& p) {
  const Rat scale = Rat(1) / (Rat(2) * (Rat(3) - p.x * p.x));
  return RatPoly({Rat(1), Rat(0), Rat(-1)}) * tf_Q(p) * scale;
}

Coefficients tf_AB(const TFParams& p) {
  p.validate();
  const Rat& x = p.x;
  const Rat& s = p.s;
  const Rat& k = p.kappa;
  const Rat denom = Rat(3) - x * x;
  return {Rat(6) * x * (s * x - Rat(2) * k) / denom, Rat(6) * (k * x * x - s * x - k) / denom};
}

Rat tf_kappa_bound(const Rat& x, const Rat& s) {
  if (x.sign() <= 0 || x >= Rat(1)) throw InvalidClass("x", "must lie in (0,1), got " + x.str());
  return max(Rat(0), -s * x * x / ((Rat(1) - x) * (Rat(3) + x)));
}

RatPoly tf_delta_poly(const Rat& s) {
  const RatPoly b({Rat(0), Rat(6), Rat(0), Rat(-2)});         // 6x - 2x^3
  const RatPoly a({Rat(0), Rat(0), Rat(2), -s});              // 2x^2 - s x^3
  const RatPoly c({Rat(6), Rat(0), Rat(-4), s});              // 6 + s x^3 - 4x^2
  return b * b - Rat(4) * a * c;
}

Rat tf_discriminant(const Rat& x, const Rat& s) { return tf_delta_poly(s).eval(x); }

Rat tf_discriminant_from_pipeline(const Rat& x, const Rat& s) {
  const TFParams p{x, s, Rat(1)};
  const RatPoly F = extremal_polynomial(p.to_class()).F_omega;
  const RatPoly Q = exact_div(F * (Rat(2) * (Rat(3) - x * x)), RatPoly({Rat(1), Rat(0), Rat(-1)}));
  if (Q.degree() > 2) throw InvariantViolation("pipeline Q is not quadratic");
  return Q.coeff(1) * Q.coeff(1) - Rat(4) * Q.coeff(2) * Q.coeff(0);
}

BiPoly::BiPoly(std::vector<RatPoly> coeffs_in_s) : c_(std::move(coeffs_in_s)) { trim(); }

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::derivative_x(unsigned order) const {
  BiPoly out = *this;
  for (unsigned k = 0; k < order; ++k) {
    std::vector<RatPoly> d;
    for (std::size_t i = 1; i < out.c_.size(); ++i) d.push_back(out.c_[i] * Rat(static_cast<long>(i)));
    out = BiPoly(std::move(d));
  }
  return out;
}

RatPoly BiPoly::at_x(const Rat& x) const {
  RatPoly out;
  for (std::size_t i = c_.size(); i-- > 0;) out = out * x + c_[i];
  return out;
}

RatPoly BiPoly::at_s(const Rat& s) const {
  std::vector<Rat> c;
  c.reserve(c_.size());
  for (const auto& ci : c_) c.push_back(ci.eval(s));
  return RatPoly(std::move(c));
}

namespace {

std::string in_s(const RatPoly& p) {
  std::string t = p.to_string();
  std::replace(t.begin(), t.end(), 'z', 's');
  return t;
}

}  // namespace

std::string BiPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << in_s(c_[i]) << ")";
    if (i > 0) os << "*x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  std::vector<RatPoly> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return BiPoly(std::move(c));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  std::vector<RatPoly> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<RatPoly> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return BiPoly(std::move(c));
}

BiPoly tf_delta_symbolic() {
  const RatPoly zero;
  const RatPoly s({Rat(0), Rat(1)});
  auto k = [](long v) { return RatPoly::constant(Rat(v)); };
  const BiPoly b({zero, k(6), zero, k(-2)});
  const BiPoly a({zero, zero, k(2), -s});
  const BiPoly c({k(6), zero, k(-4), s});
  return b * b - BiPoly({k(4)}) * a * c;
}

std::vector<LadderCheck> tf_delta_ladder() {
  const BiPoly delta = tf_delta_symbolic();
  const Rat zero(0);
  const Rat one(1);
  auto sp = [](std::initializer_list<Rat> c) { return RatPoly(c); };
  std::vector<LadderCheck> out;
  auto check = [&](std::string name, unsigned order, const Rat& x, const RatPoly& stated) {
    const RatPoly got = delta.derivative_x(order).at_x(x);
    out.push_back({std::move(name), in_s(got), in_s(stated), got == stated});
  };

  // D''''(x) = 192 + 1440 x^2 - 2880 s x + 1440 s^2 x^2.
  const BiPoly d4_stated({sp({Rat(192)}), sp({Rat(0), Rat(-2880)}), sp({Rat(1440), Rat(0), Rat(1440)})});
  const BiPoly d4 = delta.derivative_x(4);
  out.push_back({"D''''(x)", d4.to_string(), d4_stated.to_string(), d4 == d4_stated});

  check("D'''(0)", 3, zero, sp({Rat(0), Rat(144)}));
  check("D'''(1)", 3, one, sp({Rat(672), Rat(-1296), Rat(480)}));
  check("D''(0)", 2, zero, sp({Rat(-24)}));
  check("D''(1)", 2, one, sp({Rat(192), Rat(-336), Rat(120)}));
  check("D'(0)", 1, zero, RatPoly());
  check("D'(1)", 1, one, sp({Rat(32), Rat(-48), Rat(24)}));
  check("D(0)", 0, zero, RatPoly());
  check("D(1)", 0, one, sp({Rat(4), Rat(0), Rat(1)}));
  return out;
}

XsEnclosure tf_find_xs(const Rat& s, const Rat& width) {
  if (s.sign() >= 0) throw InvalidClass("s", "x_s exists only for s < 0, got " + s.str());
  if (width.sign() <= 0) throw InvalidClass("width", "must be > 0, got " + width.str());
  const RatPoly delta = tf_delta_poly(s);
  const auto roots = isolate_roots(delta, Rat(0), Rat(1), width);
  if (roots.size() != 1 || roots.front().multiplicity != 1) {
    throw InvariantViolation("Delta does not have a unique simple root in (0,1) for s = " + s.str());
  }
  XsEnclosure out;
  out.enclosure = roots.front().enclosure;
  out.delta_lo = delta.eval(out.enclosure.lo);
  out.delta_hi = delta.eval(out.enclosure.hi);
  if (out.delta_lo.sign() >= 0 || out.delta_hi.sign() <= 0) {
    throw InvariantViolation("Delta sign pattern around x_s is not (-, +)");
  }
  return out;
}

TFCaseReport tf_regime(const Rat& x, const Rat& s, const Rat& width) {
  const TFParams p{x, s, Rat(1)};
  p.validate();
  TFCaseReport r;
  r.xs = tf_find_xs(s, width);
  r.delta = tf_discriminant(x, s);
  const ExtremalProfile prof = profile_of(p.to_class());
  r.regime = classify(prof);
  if (r.xs.enclosure.contains(x)) {
    r.case_number = 2;
    r.near_critical = true;
    return r;
  }
  if (r.delta.sign() < 0) {
    r.case_number = 1;
    return r;
  }
  r.case_number = 3;
  r.split = split(prof, width);
  const RatPoly Q = tf_Q(p);
  r.vertex = -Q.coeff(1) / (Rat(2) * Q.coeff(2));
  r.vertex_inside = Rat(-1) < *r.vertex && *r.vertex < Rat(1);
  return r;
}

std::vector<SweepRow> tf_sweep(const Rat& s, const Rat& lo, const Rat& hi, unsigned n, const Rat& width) {
  if (n == 0) throw InvalidClass("points", "grid needs at least one point");
  if (lo.sign() < 0 || hi > Rat(1) || !(lo < hi)) throw InvalidClass("x_range", "need 0 <= lo < hi <= 1");
  const RatPoly delta = tf_delta_poly(s);
  std::vector<SweepRow> rows;
  rows.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    SweepRow row;
    row.x = lo + (hi - lo) * Rat(static_cast<long>(i + 1), static_cast<long>(n + 1));
    row.delta = delta.eval(row.x);
    const ExtremalProfile prof = profile_of(TFParams{row.x, s, Rat(1)}.to_class());
    row.regime = classify(prof);
    row.roots = isolate_roots(prof.F, Rat(-1), Rat(1), width);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kc
