#include "kahlercone/admissible.hpp"

#include <cmath>
#include <string>

#include "kahlercone/quadrature.hpp"

namespace kc {

void AdmissibleClass::validate() const {
  if (kappa.sign() <= 0) throw InvalidClass("kappa", "cone angle parameter must be > 0, got " + kappa.str());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    const std::string where = "factors[" + std::to_string(i) + "]";
    if (f.d < 1) throw InvalidClass(where + ".d", "dimension must be >= 1");
    if (f.x.sign() <= 0 || f.x >= Rat(1)) throw InvalidClass(where + ".x", "must lie in (0,1), got " + f.x.str());
  }
}

RatPoly characteristic_polynomial(const std::vector<BaseFactor>& factors) {
  RatPoly p = RatPoly::constant(Rat(1));
  for (const auto& f : factors) p *= pow(RatPoly({Rat(1), f.x}), f.d);
  return p;
}

namespace {

// p_c / (1 + x_i z), exact because d_i >= 1.
RatPoly reduced_weight(const RatPoly& p_c, const BaseFactor& f) {
  try {
    return exact_div(p_c, RatPoly({Rat(1), f.x}));
  } catch (const DegenerateInput&) {
    throw InvariantViolation("1 + x z does not divide p_c");
  }
}

}  // namespace

RatPoly curvature_term(const std::vector<BaseFactor>& factors) {
  const RatPoly p_c = characteristic_polynomial(factors);
  RatPoly out;
  for (const auto& f : factors) {
    out += reduced_weight(p_c, f) * (Rat(2) * Rat(static_cast<long>(f.d)) * f.s * f.x);
  }
  return out;
}

Moments moments(const AdmissibleClass& c) {
  const RatPoly p_c = characteristic_polynomial(c);
  Moments m;
  m.alpha0 = moment_integral(p_c, 0);
  m.alpha1 = moment_integral(p_c, 1);
  m.alpha2 = moment_integral(p_c, 2);
  const Rat p_plus = p_c.eval(Rat(1));
  const Rat p_minus = p_c.eval(Rat(-1));
  m.beta0 = c.kappa * p_plus + c.kappa * p_minus;
  m.beta1 = c.kappa * p_plus - c.kappa * p_minus;
  for (const auto& f : c.factors) {
    const RatPoly w = reduced_weight(p_c, f);
    const Rat scale = Rat(static_cast<long>(f.d)) * f.s * f.x;
    m.beta0 += scale * moment_integral(w, 0);
    m.beta1 += scale * moment_integral(w, 1);
  }
  return m;
}

Coefficients solve_AB(const Moments& m) {
  const Rat gram = m.gram();
  if (gram.sign() <= 0) throw InvariantViolation("alpha0*alpha2 - alpha1^2 must be positive, got " + gram.str());
  Coefficients out;
  out.A = Rat(2) * (m.beta0 * m.alpha1 - m.beta1 * m.alpha0) / gram;
  out.B = Rat(2) * (m.alpha1 * m.beta1 - m.alpha2 * m.beta0) / gram;
  if (!(out.A * m.alpha1 + out.B * m.alpha0 + Rat(2) * m.beta0).is_zero() ||
      !(out.A * m.alpha2 + out.B * m.alpha1 + Rat(2) * m.beta1).is_zero()) {
    throw InvariantViolation("A, B do not solve the moment system");
  }
  return out;
}

Coefficients solve_AB(const AdmissibleClass& c) { return solve_AB(moments(c)); }

namespace {

struct Built {
  Coefficients ab;
  Moments m;
  RatPoly p_c;
  RatPoly F;
};

Built build_profile(const AdmissibleClass& c) {
  Built b;
  b.p_c = characteristic_polynomial(c);
  b.m = moments(c);
  b.ab = solve_AB(b.m);
  const RatPoly second = RatPoly({b.ab.B, b.ab.A}) * b.p_c + curvature_term(c.factors);
  const Rat minus_one(-1);
  const Rat slope0 = Rat(2) * c.kappa * b.p_c.eval(minus_one);
  RatPoly first = second.antiderivative();
  first += RatPoly::constant(slope0 - first.eval(minus_one));
  RatPoly F = first.antiderivative();
  F -= RatPoly::constant(F.eval(minus_one));
  if (!F.eval(Rat(1)).is_zero()) throw InvariantViolation("extremal polynomial does not vanish at z = 1");
  if (F.derivative().eval(Rat(1)) != -Rat(2) * c.kappa * b.p_c.eval(Rat(1))) {
    throw InvariantViolation("extremal polynomial has the wrong slope at z = 1");
  }
  b.F = std::move(F);
  return b;
}

}  // namespace

KappaDecomposition kappa_decomposition(const std::vector<BaseFactor>& factors) {
  const AdmissibleClass base{factors, Rat(1)};
  const RatPoly f1 = build_profile(base).F;
  const RatPoly f2 = build_profile(base.with_kappa(Rat(2))).F;
  const RatPoly f3 = build_profile(base.with_kappa(Rat(3))).F;
  KappaDecomposition out;
  out.F_lin = f2 - f1;
  out.F_zero = f1 - out.F_lin;
  if (out.F_zero + out.F_lin * Rat(3) != f3) throw InvariantViolation("extremal polynomial is not affine in kappa");
  out.G_x = out.F_lin * (moments(base).gram() / Rat(2));
  return out;
}

ExtremalData extremal_polynomial(const AdmissibleClass& c) {
  c.validate();
  Built b = build_profile(c);
  KappaDecomposition k = kappa_decomposition(c.factors);
  if (k.F_zero + k.F_lin * c.kappa != b.F) throw InvariantViolation("kappa decomposition does not reproduce F_omega");
  ExtremalData out;
  out.A = b.ab.A;
  out.B = b.ab.B;
  out.p_c = std::move(b.p_c);
  out.F_omega = std::move(b.F);
  out.F_zero = std::move(k.F_zero);
  out.F_lin = std::move(k.F_lin);
  out.moments = b.m;
  out.kappa = c.kappa;
  return out;
}

ExtremalProfile profile_of(const AdmissibleClass& c) {
  ExtremalData e = extremal_polynomial(c);
  return {std::move(e.p_c), std::move(e.F_omega), c.kappa};
}

std::optional<RatInterval> min_positive_angle(const std::vector<BaseFactor>& factors, const Rat& width) {
  if (width.sign() <= 0) throw InvalidClass("width", "must be > 0");
  AdmissibleClass{factors, Rat(1)}.validate();
  const KappaDecomposition k = kappa_decomposition(factors);
  const Rat lo_end(-1);
  const Rat hi_end(1);
  if (is_nonneg_on(k.G_x, lo_end, hi_end) != Positivity::Positive) return std::nullopt;
  auto positive_at = [&](const Rat& kappa) {
    return is_nonneg_on(k.F_zero + k.F_lin * kappa, lo_end, hi_end) == Positivity::Positive;
  };
  // F_zero has double zeros at +-1 while F_lin has simple ones, so doubling
  // terminates. Positivity is monotone in kappa since F_lin > 0.
  Rat hi(1);
  while (!positive_at(hi)) hi *= Rat(2);
  Rat lo(0);
  while (hi - lo > width) {
    const Rat mid = (lo + hi) / Rat(2);
    if (positive_at(mid)) hi = mid;
    else lo = mid;
  }
  return RatInterval{lo, hi};
}

ThetaReport theta_profile_checks(const AdmissibleClass& c, const RatPoly& F, double tolerance) {
  c.validate();
  return theta_profile_checks(characteristic_polynomial(c), c.kappa, F, tolerance);
}

ThetaReport theta_profile_checks(const RatPoly& p_c, const Rat& kappa, const RatPoly& F, double tolerance) {
  const Rat one(1);
  const Rat minus_one(-1);
  if (!F.eval(one).is_zero() || !F.eval(minus_one).is_zero()) {
    throw InvalidClass("F", "profile must vanish at z = +-1");
  }
  ThetaReport r;
  r.vanishes_at_ends = true;
  const RatPoly dF = F.derivative();
  const RatPoly dp = p_c.derivative();
  const Rat pm = p_c.eval(minus_one);
  // Theta = F/p_c, and F(+-1) = 0 kills the F p_c' terms at the ends.
  r.slope_minus = dF.eval(minus_one) / pm;
  r.slope_plus = dF.eval(one) / p_c.eval(one);
  r.slopes_ok = r.slope_minus == Rat(2) * kappa && r.slope_plus == -Rat(2) * kappa;
  r.theta2_minus = F.derivative(2).eval(minus_one) / pm - Rat(2) * dF.eval(minus_one) * dp.eval(minus_one) / (pm * pm);

  const double k = kappa.to_double();
  r.d2_expected = 2.0 * k * k;
  r.d4_expected = 4.0 * k * k * r.theta2_minus.to_double();
  if (r.slope_minus.sign() <= 0) return r;

  // Theta(-1 + t^2) = t^2 * G(t^2) / p_c(-1 + t^2) with G(w) = F(-1 + w) / w.
  const RatPoly G = exact_div(F.compose_affine(one, minus_one), RatPoly({Rat(0), one}));
  auto ratio = [&](double t) { return G.eval(t * t) / p_c.eval(-1.0 + t * t); };
  auto ds_dt = [&](double t) { return 2.0 / std::sqrt(ratio(t)); };
  auto arclength = [&](double t) { return gauss_legendre(ds_dt, 0.0, t, 16, 4); };
  auto theta_at_arclength = [&](double h) {
    double t = h * std::sqrt(ratio(0.0)) / 2.0;
    for (int it = 0; it < 60; ++it) {
      const double step = (arclength(t) - h) / ds_dt(t);
      t -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, t)) break;
    }
    return t * t * ratio(t);
  };

  // Even extension in s: D2(h) = 2 E(h)/h^2, D4(h) = (2 E(2h) - 8 E(h))/h^4,
  // both with error series in h^2.
  // Base step from the Taylor radius of Theta at z = -1, estimated from the
  // coefficients of p_c(-1 + w) and G(w).
  auto radius = [](const RatPoly& q) {
    double rho = 1.0;
    const double a0 = std::abs(q.coeffs()[0].to_double());
    for (std::size_t j = 1; j < q.coeffs().size(); ++j) {
      const double aj = std::abs(q.coeffs()[j].to_double());
      if (aj > 0.0) rho = std::min(rho, std::pow(a0 / aj, 1.0 / static_cast<double>(j)));
    }
    return rho;
  };
  const double rho = std::min(radius(p_c.compose_affine(one, minus_one)), radius(G));
  constexpr int kLevels = 4;
  const double h0 = arclength(std::min(0.1, std::sqrt(rho / 10.0)));
  double d2[kLevels];
  double d4[kLevels];
  for (int i = 0; i < kLevels; ++i) {
    const double h = h0 / std::pow(2.0, i);
    const double e1 = theta_at_arclength(h);
    const double e2 = theta_at_arclength(2.0 * h);
    d2[i] = 2.0 * e1 / (h * h);
    d4[i] = (2.0 * e2 - 8.0 * e1) / (h * h * h * h);
  }
  for (int level = 1; level < kLevels; ++level) {
    const double f = std::pow(4.0, level);
    for (int i = kLevels - 1; i >= level; --i) {
      d2[i] = (f * d2[i] - d2[i - 1]) / (f - 1.0);
      d4[i] = (f * d4[i] - d4[i - 1]) / (f - 1.0);
    }
  }
  r.d2_numeric = d2[kLevels - 1];
  r.d4_numeric = d4[kLevels - 1];
  r.d2_rel_error = std::abs(r.d2_numeric - r.d2_expected) / std::abs(r.d2_expected);
  // Theta''(-1) may vanish; fall back to the magnitude of the quadratic term.
  const double d4_scale = std::max(std::abs(r.d4_expected), r.d2_expected);
  r.d4_rel_error = std::abs(r.d4_numeric - r.d4_expected) / d4_scale;
  r.passed = r.vanishes_at_ends && r.slopes_ok && r.d2_rel_error <= tolerance && r.d4_rel_error <= tolerance;
  return r;
}

}  // namespace kc
