#include "kahlercone/energy.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kahlercone/classifier.hpp"

namespace kc {

namespace {

const RatPoly& one_minus_z2() {
  static const RatPoly p({Rat(1), Rat(0), Rat(-1)});
  return p;
}

void require_open(double z) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("point outside the open interval (-1, 1)");
}

// x log x with the continuous extension 0 at x = 0.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

RatPoly SymplecticPotential::ratio_to_canonical() const {
  return RatPoly::constant(Rat(1)) + one_minus_z2() * w * kappa;
}

bool SymplecticPotential::is_valid() const {
  if (kappa.sign() <= 0) return false;
  return is_nonneg_on(ratio_to_canonical(), Rat(-1), Rat(1)) == Positivity::Positive;
}

RatPoly SymplecticPotential::smooth_part() const { return w.antiderivative().antiderivative(); }

double SymplecticPotential::value(double z) const {
  if (std::abs(z) > 1.0) throw std::domain_error("point outside [-1, 1]");
  return canonical_u(kappa, z) + smooth_part().eval(z);
}

double SymplecticPotential::derivative(double z) const {
  return canonical_u_prime(kappa, z) + w.antiderivative().eval(z);
}

double SymplecticPotential::second(double z) const { return canonical_u_second(kappa, z) + w.eval(z); }

double canonical_u_second(const Rat& kappa, double z) {
  require_open(z);
  return 1.0 / (kappa.to_double() * (1.0 - z) * (1.0 + z));
}

double canonical_u(const Rat& kappa, double z) {
  if (std::abs(z) > 1.0) throw std::domain_error("point outside [-1, 1]");
  return (xlogx(1.0 - z) + xlogx(1.0 + z)) / (2.0 * kappa.to_double());
}

double canonical_u_prime(const Rat& kappa, double z) {
  require_open(z);
  return (std::log1p(z) - std::log1p(-z)) / (2.0 * kappa.to_double());
}

Rat l_functional(const ExtremalProfile& prof, const SymplecticPotential& u) {
  if (prof.kappa != u.kappa) throw std::invalid_argument("potential and class have different kappa");
  const RatPoly reduced = exact_div(prof.F, one_minus_z2());
  return moment_integral(prof.F * u.w, 0) + moment_integral(reduced, 0) / u.kappa;
}

double l_functional_numeric(const ExtremalProfile& prof, const SymplecticPotential& u, const QuadratureSpec& q) {
  if (prof.kappa != u.kappa) throw std::invalid_argument("potential and class have different kappa");
  return integrate([&](double z) { return prof.F.eval(z) * u.second(z); }, -1.0, 1.0, q);
}

double k_energy(const ExtremalProfile& prof, const SymplecticPotential& u, const QuadratureSpec& q) {
  if (prof.kappa != u.kappa) throw std::invalid_argument("potential and class have different kappa");
  if (u.w.is_zero()) return 0.0;
  const RatPoly ratio = u.ratio_to_canonical();
  const double log_term =
      -integrate([&](double z) { return prof.p_c.eval(z) * std::log(ratio.eval(z)); }, -1.0, 1.0, q);
  return log_term + moment_integral(prof.F * u.w, 0).to_double();
}

EnergyParts k_energy_density(const ExtremalProfile& prof, const std::function<double(double)>& density, double a,
                             double b, const QuadratureSpec& q) {
  const double k = prof.kappa.to_double();
  EnergyParts out;
  out.log_term = -integrate(
      [&](double z) { return prof.p_c.eval(z) * std::log1p(k * (1.0 - z * z) * density(z)); }, a, b, q);
  out.linear_term = integrate([&](double z) { return prof.F.eval(z) * density(z); }, a, b, q);
  return out;
}

double j_proxy(const SymplecticPotential& u) {
  const double canonical = (2.0 * std::numbers::ln2 - 1.0) / u.kappa.to_double();
  return canonical + u.smooth_part().integrate(Rat(-1), Rat(1)).to_double();
}

double calabi_integral(const RatPoly& p_c, const std::function<double(double)>& q2, double a, double b,
                       const QuadratureSpec& q) {
  return integrate(
      [&](double z) {
        const double v = q2(z);
        return v * v / p_c.eval(z);
      },
      a, b, q);
}

double calabi_energy(const ExtremalProfile& prof, const RatPoly& F, const QuadratureSpec& q) {
  const Rat one(1);
  const Rat minus_one(-1);
  const RatPoly dF = F.derivative();
  if (!F.eval(one).is_zero() || !F.eval(minus_one).is_zero() ||
      dF.eval(minus_one) != Rat(2) * prof.kappa * prof.p_c.eval(minus_one) ||
      dF.eval(one) != -Rat(2) * prof.kappa * prof.p_c.eval(one)) {
    throw std::invalid_argument("profile violates the boundary conditions F(+-1) = 0, F'(+-1) = -+2 kappa p_c(+-1)");
  }
  const RatPoly q2 = (F - prof.F).derivative(2);
  if (q2.is_zero()) return 0.0;
  return calabi_integral(prof.p_c, [&](double z) { return q2.eval(z); }, -1.0, 1.0, q);
}

Rat calabi_lower_bound(const ExtremalProfile& prof, const Rat& a, const Rat& b) {
  if (!(a < b) || a <= Rat(-1) || b >= Rat(1)) throw std::invalid_argument("need -1 < a < b < 1");
  const Rat eps = min_on_interval(-prof.F, a, b).lo;
  if (eps.sign() <= 0) throw InvariantViolation("F_omega is not certified negative on [a, b]");
  const Rat lambda = -min_on_interval(-prof.p_c, Rat(-1), Rat(1)).lo;
  const Rat gap = Rat(1) - a;
  return Rat(3) * eps * eps / (lambda * gap * gap * gap);
}

double legendre_inverse_slope(const SymplecticPotential& u, double y) {
  double lo = -1.0;
  double hi = 1.0;
  // u' runs from -inf to +inf on (-1, 1); bisection to floating resolution.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (u.derivative(mid) < y) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double legendre_phi(const SymplecticPotential& u, double y) {
  const double z = legendre_inverse_slope(u, y);
  return -u.value(z) + y * z;
}

std::vector<LegendreSample> legendre_transform(const SymplecticPotential& u, const std::vector<double>& zs) {
  std::vector<LegendreSample> out;
  out.reserve(zs.size());
  for (double z : zs) {
    require_open(z);
    const double y = u.derivative(z);
    out.push_back({z, y, -u.value(z) + y * z, z});
  }
  return out;
}

double bump_eta(double s) {
  const double d = s * s - 1.0;
  return d < 0.0 ? std::exp(1.0 / d) : 0.0;
}

double bump_eta_second(double s) {
  const double d = s * s - 1.0;
  if (!(d < 0.0)) return 0.0;
  const double eta = std::exp(1.0 / d);
  if (eta == 0.0) return 0.0;
  const double s4 = s * s * s * s;
  return 2.0 * (3.0 * s4 - 1.0) * eta / (d * d * d * d);
}

double bump_eta_mass(const QuadratureSpec& q) { return integrate(bump_eta, -1.0, 1.0, q); }

BumpPotential::BumpPotential(double z0, double k) : z0_(z0), k_(k) {
  if (!(std::abs(z0) < 1.0)) throw std::invalid_argument("bump center must lie in (-1, 1)");
  if (!(k > 1.0 / std::min(1.0 - z0, 1.0 + z0))) {
    throw std::invalid_argument("bump support escapes (-1, 1): need k > 1/min(1-z0, 1+z0)");
  }
}

double BumpPotential::value(double z, const QuadratureSpec& q) const {
  const double lo = std::max(std::min(0.0, z), support_lo());
  const double hi = std::min(std::max(0.0, z), support_hi());
  if (!(lo < hi)) return 0.0;
  return integrate([&](double s) { return std::abs(z - s) * h(s); }, lo, hi, q);
}

double BumpPotential::integral(const QuadratureSpec& q) const {
  auto weight = [&](double s) {
    const double t = 1.0 - std::abs(s);
    return h(s) * t * t / 2.0;
  };
  const double lo = support_lo();
  const double hi = support_hi();
  if (lo < 0.0 && hi > 0.0) return integrate(weight, lo, 0.0, q) + integrate(weight, 0.0, hi, q);
  return integrate(weight, lo, hi, q);
}

double repeated_root_center(const ExtremalProfile& prof) {
  for (const auto& r : isolate_roots(prof.F, Rat(-1), Rat(1))) {
    if (r.multiplicity % 2 == 0) return r.enclosure.midpoint().to_double();
  }
  throw RegimeMismatch("profile has no interior repeated root");
}

BreakerPoint properness_breaker(const ExtremalProfile& prof, double z0, double k, const QuadratureSpec& q) {
  if (classify(prof) != Regime::BoundedNotProper) throw RegimeMismatch("properness breaker needs a BoundedNotProper profile");
  const BumpPotential f(z0, k);
  BreakerPoint p;
  p.k = k;
  p.l_value = integrate([&](double z) { return prof.F.eval(z) * k * f.h(z); }, f.support_lo(), f.support_hi(), q);
  p.j_value = k * f.integral(q);
  return p;
}

CalabiPoint calabi_minimizing_sequence(const ExtremalProfile& prof, double z0, double n, const QuadratureSpec& q) {
  if (classify(prof) != Regime::BoundedNotProper) throw RegimeMismatch("Calabi sequence needs a BoundedNotProper profile");
  const BumpPotential support(z0, n);  // same support condition as the bump potentials
  CalabiPoint p;
  p.n = n;
  p.calabi = calabi_integral(prof.p_c, [&](double z) { return bump_eta_second(n * (z - z0)); }, support.support_lo(),
                             support.support_hi(), q);
  p.positive_profile = true;
  for_each_node(-1.0, 1.0, q.order, q.panels * 4, [&](double z, double) {
    if (prof.F.eval(z) + bump_eta(n * (z - z0)) / (n * n) <= 0.0) p.positive_profile = false;
  });
  return p;
}

double calabi_limit_integral(const QuadratureSpec& q) {
  return integrate(
      [](double t) {
        const double v = bump_eta_second(t);
        return v * v;
      },
      -1.0, 1.0, q);
}

double calabi_limit_integral_tanh_sinh() {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [](double t) {
        const double d = t * t - 1.0;
        if (!(d < 0.0)) return 0.0;
        const double e = std::exp(2.0 / d);
        if (e == 0.0) return 0.0;
        const double a = 3.0 * t * t * t * t - 1.0;
        const double d2 = d * d;
        const double d4 = d2 * d2;
        return 4.0 * a * a * e / (d4 * d4);
      },
      -1.0, 1.0);
}

double UnboundedDirection::r(double z) const {
  return amplitude * bump_eta((z - center.to_double()) / half_width.to_double());
}

UnboundedDirection unbounded_direction(const ExtremalProfile& prof, const QuadratureSpec& q) {
  if (classify(prof) != Regime::Unbounded) throw RegimeMismatch("unbounded direction needs an Unbounded profile");
  const SplitReport rep = split(prof);
  for (const auto& part : rep.parts) {
    if (part.positive) continue;
    const Rat lo = part.left_end.hi;
    const Rat hi = part.right_end.lo;
    UnboundedDirection d;
    d.center = (lo + hi) / Rat(2);
    d.half_width = (hi - lo) / Rat(4);
    // Certify F < 0 on the closed support.
    if (count_roots_in(prof.F, d.center - d.half_width, d.center + d.half_width, false) != 0 ||
        prof.F.sign_at(d.center) >= 0) {
      throw InvariantViolation("negative part does not certify a root-free negative support");
    }
    const double base = integrate([&](double z) { return prof.F.eval(z) * d.r(z); }, d.lo(), d.hi(), q);
    d.amplitude = -1.0 / base;
    d.linear = integrate([&](double z) { return prof.F.eval(z) * d.r(z); }, d.lo(), d.hi(), q);
    return d;
  }
  throw InvariantViolation("Unbounded profile without a negative part");
}

DirectionPoint energy_along(const ExtremalProfile& prof, const UnboundedDirection& dir, double k,
                            const QuadratureSpec& q) {
  const double kap = prof.kappa.to_double();
  DirectionPoint p;
  p.k = k;
  p.energy = k_energy_density(prof, [&](double z) { return k * dir.r(z); }, dir.lo(), dir.hi(), q).log_term +
             k * dir.linear;
  p.slope = -integrate(
                [&](double z) {
                  const double a = kap * (1.0 - z * z) * dir.r(z);
                  return prof.p_c.eval(z) * a / (1.0 + k * a);
                },
                dir.lo(), dir.hi(), q) +
            dir.linear;
  return p;
}

}  // namespace kc
