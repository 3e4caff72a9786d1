#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kahlercone/classifier.hpp"
#include "kahlercone/tf.hpp"
#include "support.hpp"

using namespace kc;
using kc::testing::RandomRat;
using Kind = SingularityLabel::Kind;

namespace {

const RatPoly one_minus_z2({Rat(1), Rat(0), Rat(-1)});

ExtremalProfile fixture(const RatPoly& F, const Rat& kappa = Rat(1)) { return {RatPoly::constant(Rat(1)), F, kappa}; }

ExtremalProfile tf_profile(const Rat& x, const Rat& s, const Rat& kappa = Rat(1)) {
  return profile_of({{BaseFactor{1, s, x}}, kappa});
}

// Regime from dense floating samples plus exact distinct-root counting.
Regime sampled_regime(const ExtremalProfile& prof) {
  constexpr int kSamples = 100000;
  std::vector<double> c;
  double scale = 0;
  for (const auto& a : prof.F.coeffs()) {
    c.push_back(a.to_double());
    scale = std::max(scale, std::abs(c.back()));
  }
  for (int j = 1; j < kSamples; ++j) {
    const double z = -1.0 + 2.0 * j / kSamples;
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    if (v < -1e-13 * scale) return Regime::Unbounded;
  }
  return count_roots_in(prof.F, Rat(-1), Rat(1)) == 0 ? Regime::ExistsExtremal : Regime::BoundedNotProper;
}

}  // namespace

TEST_CASE("regime table") {
  CHECK(regime_of(Positivity::Positive) == Regime::ExistsExtremal);
  CHECK(regime_of(Positivity::NonnegWithInteriorZeros) == Regime::BoundedNotProper);
  CHECK(regime_of(Positivity::SomewhereNegative) == Regime::Unbounded);
  CHECK(std::string(to_string(Regime::BoundedNotProper)) == "BoundedNotProper");
}

TEST_CASE("classification of the single-curve family") {
  CHECK(classify(tf_profile(Rat(1, 2), Rat(-2))) == Regime::ExistsExtremal);
  for (int i = 1; i <= 50; ++i) {
    const Rat x(i, 51);
    CHECK(classify(tf_profile(x, Rat(0))) == Regime::ExistsExtremal);
    CHECK(classify(tf_profile(x, Rat(i % 7 + 1, 3))) == Regime::ExistsExtremal);
  }
  const XsEnclosure xs = tf_find_xs(Rat(-2), pow2(-20));
  CHECK(classify(tf_profile(xs.enclosure.hi, Rat(-2))) == Regime::Unbounded);
  CHECK(classify(tf_profile((xs.enclosure.hi + Rat(1)) / Rat(2), Rat(-2))) == Regime::Unbounded);
  CHECK(classify(tf_profile(xs.enclosure.lo, Rat(-2))) == Regime::ExistsExtremal);
}

TEST_CASE("classification agrees with dense sampling") {
  RandomRat rng(31);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    AdmissibleClass c = rng.admissible();
    if (i % 2 == 0) c.kappa = rng.positive(1, 8);  // small angles push towards negativity
    const ExtremalProfile prof = profile_of(c);
    const Regime r = classify(prof);
    CHECK(r == sampled_regime(prof));
    ++counts[static_cast<int>(r)];
  }
  // both generic regimes are represented
  CHECK(counts[static_cast<int>(Regime::ExistsExtremal)] > 0);
  CHECK(counts[static_cast<int>(Regime::Unbounded)] > 0);
}

TEST_CASE("properness constant") {
  for (const Rat k : {Rat(1), Rat(1, 3), Rat(5, 2)}) {
    const Properness p = properness_delta(fixture(one_minus_z2 * k, k));
    CHECK(p.delta == k);
  }

  const ExtremalProfile tf = tf_profile(Rat(1, 2), Rat(-2));
  const Properness p = properness_delta(tf);
  CHECK(p.delta.sign() > 0);
  double grid = 1e300;
  for (int j = 0; j <= 10000; ++j) {
    const double z = j / 10000.0;
    if (z < 1.0) grid = std::min(grid, tf.F.eval(z) / (1.0 - z));
    if (z > 0.0) grid = std::min(grid, tf.F.eval(-z) / (1.0 - z));
  }
  grid = std::min(grid, -tf.F.derivative().eval(1.0));  // quotient limits at z = +-1
  grid = std::min(grid, tf.F.derivative().eval(-1.0));
  CHECK(p.delta.to_double() <= grid + 1e-12);
  CHECK(grid - p.delta.to_double() < 1e-9);
  CHECK(p.delta == Rat(19, 22));

  RandomRat rng(32);
  for (int i = 0; i < 10; ++i) {
    AdmissibleClass c = rng.admissible(2, 2);
    for (auto& f : c.factors) f.s = Rat(0);
    const double d1 = properness_delta(c.with_kappa(Rat(1))).delta.to_double();
    const double d3 = properness_delta(c.with_kappa(Rat(3))).delta.to_double();
    CHECK(d3 / d1 == doctest::Approx(3.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(properness_delta(fixture(pow(RatPoly::linear_root(Rat(1, 3)), 2) * one_minus_z2)), RegimeMismatch);
}

TEST_CASE("split of an existing extremal class") {
  const SplitReport a = split(tf_profile(Rat(1, 2), Rat(-2), Rat(2)));
  CHECK(a.regime == Regime::ExistsExtremal);
  REQUIRE(a.parts.size() == 1);
  CHECK(a.parts[0].positive);
  REQUIRE(a.parts[0].left_label.has_value());
  CHECK(a.parts[0].left_label->kind == Kind::ConicalEnd);
  CHECK(a.parts[0].right_label->kind == Kind::ConicalEnd);
  CHECK(*a.parts[0].left_label->kappa == RatInterval{Rat(2), Rat(2)});

  const SplitReport smooth = split(tf_profile(Rat(1, 2), Rat(-2)));
  CHECK(smooth.parts[0].left_label->kind == Kind::SmoothEnd);
  CHECK(smooth.parts[0].right_label->kind == Kind::SmoothEnd);
}

TEST_CASE("split with repeated roots") {
  const SplitReport cusp = split(fixture(pow(RatPoly::linear_root(Rat(1, 3)), 2) * one_minus_z2));
  CHECK(cusp.regime == Regime::BoundedNotProper);
  REQUIRE(cusp.parts.size() == 2);
  CHECK(cusp.parts[0].positive);
  CHECK(cusp.parts[1].positive);
  CHECK(cusp.parts[0].right_label->kind == Kind::CuspEnd);
  CHECK(cusp.parts[1].left_label->kind == Kind::CuspEnd);
  CHECK(cusp.parts[0].right_label->multiplicity == 2);

  const SplitReport quartic = split(fixture(pow(RatPoly::linear_root(Rat(-1, 5)), 4) * one_minus_z2));
  REQUIRE(quartic.parts.size() == 2);
  CHECK(quartic.parts[0].right_label->kind == Kind::GeneralizedCuspEnd);
  CHECK(quartic.parts[0].right_label->order == 4u);

  const SplitReport cubic = split(fixture(pow(RatPoly::linear_root(Rat(1, 4)), 3) * one_minus_z2));
  CHECK(cubic.regime == Regime::Unbounded);
  REQUIRE(cubic.parts.size() == 2);
  CHECK_FALSE(cubic.parts[0].positive);
  CHECK_FALSE(cubic.parts[0].left_label.has_value());
  CHECK(cubic.parts[1].positive);
  CHECK(cubic.parts[1].left_label->kind == Kind::GeneralizedCuspEnd);
  CHECK_FALSE(cubic.parts[1].left_label->order.has_value());
  CHECK(cubic.parts[1].left_label->multiplicity == 3);

  // two double roots: three positive parts, cusps at both interior ends
  const RatPoly two = pow(RatPoly::linear_root(Rat(-1, 2)), 2) * pow(RatPoly::linear_root(Rat(1, 2)), 2) * one_minus_z2;
  const SplitReport t = split(fixture(two));
  CHECK(t.regime == Regime::BoundedNotProper);
  CHECK(t.parts.size() == 3);
  for (const auto& p : t.parts) CHECK(p.positive);
}

TEST_CASE("split above the critical parameter") {
  const Rat x(19, 20);
  const SplitReport r = split(tf_profile(x, Rat(-2)));
  CHECK(r.regime == Regime::Unbounded);
  REQUIRE(r.roots.size() == 2);
  REQUIRE(r.parts.size() == 3);
  CHECK(r.parts[0].positive);
  CHECK_FALSE(r.parts[1].positive);
  CHECK(r.parts[2].positive);
  CHECK_FALSE(r.parts[1].left_label.has_value());
  CHECK(r.parts[0].right_label->kind == Kind::ConicalEnd);
  CHECK(r.parts[2].left_label->kind == Kind::ConicalEnd);
  CHECK(r.parts[0].right_label->kappa->positive());
  CHECK(r.parts[2].left_label->kappa->positive());
  // parts share endpoints at the roots
  CHECK(r.parts[0].right_end == r.roots[0].enclosure);
  CHECK(r.parts[1].left_end == r.roots[0].enclosure);
  CHECK(r.parts[1].right_end == r.parts[2].left_end);
}

TEST_CASE("split structure on random classes") {
  RandomRat rng(33);
  for (int i = 0; i < 60; ++i) {
    AdmissibleClass c = rng.admissible();
    c.kappa = rng.positive(1, 8);
    const SplitReport r = split(profile_of(c));
    CHECK(r.parts.size() == r.roots.size() + 1);
    bool any_negative = false;
    for (const auto& p : r.parts) any_negative = any_negative || !p.positive;
    if (r.regime == Regime::ExistsExtremal) CHECK_FALSE(any_negative);
    if (r.regime == Regime::Unbounded) CHECK(any_negative);
  }
}

TEST_CASE("cone angle at a simple root") {
  const ExtremalProfile f = fixture(one_minus_z2 * RatPoly({Rat(0), Rat(1)}));
  const auto roots = isolate_roots(f.F, Rat(-1), Rat(1), pow2(-4));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].enclosure.contains(Rat(0)));
  RatInterval prev = conical_angle_at_sign_change(f, roots[0]);
  CHECK(prev.contains(Rat(1, 2)));
  RootRecord rec = roots[0];
  for (int k = 5; k <= 40; k += 5) {
    rec.enclosure = refine_root(f.F, rec.enclosure, pow2(-k));
    const RatInterval a = conical_angle_at_sign_change(f, rec);
    CHECK(a.contains(Rat(1, 2)));
    CHECK(a.width() <= prev.width());
    prev = a;
  }
  CHECK(prev.width() < Rat(1, 1000000));

  const ExtremalProfile dbl = fixture(pow(RatPoly::linear_root(Rat(1, 3)), 2) * one_minus_z2);
  CHECK_THROWS_AS(conical_angle_at_sign_change(dbl, isolate_roots(dbl.F, Rat(-1), Rat(1))[0]), DegenerateInput);
}
