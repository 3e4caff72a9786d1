#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kahlercone/classifier.hpp"
#include "kahlercone/tf.hpp"
#include "support.hpp"

using namespace kc;
using kc::testing::RandomRat;

namespace {

RatPoly s_poly(std::vector<long> c) {
  std::vector<Rat> r;
  for (long v : c) r.emplace_back(v);
  return RatPoly(std::move(r));
}

// (6x - 2x^3)^2 - 4 (2x^2 - s x^3)(6 + s x^3 - 4x^2), assembled from its factors
BiPoly delta_from_factors() {
  const RatPoly one = s_poly({1}), s = s_poly({0, 1});
  const BiPoly b({RatPoly(), one * Rat(6), RatPoly(), one * Rat(-2)});
  const BiPoly a({RatPoly(), RatPoly(), one * Rat(2), -s});
  const BiPoly c({one * Rat(6), RatPoly(), one * Rat(-4), s});
  return b * b - BiPoly({one * Rat(4)}) * a * c;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(TFParams{Rat(1, 2), Rat(-2)}.validate());
  CHECK_THROWS_AS((TFParams{Rat(0), Rat(-2)}.validate()), InvalidClass);
  CHECK_THROWS_AS((TFParams{Rat(1), Rat(-2)}.validate()), InvalidClass);
  CHECK_THROWS_AS((TFParams{Rat(1, 2), Rat(1), Rat(0)}.validate()), InvalidClass);
  const AdmissibleClass c = TFParams{Rat(1, 3), Rat(4), Rat(2)}.to_class();
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].d == 1u);
  CHECK(c.factors[0].s == Rat(4));
  CHECK(c.factors[0].x == Rat(1, 3));
  CHECK(c.kappa == Rat(2));
}

TEST_CASE("closed form") {
  const TFParams p{Rat(1, 2), Rat(-2)};
  const RatPoly Q = tf_Q(p);
  CHECK(Q == RatPoly({Rat(19, 4), Rat(11, 4), Rat(3, 4)}));
  CHECK(Q(Rat(1)) == Rat(33, 4));
  CHECK(Q(Rat(-1)) == Rat(11, 4));
  CHECK(tf_closed_form_F(p) == RatPoly({Rat(1), Rat(0), Rat(-1)}) * Q * Rat(2, 11));
  CHECK(moment_integral(Q, 0) == Rat(10));

  // Q(+-1) do not depend on s
  RandomRat rng(51);
  for (int i = 0; i < 20; ++i) {
    const Rat x = rng.unit(), k = rng.positive(6, 4);
    const Rat q1 = tf_Q({x, rng.any(), k})(Rat(1));
    const Rat qm1 = tf_Q({x, rng.any(), k})(Rat(-1));
    CHECK(q1 == k * (Rat(6) - Rat(2) * x * x) * (Rat(1) + x));
    CHECK(qm1 == k * (Rat(6) - Rat(2) * x * x) * (Rat(1) - x));
  }
}

TEST_CASE("closed form agrees with the general pipeline") {
  RandomRat rng(52);
  for (int i = 0; i < 50; ++i) {
    const TFParams p{rng.unit(), rng.any(), rng.positive(6, 4)};
    const RatPoly F = tf_closed_form_F(p);
    CHECK(F == extremal_polynomial(p.to_class()).F_omega);
    CHECK(F == kc::testing::tf_oracle_F(p.x, p.s, p.kappa));
  }
}

TEST_CASE("A and B") {
  const Coefficients ab = tf_AB({Rat(1, 2), Rat(-2)});
  CHECK(ab.A == Rat(-36, 11));
  CHECK(ab.B == Rat(6, 11));
  const Coefficients flat = tf_AB({Rat(1, 2), Rat(0)});
  CHECK(flat.A == Rat(-24, 11));
  CHECK(flat.B == Rat(-18, 11));

  RandomRat rng(53);
  for (int i = 0; i < 30; ++i) {
    const TFParams p{rng.unit(), rng.any(), rng.positive(6, 4)};
    const Coefficients a = tf_AB(p), b = solve_AB(p.to_class());
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    const Moments m = moments(p.to_class());
    CHECK(a.A * m.alpha1 + a.B * m.alpha0 + Rat(2) * m.beta0 == Rat(0));
    CHECK(a.A * m.alpha2 + a.B * m.alpha1 + Rat(2) * m.beta1 == Rat(0));
  }
}

TEST_CASE("angle bound") {
  CHECK(tf_kappa_bound(Rat(1, 2), Rat(-2)) == Rat(2, 7));
  CHECK(tf_kappa_bound(Rat(1, 2), Rat(0)) == Rat(0));
  CHECK(tf_kappa_bound(Rat(1, 3), Rat(5)) == Rat(0));

  RandomRat rng(54);
  for (int i = 0; i < 20; ++i) {
    const Rat x = rng.unit(), s = rng.negative();
    const Rat k = tf_kappa_bound(x, s) * Rat(1001, 1000);
    CHECK(k == -s * x * x / ((Rat(1) - x) * (Rat(3) + x)) * Rat(1001, 1000));
    CHECK(classify(profile_of(TFParams{x, s, k}.to_class())) == Regime::ExistsExtremal);
  }
  for (int i = 1; i <= 20; ++i) {
    const Rat x(i, 21);
    CHECK(is_nonneg_on(tf_closed_form_F({x, Rat(0), rng.positive(6, 4)}), Rat(-1), Rat(1)) == Positivity::Positive);
  }
}

TEST_CASE("discriminant") {
  CHECK(tf_discriminant(Rat(1, 2), Rat(-2)) == Rat(-107, 16));
  CHECK(tf_discriminant(Rat(1), Rat(-2)) == Rat(16));
  CHECK(tf_discriminant(Rat(0), Rat(-2)) == Rat(0));

  CHECK(tf_delta_symbolic() == delta_from_factors());
  RandomRat rng(55);
  for (int i = 0; i < 20; ++i) {
    const Rat x = rng.unit(), s = rng.any();
    const RatPoly Q = tf_Q({x, s, Rat(1)});
    const Rat quad = Q.coeffs()[1] * Q.coeffs()[1] - Rat(4) * Q.coeffs()[2] * Q.coeffs()[0];
    CHECK(tf_discriminant(x, s) == quad);
    CHECK(tf_delta_poly(s)(x) == quad);
    CHECK(tf_delta_symbolic().at_s(s) == tf_delta_poly(s));
    CHECK(tf_delta_symbolic().at_x(x)(s) == quad);
    CHECK(tf_discriminant_from_pipeline(x, s) == quad);
  }
}

TEST_CASE("derivative ladder") {
  const BiPoly D = delta_from_factors();
  CHECK(D.derivative_x(4) == BiPoly({s_poly({192}), s_poly({0, -2880}), s_poly({1440, 0, 1440})}));
  CHECK(D.derivative_x(3).at_x(Rat(0)) == s_poly({0, 144}));
  CHECK(D.derivative_x(3).at_x(Rat(1)) == s_poly({672, -1296, 480}));
  CHECK(D.derivative_x(2).at_x(Rat(0)) == s_poly({-24}));
  CHECK(D.derivative_x(2).at_x(Rat(1)) == s_poly({192, -336, 120}));
  CHECK(D.derivative_x(1).at_x(Rat(0)) == RatPoly());
  CHECK(D.derivative_x(1).at_x(Rat(1)) == s_poly({32, -48, 24}));
  CHECK(D.at_x(Rat(0)) == RatPoly());
  CHECK(D.at_x(Rat(1)) == s_poly({0, 0, 4}));
  CHECK(D.at_x(Rat(1)) != s_poly({4, 0, 1}));

  const auto ladder = tf_delta_ladder();
  REQUIRE(ladder.size() == 9);
  int holding = 0;
  for (const auto& c : ladder) {
    holding += c.holds ? 1 : 0;
    if (c.name == "D(1)") {
      CHECK_FALSE(c.holds);
      CHECK(c.computed == "4*s^2");
    } else {
      CHECK(c.holds);
    }
  }
  CHECK(holding == 8);
}

TEST_CASE("critical parameter") {
  for (long sv : {-1L, -2L, -5L}) {
    const Rat s(sv);
    CHECK(count_roots_in(tf_delta_poly(s), Rat(0), Rat(1)) == 1);
    const XsEnclosure xs = tf_find_xs(s, pow2(-10));
    CHECK(xs.delta_lo.sign() < 0);
    CHECK(xs.delta_hi.sign() > 0);
    CHECK(xs.delta_lo == tf_discriminant(xs.enclosure.lo, s));
    CHECK(xs.delta_hi == tf_discriminant(xs.enclosure.hi, s));
    CHECK(xs.enclosure.width() <= pow2(-10));
    const XsEnclosure fine = tf_find_xs(s, pow2(-30));
    CHECK(fine.enclosure.width() <= pow2(-30));
    CHECK(xs.enclosure.lo <= fine.enclosure.lo);
    CHECK(fine.enclosure.hi <= xs.enclosure.hi);
    CHECK(tf_discriminant(fine.enclosure.lo, s).sign() < 0);
    CHECK(tf_discriminant(fine.enclosure.hi, s).sign() > 0);
  }
  const XsEnclosure m2 = tf_find_xs(Rat(-2), pow2(-20));
  CHECK(Rat(1, 2) < m2.enclosure.lo);
  CHECK(m2.enclosure.hi < Rat(1));
  CHECK(m2.enclosure.lo.to_double() == doctest::Approx(0.904256).epsilon(1e-6));
  CHECK_THROWS_AS(tf_find_xs(Rat(0)), InvalidClass);
  CHECK_THROWS_AS(tf_find_xs(Rat(-1), Rat(0)), InvalidClass);
}

TEST_CASE("case analysis") {
  const TFCaseReport c1 = tf_regime(Rat(1, 2), Rat(-2));
  CHECK(c1.case_number == 1);
  CHECK(c1.regime == Regime::ExistsExtremal);
  CHECK(c1.delta == Rat(-107, 16));
  CHECK_FALSE(c1.split.has_value());

  const XsEnclosure xs = tf_find_xs(Rat(-2), pow2(-20));
  const Rat mid = xs.enclosure.midpoint();
  const TFCaseReport c2 = tf_regime(mid, Rat(-2), pow2(-20));
  CHECK(c2.case_number == 2);
  CHECK(c2.near_critical);

  const Rat x3 = (xs.enclosure.hi + Rat(1)) / Rat(2);
  const TFCaseReport c3 = tf_regime(x3, Rat(-2), pow2(-20));
  CHECK(c3.case_number == 3);
  CHECK(c3.regime == Regime::Unbounded);
  REQUIRE(c3.split.has_value());
  CHECK(c3.split->parts.size() == 3);
  REQUIRE(c3.vertex.has_value());
  CHECK(c3.vertex_inside);
  const RatPoly Q = tf_Q({x3, Rat(-2), Rat(1)});
  CHECK(*c3.vertex == -Q.coeffs()[1] / (Rat(2) * Q.coeffs()[2]));
  CHECK(Q(*c3.vertex).sign() < 0);

  CHECK_THROWS_AS(tf_regime(Rat(3, 2), Rat(-2)), InvalidClass);
}

TEST_CASE("sweep") {
  const auto rows = tf_sweep(Rat(-2), Rat(0), Rat(1), 24, pow2(-20));
  REQUIRE(rows.size() == 24);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].x == Rat(static_cast<long>(i) + 1, 25));
    CHECK(rows[i].delta == tf_discriminant(rows[i].x, Rat(-2)));
    const Regime want = rows[i].delta.sign() < 0 ? Regime::ExistsExtremal : Regime::Unbounded;
    CHECK(rows[i].regime == want);
    CHECK(rows[i].roots.size() == (want == Regime::Unbounded ? 2u : 0u));
  }
}
