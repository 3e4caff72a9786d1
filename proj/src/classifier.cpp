#include "kahlercone/classifier.hpp"

namespace kc {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::ExistsExtremal: return "ExistsExtremal";
    case Regime::BoundedNotProper: return "BoundedNotProper";
    case Regime::Unbounded: return "Unbounded";
  }
  return "?";
}

const char* to_string(SingularityLabel::Kind k) {
  switch (k) {
    case SingularityLabel::Kind::SmoothEnd: return "SmoothEnd";
    case SingularityLabel::Kind::ConicalEnd: return "ConicalEnd";
    case SingularityLabel::Kind::CuspEnd: return "CuspEnd";
    case SingularityLabel::Kind::GeneralizedCuspEnd: return "GeneralizedCuspEnd";
  }
  return "?";
}

Regime regime_of(Positivity p) {
  switch (p) {
    case Positivity::Positive: return Regime::ExistsExtremal;
    case Positivity::NonnegWithInteriorZeros: return Regime::BoundedNotProper;
    case Positivity::SomewhereNegative: return Regime::Unbounded;
  }
  return Regime::Unbounded;
}

Regime classify(const ExtremalProfile& prof) { return regime_of(is_nonneg_on(prof.F, Rat(-1), Rat(1))); }

Regime classify(const AdmissibleClass& c) { return classify(profile_of(c)); }

Properness properness_delta(const ExtremalProfile& prof, const Rat& width) {
  if (classify(prof) != Regime::ExistsExtremal) {
    throw RegimeMismatch("properness constant requires a positive extremal polynomial");
  }
  const Rat one(1);
  const RatPoly right_q = exact_div(prof.F, RatPoly({one, Rat(-1)}));  // F / (1 - z)
  const RatPoly left_q = exact_div(prof.F, RatPoly({one, one}));       // F / (1 + z)
  Rat w = width;
  for (;;) {
    Properness out;
    out.right = min_on_interval(right_q, Rat(0), one, w);
    out.left = min_on_interval(left_q, Rat(-1), Rat(0), w);
    out.delta = min(out.right.lo, out.left.lo);
    if (out.delta.sign() > 0) return out;
    // The true minimum is positive; a coarse enclosure can still straddle 0.
    w /= Rat(1024);
  }
}

Properness properness_delta(const AdmissibleClass& c, const Rat& width) { return properness_delta(profile_of(c), width); }

RatInterval conical_angle_at_sign_change(const ExtremalProfile& prof, const RootRecord& root) {
  if (root.multiplicity != 1) throw DegenerateInput("cone angle requested at a root of multiplicity != 1");
  const RatPoly sf = square_free_part(prof.F);
  const RatPoly dF = prof.F.derivative();
  RatInterval iv = root.enclosure;
  for (;;) {
    const RatInterval slope = eval_interval(dF, iv);
    const RatInterval weight = eval_interval(prof.p_c, iv);
    if ((slope.positive() || slope.negative()) && weight.positive()) {
      const RatInterval mag = slope.positive() ? slope : Rat(-1) * slope;
      return Rat(1, 2) * (mag / weight);
    }
    iv = refine_root(sf, iv, iv.width() / Rat(2));
  }
}

namespace {

SingularityLabel boundary_label(const Rat& kappa) {
  SingularityLabel l;
  l.kind = kappa == Rat(1) ? SingularityLabel::Kind::SmoothEnd : SingularityLabel::Kind::ConicalEnd;
  l.kappa = RatInterval{kappa, kappa};
  return l;
}

SingularityLabel interior_label(const ExtremalProfile& prof, const RootRecord& r) {
  SingularityLabel l;
  l.multiplicity = r.multiplicity;
  if (r.multiplicity % 2 == 0) {
    l.kind = r.multiplicity == 2 ? SingularityLabel::Kind::CuspEnd : SingularityLabel::Kind::GeneralizedCuspEnd;
    l.order = r.multiplicity;
  } else if (r.multiplicity == 1) {
    l.kind = SingularityLabel::Kind::ConicalEnd;
    l.kappa = conical_angle_at_sign_change(prof, r);
  } else {
    // Odd multiplicity >= 3: generalized cusp, order not asserted.
    l.kind = SingularityLabel::Kind::GeneralizedCuspEnd;
  }
  return l;
}

}  // namespace

SplitReport split(const ExtremalProfile& prof, const Rat& width) {
  const Rat one(1);
  const Rat minus_one(-1);
  SplitReport rep;
  rep.regime = classify(prof);
  rep.roots = isolate_roots(prof.F, minus_one, one, width);
  const std::size_t m = rep.roots.size();
  std::vector<SingularityLabel> root_labels;
  root_labels.reserve(m);
  for (const auto& r : rep.roots) root_labels.push_back(interior_label(prof, r));

  for (std::size_t i = 0; i <= m; ++i) {
    Part part;
    part.left_end = i == 0 ? RatInterval{minus_one, minus_one} : rep.roots[i - 1].enclosure;
    part.right_end = i == m ? RatInterval{one, one} : rep.roots[i].enclosure;
    // Enclosure endpoints are never roots, so they sample the sign of the part.
    Rat sample(0);
    if (m > 0) sample = i == 0 ? rep.roots[0].enclosure.lo : rep.roots[i - 1].enclosure.hi;
    part.positive = prof.F.sign_at(sample) > 0;
    if (part.positive) {
      part.left_label = i == 0 ? boundary_label(prof.kappa) : root_labels[i - 1];
      part.right_label = i == m ? boundary_label(prof.kappa) : root_labels[i];
    }
    rep.parts.push_back(std::move(part));
  }
  return rep;
}

SplitReport split(const AdmissibleClass& c, const Rat& width) { return split(profile_of(c), width); }

}  // namespace kc
