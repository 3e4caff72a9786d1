#pragma once

#include <optional>
#include <vector>

#include "kahlercone/admissible.hpp"
#include "kahlercone/roots.hpp"

namespace kc {

/// Energy regime of a class, keyed to the sign pattern of F_omega on (-1, 1).
enum class Regime {
  ExistsExtremal,    // F_omega > 0: extremal metric exists, K-energy proper
  BoundedNotProper,  // F_omega >= 0 with interior zeros
  Unbounded,         // F_omega < 0 somewhere: K-energy unbounded below
};

const char* to_string(Regime r);
Regime regime_of(Positivity p);

Regime classify(const ExtremalProfile& prof);
Regime classify(const AdmissibleClass& c);

/// Thrown when an operation needs a different regime than the input has.
class RegimeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Properness {
  Rat delta;             // certified lower bound of min(c, c'), > 0
  RatInterval right;     // enclosure of min over [0,1] of F/(1-z)
  RatInterval left;      // enclosure of min over [-1,0] of F/(1+z)
};

/// Constant delta with L(u) >= delta * integral(u) for all admissible
/// potentials. Requires regime ExistsExtremal.
Properness properness_delta(const ExtremalProfile& prof, const Rat& width = default_root_width());
Properness properness_delta(const AdmissibleClass& c, const Rat& width = default_root_width());

/// Cone angle 2*pi*kappa at a simple sign-change root, enclosed from the
/// isolating interval I as |F'(I)| / (2 p_c(I)).
RatInterval conical_angle_at_sign_change(const ExtremalProfile& prof, const RootRecord& root);

struct SingularityLabel {
  enum class Kind { SmoothEnd, ConicalEnd, CuspEnd, GeneralizedCuspEnd };
  Kind kind = Kind::SmoothEnd;
  /// Cone angle over 2*pi: exact (degenerate interval) at z = +-1, an
  /// enclosure at interior roots.
  std::optional<RatInterval> kappa;
  /// Generalized cusp order, when determined (even multiplicity 2N gives 2N).
  std::optional<unsigned> order;
  /// Root multiplicity for interior ends, 0 for z = +-1.
  unsigned multiplicity = 0;
};

const char* to_string(SingularityLabel::Kind k);

struct Part {
  RatInterval left_end;   // degenerate [-1,-1] or a root enclosure
  RatInterval right_end;
  bool positive = false;  // F_omega > 0 on the part
  /// Labels are only meaningful where a metric lives, so negative parts
  /// carry none.
  std::optional<SingularityLabel> left_label;
  std::optional<SingularityLabel> right_label;
};

struct SplitReport {
  Regime regime = Regime::ExistsExtremal;
  std::vector<RootRecord> roots;  // interior roots of F_omega
  std::vector<Part> parts;        // roots.size() + 1 parts covering (-1, 1)
};

SplitReport split(const ExtremalProfile& prof, const Rat& width = default_root_width());
SplitReport split(const AdmissibleClass& c, const Rat& width = default_root_width());

}  // namespace kc
