#include "kahlercone/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace kc {

namespace {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

const Rule& rule_for(unsigned order) {
  static const Rule r8 = make_rule<8>();
  static const Rule r16 = make_rule<16>();
  static const Rule r32 = make_rule<32>();
  static const Rule r64 = make_rule<64>();
  switch (order) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    case 64: return r64;
    default: throw std::invalid_argument("unsupported Gauss-Legendre order " + std::to_string(order));
  }
}

}  // namespace

void for_each_node(double a, double b, unsigned order, unsigned panels,
                   const std::function<void(double, double)>& visit) {
  if (panels == 0) throw std::invalid_argument("quadrature needs at least one panel");
  const Rule& rule = rule_for(order);
  const double h = (b - a) / panels;
  for (unsigned p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) visit(mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]);
  }
}

namespace {

struct Sums {
  double value = 0.0;
  double mass = 0.0;  // integral of |f|
};

Sums composite(const std::function<double(double)>& f, double a, double b, unsigned order, unsigned panels) {
  if (panels == 0) throw std::invalid_argument("quadrature needs at least one panel");
  const Rule& rule = rule_for(order);
  const double h = (b - a) / panels;
  Sums total;
  for (unsigned p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    Sums panel;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = f(mid + 0.5 * h * rule.nodes[i]);
      panel.value += rule.weights[i] * v;
      panel.mass += rule.weights[i] * std::abs(v);
    }
    total.value += 0.5 * h * panel.value;
    total.mass += 0.5 * std::abs(h) * panel.mass;
  }
  return total;
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, unsigned order,
                      unsigned panels) {
  return composite(f, a, b, order, panels).value;
}

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
  unsigned panels = spec.panels;
  double coarse = composite(f, a, b, spec.order, panels).value;
  for (unsigned k = 0; k <= spec.max_doublings; ++k) {
    panels *= 2;
    const Sums fine = composite(f, a, b, spec.order, panels);
    if (!std::isfinite(fine.value)) throw QuadratureError("non-finite quadrature value");
    const double diff = std::abs(fine.value - coarse);
    // Cancellation floor: integrands whose signed integral is ~0 converge
    // relative to their absolute mass.
    if (diff <= spec.tolerance * std::abs(fine.value) || diff <= 1e-14 * fine.mass) return fine.value;
    coarse = fine.value;
  }
  throw QuadratureError("quadrature did not converge under panel doubling");
}

}  // namespace kc
