#pragma once

#include <functional>
#include <stdexcept>

namespace kc {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composite Gauss-Legendre rule with a panel-doubling convergence check.
/// Supported orders: 8, 16, 32, 64 nodes per panel.
struct QuadratureSpec {
  unsigned order = 16;
  unsigned panels = 64;
  double tolerance = 1e-10;  // relative, against max(|I|, 1e-300)
  unsigned max_doublings = 8;
};

/// Fixed composite rule, no convergence check. Panels are summed in index
/// order so results are bitwise reproducible.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, unsigned order,
                      unsigned panels);

/// Integral of f over [a, b]. Evaluates with `panels` and `2*panels` and keeps
/// doubling until consecutive values agree to `tolerance`; throws
/// QuadratureError when max_doublings is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec = {});

/// Calls visit(node, weight) for every node of the composite rule on [a, b].
void for_each_node(double a, double b, unsigned order, unsigned panels,
                   const std::function<void(double, double)>& visit);

}  // namespace kc
