#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

/// Bad arguments or contract violation at a module boundary.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A non-finite value appeared in a computation.
struct NumericalOverflow : std::runtime_error {
  int node = -1;
  explicit NumericalOverflow(const std::string& what, int node_ = -1)
      : std::runtime_error(what), node(node_) {}
};

/// The field Lambda = lambda_bg + Ltil came closer to zero than the
/// configured floor. The evolution must stop here: the phi-equation
/// coefficient 2*coth(Lambda) is singular at Lambda = 0.
struct SingularityApproach : std::runtime_error {
  int node = -1;
  double value = 0.0;
  SingularityApproach(const std::string& what, int node_, double value_)
      : std::runtime_error(what), node(node_), value(value_) {}
};

/// Closed-form evaluation left its mathematical domain (sqrt of a
/// negative, arccosh of a value below 1, near-singular matrix).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pcf
