#ifndef SCLKIT_CIRCLE_HPP
#define SCLKIT_CIRCLE_HPP

#include <optional>
#include <vector>

#include "sclkit/qm.hpp"
#include "sclkit/rational.hpp"

namespace sclkit {

/// Lift of an orientation-preserving circle homeomorphism: piecewise-linear,
/// strictly increasing, rational breakpoints, h(x + 1) = h(x) + 1.
class CircleLift {
 public:
  /// Breakpoints (x_i, y_i) with 0 = x_0 < x_1 < ... < 1 and y strictly
  /// increasing; the map continues by y_0 + 1 at x = 1.
  explicit CircleLift(std::vector<std::pair<Rational, Rational>> breakpoints);

  static CircleLift rotation(const Rational& t);

  Rational operator()(const Rational& x) const;
  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return bp_; }

 private:
  std::vector<std::pair<Rational, Rational>> bp_;
};

struct RotationNumber {
  RatInterval interval;   // certified enclosure
  bool exact = false;     // a periodic orbit of 0 was found
  Rational value() const { return interval.lo; }  // meaningful when exact
};

/// Exact rotation number when the orbit of 0 becomes periodic within n_max
/// iterates, else the width-2/n interval around h^n(0)/n.
RotationNumber translation_number(const CircleLift& h, long n_max);

/// Same, for the composite h1 o h2 evaluated pointwise.
RotationNumber translation_number_composite(const CircleLift& h1, const CircleLift& h2,
                                            long n_max);

}  // namespace sclkit

#endif
