#include "sclkit/circle.hpp"

#include <map>
#include <stdexcept>

namespace sclkit {

CircleLift::CircleLift(std::vector<std::pair<Rational, Rational>> breakpoints)
    : bp_(std::move(breakpoints)) {
  if (bp_.empty()) throw std::invalid_argument("lift needs at least one breakpoint");
  if (bp_.front().first != 0) throw std::invalid_argument("first breakpoint must be at x = 0");
  for (size_t i = 0; i + 1 < bp_.size(); ++i) {
    if (!(bp_[i].first < bp_[i + 1].first))
      throw std::invalid_argument("breakpoint abscissae must increase");
    if (!(bp_[i].second < bp_[i + 1].second))
      throw std::invalid_argument("lift must be strictly increasing");
  }
  if (!(bp_.back().first < 1)) throw std::invalid_argument("breakpoints live in [0, 1)");
  if (!(bp_.back().second < bp_.front().second + 1))
    throw std::invalid_argument("lift must be strictly increasing across the period");
}

CircleLift CircleLift::rotation(const Rational& t) { return CircleLift({{Rational(0), t}}); }

Rational CircleLift::operator()(const Rational& x) const {
  // split x = k + f with f in [0, 1)
  BigInt num = numerator(x), den = denominator(x);
  BigInt k = num / den;
  if (x < 0 && k * den != num) k -= 1;
  Rational f = x - Rational(k);
  // segment containing f
  size_t i = bp_.size() - 1;
  while (bp_[i].first > f) --i;
  Rational x0 = bp_[i].first, y0 = bp_[i].second;
  Rational x1 = (i + 1 < bp_.size()) ? bp_[i + 1].first : Rational(1);
  Rational y1 = (i + 1 < bp_.size()) ? bp_[i + 1].second : bp_.front().second + 1;
  Rational y = (x1 == x0) ? y0 : y0 + (f - x0) * (y1 - y0) / (x1 - x0);
  return y + Rational(k);
}

namespace {

Rational frac_part(const Rational& x) {
  BigInt num = numerator(x), den = denominator(x);
  BigInt k = num / den;
  if (x < 0 && k * den != num) k -= 1;
  return x - Rational(k);
}

template <typename Step>
RotationNumber rotation_from_orbit(Step step, long n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max >= 1 required");
  std::map<Rational, long> seen;
  std::vector<Rational> orbit = {Rational(0)};
  seen[Rational(0)] = 0;
  for (long n = 1; n <= n_max; ++n) {
    Rational x = step(orbit.back());
    orbit.push_back(x);
    Rational f = frac_part(x);
    auto it = seen.find(f);
    if (it != seen.end()) {
      // x and orbit[m] share a fractional part, so the displacement per
      // period is the integer x - orbit[m].
      long m = it->second;
      Rational rot = (x - orbit[static_cast<size_t>(m)]) / Rational(n - m);
      return {{rot, rot}, true};
    }
    seen[f] = n;
  }
  Rational approx = orbit.back() / Rational(n_max);
  Rational slack = Rational(1, n_max);
  return {{approx - slack, approx + slack}, false};
}

}  // namespace

RotationNumber translation_number(const CircleLift& h, long n_max) {
  return rotation_from_orbit([&](const Rational& x) { return h(x); }, n_max);
}

RotationNumber translation_number_composite(const CircleLift& h1, const CircleLift& h2,
                                            long n_max) {
  return rotation_from_orbit([&](const Rational& x) { return h1(h2(x)); }, n_max);
}

}  // namespace sclkit
