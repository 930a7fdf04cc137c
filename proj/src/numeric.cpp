#include "hlc/numeric.hpp"

#include <boost/math/constants/constants.hpp>

namespace hlc {

HighFloat to_high(const Integer& z) {
  return HighFloat(z.get_str());
}

HighFloat to_high(const Rational& q) {
  return to_high(q.get_num()) / to_high(q.get_den());
}

HighFloat to_high(u128 v) {
  return HighFloat(to_string(v));
}

HighFloat high_pi() {
  return boost::math::constants::pi<HighFloat>();
}

}  // namespace hlc
