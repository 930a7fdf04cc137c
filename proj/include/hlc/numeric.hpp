#pragma once
// Extended-precision floating point used where C(Q,-k) meets large exact counts.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hlc/rational.hpp"
#include "hlc/wide.hpp"

namespace hlc {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

HighFloat to_high(const Integer& z);
HighFloat to_high(const Rational& q);
HighFloat to_high(u128 v);
HighFloat high_pi();

}  // namespace hlc
