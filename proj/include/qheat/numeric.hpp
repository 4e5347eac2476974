#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace qheat {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
// 50 decimal digits; enough headroom for derivative/value ratios of S_{2k} at k ~ 256.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

template <class To, class From>
To numeric_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_arithmetic_v<From> && std::is_arithmetic_v<To>) {
    return static_cast<To>(v);
  } else if constexpr (std::is_arithmetic_v<From>) {
    return To(v);
  } else {
    return v.template convert_to<To>();
  }
}

}  // namespace qheat
