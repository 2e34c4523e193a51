#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace maxreg {

/// Counter values. Ramp simulations overflow fixed-width integers quickly.
using Natural = boost::multiprecision::cpp_int;

}  // namespace maxreg
