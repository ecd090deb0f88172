#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace slpenum {

using BigNat = boost::multiprecision::cpp_int;

inline bool fits_u64(const BigNat& v) {
    return v >= 0 && v <= std::numeric_limits<uint64_t>::max();
}

inline uint64_t to_u64(const BigNat& v) {
    if (!fits_u64(v)) throw std::overflow_error("value does not fit in 64 bits: " + v.str());
    return v.convert_to<uint64_t>();
}

inline std::size_t bit_length(const BigNat& v) {
    return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
}

}  // namespace slpenum
