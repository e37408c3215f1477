#pragma once

#include <cstdint>
#include <ostream>

#include "haar/exactreal/interval.hpp"

namespace haar {

/// A dyadic approximation with the guarantee |value - true| <= 2^error_exponent.
struct CertifiedValue {
    Dyadic value;
    std::int64_t error_exponent = 0;

    Interval enclosure() const {
        const Dyadic e = Dyadic::pow2(error_exponent);
        return {value - e, value + e};
    }
    bool contains(const Dyadic& x) const { return enclosure().contains(x); }
};

inline std::ostream& operator<<(std::ostream& os, const CertifiedValue& v) {
    return os << v.value << " +- 2^" << v.error_exponent;
}

}  // namespace haar
