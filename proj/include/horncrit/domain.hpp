#pragma once

#include <stdexcept>

#include "horncrit/profile.hpp"

namespace horncrit {

// D = {(x,z) in R^{l+m} : |z| < H(|x|)}.
struct DomainSpec {
    int l = 1;
    int m = 2;
    ProfileH profile = ProfileH::constant(1.0);

    DomainSpec(int l_, int m_, ProfileH p) : l(l_), m(m_), profile(std::move(p)) {
        if (l < 1 || m < 1) throw std::invalid_argument("DomainSpec: l and m must be >= 1");
        if (l + m < 3)
            throw std::invalid_argument(
                "DomainSpec: l + m must be >= 3; every planar domain is recurrent, so the "
                "d = 2 case carries no dichotomy to test");
    }

    int d() const { return l + m; }
};

}  // namespace horncrit
