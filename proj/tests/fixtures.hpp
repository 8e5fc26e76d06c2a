#pragma once

// Shared polynomial fixtures. Three denominators cover the three regimes the
// suites care about: boundary contact at one corner (2 - z1 - z2), a clear
// stability margin (3 - z1 - z2), and two boundary contacts (4 - (z1+z2)^2).

#include "riflab/poly.hpp"
#include "riflab/rif.hpp"

namespace fixtures {

inline riflab::Poly2 corner_contact() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 2.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return p;
}

inline riflab::Poly2 clear_margin() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 3.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return p;
}

// (2 - z1 - z2)(2 + z1 + z2) = 4 - z1^2 - 2 z1 z2 - z2^2. Torus zeros at
// (1, 1) and (-1, -1) only.
inline riflab::Poly2 two_corners() {
    riflab::Poly2 p(2, 2);
    p.at(0, 0) = 4.0;
    p.at(2, 0) = -1.0;
    p.at(1, 1) = -2.0;
    p.at(0, 2) = -1.0;
    return p;
}

inline riflab::RationalInnerFunction corner_rif() {
    return riflab::make_rif(1.0, 0, 0, corner_contact());
}

// Sign-flipped corner symbol; its limit at the contact point is +1.
inline riflab::RationalInnerFunction corner_rif_neg() {
    return riflab::make_rif(-1.0, 0, 0, corner_contact());
}

inline riflab::RationalInnerFunction margin_rif() {
    return riflab::make_rif(1.0, 0, 0, clear_margin());
}

// Coordinate symbols z1 and z2: monomial powers over a unit denominator.
inline riflab::RationalInnerFunction coord1_rif() {
    return riflab::make_rif(1.0, 1, 0, riflab::Poly2::constant(1.0));
}

inline riflab::RationalInnerFunction coord2_rif() {
    return riflab::make_rif(1.0, 0, 1, riflab::Poly2::constant(1.0));
}

} // namespace fixtures
