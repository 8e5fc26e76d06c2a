#pragma once

#include <cmath>
#include <cstdint>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/measure.hpp"

// Shared draw logic for SamplerSpec. Sample k of a run owns the substream
// (seed, k), so estimates do not depend on evaluation order and any single
// sample can be replayed in isolation.

namespace riflab::detail {

struct BidiscDraw {
    cd z1, z2;
    bool in_stratum = false;
};

inline void validate_stratum(const Stratum& st) {
    if (!(st.fraction > 0.0 && st.fraction < 1.0))
        fail(ErrorKind::InvalidArgument, "stratum fraction outside (0, 1)");
    if (!(st.radius > 0.0 && st.radius <= 1.0))
        fail(ErrorKind::InvalidArgument, "stratum radius outside (0, 1]");
    if (!(st.inner_radius >= 0.0 && st.inner_radius < st.radius))
        fail(ErrorKind::InvalidArgument, "stratum inner radius >= radius");
}

inline std::uint64_t stratum_draw_count(const SamplerSpec& spec) {
    if (!spec.stratum) return 0;
    return static_cast<std::uint64_t>(
        std::llround(spec.stratum->fraction * static_cast<double>(spec.n)));
}

inline bool annulus_member(cd z, cd center, double inner, double outer) {
    double d = std::abs(z - center);
    return d > inner && d < outer;
}

inline cd draw_annulus_point(Rng& rng, cd center, double inner, double outer) {
    double a2 = inner * inner, b2 = outer * outer;
    for (int tries = 0; tries < 4096; ++tries) {
        double s = std::sqrt(a2 + (b2 - a2) * rng.next_double());
        double alpha = 2.0 * 3.14159265358979323846 * rng.next_double();
        cd z = center + std::polar(s, alpha);
        if (std::norm(z) < 1.0) return z;
    }
    fail(ErrorKind::QuadratureUnstable,
         "stratum rejection sampling failed to land in the disc");
}

inline BidiscDraw draw_bidisc(const SamplerSpec& spec, std::uint64_t k) {
    Rng rng = Rng::substream(spec.seed, k);
    if (!spec.stratum) return {rng.next_disc(), rng.next_disc(), false};
    const Stratum& st = *spec.stratum;
    cd c1 = st.center.point1(), c2 = st.center.point2();
    if (k < stratum_draw_count(spec)) {
        cd z1 = draw_annulus_point(rng, c1, st.inner_radius, st.radius);
        cd z2 = draw_annulus_point(rng, c2, st.inner_radius, st.radius);
        return {z1, z2, true};
    }
    for (int tries = 0; tries < 4096; ++tries) {
        cd z1 = rng.next_disc(), z2 = rng.next_disc();
        if (annulus_member(z1, c1, st.inner_radius, st.radius) &&
            annulus_member(z2, c2, st.inner_radius, st.radius))
            continue;
        return {z1, z2, false};
    }
    fail(ErrorKind::QuadratureUnstable,
         "complement rejection sampling failed; stratum covers the bidisc");
}

} // namespace riflab::detail
