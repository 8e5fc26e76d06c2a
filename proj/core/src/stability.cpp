#include "riflab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "riflab/errors.hpp"
#include "riflab/measure.hpp"
#include "sampler_impl.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;

// Chord-distance exclusion radius around located torus zeros in open mode.
// Inside this ball no Lipschitz bound can clear cells (the zero variety
// touches the torus), so the ball is swept by probes instead. 0.25 keeps the
// number of cells hugging the exclusion sphere in the low thousands.
constexpr double kExcludeRadius = 0.25;

struct Cell {
    double r1lo, r1hi, t1lo, t1hi;
    double r2lo, r2hi, t2lo, t2hi;
};

struct Derivs {
    Poly2 d1, d2;
};

Poly2 partial(const Poly2& p, int axis) {
    int n = p.deg1(), m = p.deg2();
    Poly2 d(axis == 0 ? std::max(n - 1, 0) : n,
            axis == 1 ? std::max(m - 1, 0) : m);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) {
            if (axis == 0 && i > 0)
                d.at(i - 1, j) += static_cast<double>(i) * p.at(i, j);
            if (axis == 1 && j > 0)
                d.at(i, j - 1) += static_cast<double>(j) * p.at(i, j);
        }
    return d;
}

// Gauss-Newton descent on |p|^2 over the closed bidisc, coordinates
// projected back onto the closed discs after each step.
std::pair<cd, cd> probe_zero(const Poly2& p, const Derivs& dv, cd z1, cd z2) {
    for (int iter = 0; iter < 80; ++iter) {
        cd f = p.eval(z1, z2);
        double fn = std::abs(f);
        if (fn < 1e-13) break;
        cd j1 = dv.d1.eval(z1, z2), j2 = dv.d2.eval(z1, z2);
        double g = std::norm(j1) + std::norm(j2);
        if (g < 1e-30) break;
        cd s1 = -std::conj(j1) * f / g, s2 = -std::conj(j2) * f / g;
        double lam = 1.0;
        bool moved = false;
        for (int h = 0; h < 20; ++h) {
            cd u1 = z1 + lam * s1, u2 = z2 + lam * s2;
            if (std::abs(u1) > 1.0) u1 /= std::abs(u1);
            if (std::abs(u2) > 1.0) u2 /= std::abs(u2);
            if (std::abs(p.eval(u1, u2)) < fn) {
                z1 = u1;
                z2 = u2;
                moved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!moved) break;
        if (lam * (std::abs(s1) + std::abs(s2)) < 1e-14) break;
    }
    return {z1, z2};
}

bool witness_in_region(cd z1, cd z2, Region region) {
    if (region == Region::ClosedBidisc)
        return std::abs(z1) <= 1.0 + 1e-12 && std::abs(z2) <= 1.0 + 1e-12;
    return std::abs(z1) < 1.0 - 1e-6 && std::abs(z2) < 1.0 - 1e-6;
}

} // namespace

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::CertifiedStableClosed:
            return "certified-stable-closed";
        case StabilityVerdict::CertifiedStableOpen:
            return "certified-stable-open";
        case StabilityVerdict::ZeroFound:
            return "zero-found";
        case StabilityVerdict::Unknown:
            return "unknown";
    }
    return "unknown";
}

StabilityResult certify_stable(const Poly2& p, Region region,
                               std::uint64_t max_cells) {
    StabilityResult out;
    double scale = 0.0;
    for (const cd& c : p.coeffs()) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
        out.verdict = StabilityVerdict::ZeroFound;
        out.witness = {cd(0.0, 0.0), cd(0.0, 0.0)};
        return out;
    }

    DerivativeBound db = derivative_bound(p);
    Derivs dv{partial(p, 0), partial(p, 1)};
    std::vector<TorusPoint> corner_zeros;
    if (region == Region::OpenBidisc) corner_zeros = find_torus_zeros(p);

    std::vector<Cell> stack;
    stack.push_back({0.0, 1.0, -kPi, kPi, 0.0, 1.0, -kPi, kPi});
    out.min_modulus_seen = std::abs(p.eval(cd(0.5, 0.0), cd(0.5, 0.0)));

    std::uint64_t probes = 0;
    bool stuck = false;

    auto try_witness = [&](cd s1, cd s2) -> bool {
        ++probes;
        auto [w1, w2] = probe_zero(p, dv, s1, s2);
        if (std::abs(p.eval(w1, w2)) < 1e-8 &&
            witness_in_region(w1, w2, region)) {
            out.verdict = StabilityVerdict::ZeroFound;
            out.witness = {w1, w2};
            return true;
        }
        return false;
    };

    while (!stack.empty() && out.cells_checked < max_cells) {
        Cell c = stack.back();
        stack.pop_back();
        ++out.cells_checked;

        double rc1 = 0.5 * (c.r1lo + c.r1hi), tc1 = 0.5 * (c.t1lo + c.t1hi);
        double rc2 = 0.5 * (c.r2lo + c.r2hi), tc2 = 0.5 * (c.t2lo + c.t2hi);
        double dr1 = 0.5 * (c.r1hi - c.r1lo), dt1 = 0.5 * (c.t1hi - c.t1lo);
        double dr2 = 0.5 * (c.r2hi - c.r2lo), dt2 = 0.5 * (c.t2hi - c.t2lo);
        // |r e^{it} - rc e^{itc}| <= |r - rc| + rc |t - tc| on the cell
        double rad1 = dr1 + rc1 * dt1, rad2 = dr2 + rc2 * dt2;
        cd zc1 = std::polar(rc1, tc1), zc2 = std::polar(rc2, tc2);

        if (region == Region::OpenBidisc) {
            bool excluded = false;
            for (const TorusPoint& tau : corner_zeros) {
                double e1 = std::abs(zc1 - tau.point1()) + rad1;
                double e2 = std::abs(zc2 - tau.point2()) + rad2;
                if (e1 * e1 + e2 * e2 <=
                    kExcludeRadius * kExcludeRadius) {
                    excluded = true;
                    break;
                }
            }
            if (excluded) continue;
        }

        double pc = std::abs(p.eval(zc1, zc2));
        out.min_modulus_seen = std::min(out.min_modulus_seen, pc);
        if (pc > db.L1 * rad1 + db.L2 * rad2 + 1e-12 * scale) continue;

        if (probes < 256 || out.cells_checked % 64 == 0)
            if (try_witness(zc1, zc2)) return out;

        if (std::max(rad1, rad2) < 1e-7) {
            stuck = true;
            continue;
        }

        // split the dimension with the largest chord extent
        double ext[4] = {dr1, rc1 == 0.0 ? c.r1hi * dt1 : rc1 * dt1, dr2,
                         rc2 == 0.0 ? c.r2hi * dt2 : rc2 * dt2};
        int dim = 0;
        for (int k = 1; k < 4; ++k)
            if (ext[k] > ext[dim]) dim = k;
        Cell a = c, b = c;
        switch (dim) {
            case 0: a.r1hi = b.r1lo = rc1; break;
            case 1: a.t1hi = b.t1lo = tc1; break;
            case 2: a.r2hi = b.r2lo = rc2; break;
            case 3: a.t2hi = b.t2lo = tc2; break;
        }
        stack.push_back(a);
        stack.push_back(b);
    }

    bool exhausted = !stack.empty();

    if (region == Region::OpenBidisc) {
        // sweep the excluded corners with seeded multi-start probes
        detail::Rng rng(0x5354u);
        for (const TorusPoint& tau : corner_zeros) {
            cd w1 = tau.point1(), w2 = tau.point2();
            for (int k = 0; k < 96; ++k) {
                cd s1, s2;
                int tries = 0;
                do {
                    double r = kExcludeRadius *
                               (1e-3 + 0.996 * std::sqrt(rng.next_double()));
                    double a = 2.0 * kPi * rng.next_double();
                    s1 = w1 + std::polar(r, a);
                    r = kExcludeRadius *
                        (1e-3 + 0.996 * std::sqrt(rng.next_double()));
                    a = 2.0 * kPi * rng.next_double();
                    s2 = w2 + std::polar(r, a);
                } while ((std::abs(s1) >= 1.0 || std::abs(s2) >= 1.0) &&
                         ++tries < 64);
                if (std::abs(s1) >= 1.0 || std::abs(s2) >= 1.0) continue;
                if (try_witness(s1, s2)) return out;
            }
        }
    }

    if (exhausted || stuck) {
        out.verdict = StabilityVerdict::Unknown;
        return out;
    }
    out.verdict = region == Region::ClosedBidisc
                      ? StabilityVerdict::CertifiedStableClosed
                      : StabilityVerdict::CertifiedStableOpen;
    return out;
}

HermitianForm gap_form(const Poly2& p) {
    HermitianForm gap = mod2_form(p);
    gap -= mod2_form(reflect(p));
    return gap;
}

SosCheck verify_sos_certificate(const Poly2& p, const SosCertificate& cert) {
    HermitianForm gap = gap_form(p);
    HermitianForm expansion;
    for (const Poly2& q : cert.sos1) {
        HermitianForm t = mod2_form(q).times_one_minus_sq(0);
        expansion += t;
    }
    for (const Poly2& q : cert.sos2) {
        HermitianForm t = mod2_form(q).times_one_minus_sq(1);
        expansion += t;
    }
    HermitianForm residual = gap;
    residual -= expansion;
    SosCheck out;
    out.tolerance = 1e-9 * (1.0 + gap.max_abs_coeff());
    out.max_residual = residual.max_abs_coeff();
    out.valid = out.max_residual <= out.tolerance;
    return out;
}

BickelEstimate estimate_bickel_constant(const Poly2& p,
                                        const SamplerSpec& sampler) {
    if (sampler.stratum) detail::validate_stratum(*sampler.stratum);
    HermitianForm gap = gap_form(p);
    double gmax = gap.max_abs_coeff();
    BickelEstimate out;
    if (gmax == 0.0) return out; // gap identically zero

    double neg_tol = -1e-9 * (1.0 + gmax);
    double best = 1e300;
    for (std::uint64_t k = 0; k < sampler.n; ++k) {
        detail::BidiscDraw d = detail::draw_bidisc(sampler, k);
        double uv = (1.0 - std::norm(d.z1)) * (1.0 - std::norm(d.z2));
        if (uv < 1e-15) continue;
        double g = gap.eval(d.z1, d.z2);
        if (g < neg_tol)
            fail(ErrorKind::DivergentRatio,
                 "gap negative at a sampled point: " + std::to_string(g));
        double ratio = g / uv;
        if (ratio < best) {
            best = ratio;
            out.argmin1 = d.z1;
            out.argmin2 = d.z2;
        }
        ++out.n_samples;
    }
    out.inf_ratio = out.n_samples > 0 ? best : 0.0;
    return out;
}

} // namespace riflab
