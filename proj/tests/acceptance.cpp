// Acceptance gate: twelve numbered checks covering the full pipeline, from
// coefficient-level reflection up to Gram truncation ladders. Each check
// prints one [PASS]/[FAIL] line; the exit code is the number of failures.
// Tolerances and reference numbers are pinned: loosening them is a design
// change, not a cleanup.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/gram.hpp"
#include "riflab/io.hpp"
#include "riflab/lojasiewicz.hpp"
#include "riflab/measure.hpp"
#include "riflab/poly.hpp"
#include "riflab/rif.hpp"
#include "riflab/stability.hpp"

#include "fixtures.hpp"

using riflab::CarlesonBox;
using riflab::cd;
using riflab::Poly2;
using riflab::QuadratureSpec;
using riflab::Region;
using riflab::SamplerSpec;
using riflab::StabilityVerdict;
using riflab::Stratum;
using riflab::SymbolMap;
using riflab::TorusPoint;
using riflab::detail::Rng;

namespace {

struct CheckFail {
    std::string msg;
};

#define ACC(cond, msg)                            \
    do {                                          \
        if (!(cond)) throw CheckFail{msg};        \
    } while (0)

std::string fmt(double v) { return riflab::io::format_double(v); }

Poly2 random_poly66(std::uint64_t seed) {
    Rng rng(seed);
    Poly2 p(6, 6);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
            p.at(i, j) = cd(2.0 * rng.next_double() - 1.0,
                            2.0 * rng.next_double() - 1.0);
    return p;
}

// 01: reflection has the pinned corner-contact image, is an involution, and
// satisfies ptilde = z1^n z2^m conj(p) on the torus.
void c01_reflection() {
    Poly2 pt = riflab::reflect(fixtures::corner_contact());
    ACC(pt.at(0, 0) == cd(0.0) && pt.at(1, 0) == cd(-1.0) &&
            pt.at(0, 1) == cd(-1.0) && pt.at(1, 1) == cd(2.0),
        "corner-contact reflection coefficients are off");

    for (std::uint64_t s = 0; s < 100; ++s) {
        Poly2 p = random_poly66(5000 + s);
        ACC(riflab::reflect(riflab::reflect(p)) == p,
            "reflection failed to be an involution at seed " +
                std::to_string(5000 + s));
    }

    for (std::uint64_t s = 0; s < 10; ++s) {
        Poly2 p = random_poly66(6000 + s);
        Poly2 pt2 = riflab::reflect(p);
        Rng rng(7000 + s);
        for (int k = 0; k < 32; ++k) {
            cd z1 = std::polar(1.0, 2.0 * M_PI * rng.next_double());
            cd z2 = std::polar(1.0, 2.0 * M_PI * rng.next_double());
            cd want = std::pow(z1, 6) * std::pow(z2, 6) *
                      std::conj(p.eval(z1, z2));
            ACC(std::abs(pt2.eval(z1, z2) - want) <=
                    1e-12 * (1.0 + std::abs(want)),
                "torus reflection identity beyond 1e-12");
        }
    }
}

// 02: the corner-contact gap has the sqrt(2)(1 - z_k) certificate; dropping
// the sqrt(2) leaves residual 2.
void c02_sos_certificate() {
    auto cert_with = [](double s) {
        Poly2 q1(0, 1);
        q1.at(0, 0) = s;
        q1.at(0, 1) = -s;
        Poly2 q2(1, 0);
        q2.at(0, 0) = s;
        q2.at(1, 0) = -s;
        return riflab::SosCertificate{{q1}, {q2}};
    };
    auto good = riflab::verify_sos_certificate(fixtures::corner_contact(),
                                               cert_with(std::sqrt(2.0)));
    ACC(good.valid, "certificate rejected");
    ACC(good.max_residual <= 1e-12,
        "certificate residual " + fmt(good.max_residual) + " > 1e-12");

    auto bad = riflab::verify_sos_certificate(fixtures::corner_contact(),
                                              cert_with(1.0));
    ACC(!bad.valid, "rescaled certificate accepted");
    ACC(std::abs(bad.max_residual - 2.0) <= 1e-9,
        "rescaled residual " + fmt(bad.max_residual) + " != 2");
}

// 03: subdivision certifies the clear-margin symbol on the closed bidisc,
// finds the boundary contact of the corner symbol there, and certifies the
// corner symbol on the open bidisc.
void c03_stability() {
    auto margin = riflab::certify_stable(fixtures::clear_margin(),
                                         Region::ClosedBidisc);
    ACC(margin.verdict == StabilityVerdict::CertifiedStableClosed,
        std::string("clear-margin verdict: ") + to_string(margin.verdict));

    auto corner = riflab::certify_stable(fixtures::corner_contact(),
                                         Region::ClosedBidisc);
    ACC(corner.verdict == StabilityVerdict::ZeroFound,
        std::string("corner-contact closed verdict: ") +
            to_string(corner.verdict));
    ACC(corner.witness.has_value(), "zero-found without witness");
    ACC(std::abs(corner.witness->first - cd(1.0)) <= 1e-6 &&
            std::abs(corner.witness->second - cd(1.0)) <= 1e-6,
        "witness not within 1e-6 of (1, 1)");
    ACC(std::abs(fixtures::corner_contact().eval(corner.witness->first,
                                                 corner.witness->second)) <
            1e-8,
        "witness modulus >= 1e-8");

    auto open = riflab::certify_stable(fixtures::corner_contact(),
                                       Region::OpenBidisc);
    ACC(open.verdict == StabilityVerdict::CertifiedStableOpen,
        std::string("corner-contact open verdict: ") +
            to_string(open.verdict));
}

// 04: gap ratio infima. Corner symbol: diagonal law 4(1-r)/(1+r) to 1e-9 and
// sampled infimum below 1e-2. Clear-margin symbol: sampled infimum within
// 10% of the pinned 6.716775830433878, stable under doubling the sample.
void c04_gap_infimum() {
    riflab::HermitianForm gap = riflab::gap_form(fixtures::corner_contact());
    for (double r : {0.9, 0.99, 0.999}) {
        double uv = (1.0 - r * r) * (1.0 - r * r);
        double want = 4.0 * (1.0 - r) / (1.0 + r);
        ACC(std::abs(gap.eval(r, r) / uv - want) <= 1e-9 * (1.0 + want),
            "diagonal gap law off at r = " + fmt(r));
    }

    SamplerSpec corner_spec{1000000, 4242,
                            Stratum{TorusPoint{0.0, 0.0}, 0.5, 0.02, 0.0}};
    auto corner =
        riflab::estimate_bickel_constant(fixtures::corner_contact(), corner_spec);
    ACC(corner.inf_ratio < 0.01,
        "corner-contact infimum " + fmt(corner.inf_ratio) + " >= 1e-2");

    const double pinned = 6.716775830433878;
    SamplerSpec m1{1000000, 4242, std::nullopt};
    auto margin = riflab::estimate_bickel_constant(fixtures::clear_margin(), m1);
    ACC(std::abs(margin.inf_ratio - pinned) <= 0.1 * pinned,
        "clear-margin infimum " + fmt(margin.inf_ratio) +
            " not within 10% of " + fmt(pinned));

    SamplerSpec m2{2000000, 4242, std::nullopt};
    auto margin2 = riflab::estimate_bickel_constant(fixtures::clear_margin(), m2);
    ACC(std::abs(margin2.inf_ratio - margin.inf_ratio) <=
            0.1 * margin.inf_ratio,
        "infimum moved more than 10% when doubling samples");
}

// 05: |2 - z1 - z2| decays quadratically at (1, 1): fitted exponent within
// [1.9, 2.1] at r^2 >= 0.98, constant near 1/2.
void c05_decay_exponent() {
    std::vector<double> shells;
    for (int j = 3; j <= 10; ++j) shells.push_back(std::ldexp(1.0, -j));
    auto fit = riflab::fit_lojasiewicz_exponent(
        fixtures::corner_contact(), TorusPoint{0.0, 0.0}, shells, 2000, 17);
    ACC(fit.q >= 1.9 && fit.q <= 2.1,
        "decay exponent " + fmt(fit.q) + " outside [1.9, 2.1]");
    ACC(fit.r_squared >= 0.98, "decay fit r^2 " + fmt(fit.r_squared) + " < 0.98");
    ACC(fit.c >= 0.35 && fit.c <= 0.65,
        "decay constant " + fmt(fit.c) + " outside [0.35, 0.65]");
}

// 06: Carleson box volumes at a torus point scale like delta^(2 beta + 4):
// fitted exponent within 0.4 for beta in {0, 2}.
void c06_box_scaling() {
    for (double beta : {0.0, 2.0}) {
        std::vector<std::pair<double, double>> pts;
        int k = 0;
        for (int j = 2; j <= 7; ++j, ++k) {
            double d = std::ldexp(1.0, -j);
            SamplerSpec spec{400000, 900 + static_cast<std::uint64_t>(k),
                             Stratum{TorusPoint{0.0, 0.0}, 0.85,
                                     std::min(1.0, 4.0 * d), 0.0}};
            CarlesonBox box{TorusPoint{0.0, 0.0}, d, d};
            pts.push_back({d, riflab::vbeta_box(beta, box, spec).value});
        }
        auto fit = riflab::fit_power_law(pts);
        double want = 2.0 * beta + 4.0;
        ACC(std::abs(fit.exponent - want) <= 0.4,
            "beta " + fmt(beta) + ": box exponent " + fmt(fit.exponent) +
                " not within 0.4 of " + fmt(want));
    }
}

// 07: the sign-flipped corner symbol defies the box exponent (pullback
// exponent far below 4, at >= 3 fit standard errors), and its truncation
// ladder grows past a factor 2.
void c07_unbounded_flag() {
    auto map = SymbolMap::diagonal(fixtures::corner_rif_neg());
    SamplerSpec spec{1000000, 2026,
                     Stratum{TorusPoint{0.0, 0.0}, 0.5, 1.0, 0.0}};
    std::vector<double> deltas;
    for (int j = 1; j <= 6; ++j) deltas.push_back(std::ldexp(1.0, -j));
    auto scan = riflab::carleson_scan(map, 0.0, 0.0, TorusPoint{0.0, 0.0},
                                      deltas, spec);
    ACC(scan.verdict == "fails", "scan verdict: " + scan.verdict);
    ACC(scan.fit.r_squared >= 0.98,
        "scan r^2 " + fmt(scan.fit.r_squared) + " < 0.98");
    double sigmas = (4.0 - scan.fit.exponent) / scan.fit.exponent_stderr;
    ACC(sigmas >= 3.0,
        "exponent deficit only " + fmt(sigmas) + " standard errors");

    auto ladder =
        riflab::norm_growth_scan(map, {2, 4, 8, 12}, 0.0, 0.0, QuadratureSpec{});
    ACC(ladder.verdict == "growth", "ladder verdict: " + ladder.verdict);
    for (std::size_t i = 1; i < ladder.rows.size(); ++i)
        ACC(ladder.rows[i].lambda_max >= ladder.rows[i - 1].lambda_max - 1e-12,
            "ladder not nondecreasing");
    ACC(ladder.rows.back().lambda_max / ladder.rows.front().lambda_max > 2.0,
        "ladder grew by less than a factor 2");
}

// 08: the clear-margin symbol stays away from the unit circle in the
// quantitative form 1 - |phi| >= (C/50) (1-|z1|^2)(1-|z2|^2), and its
// heavier-target truncation ladder plateaus.
void c08_bounded_margin() {
    auto est = riflab::estimate_bickel_constant(
        fixtures::clear_margin(), SamplerSpec{1000000, 777, std::nullopt});
    ACC(est.inf_ratio > 0.0, "clear-margin infimum not positive");

    auto phi = fixtures::margin_rif();
    double coef = est.inf_ratio / 50.0;
    for (std::uint64_t k = 0; k < 100000; ++k) {
        Rng rng = Rng::substream(778, k);
        cd z1 = rng.next_disc(), z2 = rng.next_disc();
        double uv = (1.0 - std::norm(z1)) * (1.0 - std::norm(z2));
        double margin = 1.0 - std::abs(riflab::eval_rif(phi, z1, z2));
        ACC(margin >= coef * uv - 1e-9,
            "boundary clearance violated at sample " + std::to_string(k));
    }

    auto ladder = riflab::norm_growth_scan(SymbolMap::diagonal(phi),
                                           {2, 4, 8, 12}, 1.0, 6.0,
                                           QuadratureSpec{});
    ACC(ladder.verdict == "plateau", "ladder verdict: " + ladder.verdict);
    for (const auto& row : ladder.rows)
        ACC(std::abs(row.lambda_max - 4.0 / 49.0) <= 1e-4,
            "plateau level " + fmt(row.lambda_max) + " != 4/49");
}

// 09: unimodular targets are quantitatively avoided inside the bidisc:
// |phi(z) - zeta| >= (1/8) (1-|z1|)^2 (1-|z2|)^2 for the corner symbol.
void c09_value_avoidance() {
    auto phi = fixtures::corner_rif();
    Rng zgen(31);
    for (int j = 0; j < 8; ++j) {
        cd zeta = std::polar(1.0, 2.0 * M_PI * zgen.next_double());
        for (std::uint64_t k = 0; k < 100000; ++k) {
            Rng rng = Rng::substream(31, static_cast<std::uint64_t>(j) * 100000 + k);
            cd z1 = rng.next_disc(), z2 = rng.next_disc();
            double rhs = 0.125 * std::pow(1.0 - std::abs(z1), 2.0) *
                         std::pow(1.0 - std::abs(z2), 2.0);
            double lhs = std::abs(riflab::eval_rif(phi, z1, z2) - zeta);
            ACC(lhs >= rhs - 1e-9,
                "avoidance bound violated for target " + std::to_string(j) +
                    " at sample " + std::to_string(k));
        }
    }
}

// 10: sublevel sets {|phi_neg - 1| < delta} contain the sector bi-annulus
// around (1, 1) (eps = 0.01, q = 2) and their volumes dominate the
// bi-annulus area bound by orders of magnitude. Volumes pinned to 0.02.
void c10_sublevel_sets() {
    auto phi = fixtures::corner_rif_neg();
    const double eps = 0.01;
    const double deltas[] = {0.6, 0.75, 0.9};
    const double pinned[] = {0.12945, 0.21388, 0.31876};

    for (int i = 0; i < 3; ++i) {
        double delta = deltas[i];
        auto f = [&phi](cd z1, cd z2) {
            return std::abs(riflab::eval_rif(phi, z1, z2) - cd(1.0));
        };
        SamplerSpec spec{1000000, 1234 + static_cast<std::uint64_t>(i),
                         Stratum{TorusPoint{0.0, 0.0}, 0.5, 1.0, 0.0}};
        auto vol = riflab::vbeta_sublevel(0.0, f, delta, spec);
        double bound = riflab::annulus_lower_bound(eps, delta, 2.0);
        ACC(vol.value > bound,
            "volume " + fmt(vol.value) + " below bound " + fmt(bound) +
                " at delta " + fmt(delta));
        ACC(std::abs(vol.value - pinned[i]) <= 0.02,
            "volume " + fmt(vol.value) + " drifted from pinned " +
                fmt(pinned[i]));

        // Sector bi-annulus membership: radii in [sqrt(eps/(2 delta)),
        // sqrt(eps)], phases within pi/4 of the inward normal at (1, 1).
        double inner = std::sqrt(eps / (2.0 * delta));
        double outer = std::sqrt(eps);
        for (std::uint64_t k = 0; k < 20000; ++k) {
            Rng rng = Rng::substream(4000 + static_cast<std::uint64_t>(i), k);
            double r1 = inner + (outer - inner) * rng.next_double();
            double t1 = (M_PI / 2.0) * (rng.next_double() - 0.5);
            double r2 = inner + (outer - inner) * rng.next_double();
            double t2 = (M_PI / 2.0) * (rng.next_double() - 0.5);
            cd z1 = 1.0 - std::polar(r1, t1);
            cd z2 = 1.0 - std::polar(r2, t2);
            ACC(f(z1, z2) < delta,
                "bi-annulus point escapes the sublevel set at delta " +
                    fmt(delta));
        }
    }
}

// 11: the coordinate and swap maps assemble the identity Gram matrix at
// N = 8 for beta in {0, 2}, top eigenvalue 1, to 1e-8.
void c11_identity_gram() {
    QuadratureSpec quad;
    quad.n_radial = 24;
    quad.n_angular = 40;
    SymbolMap id{fixtures::coord1_rif(), fixtures::coord2_rif()};
    SymbolMap swap{fixtures::coord2_rif(), fixtures::coord1_rif()};
    for (const SymbolMap& map : {id, swap}) {
        for (double beta : {0.0, 2.0}) {
            auto g = riflab::gram_truncation(map, 8, beta, beta, quad);
            int K = 81;
            double dev = 0.0;
            for (int a = 0; a < K; ++a)
                for (int b = 0; b < K; ++b) {
                    cd want = a == b ? cd(1.0) : cd(0.0);
                    dev = std::max(dev, std::abs(g.matrix[a * K + b] - want));
                }
            ACC(dev <= 1e-8,
                "Gram deviation from identity " + fmt(dev) + " at beta " +
                    fmt(beta));
            ACC(std::abs(g.lambda_max - 1.0) <= 1e-8,
                "top eigenvalue " + fmt(g.lambda_max) + " != 1 at beta " +
                    fmt(beta));
        }
    }
}

// 12: weighted volumes: V_beta of the bidisc matches 1/(beta+1)^2 within 3
// standard errors, and band volumes agree between Monte Carlo and the
// pinned closed-form values.
void c12_volume_sanity() {
    auto full = [](cd, cd) { return 0.0; };
    for (double beta : {0.0, 1.0, 2.0, 6.0}) {
        SamplerSpec spec{1000000, 100 + static_cast<std::uint64_t>(beta),
                         std::nullopt};
        auto est = riflab::vbeta_sublevel(beta, full, 1.0, spec);
        double want = 1.0 / ((beta + 1.0) * (beta + 1.0));
        ACC(std::abs(est.value - want) <= 3.0 * est.std_error + 1e-9,
            "bidisc volume off at beta " + fmt(beta) + ": " +
                fmt(est.value) + " vs " + fmt(want));
    }

    struct Band {
        double beta, c, want;
    };
    const Band bands[] = {
        {2.0, 0.125, 1.5708169759e-3},
        {2.0, 0.0009765625, 2.2552923420e-9},
        {1.0, 0.1, 1.4012925465e-2},
        {0.0, 0.3, 6.6119184130e-1},
        {6.0, 0.25, 1.3333142996e-5},
        {0.5, 0.5, 3.2051119751e-1},
        {1.0, 0.03125, 1.9363944838e-3},
        {3.0, 0.2, 7.4377516497e-4},
        {0.0, 0.015625, 8.0607548178e-2},
        {4.5, 0.4, 1.2930421429e-3},
    };
    std::uint64_t band_seed = 55;
    for (const Band& b : bands) {
        double s = b.c / 2.0; // M = 1
        double quad = riflab::band_volume_exact(b.beta, s, 1.0);
        ACC(std::abs(quad - b.want) <= 1e-8 * b.want,
            "band volume closed form drifted at beta " + fmt(b.beta) +
                ", c " + fmt(b.c));
        auto mc = riflab::band_volume(
            b.beta, s, 1.0, SamplerSpec{1000000, band_seed++, std::nullopt});
        ACC(std::abs(mc.value - quad) <= 3.0 * mc.std_error,
            "Monte Carlo band volume " + fmt(mc.value) +
                " disagrees with the closed form " + fmt(quad));
    }
}

struct Criterion {
    const char* label;
    void (*body)();
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"01 reflection fixture, involution, torus identity", c01_reflection},
        {"02 sum-of-squares certificate for the corner gap", c02_sos_certificate},
        {"03 stability certificates and the boundary contact", c03_stability},
        {"04 gap infimum: diagonal law, corner decay, margin constant",
         c04_gap_infimum},
        {"05 quadratic decay exponent at the corner zero", c05_decay_exponent},
        {"06 box volumes scale like delta^(2 beta + 4)", c06_box_scaling},
        {"07 sign-flipped symbol: scaling deficit and Gram growth",
         c07_unbounded_flag},
        {"08 clear-margin symbol: boundary clearance and Gram plateau",
         c08_bounded_margin},
        {"09 pointwise avoidance of unimodular targets", c09_value_avoidance},
        {"10 sublevel sets dominate the bi-annulus bound", c10_sublevel_sets},
        {"11 coordinate and swap maps give the identity Gram matrix",
         c11_identity_gram},
        {"12 weighted volumes and band cross-checks", c12_volume_sanity},
    };

    int fails = 0;
    for (const Criterion& c : criteria) {
        try {
            c.body();
            std::printf("[PASS] %s\n", c.label);
        } catch (const CheckFail& f) {
            std::printf("[FAIL] %s\n       %s\n", c.label, f.msg.c_str());
            ++fails;
        } catch (const std::exception& e) {
            std::printf("[FAIL] %s\n       unexpected error: %s\n", c.label,
                        e.what());
            ++fails;
        }
        std::fflush(stdout);
    }
    std::printf("%d of 12 criteria passed\n",
                12 - fails);
    return fails;
}
