#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/poly.hpp"

#include "fixtures.hpp"

using riflab::cd;
using riflab::Poly2;
using riflab::detail::Rng;

namespace {

Poly2 random_poly(int deg1, int deg2, std::uint64_t seed) {
    Rng rng(seed);
    Poly2 p(deg1, deg2);
    for (int i = 0; i <= deg1; ++i)
        for (int j = 0; j <= deg2; ++j)
            p.at(i, j) = cd(2.0 * rng.next_double() - 1.0,
                            2.0 * rng.next_double() - 1.0);
    return p;
}

cd naive_eval(const Poly2& p, cd z1, cd z2) {
    cd sum = 0.0;
    for (int i = 0; i <= p.deg1(); ++i)
        for (int j = 0; j <= p.deg2(); ++j)
            sum += p.at(i, j) * std::pow(z1, i) * std::pow(z2, j);
    return sum;
}

} // namespace

TEST_CASE("declared bidegree is part of the value") {
    Poly2 p(3, 2);
    CHECK(p.deg1() == 3);
    CHECK(p.deg2() == 2);
    CHECK(p.coeffs().size() == 12);
    CHECK(p.eval(0.3, 0.7) == cd(0.0));

    Poly2 q = Poly2::constant(cd(2.0, -1.0));
    CHECK(q.deg1() == 0);
    CHECK(q.eval(0.5, -0.5) == cd(2.0, -1.0));

    CHECK_THROWS_AS(Poly2(-1, 0), riflab::Error);
    CHECK_THROWS_AS(p.at(4, 0), riflab::Error);
    CHECK_THROWS_AS(p.at(0, 3), riflab::Error);
}

TEST_CASE("Horner evaluation matches the naive sum") {
    for (std::uint64_t s = 0; s < 8; ++s) {
        Poly2 p = random_poly(5, 4, 100 + s);
        Rng rng(200 + s);
        for (int k = 0; k < 16; ++k) {
            cd z1 = rng.next_disc(), z2 = rng.next_disc();
            cd a = p.eval(z1, z2), b = naive_eval(p, z1, z2);
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
        }
    }
}

TEST_CASE("reflection of the corner-contact fixture") {
    Poly2 p = fixtures::corner_contact();
    Poly2 pt = riflab::reflect(p);
    // ctilde(i, j) = conj(c(1-i, 1-j)): 2 z1 z2 - z1 - z2.
    CHECK(pt.at(0, 0) == cd(0.0));
    CHECK(pt.at(1, 0) == cd(-1.0));
    CHECK(pt.at(0, 1) == cd(-1.0));
    CHECK(pt.at(1, 1) == cd(2.0));
}

TEST_CASE("reflection is an involution (exact)") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Poly2 p = random_poly(6, 6, 1000 + s);
        CHECK(riflab::reflect(riflab::reflect(p)) == p);
    }
}

TEST_CASE("reflection identity on the torus") {
    // ptilde(z) = z1^n z2^m conj(p(z)) when |z1| = |z2| = 1, so the moduli
    // agree there.
    for (std::uint64_t s = 0; s < 10; ++s) {
        Poly2 p = random_poly(4, 3, 300 + s);
        Poly2 pt = riflab::reflect(p);
        Rng rng(400 + s);
        for (int k = 0; k < 32; ++k) {
            cd z1 = std::polar(1.0, 2.0 * M_PI * rng.next_double());
            cd z2 = std::polar(1.0, 2.0 * M_PI * rng.next_double());
            cd lhs = pt.eval(z1, z2);
            cd rhs = std::pow(z1, p.deg1()) * std::pow(z2, p.deg2()) *
                     std::conj(p.eval(z1, z2));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
            CHECK(std::abs(std::abs(lhs) - std::abs(p.eval(z1, z2))) <= 1e-12);
        }
    }
}

TEST_CASE("reflection respects the declared bidegree, not the support") {
    // Same coefficients declared at (1, 1) and at (2, 2) reflect differently.
    Poly2 small = fixtures::corner_contact();
    Poly2 padded(2, 2);
    padded.at(0, 0) = 2.0;
    padded.at(1, 0) = -1.0;
    padded.at(0, 1) = -1.0;
    Poly2 rs = riflab::reflect(small);
    Poly2 rp = riflab::reflect(padded);
    CHECK(rs.at(1, 1) == cd(2.0));
    CHECK(rp.at(2, 2) == cd(2.0));
    CHECK(rp.at(1, 1) == cd(0.0));
    CHECK(rp.eval(0.4, 0.7) != rs.eval(0.4, 0.7));
}

TEST_CASE("mod2_form evaluates to |p|^2") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        Poly2 p = random_poly(3, 4, 500 + s);
        riflab::HermitianForm f = riflab::mod2_form(p);
        Rng rng(600 + s);
        for (int k = 0; k < 24; ++k) {
            cd z1 = rng.next_disc(), z2 = rng.next_disc();
            double want = std::norm(p.eval(z1, z2));
            CHECK(f.eval(z1, z2) ==
                  doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("Hermitian form algebra") {
    Poly2 p = random_poly(2, 2, 700);
    Poly2 q = random_poly(2, 2, 701);
    riflab::HermitianForm fp = riflab::mod2_form(p);
    riflab::HermitianForm fq = riflab::mod2_form(q);

    riflab::HermitianForm sum = fp;
    sum += fq;
    riflab::HermitianForm diff = fp;
    diff -= fq;
    riflab::HermitianForm w1 = fp.times_one_minus_sq(0);
    riflab::HermitianForm w2 = fp.times_one_minus_sq(1);

    Rng rng(702);
    for (int k = 0; k < 32; ++k) {
        cd z1 = rng.next_disc(), z2 = rng.next_disc();
        double vp = fp.eval(z1, z2), vq = fq.eval(z1, z2);
        CHECK(sum.eval(z1, z2) == doctest::Approx(vp + vq).epsilon(1e-12));
        CHECK(diff.eval(z1, z2) ==
              doctest::Approx(vp - vq).epsilon(1e-12).scale(1.0));
        CHECK(w1.eval(z1, z2) ==
              doctest::Approx((1.0 - std::norm(z1)) * vp).epsilon(1e-12));
        CHECK(w2.eval(z1, z2) ==
              doctest::Approx((1.0 - std::norm(z2)) * vp).epsilon(1e-12));
    }
    CHECK_THROWS_AS(fp.times_one_minus_sq(2), riflab::Error);
}

TEST_CASE("derivative bounds are the weighted coefficient sums") {
    riflab::DerivativeBound b = riflab::derivative_bound(fixtures::corner_contact());
    CHECK(b.L1 == doctest::Approx(1.0));
    CHECK(b.L2 == doctest::Approx(1.0));

    Poly2 m(2, 1);
    m.at(2, 1) = cd(0.0, 2.0); // 2i z1^2 z2
    riflab::DerivativeBound bm = riflab::derivative_bound(m);
    CHECK(bm.L1 == doctest::Approx(4.0));
    CHECK(bm.L2 == doctest::Approx(2.0));
}

TEST_CASE("torus maximum modulus") {
    // 2 - z1 - z2 peaks at z1 = z2 = -1; 3 - z1 - z2 at the same point.
    CHECK(riflab::max_modulus_torus(fixtures::corner_contact(), 64) ==
          doctest::Approx(4.0).epsilon(1e-6));
    CHECK(riflab::max_modulus_torus(fixtures::clear_margin(), 64) ==
          doctest::Approx(5.0).epsilon(1e-6));
    CHECK(riflab::max_modulus_torus(Poly2::constant(cd(0.0, -3.0)), 8) ==
          doctest::Approx(3.0));
    CHECK_THROWS_AS(riflab::max_modulus_torus(fixtures::corner_contact(), 4),
                    riflab::Error);
}
