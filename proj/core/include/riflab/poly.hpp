#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace riflab {

using cd = std::complex<double>;

/// Bivariate polynomial with a declared bidegree (n, m). Coefficients are
/// stored densely, c(i, j) multiplying z1^i z2^j, 0 <= i <= n, 0 <= j <= m.
/// The declared bidegree is part of the value: trailing zero rows are kept,
/// and reflection is taken with respect to (n, m), not the support.
class Poly2 {
  public:
    Poly2() : deg1_(0), deg2_(0), c_(1, cd(0.0, 0.0)) {}
    Poly2(int deg1, int deg2);

    static Poly2 constant(cd value);

    int deg1() const { return deg1_; }
    int deg2() const { return deg2_; }

    cd& at(int i, int j) { return c_[idx(i, j)]; }
    const cd& at(int i, int j) const { return c_[idx(i, j)]; }

    const std::vector<cd>& coeffs() const { return c_; }

    /// Horner evaluation, inner index j first. The summation order is fixed
    /// so repeated runs are bit-reproducible.
    cd eval(cd z1, cd z2) const;

    bool operator==(const Poly2& other) const = default;

  private:
    std::size_t idx(int i, int j) const;

    int deg1_, deg2_;
    std::vector<cd> c_;
};

/// Reflection with respect to the declared bidegree:
///   ptilde(z) = z1^n z2^m conj(p(1/conj(z1), 1/conj(z2))),
/// coefficientwise ctilde(i, j) = conj(c(n-i, m-j)). An involution.
Poly2 reflect(const Poly2& p);

/// Hermitian coefficient form in the monomials z1^i1 z2^j1 zbar1^i2 zbar2^j2.
/// Closed under addition, subtraction and multiplication by (1 - |zk|^2),
/// which is all the Agler gap bookkeeping needs.
class HermitianForm {
  public:
    HermitianForm() : deg1_(0), deg2_(0), a_(1, cd(0.0, 0.0)) {}
    HermitianForm(int deg1, int deg2);

    int deg1() const { return deg1_; }
    int deg2() const { return deg2_; }

    cd& at(int i1, int j1, int i2, int j2) { return a_[idx(i1, j1, i2, j2)]; }
    const cd& at(int i1, int j1, int i2, int j2) const {
        return a_[idx(i1, j1, i2, j2)];
    }

    /// Real value of the form at z. The imaginary part of the sum is
    /// discarded; for Hermitian coefficient data it is rounding noise.
    double eval(cd z1, cd z2) const;

    double max_abs_coeff() const;

    HermitianForm& operator+=(const HermitianForm& other);
    HermitianForm& operator-=(const HermitianForm& other);

    /// Multiplication by (1 - |z1|^2) (axis = 0) or (1 - |z2|^2) (axis = 1).
    HermitianForm times_one_minus_sq(int axis) const;

    static HermitianForm resized(const HermitianForm& f, int deg1, int deg2);

  private:
    std::size_t idx(int i1, int j1, int i2, int j2) const;

    int deg1_, deg2_;
    std::vector<cd> a_;
};

/// Exact coefficient form of |p(z)|^2: a(i1,j1,i2,j2) = c(i1,j1) conj(c(i2,j2)).
HermitianForm mod2_form(const Poly2& p);

/// Torus Lipschitz data: L1 = sum i |c(i,j)|, L2 = sum j |c(i,j)|. These bound
/// |dp/dz1|, |dp/dz2| on the closed bidisc.
struct DerivativeBound {
    double L1;
    double L2;
};

DerivativeBound derivative_bound(const Poly2& p);

/// Lower-bound estimate of max over the torus of |p|, from a grid_n x grid_n
/// angle scan refined by coordinatewise golden-section ascent. Within 1e-6 of
/// the true maximum for grid_n >= 256 on bidegrees up to (8, 8).
double max_modulus_torus(const Poly2& p, int grid_n);

} // namespace riflab
