#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "riflab/poly.hpp"

namespace riflab {

/// Point of the unit torus, stored as angles. theta values are kept in
/// (-pi, pi] by the constructors that produce them.
struct TorusPoint {
    double theta1 = 0.0;
    double theta2 = 0.0;

    cd point1() const { return std::polar(1.0, theta1); }
    cd point2() const { return std::polar(1.0, theta2); }

    /// Angular distance max(|d theta1|, |d theta2|) mod 2 pi.
    double angular_distance(const TorusPoint& other) const;
};

/// Rational inner function on the bidisc in Rudin form
///   phi(z) = lambda z1^m1 z2^m2 ptilde(z) / p(z),
/// where ptilde is the reflection of p at its declared bidegree. The
/// monomial powers are independent data, not tied to the bidegree.
/// Instances are immutable after construction and safe to share across
/// threads.
class RationalInnerFunction {
  public:
    cd lambda() const { return lambda_; }
    int power1() const { return m1_; }
    int power2() const { return m2_; }
    const Poly2& denominator() const { return denom_; }
    const Poly2& numerator() const { return numer_; }

    /// Denominator zeros located on the torus during construction.
    const std::vector<TorusPoint>& singularities() const { return sing_; }

    bool same_symbol(const RationalInnerFunction& other) const;

  private:
    RationalInnerFunction() = default;
    friend RationalInnerFunction make_rif(cd lambda, int power1, int power2,
                                          const Poly2& denom);

    cd lambda_;
    int m1_ = 0, m2_ = 0;
    Poly2 denom_, numer_;
    std::vector<TorusPoint> sing_;
};

/// Validating constructor. Checks |lambda| = 1 (1e-12), unimodularity on a
/// seeded torus sample away from denominator zeros (1e-9), and absence of
/// denominator zeros in the open bidisc (via the stability certifier).
/// Throws NotInner / ZeroInOpenBidisc.
RationalInnerFunction make_rif(cd lambda, int power1, int power2,
                               const Poly2& denom);

/// Evaluate phi at a point of the closed bidisc. Throws NearSingularity when
/// |p(z)| <= 1e-14.
cd eval_rif(const RationalInnerFunction& phi, cd z1, cd z2);

/// Common zeros of |p| on the torus: coarse grid scan for candidate cells,
/// damped Newton on (Re p, Im p) in the angles, clusters merged at angular
/// distance 1e-5. Every returned point satisfies |p| < tol. Candidates whose
/// Newton iteration fails to converge are dropped.
std::vector<TorusPoint> find_torus_zeros(const Poly2& p, int grid_n = 256,
                                         double tol = 1e-9);

/// Nontangential limit along the radial path ((1-t) zeta1, (1-t) zeta2),
/// t = 2^-3 ... 2^-20, accelerated by Richardson extrapolation. Throws
/// NoStableLimit if successive extrapolants disagree beyond 1e-4.
cd nontangential_value(const RationalInnerFunction& phi, const TorusPoint& tau);

namespace detail {
/// Extrapolation core behind nontangential_value, exposed for tests: limit of
/// fn(t) as t -> 0+ along t = 2^-3 ... 2^-20.
cd richardson_radial_limit(const std::vector<cd>& samples);
} // namespace detail

/// Pair of RIFs acting as a self-map candidate of the bidisc.
struct SymbolMap {
    RationalInnerFunction phi1;
    RationalInnerFunction phi2;

    static SymbolMap diagonal(const RationalInnerFunction& phi) {
        return SymbolMap{phi, phi};
    }

    bool is_diagonal() const { return phi1.same_symbol(phi2); }
};

struct FirstOrderCheck {
    cd jacobian[2][2]; // d phi_i / d z_j, complex derivatives
    cd det;
    bool invertible; // |det| > 1e-8
};

/// Central-difference Jacobian of the symbol map at a torus point where both
/// components are regular. Step 1e-6 in each variable. Throws SingularAtPoint
/// if tau is within angular distance 1e-6 of a singularity of either
/// component.
FirstOrderCheck first_order_check(const SymbolMap& map, const TorusPoint& tau);

} // namespace riflab
