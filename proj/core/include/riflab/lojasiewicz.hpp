#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "riflab/poly.hpp"
#include "riflab/rif.hpp"

namespace riflab {

/// Local decay data for |p| near an isolated torus zero tau:
///   |p(z)| >= c |z - tau|^q on the sampled neighbourhood of the closed
/// bidisc. q comes from a log-log fit of per-shell minima; c is the fitted
/// intercept deflated so the bound holds at every sampled point.
struct LojaFit {
    double q = 0.0;
    double c = 0.0;
    double r_squared = 0.0;
    std::uint64_t n_shells = 0;
};

/// Fit the decay exponent of |p| at tau over the given shell radii
/// (|z - tau| in [s, 1.05 s], points drawn from the closed bidisc).
/// Throws NotIsolatedZero if tau is not among find_torus_zeros(p) or another
/// torus zero lies within 0.2; BadFit if r^2 < 0.98 or the lower bound fails
/// at a sampled point by more than 1e-9.
LojaFit fit_lojasiewicz_exponent(const Poly2& p, const TorusPoint& tau,
                                 const std::vector<double>& shells,
                                 std::uint64_t samples_per_shell,
                                 std::uint64_t seed);

namespace detail {
/// Fitting core with the polynomial replaced by an arbitrary nonnegative
/// function of z; used by tests to validate the regression against synthetic
/// decay profiles with known exponents.
LojaFit fit_decay_exponent(const std::function<double(cd, cd)>& f,
                           const TorusPoint& tau,
                           const std::vector<double>& shells,
                           std::uint64_t samples_per_shell, std::uint64_t seed,
                           bool enforce_lower_bound);
} // namespace detail

struct UpperBoundCheck {
    /// max over sampled ball of |phi(z) - v| |z - tau|^q / epsilon.
    double worst_ratio = 0.0;
    /// Largest |phi - v| over nontangential samples within shrinking radii
    /// (radius, radius/2, radius/4, radius/8). For the correct limit value v
    /// the profile contracts to 0; a wrong v levels off at |v - v_true|.
    std::vector<double> cone_profile;
    bool holds = false;
};

/// Empirical check of the local upper bound |phi(z) - v| <= C eps / |z-tau|^q
/// near a singularity. The constant C is an output (worst_ratio); "holds"
/// reports whether the nontangential deviation profile contracts, which is
/// what distinguishes the true nontangential value from a wrong one (sup
/// norms over full boundary neighbourhoods cannot).
UpperBoundCheck check_upper_bound_lemma(const RationalInnerFunction& phi,
                                        const TorusPoint& tau, cd v,
                                        double epsilon, double q,
                                        double neighborhood_radius,
                                        std::uint64_t n_samples,
                                        std::uint64_t seed);

} // namespace riflab
