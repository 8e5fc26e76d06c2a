#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riflab/rif.hpp"

namespace riflab {

/// Weighted volume V_beta(A) = integral over A of
///   (1 - |z1|^2)^beta (1 - |z2|^2)^beta dA(z1) dA(z2),
/// with dA the normalized area measure on the unit disc, so the full bidisc
/// has V_beta = 1 / (beta + 1)^2.

/// Carleson box S(zeta, delta): per-coordinate discs |z_i - zeta_i| < delta_i
/// around a torus point, intersected with the bidisc.
struct CarlesonBox {
    TorusPoint center;
    double delta1 = 0.25;
    double delta2 = 0.25;
};

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
};

/// Proposal sampling is uniform on the bidisc with indicator weighting; an
/// optional stratum redirects a fraction of the samples to the bi-annulus
/// {inner < |z_i - zeta_i| < radius} around a torus point. The stratum mass
/// is the exact circle-circle lens area, so the split estimate stays
/// unbiased; stratification only reduces variance near the boundary.
struct Stratum {
    TorusPoint center;
    double fraction = 0.5;
    double radius = 0.1;       // outer |z_i - zeta_i| radius
    double inner_radius = 0.0; // 0 gives a full disc neighbourhood
};

struct SamplerSpec {
    std::uint64_t n = 1000000;
    std::uint64_t seed = 0;
    std::optional<Stratum> stratum;
};

/// V_beta of a Carleson box. Throws EmptyRegion if no sample lands in the
/// box (its interior always meets the bidisc, so a zero count is a sampling
/// failure, not a zero volume).
VolumeEstimate vbeta_box(double beta, const CarlesonBox& box,
                         const SamplerSpec& sampler);

/// V_beta of the sublevel set {f < threshold}. Evaluations that throw
/// NearSingularity count as outside the set.
VolumeEstimate vbeta_sublevel(double beta,
                              const std::function<double(cd, cd)>& f,
                              double threshold, const SamplerSpec& sampler);

/// V_beta of Phi^{-1}(S(zeta, delta)).
VolumeEstimate pullback_volume(const SymbolMap& map, const CarlesonBox& box,
                               double beta, const SamplerSpec& sampler);

struct PowerLawFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double r_squared = 0.0;
    double exponent_stderr = 0.0;
    std::pair<double, double> delta_range{0.0, 0.0};
};

/// OLS fit of log V against log delta. Needs >= 4 points; throws
/// NonPositiveVolume naming the offending delta if any volume is <= 0.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Unnormalized bi-annulus volume bound pi^2 (eps^{2/q} - (eps/(2 delta))^{2/q})^2
/// for the annuli (eps/(2 delta))^{1/q} < |z_i - tau_i| < eps^{1/q}.
/// Domain: 0 < eps < 1, 1/2 < delta < 1, q >= 1 (OutOfRange otherwise).
double annulus_lower_bound(double epsilon, double delta, double q);

/// V_beta of the band {(1 - |z1|^2)(1 - |z2|^2) <= 2 M^2 s}, Monte Carlo.
VolumeEstimate band_volume(double beta, double s, double M,
                           const SamplerSpec& sampler);

/// Closed-form value of the same band volume (independent cross-check
/// path for the Monte Carlo estimate).
double band_volume_exact(double beta, double s, double M);

struct ScanRow {
    double delta = 0.0;
    double volume = 0.0;
    double std_error = 0.0;
    double reference = 0.0; // delta^(2 beta_src + 4)
    double ratio = 0.0;     // volume / reference
};

struct CarlesonScan {
    TorusPoint center;
    std::vector<ScanRow> rows;
    PowerLawFit fit;
    std::string verdict; // "passes" / "fails" / "inconclusive"
};

/// Pullback-volume scaling scan against the Carleson reference exponent
/// 2 beta_src + 4. Verdict: "fails" when the fitted exponent is below the
/// reference by more than 3 fit standard errors, "passes" when not,
/// "inconclusive" when r^2 < 0.98.
CarlesonScan carleson_scan(const SymbolMap& map, double beta_src,
                           double beta_tgt, const TorusPoint& center,
                           const std::vector<double>& deltas,
                           const SamplerSpec& sampler);

namespace detail {
/// Normalized area of {|z - tau| < rho} cap unit disc for |tau| = 1
/// (circle-circle lens, used by tests and diagnostics).
double boundary_lens_area(double rho);

/// Probability mass of a stratum region under normalized area measure:
/// product over coordinates of lens(radius) - lens(inner_radius).
double stratum_mass(const Stratum& s);
} // namespace detail

} // namespace riflab
