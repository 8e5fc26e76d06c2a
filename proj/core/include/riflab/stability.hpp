#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riflab/poly.hpp"
#include "riflab/rif.hpp"

namespace riflab {

enum class Region { ClosedBidisc, OpenBidisc };

enum class StabilityVerdict {
    CertifiedStableClosed,
    CertifiedStableOpen,
    ZeroFound,
    Unknown,
};

const char* to_string(StabilityVerdict v);

struct StabilityResult {
    StabilityVerdict verdict = StabilityVerdict::Unknown;
    /// Present iff verdict == ZeroFound; then |p(witness)| < 1e-8 and the
    /// witness lies in the requested region (closed: |z_i| <= 1 + 1e-12,
    /// open: |z_i| < 1 - 1e-6).
    std::optional<std::pair<cd, cd>> witness;
    std::uint64_t cells_checked = 0;
    double min_modulus_seen = 0.0;
};

/// Zero-freeness certificate by adaptive subdivision of the bidisc in polar
/// cells. A cell is cleared when |p(center)| exceeds L1 r1 + L2 r2 for its
/// per-coordinate chord radii r_i, with (L1, L2) from derivative_bound;
/// uncleared cells are split, and Gauss-Newton probes from their centers hunt
/// for witnesses.
///
/// CertifiedStableClosed is a mathematically sound certificate (up to
/// floating point). The open verdict is weaker by necessity: when the zero
/// set touches the torus, no Lipschitz argument can clear a neighbourhood of
/// the contact point, so cells near located torus zeros are excluded from
/// clearing and swept by multi-start probes instead. CertifiedStableOpen
/// therefore means "cleared everywhere except thin corners at torus zeros,
/// where all located zeros sit on or outside the boundary". Unknown (budget
/// exhausted) is never a disproof.
StabilityResult certify_stable(const Poly2& p, Region region,
                               std::uint64_t max_cells = 200000);

/// Agler gap |p|^2 - |ptilde|^2 as an exact Hermitian coefficient form.
/// Nonnegative on the closed bidisc iff p is stable there (and then the gap
/// admits a sum-of-squares decomposition against the weights 1 - |z_k|^2).
HermitianForm gap_form(const Poly2& p);

/// Sum-of-squares certificate: gap = (1-|z1|^2) sum |q_{1,k}|^2
///                                  + (1-|z2|^2) sum |q_{2,k}|^2.
struct SosCertificate {
    std::vector<Poly2> sos1;
    std::vector<Poly2> sos2;
};

struct SosCheck {
    bool valid = false;
    double max_residual = 0.0; // largest |coefficient| of gap - expansion
    double tolerance = 0.0;    // 1e-9 * (1 + max |coefficient| of gap)
};

SosCheck verify_sos_certificate(const Poly2& p, const SosCertificate& cert);

struct BickelEstimate {
    double inf_ratio = 0.0;
    cd argmin1, argmin2;
    std::uint64_t n_samples = 0;
};

struct SamplerSpec; // measure.hpp

/// Empirical infimum over a seeded (optionally stratified) sample of
///   gap(z) / ((1 - |z1|^2)(1 - |z2|^2)).
/// Positive infima are the quantitative stability constants behind the
/// composition bounds; identically-zero gaps report 0. Throws DivergentRatio
/// if the gap is negative beyond -1e-9 anywhere in the sample.
BickelEstimate estimate_bickel_constant(const Poly2& p,
                                        const SamplerSpec& sampler);

} // namespace riflab
