#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "riflab/rif.hpp"

namespace riflab {

/// Finite-rank probes of the composition operator f -> f . Phi between
/// weighted Bergman spaces A^2_{beta_src} -> A^2_{beta_tgt}: Gram matrices of
/// composed monomials against source-normalized monomials. Growth of the top
/// eigenvalue along truncation order is the empirical boundedness signal.

/// Squared A^2_beta norm of z^k in one variable: the Beta function
/// B(k+1, beta+1), computed through log-Gamma for stability.
double basis_norm_sq(int k, double beta);

struct QuadratureSpec {
    enum class Mode { TensorGaussPolar, MonteCarlo };
    Mode mode = Mode::TensorGaussPolar;
    int n_radial = 32;   // Gauss-Legendre nodes on [0, 1] per coordinate
    int n_angular = 48;  // trapezoid nodes per coordinate
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
};

struct GramTruncation {
    int N = 0;
    double beta_src = 0.0;
    double beta_tgt = 0.0;
    /// Row-major (N+1)^2 x (N+1)^2 Hermitian matrix, basis z1^k z2^l ordered
    /// lexicographically in (k, l).
    std::vector<cd> matrix;
    double lambda_max = 0.0;
    double hermiticity_residual = 0.0;
    /// Per-entry Monte Carlo standard errors (empty in quadrature mode).
    std::vector<double> entry_std_error;
};

/// Gram matrix of {Phi-composed monomials, orders 0..N in each variable}
/// in A^2_{beta_tgt}, normalized by the source norms of the monomials.
/// lambda_max is the squared norm of the composition operator restricted to
/// the truncated subspace. Throws QuadratureUnstable if the assembled matrix
/// fails its Hermiticity diagnostic (1e-6).
GramTruncation gram_truncation(const SymbolMap& map, int N, double beta_src,
                               double beta_tgt, const QuadratureSpec& quad);

struct NormGrowthRow {
    int N = 0;
    double lambda_max = 0.0;
};

struct NormGrowthScan {
    std::vector<NormGrowthRow> rows;
    std::string verdict; // "growth" / "plateau" / "inconclusive"
};

/// lambda_max along a truncation ladder. All orders are extracted from one
/// assembly at max(N_list), so the rows are nested principal blocks and
/// lambda_max is nondecreasing by construction. Verdict: "growth" when
/// last/first > 2 and the sequence is nondecreasing within 1e-8; "plateau"
/// when the final relative increment is below 5%; otherwise "inconclusive".
NormGrowthScan norm_growth_scan(const SymbolMap& map,
                                const std::vector<int>& N_list,
                                double beta_src, double beta_tgt,
                                const QuadratureSpec& quad);

} // namespace riflab
