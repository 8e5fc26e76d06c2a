#include "riflab/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "quad_impl.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;

struct CoordNodes {
    std::vector<cd> z;
    std::vector<double> w; // includes the target weight and 1/(2 pi) factors
};

// Polar product rule for integrals over the unit disc against the
// normalized measure (1 - |z|^2)^beta dA / pi: Gauss-Legendre in r^2's
// radial direction (weight 2 r dr folded in), trapezoid in the angle,
// which is exact for trigonometric degree below n_angular.
CoordNodes polar_nodes(int n_radial, int n_angular, double beta) {
    auto [x, gw] = detail::gauss_legendre_01(n_radial);
    CoordNodes nodes;
    nodes.z.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    nodes.w.reserve(nodes.z.capacity());
    for (int i = 0; i < n_radial; ++i) {
        double r = x[i];
        double wr = 2.0 * r * gw[i] * std::pow(1.0 - r * r, beta) /
                    static_cast<double>(n_angular);
        for (int j = 0; j < n_angular; ++j) {
            double t = -kPi + 2.0 * kPi * (j + 0.5) / n_angular;
            nodes.z.push_back(std::polar(r, t));
            nodes.w.push_back(wr);
        }
    }
    return nodes;
}

void validate(const SymbolMap&, int N, double beta_src, double beta_tgt,
              const QuadratureSpec& quad) {
    if (N < 0 || N > 64) fail(ErrorKind::OutOfRange, "truncation order");
    if (beta_src <= -1.0 || beta_tgt <= -1.0)
        fail(ErrorKind::OutOfRange, "weights need beta > -1");
    if (quad.mode == QuadratureSpec::Mode::TensorGaussPolar) {
        if (quad.n_radial < 4 || quad.n_angular < 8)
            fail(ErrorKind::InvalidArgument, "quadrature rule too coarse");
    } else if (quad.mc_samples < 1000) {
        fail(ErrorKind::InvalidArgument, "need >= 1000 Monte Carlo samples");
    }
}

} // namespace

double basis_norm_sq(int k, double beta) {
    if (k < 0) fail(ErrorKind::InvalidArgument, "monomial order < 0");
    if (beta <= -1.0) fail(ErrorKind::OutOfRange, "weights need beta > -1");
    return std::exp(std::lgamma(k + 1.0) + std::lgamma(beta + 1.0) -
                    std::lgamma(k + beta + 2.0));
}

GramTruncation gram_truncation(const SymbolMap& map, int N, double beta_src,
                               double beta_tgt, const QuadratureSpec& quad) {
    validate(map, N, beta_src, beta_tgt, quad);
    const int K = N + 1;
    const int D = K * K;
    std::vector<double> inv_nf(D);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
            inv_nf[k * K + l] = 1.0 / std::sqrt(basis_norm_sq(k, beta_src) *
                                                basis_norm_sq(l, beta_src));

    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(D, D);
    GramTruncation out;
    out.N = N;
    out.beta_src = beta_src;
    out.beta_tgt = beta_tgt;

    const bool diagonal = map.is_diagonal();
    const int S = 2 * N; // composed powers 0..2N of the single symbol

    auto flush = [&](Eigen::MatrixXcd& block, int used) {
        if (used == 0) return;
        G.selfadjointView<Eigen::Lower>().rankUpdate(block.leftCols(used),
                                                     1.0);
        block.setZero();
    };

    if (quad.mode == QuadratureSpec::Mode::TensorGaussPolar) {
        CoordNodes n1 = polar_nodes(quad.n_radial, quad.n_angular, beta_tgt);
        if (diagonal) {
            // G[(k,l),(m,n)] depends on phi only through k+l and m+n, so
            // assemble the (2N+1)^2 moment matrix H(s,t) = <phi^s, phi^t>
            // and scatter; this removes a D^2 factor from the node loop.
            Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(S + 1, S + 1);
            Eigen::MatrixXcd block(S + 1, 256);
            block.setZero();
            int used = 0;
            Eigen::VectorXcd u(S + 1);
            for (std::size_t a = 0; a < n1.z.size(); ++a)
                for (std::size_t b = 0; b < n1.z.size(); ++b) {
                    double w = n1.w[a] * n1.w[b];
                    cd phi;
                    try {
                        phi = eval_rif(map.phi1, n1.z[a], n1.z[b]);
                    } catch (const Error& e) {
                        if (e.kind() == ErrorKind::NearSingularity) continue;
                        throw;
                    }
                    u(0) = std::sqrt(w);
                    for (int s = 1; s <= S; ++s) u(s) = u(s - 1) * phi;
                    block.col(used++) = u;
                    if (used == 256) {
                        H.selfadjointView<Eigen::Lower>().rankUpdate(
                            block.leftCols(used), 1.0);
                        block.setZero();
                        used = 0;
                    }
                }
            if (used > 0)
                H.selfadjointView<Eigen::Lower>().rankUpdate(
                    block.leftCols(used), 1.0);
            H = H.selfadjointView<Eigen::Lower>();
            // Scatter the lower triangle only and mirror: the transposed
            // entry would multiply the two norm factors in the opposite
            // order and round differently.
            for (int k = 0; k < K; ++k)
                for (int l = 0; l < K; ++l)
                    for (int m = 0; m < K; ++m)
                        for (int n = 0; n < K; ++n) {
                            int row = k * K + l, col = m * K + n;
                            if (row < col) continue;
                            G(row, col) =
                                H(k + l, m + n) * inv_nf[row] * inv_nf[col];
                        }
            G = G.selfadjointView<Eigen::Lower>();
        } else {
            Eigen::MatrixXcd block(D, 256);
            block.setZero();
            int used = 0;
            Eigen::VectorXcd v(D);
            std::vector<cd> p1(K), p2(K);
            for (std::size_t a = 0; a < n1.z.size(); ++a)
                for (std::size_t b = 0; b < n1.z.size(); ++b) {
                    double w = n1.w[a] * n1.w[b];
                    cd f1, f2;
                    try {
                        f1 = eval_rif(map.phi1, n1.z[a], n1.z[b]);
                        f2 = eval_rif(map.phi2, n1.z[a], n1.z[b]);
                    } catch (const Error& e) {
                        if (e.kind() == ErrorKind::NearSingularity) continue;
                        throw;
                    }
                    p1[0] = p2[0] = cd(1.0, 0.0);
                    for (int k = 1; k < K; ++k) {
                        p1[k] = p1[k - 1] * f1;
                        p2[k] = p2[k - 1] * f2;
                    }
                    double sw = std::sqrt(w);
                    for (int k = 0; k < K; ++k)
                        for (int l = 0; l < K; ++l)
                            v(k * K + l) =
                                sw * p1[k] * p2[l] * inv_nf[k * K + l];
                    block.col(used++) = v;
                    if (used == 256) flush(block, std::exchange(used, 0));
                }
            flush(block, used);
            G = G.selfadjointView<Eigen::Lower>();
        }
    } else {
        // Monte Carlo assembly, with per-entry standard errors from the
        // second moments of w |v_a|^2 |v_b|^2
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(D, D);
        Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(D, D);
        Eigen::VectorXcd v(D);
        Eigen::VectorXd vabs(D);
        std::vector<cd> p1(K), p2(K);
        std::uint64_t n_used = 0;
        for (std::uint64_t i = 0; i < quad.mc_samples; ++i) {
            detail::Rng rng = detail::Rng::substream(quad.seed, i);
            cd z1 = rng.next_disc(), z2 = rng.next_disc();
            double w = std::pow(1.0 - std::norm(z1), beta_tgt) *
                       std::pow(1.0 - std::norm(z2), beta_tgt);
            cd f1, f2;
            try {
                f1 = eval_rif(map.phi1, z1, z2);
                f2 = eval_rif(map.phi2, z1, z2);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::NearSingularity) continue;
                throw;
            }
            p1[0] = p2[0] = cd(1.0, 0.0);
            for (int k = 1; k < K; ++k) {
                p1[k] = p1[k - 1] * f1;
                p2[k] = p2[k - 1] * f2;
            }
            for (int k = 0; k < K; ++k)
                for (int l = 0; l < K; ++l)
                    v(k * K + l) = p1[k] * p2[l] * inv_nf[k * K + l];
            vabs = w * v.cwiseAbs2();
            sum.noalias() += w * v * v.adjoint();
            m2.noalias() += vabs * vabs.transpose();
            ++n_used;
        }
        if (n_used == 0)
            fail(ErrorKind::QuadratureUnstable, "every sample was singular");
        double n = static_cast<double>(n_used);
        G = sum / n;
        out.entry_std_error.resize(static_cast<std::size_t>(D) * D);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                double var =
                    std::max(0.0, m2(a, b) / n - std::norm(G(a, b)));
                out.entry_std_error[static_cast<std::size_t>(a) * D + b] =
                    std::sqrt(var / n);
            }
    }

    double residual = 0.0;
    for (int a = 0; a < D; ++a)
        residual = std::max(residual, std::abs(G(a, a).imag()));
    if (!G.allFinite())
        fail(ErrorKind::QuadratureUnstable, "non-finite Gram entries");
    if (residual > 1e-6)
        fail(ErrorKind::QuadratureUnstable, "Gram matrix not Hermitian");
    out.hermiticity_residual = residual;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        fail(ErrorKind::QuadratureUnstable, "eigensolver failed");
    out.lambda_max = es.eigenvalues().maxCoeff();

    out.matrix.resize(static_cast<std::size_t>(D) * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            out.matrix[static_cast<std::size_t>(a) * D + b] = G(a, b);
    return out;
}

NormGrowthScan norm_growth_scan(const SymbolMap& map,
                                const std::vector<int>& N_list,
                                double beta_src, double beta_tgt,
                                const QuadratureSpec& quad) {
    if (N_list.empty())
        fail(ErrorKind::InvalidArgument, "empty truncation ladder");
    std::vector<int> orders = N_list;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    const int Nmax = orders.back();
    GramTruncation full = gram_truncation(map, Nmax, beta_src, beta_tgt, quad);
    const int Kfull = Nmax + 1;
    const int Dfull = Kfull * Kfull;

    NormGrowthScan scan;
    for (int N : orders) {
        const int K = N + 1;
        const int D = K * K;
        Eigen::MatrixXcd sub(D, D);
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < K; ++l)
                for (int m = 0; m < K; ++m)
                    for (int n = 0; n < K; ++n)
                        sub(k * K + l, m * K + n) =
                            full.matrix[static_cast<std::size_t>(k * Kfull +
                                                                 l) *
                                            Dfull +
                                        (m * Kfull + n)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            fail(ErrorKind::QuadratureUnstable, "eigensolver failed");
        scan.rows.push_back({N, es.eigenvalues().maxCoeff()});
    }

    if (scan.rows.size() < 2) {
        scan.verdict = "inconclusive";
        return scan;
    }
    bool nondecreasing = true;
    for (std::size_t i = 1; i < scan.rows.size(); ++i)
        if (scan.rows[i].lambda_max <
            scan.rows[i - 1].lambda_max -
                1e-8 * (1.0 + scan.rows[i - 1].lambda_max))
            nondecreasing = false;
    double first = scan.rows.front().lambda_max;
    double last = scan.rows.back().lambda_max;
    double prev = scan.rows[scan.rows.size() - 2].lambda_max;
    double final_step = std::abs(last - prev) / std::max(prev, 1e-300);
    if (!nondecreasing)
        scan.verdict = "inconclusive"; // nested blocks should interlace
    else if (final_step < 0.05)
        scan.verdict = "plateau";
    else if (first > 0.0 && last / first > 2.0)
        scan.verdict = "growth";
    else
        scan.verdict = "inconclusive";
    return scan;
}

} // namespace riflab
