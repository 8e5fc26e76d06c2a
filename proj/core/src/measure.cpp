#include "riflab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "riflab/errors.hpp"
#include "quad_impl.hpp"
#include "sampler_impl.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;

double weight_pow(double u, double beta) {
    if (beta == 0.0) return 1.0;
    double r = std::floor(beta);
    if (r == beta && beta > 0.0 && beta <= 32.0) {
        double acc = 1.0;
        for (int k = 0; k < static_cast<int>(beta); ++k) acc *= u;
        return acc;
    }
    return std::pow(u, beta);
}

// Stratified mean of w_beta(z) * g(z) over the bidisc: the stratum stream
// estimates the conditional mean on the bi-annulus U (exact mass from the
// lens area), the complement stream the conditional mean off U. g is an
// indicator or a.e. bounded, so plain sample variances apply.
VolumeEstimate mc_integral(double beta,
                           const std::function<double(cd, cd)>& g,
                           const SamplerSpec& spec) {
    if (beta <= -1.0)
        fail(ErrorKind::OutOfRange, "volume weight needs beta > -1");
    if (spec.n < 16)
        fail(ErrorKind::InvalidArgument, "sampler needs n >= 16");
    if (spec.stratum) detail::validate_stratum(*spec.stratum);

    double mass = spec.stratum ? detail::stratum_mass(*spec.stratum) : 0.0;
    std::uint64_t ns = detail::stratum_draw_count(spec);

    long double sum[2] = {0.0L, 0.0L}, sumsq[2] = {0.0L, 0.0L};
    std::uint64_t count[2] = {0, 0};
    for (std::uint64_t k = 0; k < spec.n; ++k) {
        detail::BidiscDraw d = detail::draw_bidisc(spec, k);
        double gv = g(d.z1, d.z2);
        double v = gv != 0.0
                       ? gv * weight_pow(1.0 - std::norm(d.z1), beta) *
                             weight_pow(1.0 - std::norm(d.z2), beta)
                       : 0.0;
        int s = d.in_stratum ? 0 : 1;
        sum[s] += v;
        sumsq[s] += static_cast<long double>(v) * v;
        ++count[s];
    }

    VolumeEstimate out;
    out.n_samples = spec.n;
    out.beta = beta;
    out.seed = spec.seed;
    if (!spec.stratum) {
        double mean = static_cast<double>(sum[1] / count[1]);
        double var =
            std::max(0.0, static_cast<double>(sumsq[1] / count[1]) -
                              mean * mean);
        out.value = mean;
        out.std_error = std::sqrt(var / static_cast<double>(count[1]));
        return out;
    }
    if (count[0] != ns || count[1] != spec.n - ns || count[1] == 0)
        fail(ErrorKind::QuadratureUnstable, "stratified stream miscount");
    double mean_s = static_cast<double>(sum[0] / count[0]);
    double mean_c = static_cast<double>(sum[1] / count[1]);
    double var_s = std::max(
        0.0, static_cast<double>(sumsq[0] / count[0]) - mean_s * mean_s);
    double var_c = std::max(
        0.0, static_cast<double>(sumsq[1] / count[1]) - mean_c * mean_c);
    out.value = mass * mean_s + (1.0 - mass) * mean_c;
    out.std_error =
        std::sqrt(mass * mass * var_s / static_cast<double>(count[0]) +
                  (1.0 - mass) * (1.0 - mass) * var_c /
                      static_cast<double>(count[1]));
    return out;
}

} // namespace

namespace detail {

double boundary_lens_area(double rho) {
    if (rho <= 0.0) return 0.0;
    if (rho >= 2.0) return 1.0;
    double area = std::acos(1.0 - 0.5 * rho * rho) +
                  rho * rho * std::acos(0.5 * rho) -
                  0.5 * rho * std::sqrt(4.0 - rho * rho);
    return area / kPi;
}

double stratum_mass(const Stratum& s) {
    double one = boundary_lens_area(s.radius) -
                 boundary_lens_area(s.inner_radius);
    return one * one;
}

} // namespace detail

VolumeEstimate vbeta_box(double beta, const CarlesonBox& box,
                         const SamplerSpec& sampler) {
    if (!(box.delta1 > 0.0 && box.delta2 > 0.0))
        fail(ErrorKind::InvalidArgument, "box radii must be positive");
    cd c1 = box.center.point1(), c2 = box.center.point2();
    auto ind = [&](cd z1, cd z2) {
        return std::abs(z1 - c1) < box.delta1 &&
                       std::abs(z2 - c2) < box.delta2
                   ? 1.0
                   : 0.0;
    };
    VolumeEstimate out = mc_integral(beta, ind, sampler);
    // the weight is strictly positive inside the bidisc, so a zero estimate
    // means the indicator never fired
    if (out.value == 0.0)
        fail(ErrorKind::EmptyRegion, "no sample landed in the Carleson box");
    return out;
}

VolumeEstimate vbeta_sublevel(double beta,
                              const std::function<double(cd, cd)>& f,
                              double threshold, const SamplerSpec& sampler) {
    auto ind = [&](cd z1, cd z2) {
        try {
            return f(z1, z2) < threshold ? 1.0 : 0.0;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NearSingularity) return 0.0;
            throw;
        }
    };
    return mc_integral(beta, ind, sampler);
}

VolumeEstimate pullback_volume(const SymbolMap& map, const CarlesonBox& box,
                               double beta, const SamplerSpec& sampler) {
    if (!(box.delta1 > 0.0 && box.delta2 > 0.0))
        fail(ErrorKind::InvalidArgument, "box radii must be positive");
    cd c1 = box.center.point1(), c2 = box.center.point2();
    auto ind = [&](cd z1, cd z2) {
        try {
            return std::abs(eval_rif(map.phi1, z1, z2) - c1) < box.delta1 &&
                           std::abs(eval_rif(map.phi2, z1, z2) - c2) <
                               box.delta2
                       ? 1.0
                       : 0.0;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NearSingularity) return 0.0;
            throw;
        }
    };
    return mc_integral(beta, ind, sampler);
}

PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4)
        fail(ErrorKind::InvalidArgument, "power-law fit needs >= 4 points");
    double lo = 1e300, hi = 0.0;
    double sx = 0.0, sy = 0.0;
    const double n = static_cast<double>(points.size());
    for (const auto& [d, v] : points) {
        if (!(d > 0.0))
            fail(ErrorKind::InvalidArgument, "power-law fit needs delta > 0");
        if (!(v > 0.0))
            fail(ErrorKind::NonPositiveVolume,
                 "volume <= 0 at delta = " + std::to_string(d));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        sx += std::log(d);
        sy += std::log(v);
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [d, v] : points) {
        double dx = std::log(d) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(v) - my);
    }
    if (sxx < 1e-30)
        fail(ErrorKind::InvalidArgument, "power-law fit needs distinct deltas");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_constant = my - fit.exponent * mx;
    double ssr = 0.0, sst = 0.0;
    for (const auto& [d, v] : points) {
        double y = std::log(v);
        double r = y - (fit.log_constant + fit.exponent * std::log(d));
        ssr += r * r;
        sst += (y - my) * (y - my);
    }
    fit.r_squared = sst < 1e-30 ? (ssr < 1e-20 ? 1.0 : 0.0) : 1.0 - ssr / sst;
    fit.exponent_stderr =
        points.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
    fit.delta_range = {lo, hi};
    return fit;
}

double annulus_lower_bound(double epsilon, double delta, double q) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        fail(ErrorKind::OutOfRange, "annulus bound needs 0 < epsilon < 1");
    if (!(delta > 0.5 && delta < 1.0))
        fail(ErrorKind::OutOfRange, "annulus bound needs 1/2 < delta < 1");
    if (!(q >= 1.0))
        fail(ErrorKind::OutOfRange, "annulus bound needs q >= 1");
    double outer = std::pow(epsilon, 2.0 / q);
    double inner = std::pow(epsilon / (2.0 * delta), 2.0 / q);
    double gap = outer - inner;
    return kPi * kPi * gap * gap;
}

VolumeEstimate band_volume(double beta, double s, double M,
                           const SamplerSpec& sampler) {
    if (!(s > 0.0) || !(M > 0.0))
        fail(ErrorKind::OutOfRange, "band volume needs s > 0, M > 0");
    double c = 2.0 * M * M * s;
    auto ind = [&](cd z1, cd z2) {
        return (1.0 - std::norm(z1)) * (1.0 - std::norm(z2)) <= c ? 1.0 : 0.0;
    };
    return mc_integral(beta, ind, sampler);
}

double band_volume_exact(double beta, double s, double M) {
    if (beta <= -1.0)
        fail(ErrorKind::OutOfRange, "volume weight needs beta > -1");
    if (!(s > 0.0) || !(M > 0.0))
        fail(ErrorKind::OutOfRange, "band volume needs s > 0, M > 0");
    double c = 2.0 * M * M * s;
    double b1 = beta + 1.0;
    if (c >= 1.0) return 1.0 / (b1 * b1);
    // u_i = 1 - |z_i|^2 is uniform on (0, 1); the band is {u1 u2 <= c}.
    // For u1 <= c every u2 qualifies, contributing c^b1 / b1^2.  For
    // u1 = v in (c, 1) the inner integral is (c/v)^b1 / b1, and the outer
    // integrand v^beta (c/v)^b1 / b1 = c^b1 / (b1 v) for every beta, so
    // the tail is c^b1 log(1/c) / b1 exactly.
    double cb = std::pow(c, b1);
    return cb / (b1 * b1) + cb * std::log(1.0 / c) / b1;
}

CarlesonScan carleson_scan(const SymbolMap& map, double beta_src,
                           double beta_tgt, const TorusPoint& center,
                           const std::vector<double>& deltas,
                           const SamplerSpec& sampler) {
    if (deltas.size() < 4)
        fail(ErrorKind::InvalidArgument, "scan needs >= 4 deltas");
    CarlesonScan scan;
    scan.center = center;
    double ref_exp = 2.0 * beta_src + 4.0;
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        SamplerSpec row_spec = sampler;
        row_spec.seed = sampler.seed + 0x9E3779B9u * (i + 1);
        CarlesonBox box{center, deltas[i], deltas[i]};
        VolumeEstimate v = pullback_volume(map, box, beta_tgt, row_spec);
        ScanRow row;
        row.delta = deltas[i];
        row.volume = v.value;
        row.std_error = v.std_error;
        row.reference = std::pow(deltas[i], ref_exp);
        row.ratio = row.reference > 0.0 ? row.volume / row.reference : 0.0;
        scan.rows.push_back(row);
        points.emplace_back(deltas[i], v.value);
    }
    try {
        scan.fit = fit_power_law(points);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonPositiveVolume) throw;
        scan.verdict = "inconclusive";
        return scan;
    }
    if (scan.fit.r_squared < 0.98)
        scan.verdict = "inconclusive";
    else if (scan.fit.exponent <
             ref_exp - 3.0 * scan.fit.exponent_stderr)
        scan.verdict = "fails";
    else
        scan.verdict = "passes";
    return scan;
}

} // namespace riflab
