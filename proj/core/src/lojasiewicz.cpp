#include "riflab/lojasiewicz.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/measure.hpp"

namespace riflab {

namespace {

// Uniform direction on the unit sphere of C^2.
void next_direction(detail::Rng& rng, cd& d1, cd& d2) {
    for (;;) {
        double a = rng.next_gaussian(), b = rng.next_gaussian();
        double c = rng.next_gaussian(), d = rng.next_gaussian();
        double n = std::sqrt(a * a + b * b + c * c + d * d);
        if (n > 1e-12) {
            d1 = cd(a / n, b / n);
            d2 = cd(c / n, d / n);
            return;
        }
    }
}

// Point of the closed bidisc at distance r from tau, by rejection over
// sphere directions. Roughly a quarter of directions point inward at a
// regular torus point, so the loop is short.
bool shell_point(detail::Rng& rng, cd t1, cd t2, double r, cd& z1, cd& z2) {
    for (int tries = 0; tries < 2000; ++tries) {
        cd d1, d2;
        next_direction(rng, d1, d2);
        z1 = t1 + r * d1;
        z2 = t2 + r * d2;
        if (std::abs(z1) <= 1.0 && std::abs(z2) <= 1.0) return true;
    }
    return false;
}

// Sphere of radius s around tau, parametrized by (chi, psi1, psi2):
//   z1 = tau1 + s cos(chi) e^{i psi1}, z2 = tau2 + s sin(chi) e^{i psi2}.
// Points leaving the closed bidisc evaluate to +inf, which makes golden
// section walk back to the feasible side.
double sphere_objective(const std::function<double(cd, cd)>& f, cd t1, cd t2,
                        double s, double chi, double psi1, double psi2) {
    cd z1 = t1 + std::polar(s * std::cos(chi), psi1);
    cd z2 = t2 + std::polar(s * std::sin(chi), psi2);
    if (std::abs(z1) > 1.0 || std::abs(z2) > 1.0) return 1e300;
    return f(z1, z2);
}

template <class F>
double golden_min(const F& obj, double lo, double hi, double& arg) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = obj(x1), f2 = obj(x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = obj(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = obj(x2);
        }
    }
    arg = f1 < f2 ? x1 : x2;
    return std::min(f1, f2);
}

// The raw sample minimum over a shell is upward-biased and noisy (the
// minimizing directions sit on the feasibility boundary of the bidisc), so
// each shell minimum is polished by coordinate descent in the sphere angles
// from the best sampled starts. The result can only move the minimum down.
double polish_shell_min(const std::function<double(cd, cd)>& f, cd t1, cd t2,
                        double s, double chi, double psi1, double psi2) {
    double best = sphere_objective(f, t1, t2, s, chi, psi1, psi2);
    double width[3] = {0.6, 1.2, 1.2};
    double* coord[3] = {&chi, &psi1, &psi2};
    for (int round = 0; round < 8; ++round) {
        for (int k = 0; k < 3; ++k) {
            double arg = *coord[k];
            auto obj = [&](double x) {
                double c = k == 0 ? x : chi;
                double p1 = k == 1 ? x : psi1;
                double p2 = k == 2 ? x : psi2;
                return sphere_objective(f, t1, t2, s, c, p1, p2);
            };
            double v = golden_min(obj, *coord[k] - width[k],
                                  *coord[k] + width[k], arg);
            if (v < best) {
                best = v;
                *coord[k] = arg;
            }
        }
        width[0] *= 0.5;
        width[1] *= 0.5;
        width[2] *= 0.5;
    }
    return best;
}

} // namespace

namespace detail {

LojaFit fit_decay_exponent(const std::function<double(cd, cd)>& f,
                           const TorusPoint& tau,
                           const std::vector<double>& shells,
                           std::uint64_t samples_per_shell, std::uint64_t seed,
                           bool enforce_lower_bound) {
    if (shells.size() < 4)
        fail(ErrorKind::InvalidArgument, "decay fit needs >= 4 shells");
    if (samples_per_shell < 16)
        fail(ErrorKind::InvalidArgument, "decay fit needs >= 16 per shell");
    for (double s : shells)
        if (!(s > 0.0 && s < 2.0))
            fail(ErrorKind::InvalidArgument, "shell radius outside (0, 2)");

    cd t1 = tau.point1(), t2 = tau.point2();
    std::vector<std::pair<double, double>> minima; // (shell, min |f|)
    std::vector<std::pair<double, double>> all;    // (dist, |f|) everywhere
    for (std::size_t si = 0; si < shells.size(); ++si) {
        double s = shells[si];
        std::vector<std::pair<double, std::pair<cd, cd>>> top;
        auto by_value = [](const auto& a, const auto& b) {
            return a.first < b.first;
        };
        double best = 1e300;
        for (std::uint64_t k = 0; k < samples_per_shell; ++k) {
            Rng rng = Rng::substream(seed, si * samples_per_shell + k);
            double r = s * (1.0 + 0.05 * rng.next_double());
            cd z1, z2;
            if (!shell_point(rng, t1, t2, r, z1, z2)) continue;
            double v = f(z1, z2);
            best = std::min(best, v);
            all.emplace_back(r, v);
            top.emplace_back(v, std::pair{z1, z2});
            std::push_heap(top.begin(), top.end(), by_value);
            if (top.size() > 4) {
                std::pop_heap(top.begin(), top.end(), by_value);
                top.pop_back();
            }
        }
        for (const auto& [v, zz] : top) {
            cd w1 = zz.first - t1, w2 = zz.second - t2;
            double chi = std::atan2(std::abs(w2), std::abs(w1));
            double p = polish_shell_min(f, t1, t2, s, chi, std::arg(w1),
                                        std::arg(w2));
            if (p < best) best = p;
            all.emplace_back(s, std::max(p, 0.0));
        }
        if (!(best > 0.0) || best == 1e300)
            fail(ErrorKind::BadFit,
                 "shell minimum nonpositive or shell unsampled at radius " +
                     std::to_string(s));
        minima.emplace_back(s, best);
    }

    PowerLawFit pf = fit_power_law(minima);
    if (pf.r_squared < 0.98)
        fail(ErrorKind::BadFit,
             "decay fit r^2 = " + std::to_string(pf.r_squared));

    LojaFit out;
    out.q = pf.exponent;
    out.c = std::exp(pf.log_constant);
    out.r_squared = pf.r_squared;
    out.n_shells = shells.size();

    if (enforce_lower_bound) {
        // deflate c until |f| >= c dist^q holds at every sampled point; a
        // large deflation means the shell minima misrepresent the data
        double cmin = 1e300;
        for (const auto& [dist, v] : all)
            cmin = std::min(cmin, v / std::pow(dist, out.q));
        if (!(cmin > 0.0))
            fail(ErrorKind::BadFit, "lower bound fails at a sampled point");
        if (cmin < out.c) {
            if (out.c - cmin > 1e-9 && cmin < 0.5 * out.c)
                fail(ErrorKind::BadFit,
                     "fitted constant violated beyond tolerance: c = " +
                         std::to_string(out.c) + ", sample floor = " +
                         std::to_string(cmin));
            out.c = cmin;
        }
    }
    return out;
}

} // namespace detail

LojaFit fit_lojasiewicz_exponent(const Poly2& p, const TorusPoint& tau,
                                 const std::vector<double>& shells,
                                 std::uint64_t samples_per_shell,
                                 std::uint64_t seed) {
    std::vector<TorusPoint> zeros = find_torus_zeros(p);
    bool located = false;
    for (const TorusPoint& z : zeros) {
        double d = z.angular_distance(tau);
        if (d < 1e-6)
            located = true;
        else if (d < 0.2)
            fail(ErrorKind::NotIsolatedZero,
                 "another torus zero within angular distance 0.2");
    }
    if (!located)
        fail(ErrorKind::NotIsolatedZero, "tau is not a located torus zero");
    auto f = [&p](cd z1, cd z2) { return std::abs(p.eval(z1, z2)); };
    return detail::fit_decay_exponent(f, tau, shells, samples_per_shell, seed,
                                      true);
}

UpperBoundCheck check_upper_bound_lemma(const RationalInnerFunction& phi,
                                        const TorusPoint& tau, cd v,
                                        double epsilon, double q,
                                        double neighborhood_radius,
                                        std::uint64_t n_samples,
                                        std::uint64_t seed) {
    if (!(epsilon > 0.0))
        fail(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (!(q >= 1.0)) fail(ErrorKind::InvalidArgument, "q must be >= 1");
    if (!(neighborhood_radius > 0.0 && neighborhood_radius < 2.0))
        fail(ErrorKind::InvalidArgument, "radius outside (0, 2)");
    if (n_samples < 1000)
        fail(ErrorKind::InvalidArgument, "need >= 1000 samples");

    cd t1 = tau.point1(), t2 = tau.point2();
    const double R = neighborhood_radius;
    UpperBoundCheck out;
    out.cone_profile.assign(4, 0.0);

    for (std::uint64_t k = 0; k < n_samples; ++k) {
        detail::Rng rng = detail::Rng::substream(seed, k);
        // half the samples volume-uniform in the ball, half log-uniform in
        // radius so every dyadic sub-scale of the cone profile is populated
        double u = rng.next_double();
        double r = (k % 2 == 0) ? R * std::pow(u, 0.25)
                                : R * std::exp2(-4.0 * u);
        cd z1, z2;
        if (!shell_point(rng, t1, t2, r, z1, z2)) continue;
        double dev;
        try {
            dev = std::abs(eval_rif(phi, z1, z2) - v);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NearSingularity) continue;
            throw;
        }
        double dist = std::sqrt(std::norm(z1 - t1) + std::norm(z2 - t2));
        out.worst_ratio = std::max(
            out.worst_ratio, dev * std::pow(dist, q) / epsilon);
        // nontangential cone of aperture 4
        double margin = std::min(1.0 - std::abs(z1), 1.0 - std::abs(z2));
        if (dist <= 4.0 * margin)
            for (int j = 0; j < 4; ++j)
                if (dist <= R * std::exp2(-j))
                    out.cone_profile[j] = std::max(out.cone_profile[j], dev);
    }
    // contraction of the cone profile separates the true limit value from
    // any other candidate; the sup over the full neighbourhood does not
    out.holds = out.cone_profile[0] > 0.0 &&
                out.cone_profile[3] <= 0.3 * out.cone_profile[0] + 1e-12;
    return out;
}

} // namespace riflab
