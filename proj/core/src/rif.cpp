#include "riflab/rif.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/stability.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double t) {
    t = std::remainder(t, 2.0 * kPi);
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

cd ipow(cd z, int k) {
    cd r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

Poly2 partial(const Poly2& p, int axis) {
    int n = p.deg1(), m = p.deg2();
    Poly2 d(axis == 0 ? std::max(n - 1, 0) : n,
            axis == 1 ? std::max(m - 1, 0) : m);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) {
            if (axis == 0 && i > 0)
                d.at(i - 1, j) += static_cast<double>(i) * p.at(i, j);
            if (axis == 1 && j > 0)
                d.at(i, j - 1) += static_cast<double>(j) * p.at(i, j);
        }
    return d;
}

// Newton on F(theta) = (Re p, Im p) with the angle Jacobian
// dp/dtheta_k = i z_k dp/dz_k, damped by halving until |p| decreases.
// Iterates well below tol: at a degenerate zero the |p| < tol sublevel set
// is wide, and stopping there would scatter candidates of one zero across
// distinct clusters.
bool newton_torus(const Poly2& p, const Poly2& d1, const Poly2& d2,
                  double& t1, double& t2, double tol, double floor) {
    for (int iter = 0; iter < 80; ++iter) {
        cd z1 = std::polar(1.0, t1), z2 = std::polar(1.0, t2);
        cd f = p.eval(z1, z2);
        double fn = std::abs(f);
        if (fn < floor) return true;
        cd g1 = cd(0.0, 1.0) * z1 * d1.eval(z1, z2);
        cd g2 = cd(0.0, 1.0) * z2 * d2.eval(z1, z2);
        // solve the 2x2 real system [Re g1 Re g2; Im g1 Im g2] s = -f
        double a = g1.real(), b = g2.real(), c = g1.imag(), d = g2.imag();
        double det = a * d - b * c;
        double s1, s2;
        if (std::abs(det) > 1e-14) {
            s1 = (-f.real() * d + f.imag() * b) / det;
            s2 = (-a * f.imag() + c * f.real()) / det;
        } else {
            // rank-deficient: gradient step on |p|^2 / 2
            double gg = a * a + b * b + c * c + d * d;
            if (gg < 1e-30) return false;
            s1 = -(a * f.real() + c * f.imag()) / gg;
            s2 = -(b * f.real() + d * f.imag()) / gg;
        }
        double step = std::hypot(s1, s2);
        if (step > 0.5) {
            s1 *= 0.5 / step;
            s2 *= 0.5 / step;
        }
        double lam = 1.0;
        bool moved = false;
        for (int h = 0; h < 30; ++h) {
            double u1 = t1 + lam * s1, u2 = t2 + lam * s2;
            cd fu = p.eval(std::polar(1.0, u1), std::polar(1.0, u2));
            if (std::abs(fu) < fn) {
                t1 = wrap_angle(u1);
                t2 = wrap_angle(u2);
                moved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!moved) break;
    }
    cd f = p.eval(std::polar(1.0, t1), std::polar(1.0, t2));
    return std::abs(f) < tol;
}

} // namespace

double TorusPoint::angular_distance(const TorusPoint& other) const {
    double d1 = std::abs(std::remainder(theta1 - other.theta1, 2.0 * kPi));
    double d2 = std::abs(std::remainder(theta2 - other.theta2, 2.0 * kPi));
    return std::max(d1, d2);
}

bool RationalInnerFunction::same_symbol(
    const RationalInnerFunction& other) const {
    return lambda_ == other.lambda_ && m1_ == other.m1_ && m2_ == other.m2_ &&
           denom_ == other.denom_;
}

std::vector<TorusPoint> find_torus_zeros(const Poly2& p, int grid_n,
                                         double tol) {
    if (grid_n < 8) fail(ErrorKind::OutOfRange, "find_torus_zeros: grid_n < 8");
    if (tol <= 0.0) fail(ErrorKind::OutOfRange, "find_torus_zeros: tol <= 0");
    DerivativeBound db = derivative_bound(p);
    double h = 2.0 * kPi / grid_n;
    // any zero lies within h/2 of a grid node in each angle, so a node next
    // to a zero has |p| <= (L1 + L2) h; the factor 1.5 absorbs curvature
    double cutoff = std::max(1.5 * (db.L1 + db.L2) * h, 10.0 * tol);
    double scale = 0.0;
    for (const cd& c : p.coeffs()) scale = std::max(scale, std::abs(c));
    // just above the evaluation noise floor; at a degenerate zero the angle
    // error goes like sqrt(floor), so this keeps locations within ~1e-7
    double floor = 1e-14 * (1.0 + scale);

    Poly2 d1 = partial(p, 0), d2 = partial(p, 1);
    std::vector<TorusPoint> zeros;
    for (int a = 0; a < grid_n; ++a) {
        double t1 = -kPi + h * a;
        cd z1 = std::polar(1.0, t1);
        for (int b = 0; b < grid_n; ++b) {
            double t2 = -kPi + h * b;
            if (std::abs(p.eval(z1, std::polar(1.0, t2))) > cutoff) continue;
            double u1 = t1, u2 = t2;
            if (!newton_torus(p, d1, d2, u1, u2, tol, floor)) continue;
            TorusPoint cand{wrap_angle(u1), wrap_angle(u2)};
            bool known = false;
            for (const TorusPoint& q : zeros)
                if (q.angular_distance(cand) < 1e-5) {
                    known = true;
                    break;
                }
            if (!known) zeros.push_back(cand);
        }
    }
    std::sort(zeros.begin(), zeros.end(), [](const TorusPoint& x,
                                             const TorusPoint& y) {
        return x.theta1 != y.theta1 ? x.theta1 < y.theta1
                                    : x.theta2 < y.theta2;
    });
    return zeros;
}

RationalInnerFunction make_rif(cd lambda, int power1, int power2,
                               const Poly2& denom) {
    if (power1 < 0 || power2 < 0)
        fail(ErrorKind::InvalidArgument, "make_rif: negative monomial power");
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        fail(ErrorKind::NotInner, "make_rif: |lambda| != 1");
    double scale = 0.0;
    for (const cd& c : denom.coeffs()) scale = std::max(scale, std::abs(c));
    if (scale == 0.0)
        fail(ErrorKind::InvalidArgument, "make_rif: zero denominator");

    RationalInnerFunction phi;
    phi.lambda_ = lambda;
    phi.m1_ = power1;
    phi.m2_ = power2;
    phi.denom_ = denom;
    phi.numer_ = reflect(denom);
    phi.sing_ = find_torus_zeros(denom, 256, 1e-8);

    // |phi| = |ptilde| / |p| on the torus; sample away from the located zeros
    detail::Rng rng = detail::Rng::substream(0x52494655u, 0);
    int checked = 0;
    for (int k = 0; k < 4000 && checked < 2000; ++k) {
        cd z1 = std::polar(1.0, (2.0 * rng.next_double() - 1.0) * kPi);
        cd z2 = std::polar(1.0, (2.0 * rng.next_double() - 1.0) * kPi);
        cd pv = denom.eval(z1, z2);
        if (std::abs(pv) <= 1e-6 * scale) continue;
        double ratio = std::abs(phi.numer_.eval(z1, z2)) / std::abs(pv);
        if (std::abs(ratio - 1.0) > 1e-9)
            fail(ErrorKind::NotInner,
                 "make_rif: |phi| != 1 on the torus (|ptilde/p| = " +
                     std::to_string(ratio) + ")");
        ++checked;
    }
    if (checked < 100)
        fail(ErrorKind::NearSingularity,
             "make_rif: torus sample exhausted near denominator zeros");

    StabilityResult st = certify_stable(denom, Region::OpenBidisc, 60000);
    if (st.verdict == StabilityVerdict::ZeroFound)
        fail(ErrorKind::ZeroInOpenBidisc,
             "make_rif: denominator vanishes inside the bidisc");
    // Unknown after budget: no zero was found either; the torus modulus check
    // above already passed, accept and let downstream evaluation guard.
    return phi;
}

cd eval_rif(const RationalInnerFunction& phi, cd z1, cd z2) {
    cd pv = phi.denominator().eval(z1, z2);
    if (std::abs(pv) <= 1e-14)
        fail(ErrorKind::NearSingularity, "eval_rif: |p(z)| <= 1e-14");
    return phi.lambda() * ipow(z1, phi.power1()) * ipow(z2, phi.power2()) *
           phi.numerator().eval(z1, z2) / pv;
}

namespace detail {

cd richardson_radial_limit(const std::vector<cd>& samples) {
    if (samples.size() < 6)
        fail(ErrorKind::NoStableLimit,
             "radial limit: fewer than 6 usable samples");
    // samples[k] = f(2^-(k+3)); halving the step each row gives the classic
    // triangular table with weights 2^j / (2^j - 1)
    constexpr int kMaxCols = 8;
    std::vector<cd> prev, row;
    cd best(0.0, 0.0), prev_best(0.0, 0.0);
    double last_diff = 1e300;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        row.assign(1, samples[k]);
        int cols = static_cast<int>(std::min<std::size_t>(k, kMaxCols));
        for (int j = 1; j <= cols; ++j) {
            double w = std::pow(2.0, j);
            row.push_back((w * row[j - 1] - prev[j - 1]) / (w - 1.0));
        }
        prev_best = best;
        best = row.back();
        if (k > 0) last_diff = std::abs(best - prev_best);
        prev = row;
    }
    if (last_diff > 1e-4 * (1.0 + std::abs(best)))
        fail(ErrorKind::NoStableLimit,
             "radial limit: extrapolants disagree beyond 1e-4");
    return best;
}

} // namespace detail

cd nontangential_value(const RationalInnerFunction& phi,
                       const TorusPoint& tau) {
    cd w1 = tau.point1(), w2 = tau.point2();
    std::vector<cd> samples;
    for (int k = 3; k <= 20; ++k) {
        double t = std::pow(2.0, -k);
        try {
            samples.push_back(eval_rif(phi, (1.0 - t) * w1, (1.0 - t) * w2));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NearSingularity) break;
            throw;
        }
    }
    return detail::richardson_radial_limit(samples);
}

FirstOrderCheck first_order_check(const SymbolMap& map, const TorusPoint& tau) {
    for (const RationalInnerFunction* phi : {&map.phi1, &map.phi2})
        for (const TorusPoint& s : phi->singularities())
            if (s.angular_distance(tau) < 1e-6)
                fail(ErrorKind::SingularAtPoint,
                     "first_order_check: tau is a singularity of the symbol");
    cd w1 = tau.point1(), w2 = tau.point2();
    const double h = 1e-6;
    FirstOrderCheck out{};
    const RationalInnerFunction* comps[2] = {&map.phi1, &map.phi2};
    for (int i = 0; i < 2; ++i) {
        out.jacobian[i][0] = (eval_rif(*comps[i], w1 + h, w2) -
                              eval_rif(*comps[i], w1 - h, w2)) /
                             (2.0 * h);
        out.jacobian[i][1] = (eval_rif(*comps[i], w1, w2 + h) -
                              eval_rif(*comps[i], w1, w2 - h)) /
                             (2.0 * h);
    }
    out.det = out.jacobian[0][0] * out.jacobian[1][1] -
              out.jacobian[0][1] * out.jacobian[1][0];
    out.invertible = std::abs(out.det) > 1e-8;
    return out;
}

} // namespace riflab
