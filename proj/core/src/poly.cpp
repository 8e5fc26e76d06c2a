#include "riflab/poly.hpp"

#include <algorithm>
#include <cmath>

#include "riflab/errors.hpp"

namespace riflab {

Poly2::Poly2(int deg1, int deg2) : deg1_(deg1), deg2_(deg2) {
    if (deg1 < 0 || deg2 < 0)
        fail(ErrorKind::InvalidArgument, "negative bidegree");
    c_.assign(static_cast<std::size_t>(deg1 + 1) * (deg2 + 1), cd(0.0, 0.0));
}

Poly2 Poly2::constant(cd value) {
    Poly2 p(0, 0);
    p.at(0, 0) = value;
    return p;
}

std::size_t Poly2::idx(int i, int j) const {
    if (i < 0 || i > deg1_ || j < 0 || j > deg2_)
        fail(ErrorKind::InvalidArgument, "coefficient index out of range");
    return static_cast<std::size_t>(i) * (deg2_ + 1) + j;
}

cd Poly2::eval(cd z1, cd z2) const {
    cd acc(0.0, 0.0);
    for (int i = deg1_; i >= 0; --i) {
        cd row(0.0, 0.0);
        const cd* r = &c_[static_cast<std::size_t>(i) * (deg2_ + 1)];
        for (int j = deg2_; j >= 0; --j) row = row * z2 + r[j];
        acc = acc * z1 + row;
    }
    return acc;
}

Poly2 reflect(const Poly2& p) {
    Poly2 q(p.deg1(), p.deg2());
    for (int i = 0; i <= p.deg1(); ++i)
        for (int j = 0; j <= p.deg2(); ++j)
            q.at(i, j) = std::conj(p.at(p.deg1() - i, p.deg2() - j));
    return q;
}

HermitianForm::HermitianForm(int deg1, int deg2) : deg1_(deg1), deg2_(deg2) {
    if (deg1 < 0 || deg2 < 0)
        fail(ErrorKind::InvalidArgument, "negative form degree");
    std::size_t n1 = deg1 + 1, n2 = deg2 + 1;
    a_.assign(n1 * n2 * n1 * n2, cd(0.0, 0.0));
}

std::size_t HermitianForm::idx(int i1, int j1, int i2, int j2) const {
    if (i1 < 0 || i1 > deg1_ || i2 < 0 || i2 > deg1_ || j1 < 0 || j1 > deg2_ ||
        j2 < 0 || j2 > deg2_)
        fail(ErrorKind::InvalidArgument, "form index out of range");
    std::size_t n1 = deg1_ + 1, n2 = deg2_ + 1;
    return ((static_cast<std::size_t>(i1) * n2 + j1) * n1 + i2) * n2 + j2;
}

double HermitianForm::eval(cd z1, cd z2) const {
    // Power tables; the quartic loop is fine for the small degrees in play.
    std::vector<cd> p1(deg1_ + 1), p2(deg2_ + 1);
    p1[0] = cd(1.0, 0.0);
    for (int i = 1; i <= deg1_; ++i) p1[i] = p1[i - 1] * z1;
    p2[0] = cd(1.0, 0.0);
    for (int j = 1; j <= deg2_; ++j) p2[j] = p2[j - 1] * z2;

    cd acc(0.0, 0.0);
    std::size_t k = 0;
    for (int i1 = 0; i1 <= deg1_; ++i1)
        for (int j1 = 0; j1 <= deg2_; ++j1) {
            cd hol = p1[i1] * p2[j1];
            for (int i2 = 0; i2 <= deg1_; ++i2)
                for (int j2 = 0; j2 <= deg2_; ++j2)
                    acc += a_[k++] * hol * std::conj(p1[i2] * p2[j2]);
        }
    return acc.real();
}

double HermitianForm::max_abs_coeff() const {
    double m = 0.0;
    for (const cd& v : a_) m = std::max(m, std::abs(v));
    return m;
}

HermitianForm HermitianForm::resized(const HermitianForm& f, int deg1,
                                     int deg2) {
    HermitianForm g(deg1, deg2);
    for (int i1 = 0; i1 <= f.deg1_; ++i1)
        for (int j1 = 0; j1 <= f.deg2_; ++j1)
            for (int i2 = 0; i2 <= f.deg1_; ++i2)
                for (int j2 = 0; j2 <= f.deg2_; ++j2)
                    g.at(i1, j1, i2, j2) = f.at(i1, j1, i2, j2);
    return g;
}

HermitianForm& HermitianForm::operator+=(const HermitianForm& other) {
    if (other.deg1_ > deg1_ || other.deg2_ > deg2_) {
        *this = resized(*this, std::max(deg1_, other.deg1_),
                        std::max(deg2_, other.deg2_));
    }
    for (int i1 = 0; i1 <= other.deg1_; ++i1)
        for (int j1 = 0; j1 <= other.deg2_; ++j1)
            for (int i2 = 0; i2 <= other.deg1_; ++i2)
                for (int j2 = 0; j2 <= other.deg2_; ++j2)
                    at(i1, j1, i2, j2) += other.at(i1, j1, i2, j2);
    return *this;
}

HermitianForm& HermitianForm::operator-=(const HermitianForm& other) {
    if (other.deg1_ > deg1_ || other.deg2_ > deg2_) {
        *this = resized(*this, std::max(deg1_, other.deg1_),
                        std::max(deg2_, other.deg2_));
    }
    for (int i1 = 0; i1 <= other.deg1_; ++i1)
        for (int j1 = 0; j1 <= other.deg2_; ++j1)
            for (int i2 = 0; i2 <= other.deg1_; ++i2)
                for (int j2 = 0; j2 <= other.deg2_; ++j2)
                    at(i1, j1, i2, j2) -= other.at(i1, j1, i2, j2);
    return *this;
}

HermitianForm HermitianForm::times_one_minus_sq(int axis) const {
    if (axis != 0 && axis != 1)
        fail(ErrorKind::InvalidArgument, "axis must be 0 or 1");
    // (1 - z zbar) F: identity minus a diagonal shift in (i1, i2) or (j1, j2).
    HermitianForm g(deg1_ + (axis == 0 ? 1 : 0), deg2_ + (axis == 1 ? 1 : 0));
    for (int i1 = 0; i1 <= deg1_; ++i1)
        for (int j1 = 0; j1 <= deg2_; ++j1)
            for (int i2 = 0; i2 <= deg1_; ++i2)
                for (int j2 = 0; j2 <= deg2_; ++j2) {
                    cd v = at(i1, j1, i2, j2);
                    g.at(i1, j1, i2, j2) += v;
                    if (axis == 0)
                        g.at(i1 + 1, j1, i2 + 1, j2) -= v;
                    else
                        g.at(i1, j1 + 1, i2, j2 + 1) -= v;
                }
    return g;
}

HermitianForm mod2_form(const Poly2& p) {
    HermitianForm f(p.deg1(), p.deg2());
    for (int i1 = 0; i1 <= p.deg1(); ++i1)
        for (int j1 = 0; j1 <= p.deg2(); ++j1) {
            cd c1 = p.at(i1, j1);
            if (c1 == cd(0.0, 0.0)) continue;
            for (int i2 = 0; i2 <= p.deg1(); ++i2)
                for (int j2 = 0; j2 <= p.deg2(); ++j2)
                    f.at(i1, j1, i2, j2) = c1 * std::conj(p.at(i2, j2));
        }
    return f;
}

DerivativeBound derivative_bound(const Poly2& p) {
    DerivativeBound b{0.0, 0.0};
    for (int i = 0; i <= p.deg1(); ++i)
        for (int j = 0; j <= p.deg2(); ++j) {
            double a = std::abs(p.at(i, j));
            b.L1 += i * a;
            b.L2 += j * a;
        }
    return b;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double torus_abs(const Poly2& p, double t1, double t2) {
    return std::abs(p.eval(std::polar(1.0, t1), std::polar(1.0, t2)));
}

// Golden-section ascent of |p| along one angle, bracket half-width h.
double golden_axis(const Poly2& p, double& t1, double& t2, int axis, double h) {
    const double gr = 0.6180339887498949;
    double lo = (axis == 0 ? t1 : t2) - h, hi = (axis == 0 ? t1 : t2) + h;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    auto val = [&](double t) {
        return axis == 0 ? torus_abs(p, t, t2) : torus_abs(p, t1, t);
    };
    double fa = val(a), fb = val(b);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = val(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = val(a);
        }
    }
    double t = 0.5 * (lo + hi);
    (axis == 0 ? t1 : t2) = t;
    return val(t);
}

} // namespace

double max_modulus_torus(const Poly2& p, int grid_n) {
    if (grid_n < 8) fail(ErrorKind::OutOfRange, "grid_n must be >= 8");
    double h = kTwoPi / grid_n;

    // Keep a handful of the best grid cells and polish each; the torus
    // maximum of a low-degree polynomial has a wide basin at this resolution.
    struct Cand {
        double v, t1, t2;
    };
    std::vector<Cand> top;
    for (int a = 0; a < grid_n; ++a)
        for (int b = 0; b < grid_n; ++b) {
            double v = torus_abs(p, a * h, b * h);
            if (top.size() < 5) {
                top.push_back({v, a * h, b * h});
                std::sort(top.begin(), top.end(),
                          [](const Cand& x, const Cand& y) { return x.v > y.v; });
            } else if (v > top.back().v) {
                top.back() = {v, a * h, b * h};
                std::sort(top.begin(), top.end(),
                          [](const Cand& x, const Cand& y) { return x.v > y.v; });
            }
        }

    double best = 0.0;
    for (const Cand& c : top) {
        double t1 = c.t1, t2 = c.t2, v = c.v;
        for (int round = 0; round < 8; ++round) {
            v = golden_axis(p, t1, t2, 0, h);
            v = golden_axis(p, t1, t2, 1, h);
        }
        best = std::max(best, v);
    }
    return best;
}

} // namespace riflab
