#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace riflab::detail {

// Gauss-Legendre nodes and weights on [0, 1], Newton-refined from the
// Chebyshev initial guess. Standard construction, accurate to machine
// precision for n up to a few hundred.
inline std::pair<std::vector<double>, std::vector<double>>
gauss_legendre_01(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 - t); // reversed so nodes increase
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

} // namespace riflab::detail
