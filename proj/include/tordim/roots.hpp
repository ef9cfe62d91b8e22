#pragma once

// Polynomial root finding in double-precision complex arithmetic:
// closed forms for degrees 1-2, Aberth-Ehrlich with Bini initialization
// for higher degrees, and a companion-matrix path with Newton refinement
// for integer polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace tordim {

namespace detail {

using cplx = std::complex<double>;

inline cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

inline void horner2(const std::vector<cplx>& c, cplx x, cplx& p, cplx& dp) {
    p = 0.0;
    dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * x + p;
        p = p * x + *it;
    }
}

// Bini starting points: radii from the upper convex hull of (k, log|c_k|).
inline std::vector<cplx> aberth_start(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> lg(d + 1);
    for (int k = 0; k <= d; ++k)
        lg[k] = c[k] == 0.0 ? -1e300 : std::log(std::abs(c[k]));
    std::vector<int> hull;  // indices of upper hull of (k, lg[k])
    for (int k = 0; k <= d; ++k) {
        while (hull.size() >= 2) {
            int i = hull[hull.size() - 2], j = hull.back();
            if ((lg[j] - lg[i]) * (k - i) <= (lg[k] - lg[i]) * (j - i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<cplx> pts;
    pts.reserve(d);
    int idx = 0;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        int i = hull[h], j = hull[h + 1];
        double r = std::exp((lg[i] - lg[j]) / (j - i));
        for (int t = 0; t < j - i; ++t, ++idx)
            pts.push_back(std::polar(r, 2.0 * 3.14159265358979323846 * (idx + 0.353) / d + 0.7));
    }
    while (static_cast<int>(pts.size()) < d) pts.push_back(std::polar(1.0, 0.9 * pts.size()));
    return pts;
}

}  // namespace detail

// Roots of c[0] + c[1] x + ... + c[d] x^d with c[d] != 0, with multiplicity.
inline std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c) {
    using detail::cplx;
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<cplx> roots;
    if (d <= 0) return roots;
    if (d == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    if (d == 2) {
        cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
        cplx q = (std::real(std::conj(c[1]) * disc) >= 0.0) ? -0.5 * (c[1] + disc)
                                                            : -0.5 * (c[1] - disc);
        if (q == 0.0) {
            roots.assign(2, cplx(0.0));
        } else {
            roots.push_back(q / c[2]);
            roots.push_back(c[0] / q);
        }
        return roots;
    }

    roots = detail::aberth_start(c);
    for (int iter = 0; iter < 120; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < d; ++k) {
            cplx p, dp;
            detail::horner2(c, roots[k], p, dp);
            if (p == 0.0) continue;
            cplx newton = (dp != 0.0) ? p / dp : cplx(1.0, 1.0) * 1e-8;
            cplx sum = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != k) sum += 1.0 / (roots[k] - roots[j]);
            cplx corr = newton / (1.0 - newton * sum);
            roots[k] -= corr;
            worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(roots[k])));
        }
        if (worst < 1e-15) break;
    }
    return roots;
}

// Companion-matrix eigenvalues with Newton refinement; coefficients given
// as doubles, lowest degree first, leading coefficient nonzero.
inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& c) {
    using detail::cplx;
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<cplx> roots;
    if (d <= 0) return roots;
    if (d <= 2) {
        std::vector<cplx> cc(c.begin(), c.end());
        return poly_roots(cc);
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<cplx> cc(c.begin(), c.end());
    for (int i = 0; i < d; ++i) {
        cplx r = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            cplx p, dp;
            detail::horner2(cc, r, p, dp);
            if (dp == 0.0) break;
            cplx step = p / dp;
            r -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(r))) break;
        }
        roots.push_back(r);
    }
    return roots;
}

}  // namespace tordim
