#pragma once

// Numerical Mahler measures (natural log convention throughout):
// exact-by-Jensen for one variable, adaptive Gauss-Legendre panel
// quadrature of the fiber Jensen value for two variables, Boyd-Lawton
// slices, and the Smyth face-polynomial lower bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "tordim/laurent.hpp"
#include "tordim/newton.hpp"
#include "tordim/roots.hpp"

namespace tordim {

struct MahlerEstimate {
    double value = 0.0;        // logarithmic Mahler measure
    double error_bound = 0.0;  // heuristic bound, 2x the last refinement disagreement
    long long fiber_evaluations = 0;
    int panels_used = 0;
};

struct MahlerOptions {
    double target = 1e-8;          // requested precision on m
    long long budget = 2'000'000;  // fiber evaluation budget
    int panels_init = 8;
    int max_depth = 48;
};

enum class SolveFor { z, w };

// ---------------------------------------------------------------------------
// one variable
// ---------------------------------------------------------------------------

inline MahlerEstimate mahler_univariate(const UnivariatePoly& p) {
    if (p.is_zero()) throw std::invalid_argument("mahler_univariate: zero polynomial");
    std::size_t lo = 0;
    while (p.coeffs[lo] == 0) ++lo;  // roots at the origin contribute nothing
    std::vector<double> c;
    for (std::size_t k = lo; k < p.coeffs.size(); ++k) {
        double v = to_double(p.coeffs[k]);
        if (!std::isfinite(v))
            throw std::runtime_error("mahler_univariate: coefficient exceeds double range");
        c.push_back(v);
    }
    const int d = static_cast<int>(c.size()) - 1;
    MahlerEstimate est;
    est.value = std::log(std::abs(c[d]));
    est.error_bound = (d + 1) * 1e-16;
    if (d == 0) return est;

    auto roots = companion_roots(c);
    std::vector<std::complex<double>> cc(c.begin(), c.end());
    for (const auto& r : roots) {
        double ar = std::abs(r);
        if (ar > 1.0) est.value += std::log(ar);
        std::complex<double> pv, dpv;
        detail::horner2(cc, r, pv, dpv);
        double cond = d * std::abs(pv) / (std::max(std::abs(dpv), 1e-300) * std::max(1.0, ar));
        est.error_bound += std::min(cond, 0.1);
    }
    return est;
}

inline UnivariatePoly laurent_to_univariate(const LaurentPoly2& p, SolveFor var) {
    if (p.is_zero()) return UnivariatePoly{};
    int lo = var == SolveFor::z ? p.min_z() : p.min_w();
    int hi = var == SolveFor::z ? p.max_z() : p.max_w();
    std::vector<BigInt> coeffs(hi - lo + 1);
    for (const auto& [e, c] : p.terms()) {
        int k = (var == SolveFor::z ? e.a : e.b) - lo;
        int other = var == SolveFor::z ? e.b : e.a;
        if (other != 0) throw std::invalid_argument("laurent_to_univariate: not univariate");
        coeffs[k] = c;
    }
    return UnivariatePoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// fibers
// ---------------------------------------------------------------------------

namespace detail {

// p grouped by the exponent of the solve variable: coefficient c_k(x) of
// y^(k + y_min) is a list of (x exponent, coefficient) pairs.
struct FiberSystem {
    SolveFor solve;
    int y_min = 0;
    std::vector<std::vector<std::pair<int, double>>> parts;

    static FiberSystem build(const LaurentPoly2& p, SolveFor solve) {
        FiberSystem f;
        f.solve = solve;
        int lo = solve == SolveFor::w ? p.min_w() : p.min_z();
        int hi = solve == SolveFor::w ? p.max_w() : p.max_z();
        f.y_min = lo;
        f.parts.resize(hi - lo + 1);
        for (const auto& [e, c] : p.terms()) {
            int ye = solve == SolveFor::w ? e.b : e.a;
            int xe = solve == SolveFor::w ? e.a : e.b;
            double v = to_double(c);
            if (!std::isfinite(v))
                throw std::runtime_error("mahler engine: coefficient exceeds double range");
            f.parts[ye - lo].emplace_back(xe, v);
        }
        return f;
    }

    int degree() const { return static_cast<int>(parts.size()) - 1; }

    std::vector<std::complex<double>> coeffs(double theta) const {
        std::vector<std::complex<double>> c(parts.size());
        for (std::size_t k = 0; k < parts.size(); ++k) {
            std::complex<double> s = 0.0;
            for (const auto& [xe, v] : parts[k]) s += v * std::polar(1.0, xe * theta);
            c[k] = s;
        }
        return c;
    }
};

struct FiberDiag {
    double min_kink = 1e300;  // min over roots of | |y| - 1 |
    double min_lead = 1e300;  // min over nodes of |leading coeff| / max coeff
};

inline constexpr double kLeadDropTol = 1e-13;

// Jensen value of the fiber polynomial: log|c_top| + sum of log+ |roots|.
// Near-vanishing leading coefficients are dropped (the escaping root's
// log+ cancels against log|c_top| up to O(droptol)).
inline double fiber_jensen(const std::vector<std::complex<double>>& c, FiberDiag* diag) {
    int d = static_cast<int>(c.size()) - 1;
    double maxc = 0.0;
    for (const auto& v : c) maxc = std::max(maxc, std::abs(v));
    if (maxc == 0.0) return std::numeric_limits<double>::quiet_NaN();

    int hi = d;
    while (hi > 0 && std::abs(c[hi]) <= kLeadDropTol * maxc) --hi;
    int lo = 0;
    while (lo < hi && c[lo] == 0.0) ++lo;
    if (diag) diag->min_lead = std::min(diag->min_lead, std::abs(c[d]) / maxc);

    double h = std::log(std::abs(c[hi]));
    if (hi == lo) return h;
    std::vector<std::complex<double>> sub(c.begin() + lo, c.begin() + hi + 1);
    for (const auto& r : poly_roots(sub)) {
        double ar = std::abs(r);
        if (ar > 1.0) h += std::log(ar);
        if (diag) diag->min_kink = std::min(diag->min_kink, std::abs(ar - 1.0));
    }
    return h;
}

struct GaussLegendre16 {
    std::array<double, 16> x{}, w{};

    GaussLegendre16() {
        // nodes of P_16 by Newton from Chebyshev initial guesses
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double p0, p1;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-16) break;
            }
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = -t;
            x[n - 1 - i] = t;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

inline const GaussLegendre16& gl16() {
    static const GaussLegendre16 rule;
    return rule;
}

}  // namespace detail

struct FiberRootsResult {
    std::vector<std::complex<double>> roots;
    std::complex<double> leading;  // coefficient of the highest surviving power
    int degree_drop = 0;           // leading coefficients dropped as numerically zero
};

// Roots of the univariate specialization of p at x on the unit circle
// (the monomial prefactor of the Laurent fiber is cleared first).
inline FiberRootsResult fiber_roots(const LaurentPoly2& p, std::complex<double> x,
                                    SolveFor solve) {
    if (p.is_zero()) throw std::invalid_argument("fiber_roots: zero polynomial");
    if (std::abs(std::abs(x) - 1.0) > 1e-9)
        throw std::invalid_argument("fiber_roots: x must lie on the unit circle");
    auto sys = detail::FiberSystem::build(p, solve);
    auto c = sys.coeffs(std::arg(x));
    double maxc = 0.0;
    for (const auto& v : c) maxc = std::max(maxc, std::abs(v));
    if (maxc < 1e-250) throw std::runtime_error("fiber_roots: p vanishes identically on the fiber");
    int d = static_cast<int>(c.size()) - 1;
    int hi = d;
    while (hi > 0 && std::abs(c[hi]) <= detail::kLeadDropTol * maxc) --hi;
    FiberRootsResult out;
    out.degree_drop = d - hi;
    out.leading = c[hi];
    std::vector<std::complex<double>> sub(c.begin(), c.begin() + hi + 1);
    out.roots = poly_roots(sub);
    return out;
}

// ---------------------------------------------------------------------------
// two variables
// ---------------------------------------------------------------------------

namespace detail {

struct Panel {
    double a, b;
    double whole;  // GL estimate over [a, b]
    double left, right;
    double disc;   // |whole - left - right|
    double boost;  // refinement priority multiplier (kinks, degeneracies)
    int depth;

    double integral() const { return left + right; }
    double priority() const { return disc * boost; }
};

struct PanelOrder {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.priority() != q.priority()) return p.priority() < q.priority();
        return p.a > q.a;
    }
};

}  // namespace detail

// Mahler measure of p via Jensen with respect to the solve variable:
//   m(p) = (1/2pi) Int_0^2pi [ log|P*(e^{i t})| + Sum_j log+ |y_j(e^{i t})| ] dt,
// integrated by adaptive Gauss-Legendre panels over [0, pi] (the integrand
// is even since the coefficients are real).  Panels are bisected worst-first
// by inter-level disagreement; panels near log+ kinks or leading-coefficient
// degeneracies are prioritized.
inline MahlerEstimate mahler_bivariate(const LaurentPoly2& p, const MahlerOptions& opt = {}) {
    if (p.is_zero()) throw std::invalid_argument("mahler_bivariate: zero polynomial");
    MahlerEstimate est;
    if (p.is_monomial()) {
        est.value = std::log(std::abs(to_double(p.terms().begin()->second)));
        est.error_bound = 1e-16;
        return est;
    }
    int span_z = p.max_z() - p.min_z();
    int span_w = p.max_w() - p.min_w();
    if (span_z == 0) return mahler_univariate(laurent_to_univariate(p, SolveFor::w));
    if (span_w == 0) return mahler_univariate(laurent_to_univariate(p, SolveFor::z));

    SolveFor solve = (span_w <= span_z) ? SolveFor::w : SolveFor::z;
    auto sys = detail::FiberSystem::build(p, solve);

    long long evals = 0;
    auto F = [&](double theta, detail::FiberDiag* diag) -> double {
        ++evals;
        double h = detail::fiber_jensen(sys.coeffs(theta), diag);
        if (std::isnan(h)) h = detail::fiber_jensen(sys.coeffs(theta + 3e-13), diag);
        return h;
    };

    const auto& rule = detail::gl16();
    auto gl = [&](double a, double b, detail::FiberDiag* diag) -> double {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (int i = 0; i < 16; ++i) s += rule.w[i] * F(mid + half * rule.x[i], diag);
        return s * half;
    };

    auto make_panel = [&](double a, double b, double whole, int depth) -> detail::Panel {
        detail::FiberDiag diag;
        double m = 0.5 * (a + b);
        double l = gl(a, m, &diag), r = gl(m, b, &diag);
        detail::Panel pan{a, b, whole, l, r, std::abs(whole - l - r), 1.0, depth};
        if (diag.min_kink < 0.02) pan.boost *= 8.0;
        if (diag.min_lead < 1e-6) pan.boost *= 8.0;
        return pan;
    };

    const double pi = std::numbers::pi;
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> heap;
    std::vector<detail::Panel> frozen;
    double disc_sum = 0.0;

    int n0 = std::max(1, opt.panels_init);
    for (int i = 0; i < n0; ++i) {
        double a = pi * i / n0, b = pi * (i + 1) / n0;
        detail::Panel pan = make_panel(a, b, gl(a, b, nullptr), 0);
        disc_sum += pan.disc;
        heap.push(pan);
    }

    // err bound on m carries a 2/pi factor from the half-domain average
    const double scale = 2.0 / (2.0 * pi);
    while (2.0 * disc_sum * scale > opt.target && !heap.empty()) {
        if (evals + 64 > opt.budget) break;
        detail::Panel worst = heap.top();
        heap.pop();
        if (worst.depth >= opt.max_depth || (worst.b - worst.a) < 1e-14) {
            frozen.push_back(worst);
            continue;
        }
        disc_sum -= worst.disc;
        double m = 0.5 * (worst.a + worst.b);
        detail::Panel l = make_panel(worst.a, m, worst.left, worst.depth + 1);
        detail::Panel r = make_panel(m, worst.b, worst.right, worst.depth + 1);
        disc_sum += l.disc + r.disc;
        heap.push(l);
        heap.push(r);
    }

    std::vector<detail::Panel> leaves = std::move(frozen);
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    double total = 0.0, disc = 0.0;
    for (const auto& pan : leaves) {
        total += pan.integral();
        disc += pan.disc;
    }
    est.value = total * scale;
    est.error_bound = 2.0 * disc * scale;
    est.fiber_evaluations = evals;
    est.panels_used = static_cast<int>(leaves.size());
    return est;
}

// ---------------------------------------------------------------------------
// slices and face bounds
// ---------------------------------------------------------------------------

// Mahler measure of p(t, t^N); the sequence over growing N converges to m(p).
inline MahlerEstimate boyd_lawton_slice(const LaurentPoly2& p, int N) {
    if (p.is_zero()) throw std::invalid_argument("boyd_lawton_slice: zero polynomial");
    if (N <= 0) throw std::invalid_argument("boyd_lawton_slice: N must be positive");
    std::map<int, BigInt> acc;
    for (const auto& [e, c] : p.terms()) {
        int k = e.a + N * e.b;
        acc[k] += c;
        if (acc[k] == 0) acc.erase(k);
    }
    if (acc.empty())
        throw std::runtime_error("boyd_lawton_slice: specialization vanishes identically");
    int lo = acc.begin()->first, hi = acc.rbegin()->first;
    std::vector<BigInt> coeffs(hi - lo + 1);
    for (const auto& [k, c] : acc) coeffs[k - lo] = c;
    return mahler_univariate(UnivariatePoly(std::move(coeffs)));
}

// max over Newton-polygon edges of m(face polynomial)  (Smyth: m(p_l) <= m(p))
inline double smyth_lower_bound(const LaurentPoly2& p) {
    if (p.is_zero()) throw std::invalid_argument("smyth_lower_bound: zero polynomial");
    double best = 0.0;
    for (const auto& [edge, face] : face_polynomials(p))
        best = std::max(best, mahler_univariate(face).value);
    return best;
}

}  // namespace tordim
