#pragma once

// Dilogarithm (principal branch, cut along [1, inf)), Bloch-Wigner
// dilogarithm, the Lobachevsky-type integral of -log|2 sin t|, hyperbolic
// regular ideal bipyramid volumes, and the named volume constants.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tordim {

using std::complex;

namespace detail {

inline constexpr double kPi = std::numbers::pi;

// Bernoulli numbers B_0..B_44 (odd indices > 1 vanish), B_1 = -1/2.
inline constexpr double kBernoulli[] = {
    1.0,
    -0.5,
    1.0 / 6,
    0.0,
    -1.0 / 30,
    0.0,
    1.0 / 42,
    0.0,
    -1.0 / 30,
    0.0,
    5.0 / 66,
    0.0,
    -691.0 / 2730,
    0.0,
    7.0 / 6,
    0.0,
    -3617.0 / 510,
    0.0,
    43867.0 / 798,
    0.0,
    -174611.0 / 330,
    0.0,
    854513.0 / 138,
    0.0,
    -236364091.0 / 2730,
    0.0,
    8553103.0 / 6,
    0.0,
    -23749461029.0 / 870,
    0.0,
    8615841276005.0 / 14322,
    0.0,
    -7709321041217.0 / 510,
    0.0,
    2577687858367.0 / 6,
    0.0,
    -26315271553053477373.0 / 1919190,
    0.0,
    2929993913841559.0 / 6,
    0.0,
    -261082718496449122051.0 / 13530,
    0.0,
    1520097643918070802691.0 / 1806,
    0.0,
    -27833269579301024235023.0 / 690,
};

// direct series, |z| <= 1/2
inline complex<double> dilog_series(complex<double> z) {
    complex<double> term = z, sum = z;
    for (int k = 2; k < 80; ++k) {
        term *= z;
        complex<double> add = term / static_cast<double>(k * k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Bernoulli series in u = -log(1-z); needs |u| < 2*pi, fast for |1-z| >= 1/2
inline complex<double> dilog_bernoulli(complex<double> z) {
    complex<double> u = -std::log(1.0 - z);
    complex<double> upow = u, sum = 0.0;
    double fact = 1.0;  // (n+1)!
    for (int n = 0; n < 45; ++n) {
        fact *= n + 1;
        if (kBernoulli[n] != 0.0) {
            complex<double> add = kBernoulli[n] * upow / fact;
            sum += add;
            if (n > 2 && std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        upow *= u;
    }
    return sum;
}

inline complex<double> dilog_reduced(complex<double> z) {
    // here |z| <= 1 and Re z <= 1/2
    if (std::abs(z) <= 0.5) return dilog_series(z);
    return dilog_bernoulli(z);
}

}  // namespace detail

// classical dilogarithm Li_2, principal branch
inline complex<double> dilog(complex<double> z) {
    constexpr double pi = detail::kPi;
    if (z == complex<double>(0.0, 0.0)) return 0.0;
    if (z == complex<double>(1.0, 0.0)) return pi * pi / 6.0;

    complex<double> extra = 0.0;
    int sign = 1;
    if (std::abs(z) > 1.0) {
        complex<double> lz = std::log(-z);
        extra += -pi * pi / 6.0 - 0.5 * lz * lz;
        z = 1.0 / z;
        sign = -sign;
    }
    if (z.real() > 0.5) {
        complex<double> refl = pi * pi / 6.0 - std::log(z) * std::log(1.0 - z);
        extra += static_cast<double>(sign) * refl;
        z = 1.0 - z;
        sign = -sign;
    }
    return static_cast<double>(sign) * detail::dilog_reduced(z) + extra;
}

// Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + arg(1-z) log|z|.
// Single valued; vanishes on the real line (D(0) = D(1) = 0 by continuity).
inline double bloch_wigner(complex<double> z) {
    if (z.imag() == 0.0) return 0.0;
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

// Lobachevsky-type integral -int_0^theta log|2 sin t| dt, evaluated as
// Im Li_2(e^{2 i theta})/2 on the unit circle; odd, pi-periodic.
inline double lobachevsky(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("lobachevsky: non-finite argument");
    constexpr double pi = detail::kPi;
    double t = theta - pi * std::round(theta / pi);
    if (t == 0.0) return 0.0;
    return 0.5 * dilog(std::polar(1.0, 2.0 * t)).imag();
}

// Volume of the regular ideal bipyramid over an n-gon,
//   n * (L(2 pi / n) + 2 L(pi (n-2) / (2 n))).
inline double bipyramid_volume(int n) {
    if (n < 2) throw std::invalid_argument("bipyramid_volume: n must be >= 2");
    constexpr double pi = detail::kPi;
    return n * (lobachevsky(2.0 * pi / n) + 2.0 * lobachevsky(pi * (n - 2) / (2.0 * n)));
}

struct VolumeConstants {
    double v_tet;  // regular ideal tetrahedron
    double v_oct;  // regular ideal octahedron
    double v_16;   // regular ideal bipyramid B_8
};

inline const VolumeConstants& volume_constants() {
    static const VolumeConstants c{
        bloch_wigner(std::polar(1.0, detail::kPi / 3.0)),
        4.0 * bloch_wigner(complex<double>(0.0, 1.0)),
        bipyramid_volume(8),
    };
    return c;
}

}  // namespace tordim
