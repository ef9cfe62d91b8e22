#pragma once

// Newton polygons of Laurent polynomial supports and the one-variable
// face polynomials read along the polygon edges.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tordim/laurent.hpp"

namespace tordim {

struct LatticePoint {
    int a = 0, b = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

// Counterclockwise convex hull of the support.  Collinear interior points
// are not vertices; enumeration starts at the lexicographically smallest
// vertex.
struct NewtonPolygon {
    std::vector<LatticePoint> vertices;
    std::vector<std::pair<int, int>> edges;  // (start vertex index, end vertex index)
};

namespace detail {
inline long long cross(const LatticePoint& o, const LatticePoint& p, const LatticePoint& q) {
    return static_cast<long long>(p.a - o.a) * (q.b - o.b) -
           static_cast<long long>(p.b - o.b) * (q.a - o.a);
}
}  // namespace detail

inline NewtonPolygon newton_polygon(const LaurentPoly2& p) {
    if (p.is_zero()) throw std::invalid_argument("newton_polygon: zero polynomial");
    std::vector<LatticePoint> pts;
    pts.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) pts.push_back({e.a, e.b});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    NewtonPolygon poly;
    if (pts.size() == 1) {
        poly.vertices = pts;
        return poly;
    }

    // monotone chain; strict turns only, so collinear points drop out
    std::vector<LatticePoint> lower, upper;
    for (const auto& q : pts) {
        while (lower.size() >= 2 && detail::cross(lower[lower.size() - 2], lower.back(), q) <= 0)
            lower.pop_back();
        lower.push_back(q);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && detail::cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    poly.vertices = std::move(lower);
    poly.vertices.insert(poly.vertices.end(), upper.begin(), upper.end());

    int n = static_cast<int>(poly.vertices.size());
    for (int i = 0; i < n; ++i) poly.edges.emplace_back(i, (i + 1) % n);
    return poly;
}

// One face polynomial per polygon edge, coefficients read from the edge's
// start vertex in primitive lattice steps.  Content and the lowest monomial
// are divided out, so the constant term is nonzero and positive content 1.
inline std::vector<std::pair<std::pair<int, int>, UnivariatePoly>> face_polynomials(
    const LaurentPoly2& p) {
    NewtonPolygon poly = newton_polygon(p);
    std::vector<std::pair<std::pair<int, int>, UnivariatePoly>> faces;
    for (auto [si, ei] : poly.edges) {
        const LatticePoint& s = poly.vertices[si];
        const LatticePoint& e = poly.vertices[ei];
        int da = e.a - s.a, db = e.b - s.b;
        int g = std::gcd(std::abs(da), std::abs(db));
        da /= g;
        db /= g;
        std::vector<BigInt> coeffs(g + 1);
        for (int j = 0; j <= g; ++j) coeffs[j] = p.coeff({s.a + j * da, s.b + j * db});
        UnivariatePoly face(std::move(coeffs));
        BigInt content = 0;
        for (const auto& c : face.coeffs) content = boost::multiprecision::gcd(content, c);
        if (content > 1)
            for (auto& c : face.coeffs) c /= content;
        faces.emplace_back(std::make_pair(si, ei), std::move(face));
    }
    return faces;
}

}  // namespace tordim
