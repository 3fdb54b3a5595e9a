#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "polydual/geometry.hpp"

namespace testsupport {

using polydual::Mat;
using polydual::Points;
using polydual::Vec;

inline Vec v2(double x, double y) { return (Vec(2) << x, y).finished(); }
inline Vec v3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

inline Mat randomOrthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    Eigen::HouseholderQR<Mat> qr{A};
    return qr.householderQ() * Mat::Identity(n, n);
}

/// Random invertible map with condition number at most 10.
inline Mat randomWellConditioned(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> logs(0.0, std::log(10.0));
    Vec s(n);
    for (int i = 0; i < n; ++i) s(i) = std::exp(logs(rng));
    return randomOrthogonal(n, rng) * s.asDiagonal() * randomOrthogonal(n, rng);
}

/// Area of the convex hull of planar points (monotone chain, then shoelace).
inline double shoelaceHullArea(Points pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); });
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
    };
    Points hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec& a = hull[i];
        const Vec& b = hull[(i + 1) % hull.size()];
        area += a(0) * b(1) - a(1) * b(0);
    }
    return 0.5 * std::abs(area);
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline bool sameVertexSet(const Points& a, const Points& b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        bool found = false;
        for (const auto& q : b) found = found || (p - q).norm() <= tol;
        if (!found) return false;
    }
    return true;
}

}  // namespace testsupport
