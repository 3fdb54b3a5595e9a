#include "hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polydual::detail {

namespace {

// Calls fn(indices) for every k-subset of {0..m-1} in lexicographic order.
template <typename Fn>
void forEachCombination(int m, int k, Fn&& fn) {
    if (k > m) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Normal of the hyperplane through k points in R^k via the generalized cross
// product of the k-1 difference vectors. Returns a zero vector when degenerate.
Vec hyperplaneNormal(const Points& pts, const std::vector<int>& idx, int k) {
    if (k == 1) return Vec::Ones(1);
    Mat D(k, k - 1);
    double scale = 1.0;
    for (int j = 1; j < k; ++j) {
        D.col(j - 1) = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] -
                       pts[static_cast<std::size_t>(idx[0])];
        scale *= std::max(D.col(j - 1).norm(), 1e-300);
    }
    Vec n(k);
    Mat minor(k - 1, k - 1);
    for (int i = 0; i < k; ++i) {
        int r = 0;
        for (int row = 0; row < k; ++row) {
            if (row == i) continue;
            minor.row(r++) = D.row(row);
        }
        double det = minor.determinant();
        n(i) = (i % 2 == 0) ? det : -det;
    }
    if (n.norm() <= 1e-10 * scale) return Vec::Zero(k);
    return n;
}

}  // namespace

double coordinateScale(const Points& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

int vectorRank(const std::vector<Vec>& vs, double relTol) {
    if (vs.empty()) return 0;
    const auto k = vs.front().size();
    Mat M(k, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = vs[i];
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > relTol * s(0)) ++rank;
    return rank;
}

int affineRank(const Points& pts, double tol) {
    if (pts.size() < 2) return 0;
    const auto k = pts.front().size();
    Mat M(k, static_cast<Eigen::Index>(pts.size() - 1));
    for (std::size_t i = 1; i < pts.size(); ++i) M.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    return rank;
}

std::vector<RawFacet> bruteForceFacets(const Points& pts, int k, double tol) {
    const int m = static_cast<int>(pts.size());
    Vec interior = Vec::Zero(k);
    for (const auto& p : pts) interior += p;
    interior /= m;

    std::vector<RawFacet> facets;
    std::vector<std::vector<char>> members;  // membership masks of the facets found so far

    forEachCombination(m, k, [&](const std::vector<int>& idx) {
        for (const auto& mask : members) {
            bool inside = true;
            for (int i : idx) inside = inside && mask[static_cast<std::size_t>(i)];
            if (inside) return;
        }
        Vec n = hyperplaneNormal(pts, idx, k);
        if (n.isZero()) return;
        n.normalize();
        double offset = n.dot(pts[static_cast<std::size_t>(idx[0])]);
        if (n.dot(interior) > offset) {
            n = -n;
            offset = -offset;
        }
        std::vector<int> incidence;
        for (int i = 0; i < m; ++i) {
            const double s = n.dot(pts[static_cast<std::size_t>(i)]) - offset;
            if (s > tol) return;
            if (s >= -tol) incidence.push_back(i);
        }
        if (affineRank([&] {
                Points on;
                for (int i : incidence) on.push_back(pts[static_cast<std::size_t>(i)]);
                return on;
            }(), tol) != k - 1)
            return;
        std::vector<char> mask(static_cast<std::size_t>(m), 0);
        for (int i : incidence) mask[static_cast<std::size_t>(i)] = 1;
        members.push_back(std::move(mask));
        facets.push_back({std::move(incidence), n, offset});
    });

    // Refit each hyperplane to all of its incident points.
    for (auto& f : facets) {
        if (k == 1 || f.incidence.size() <= static_cast<std::size_t>(k)) continue;
        Vec mean = Vec::Zero(k);
        for (int i : f.incidence) mean += pts[static_cast<std::size_t>(i)];
        mean /= static_cast<double>(f.incidence.size());
        Mat C(static_cast<Eigen::Index>(f.incidence.size()), k);
        for (std::size_t r = 0; r < f.incidence.size(); ++r)
            C.row(static_cast<Eigen::Index>(r)) = (pts[static_cast<std::size_t>(f.incidence[r])] - mean).transpose();
        Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullV);
        Vec n = svd.matrixV().col(k - 1);
        if (n.dot(f.normal) < 0) n = -n;
        f.normal = n.normalized();
        f.offset = f.normal.dot(mean);
    }
    return facets;
}

Mat complementBasis(const Vec& normal) {
    const auto k = normal.size();
    if (k == 1) return Mat(1, 0);
    Eigen::HouseholderQR<Mat> qr{Mat(normal)};
    Mat Q = qr.householderQ() * Mat::Identity(k, k);
    return Q.rightCols(k - 1);
}

double simplexVolume(const std::vector<const Vec*>& verts, int k) {
    if (k == 0) return 1.0;
    Mat M(k, k);
    for (int j = 1; j <= k; ++j) M.col(j - 1) = *verts[static_cast<std::size_t>(j)] - *verts[0];
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    return std::abs(M.determinant()) / fact;
}

std::vector<std::vector<int>> pullingTriangulation(const Points& pts, int k, double tol) {
    if (k == 0) return {{0}};
    std::vector<std::vector<int>> out;
    for (const auto& f : bruteForceFacets(pts, k, tol)) {
        if (f.incidence.front() == 0) continue;  // facet contains the pulled vertex
        const Mat basis = complementBasis(f.normal);
        const Vec& origin = pts[static_cast<std::size_t>(f.incidence.front())];
        Points sub;
        for (int i : f.incidence) sub.push_back(basis.transpose() * (pts[static_cast<std::size_t>(i)] - origin));
        for (auto s : pullingTriangulation(sub, k - 1, tol)) {
            for (int& i : s) i = f.incidence[static_cast<std::size_t>(i)];
            s.push_back(0);
            out.push_back(std::move(s));
        }
    }
    return out;
}

double hullVolume(const Points& pts, int k, double tol) {
    if (k == 0) return 1.0;
    double vol = 0.0;
    for (const auto& s : pullingTriangulation(pts, k, tol)) {
        std::vector<const Vec*> verts;
        for (int i : s) verts.push_back(&pts[static_cast<std::size_t>(i)]);
        vol += simplexVolume(verts, k);
    }
    return vol;
}

}  // namespace polydual::detail
