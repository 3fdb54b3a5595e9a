#include "polydual/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hull.hpp"

namespace polydual {

using detail::RawFacet;

namespace {

void requireDim(const Vec& x, int dim, const char* what) {
    if (x.size() != dim)
        throw GeometryError(ErrorKind::BadParameter,
                            std::string(what) + " has dimension " + std::to_string(x.size()) +
                                ", expected " + std::to_string(dim));
}

std::vector<Facet> buildFacets(const Points& verts, int dim, double tol,
                               std::vector<std::vector<std::vector<int>>>* triangulations) {
    std::vector<Facet> facets;
    for (auto& raw : detail::bruteForceFacets(verts, dim, tol)) {
        Facet f;
        f.vertexIndices = raw.incidence;
        for (int i : raw.incidence) f.points.push_back(verts[static_cast<std::size_t>(i)]);
        f.normal = raw.normal;
        f.offset = raw.offset;
        f.basis = detail::complementBasis(raw.normal);
        Points local;
        for (const auto& p : f.points) local.push_back(f.toBasis(p, f.points.front()));
        auto tri = detail::pullingTriangulation(local, dim - 1, tol);
        f.measure = 0.0;
        for (const auto& s : tri) {
            std::vector<const Vec*> vs;
            for (int i : s) vs.push_back(&local[static_cast<std::size_t>(i)]);
            f.measure += detail::simplexVolume(vs, dim - 1);
        }
        if (triangulations) {
            for (auto& s : tri)
                for (int& i : s) i = raw.incidence[static_cast<std::size_t>(i)];
            triangulations->push_back(std::move(tri));
        }
        facets.push_back(std::move(f));
    }
    return facets;
}

}  // namespace

Halfspace Halfspace::fromNormal(const Vec& normal, double offset) {
    const double len = normal.norm();
    if (!(len > 0.0)) throw GeometryError(ErrorKind::BadParameter, "halfspace normal is zero");
    return {normal / len, offset / len};
}

std::vector<Halfspace> HPolytope::halfspaces() const {
    std::vector<Halfspace> out;
    for (const auto& f : facets) out.push_back(f.halfspace());
    return out;
}

std::vector<std::vector<int>> HPolytope::incidence() const {
    std::vector<std::vector<int>> out;
    for (const auto& f : facets) out.push_back(f.vertexIndices);
    return out;
}

VPolytope::VPolytope(const Points& points, double incidenceTol) {
    if (points.empty()) throw GeometryError(ErrorKind::DegenerateInput, "no points");
    const int dim = static_cast<int>(points.front().size());
    if (dim < 1 || dim > kMaxDim)
        throw GeometryError(ErrorKind::BadParameter, "dimension must be between 1 and 4");
    if (!(incidenceTol > 0.0)) throw GeometryError(ErrorKind::BadParameter, "tolerance must be positive");
    for (const auto& p : points) {
        requireDim(p, dim, "point");
        if (!p.allFinite()) throw GeometryError(ErrorKind::BadParameter, "non-finite coordinate");
    }

    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->tol = incidenceTol;
    data->scaledTol = incidenceTol * detail::coordinateScale(points);
    const double tol = data->scaledTol;

    Points unique;
    for (const auto& p : points) {
        bool seen = false;
        for (const auto& q : unique) seen = seen || (p - q).norm() <= tol;
        if (!seen) unique.push_back(p);
    }
    if (static_cast<int>(unique.size()) < dim + 1 || detail::affineRank(unique, tol) < dim)
        throw GeometryError(ErrorKind::DegenerateInput, "points do not span R^" + std::to_string(dim));

    // Keep only extreme points: those whose incident facet normals span R^dim.
    const auto raw = detail::bruteForceFacets(unique, dim, tol);
    std::vector<std::vector<Vec>> normalsAt(unique.size());
    for (const auto& f : raw)
        for (int i : f.incidence) normalsAt[static_cast<std::size_t>(i)].push_back(f.normal);
    for (std::size_t i = 0; i < unique.size(); ++i)
        if (detail::vectorRank(normalsAt[i]) == dim) data->vertices.push_back(unique[i]);

    const Points& verts = data->vertices;
    const int m = static_cast<int>(verts.size());
    std::vector<std::vector<std::vector<int>>> facetTriangulations;
    data->hrep.dim = dim;
    data->hrep.facets = buildFacets(verts, dim, tol, &facetTriangulations);

    data->apex = Vec::Zero(dim);
    for (const auto& v : verts) data->apex += v;
    data->apex /= m;

    double factorial = 1.0;
    for (int j = 2; j <= dim; ++j) factorial *= j;
    data->centroid = Vec::Zero(dim);
    for (const auto& tri : facetTriangulations) {
        for (const auto& s : tri) {
            SimplexIndices idx{};
            idx.fill(-1);
            Mat M(dim, dim);
            for (int j = 0; j < dim; ++j) {
                idx[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j)];
                M.col(j) = verts[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])] - data->apex;
            }
            idx[static_cast<std::size_t>(dim)] = m;
            const double vol = std::abs(M.determinant()) / factorial;
            Vec sum = data->apex;
            for (int j = 0; j < dim; ++j) sum += verts[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
            data->centroid += vol * sum / (dim + 1);
            data->volume += vol;
            data->simplices.push_back(idx);
            data->simplexVolumes.push_back(vol);
        }
    }
    data->centroid /= data->volume;

    // 1-faces: the facets common to both endpoints cut out a line.
    std::vector<std::vector<int>> facetsAt(static_cast<std::size_t>(m));
    for (std::size_t f = 0; f < data->hrep.facets.size(); ++f)
        for (int i : data->hrep.facets[f].vertexIndices) facetsAt[static_cast<std::size_t>(i)].push_back(static_cast<int>(f));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            std::vector<Vec> common;
            for (int f : facetsAt[static_cast<std::size_t>(i)]) {
                const auto& other = facetsAt[static_cast<std::size_t>(j)];
                if (std::find(other.begin(), other.end(), f) != other.end())
                    common.push_back(data->hrep.facets[static_cast<std::size_t>(f)].normal);
            }
            if (static_cast<int>(common.size()) >= dim - 1 && detail::vectorRank(common) == dim - 1)
                data->edges.emplace_back(i, j);
        }
    }
    data_ = std::move(data);
}

int VPolytope::findVertex(const Vec& x) const {
    if (x.size() != dim()) return -1;
    for (int i = 0; i < vertexCount(); ++i)
        if ((vertex(i) - x).norm() <= scaledTol()) return i;
    return -1;
}

HPolytope hullFacets(const VPolytope& P) { return P.hrep(); }

Points enumerateVertices(const HPolytope& H, double tol) {
    const int n = H.dim;
    const int k = static_cast<int>(H.facets.size());
    Points out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k < n) return out;
    while (true) {
        Mat A(n, n);
        Vec b(n);
        for (int r = 0; r < n; ++r) {
            const auto& f = H.facets[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])];
            A.row(r) = f.normal.transpose();
            b(r) = f.offset;
        }
        Eigen::FullPivLU<Mat> lu(A);
        if (lu.isInvertible() && std::abs(A.determinant()) > 1e-10) {
            Vec x = lu.solve(b);
            bool feasible = true;
            for (const auto& f : H.facets) feasible = feasible && f.normal.dot(x) <= f.offset + tol;
            bool seen = false;
            for (const auto& q : out) seen = seen || (q - x).norm() <= tol * 10;
            if (feasible && !seen) out.push_back(x);
        }
        int i = n - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - n + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

double volume(const VPolytope& P) { return P.volume(); }

double facetMeasure(const Facet& F, const VPolytope& P) {
    Points local;
    for (int i : F.vertexIndices) local.push_back(F.toBasis(P.vertex(i), P.vertex(F.vertexIndices.front())));
    return detail::hullVolume(local, P.dim() - 1, P.scaledTol());
}

VPolytope clip(const VPolytope& P, const Halfspace& H) {
    requireDim(H.normal, P.dim(), "halfspace normal");
    const double tol = P.scaledTol();
    const int m = P.vertexCount();
    std::vector<double> s(static_cast<std::size_t>(m));
    Points kept;
    for (int i = 0; i < m; ++i) {
        s[static_cast<std::size_t>(i)] = H.signedDistance(P.vertex(i));
        if (s[static_cast<std::size_t>(i)] <= tol) kept.push_back(P.vertex(i));
    }
    if (kept.empty()) throw GeometryError(ErrorKind::EmptyIntersection, "polytope lies outside the halfspace");
    if (static_cast<int>(kept.size()) == m) return P;
    for (const auto& [i, j] : P.edges()) {
        const double si = s[static_cast<std::size_t>(i)];
        const double sj = s[static_cast<std::size_t>(j)];
        if ((si < -tol && sj > tol) || (si > tol && sj < -tol)) {
            const double lambda = si / (si - sj);
            kept.push_back(P.vertex(i) + lambda * (P.vertex(j) - P.vertex(i)));
        }
    }
    return VPolytope(kept, P.incidenceTol());
}

double simplexFractionAbove(std::array<double, kMaxDim + 1> values, int count) {
    int pos = 0, neg = 0, a = -1, b = -1;
    for (int i = 0; i < count; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        if (v > 0) {
            ++pos;
            if (a < 0) a = i;
        } else if (v < 0) {
            ++neg;
            if (b < 0) b = i;
        }
    }
    if (pos == 0) return 0.0;
    if (neg == 0) return 1.0;
    const double va = values[static_cast<std::size_t>(a)];
    const double vb = values[static_cast<std::size_t>(b)];
    if (pos == 1) {
        double prod = 1.0;
        for (int j = 0; j < count; ++j) {
            const double v = values[static_cast<std::size_t>(j)];
            if (v < 0) prod *= va / (va - v);
        }
        return prod;
    }
    if (neg == 1) {
        // 1 - prod((-vb) / (vi - vb)), accurate when the product is close to one.
        double logProd = 0.0;
        for (int i = 0; i < count; ++i) {
            const double v = values[static_cast<std::size_t>(i)];
            if (v > 0) logProd -= std::log1p(v / -vb);
        }
        return -std::expm1(logProd);
    }
    // Split along edge (a, b) at its zero crossing p: S = S[b->p] + S[a->p].
    const double lambda = va / (va - vb);
    auto withB = values;
    withB[static_cast<std::size_t>(b)] = 0.0;
    auto withA = values;
    withA[static_cast<std::size_t>(a)] = 0.0;
    return lambda * simplexFractionAbove(withB, count) + (1.0 - lambda) * simplexFractionAbove(withA, count);
}

CapProfile::CapProfile(const VPolytope& P, const Vec& u) : P_(P) {
    requireDim(u, P.dim(), "direction");
    const int m = P.vertexCount();
    heights_.resize(static_cast<std::size_t>(m + 1));
    maxHeight_ = -std::numeric_limits<double>::infinity();
    minHeight_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        heights_[static_cast<std::size_t>(i)] = P.vertex(i).dot(u);
        maxHeight_ = std::max(maxHeight_, heights_[static_cast<std::size_t>(i)]);
        minHeight_ = std::min(minHeight_, heights_[static_cast<std::size_t>(i)]);
    }
    heights_[static_cast<std::size_t>(m)] = P.apex().dot(u);
}

double CapProfile::volumeAbove(double t) const {
    if (t >= maxHeight_) return 0.0;
    if (t <= minHeight_) return P_.volume();
    const int count = P_.dim() + 1;
    const auto& simplices = P_.simplices();
    const auto& vols = P_.simplexVolumes();
    double total = 0.0;
    std::array<double, kMaxDim + 1> values{};
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        for (int j = 0; j < count; ++j)
            values[static_cast<std::size_t>(j)] = heights_[static_cast<std::size_t>(simplices[s][static_cast<std::size_t>(j)])] - t;
        total += vols[s] * simplexFractionAbove(values, count);
    }
    return total;
}

double capVolume(const VPolytope& P, const Vec& u, double t) { return CapProfile(P, u).volumeAbove(t); }

double coneHullExcess(const VPolytope& P, const Vec& x) {
    requireDim(x, P.dim(), "point");
    double excess = 0.0;
    for (const auto& f : P.facets()) {
        const double d = f.normal.dot(x) - f.offset;
        if (d > 0) excess += d * f.measure;
    }
    return excess / P.dim();
}

double coneHullVolume(const VPolytope& P, const Vec& x) { return P.volume() + coneHullExcess(P, x); }

double support(const VPolytope& P, const Vec& u) {
    requireDim(u, P.dim(), "direction");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : P.vertices()) best = std::max(best, v.dot(u));
    return best;
}

bool containsOriginInInterior(const VPolytope& P) {
    for (const auto& f : P.facets())
        if (!(f.offset > P.scaledTol())) return false;
    return true;
}

double radial(const VPolytope& P, const Vec& u) {
    requireDim(u, P.dim(), "direction");
    if (!containsOriginInInterior(P))
        throw GeometryError(ErrorKind::OriginNotInterior, "radial function needs the origin in the interior");
    if (!(u.norm() > 0.0)) throw GeometryError(ErrorKind::BadParameter, "zero direction");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : P.facets()) {
        const double c = u.dot(f.normal);
        if (c > 0) best = std::min(best, f.offset / c);
    }
    return best;
}

VPolytope applyLinear(const VPolytope& P, const Mat& L) {
    if (L.rows() != P.dim() || L.cols() != P.dim())
        throw GeometryError(ErrorKind::BadParameter, "matrix size does not match the polytope dimension");
    const double det = L.determinant();
    if (!(std::abs(det) > 1e-12 * std::pow(std::max(L.norm(), 1e-300), P.dim())))
        throw GeometryError(ErrorKind::SingularMatrix, "linear map is not invertible");
    Points image;
    for (const auto& v : P.vertices()) image.push_back(L * v);
    return VPolytope(image, P.incidenceTol());
}

bool isCentrallySymmetric(const VPolytope& P) {
    for (const auto& v : P.vertices())
        if (P.findVertex(-v) < 0) return false;
    return true;
}

Vec centroid(const VPolytope& P) { return P.centroid(); }

Mat secondMoment(const VPolytope& P) {
    const int n = P.dim();
    Mat M = Mat::Zero(n, n);
    const auto& simplices = P.simplices();
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        Mat outer = Mat::Zero(n, n);
        Vec sum = Vec::Zero(n);
        for (int j = 0; j <= n; ++j) {
            const Vec& v = P.simplexPoint(simplices[s][static_cast<std::size_t>(j)]);
            outer += v * v.transpose();
            sum += v;
        }
        M += P.simplexVolumes()[s] / ((n + 1) * (n + 2)) * (outer + sum * sum.transpose());
    }
    return M;
}

}  // namespace polydual
