#include "polydual/duality.hpp"

#include <cmath>

#include "hull.hpp"

namespace polydual {

VPolytope polar(const VPolytope& P) {
    if (!containsOriginInInterior(P))
        throw GeometryError(ErrorKind::OriginNotInterior, "polar needs the origin in the interior");
    Points pts;
    for (const auto& f : P.facets()) pts.push_back(f.normal / f.offset);
    return VPolytope(pts, P.incidenceTol());
}

Facet polarFacetForVertex(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi) {
    if (xi.size() != P.dim() || P.findVertex(xi) < 0)
        throw GeometryError(ErrorKind::NotAVertex, "point is not a vertex of the polytope");
    const Vec dir = xi.normalized();
    const Facet* best = nullptr;
    double bestDot = -2.0;
    for (const auto& f : Ppolar.facets()) {
        const double d = f.normal.dot(dir);
        if (d > bestDot) {
            bestDot = d;
            best = &f;
        }
    }
    if (!best || bestDot < 1.0 - 1e-6)
        throw GeometryError(ErrorKind::NotAVertex, "no polar facet is dual to the vertex");
    return *best;
}

Facet polarFacetForVertex(const VPolytope& P, const Vec& xi) { return polarFacetForVertex(P, polar(P), xi); }

VPolytope relativePolar(const Facet& F, const Vec& z, double tol) {
    const int n = static_cast<int>(F.normal.size());
    if (z.size() != n) throw GeometryError(ErrorKind::BadParameter, "point has the wrong dimension");
    const double scale = detail::coordinateScale(F.points);
    if (std::abs(F.normal.dot(z) - F.offset) > 1e3 * tol * scale)
        throw GeometryError(ErrorKind::PointNotInRelativeInterior, "point is off the facet hyperplane");
    Points local;
    for (const auto& p : F.points) local.push_back(F.toBasis(p, z));
    const VPolytope Q(local, tol);
    if (!containsOriginInInterior(Q))
        throw GeometryError(ErrorKind::PointNotInRelativeInterior, "point is not in the relative interior of the facet");
    return polar(Q);
}

PolarFacetData polarFacetData(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi, const SantaloConfig& cfg) {
    PolarFacetData out;
    out.vertex = xi;
    out.polarFacet = polarFacetForVertex(P, Ppolar, xi);
    out.santalo = santaloPoint(out.polarFacet, cfg);
    out.relativePolarMeasure = relativePolar(out.polarFacet, out.santalo, Ppolar.incidenceTol()).volume();
    return out;
}

}  // namespace polydual
