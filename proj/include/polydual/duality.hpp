#pragma once

// Polar bodies, the vertex-to-polar-facet correspondence, relative polars
// inside facet hyperplanes and Santaló points of facets.

#include "polydual/geometry.hpp"

namespace polydual {

struct SantaloConfig {
    /// Stop when |centroid((F - z)°)| <= residual * diam((F - z)°).
    double residual = 1e-10;
    int maxIterations = 200;
};

struct PolarFacetData {
    Vec vertex;
    Facet polarFacet;
    Vec santalo;
    double relativePolarMeasure = 0.0;
};

/// Vertex representation of the polar body. Vertex i of the result is
/// normal_i / offset_i for facet i of P. Throws OriginNotInterior.
VPolytope polar(const VPolytope& P);

/// The facet of P° lying in {y : <xi, y> = 1}. Throws NotAVertex.
Facet polarFacetForVertex(const VPolytope& P, const Vec& xi);
/// Same, with a precomputed polar of P.
Facet polarFacetForVertex(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi);

/// (F - z)° taken inside the hyperplane of F, in the coordinates of F.basis.
/// Throws PointNotInRelativeInterior.
VPolytope relativePolar(const Facet& F, const Vec& z, double tol = kDefaultIncidenceTol);

/// The point z in relint F minimizing the measure of (F - z)°.
/// Throws ConvergenceFailure.
Vec santaloPoint(const Facet& F, const SantaloConfig& cfg = {});

/// F_xi, its Santaló point and the measure of the relative polar about it.
PolarFacetData polarFacetData(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi,
                              const SantaloConfig& cfg = {});

}  // namespace polydual
